//! Natural-deduction proof terms. Variables below the number of premises
//! name those premises; larger indices are bound by `Lam` and `Case`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::formula::Formula;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NdTerm {
    Var(u32),
    Lam(u32, Formula, Arc<NdTerm>),
    App(Arc<NdTerm>, Arc<NdTerm>),
    Pair(Arc<NdTerm>, Arc<NdTerm>),
    Fst(Arc<NdTerm>),
    Snd(Arc<NdTerm>),
    /// Left injection; the formula is the right disjunct.
    Inl(Arc<NdTerm>, Formula),
    /// Right injection; the formula is the left disjunct.
    Inr(Formula, Arc<NdTerm>),
    Case(Arc<NdTerm>, u32, Arc<NdTerm>, u32, Arc<NdTerm>),
    /// Ex falso; the formula is the conclusion.
    Abort(Arc<NdTerm>, Formula),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypeError {
    #[error("unbound variable {0}")]
    Unbound(u32),
    #[error("application of a non-implication: {0}")]
    NotFunction(Formula),
    #[error("argument has type {found}, expected {expected}")]
    Mismatch { expected: Formula, found: Formula },
    #[error("projection from a non-conjunction: {0}")]
    NotPair(Formula),
    #[error("case analysis on a non-disjunction: {0}")]
    NotSum(Formula),
    #[error("case branches disagree: {0} vs {1}")]
    Branches(Formula, Formula),
    #[error("abort of a non-absurdity: {0}")]
    NotAbsurd(Formula),
    #[error("variable {0} is bound twice")]
    Shadowed(u32),
    #[error("premise {0} is not box-free")]
    Modal(usize),
}

pub(crate) type Env = HashMap<u32, Formula>;

pub(crate) fn premise_env(premises: &[Formula]) -> Env {
    premises
        .iter()
        .enumerate()
        .map(|(i, f)| (i as u32, f.clone()))
        .collect()
}

impl NdTerm {
    /// The formula this term proves from `premises`.
    pub fn infer(&self, premises: &[Formula]) -> Result<Formula, TypeError> {
        self.infer_in(&mut premise_env(premises))
    }

    pub(crate) fn infer_in(&self, env: &mut Env) -> Result<Formula, TypeError> {
        match self {
            NdTerm::Var(x) => env.get(x).cloned().ok_or(TypeError::Unbound(*x)),
            NdTerm::Lam(x, a, body) => {
                let b = with_binding(env, *x, a, |env| body.infer_in(env))?;
                Ok(Formula::imp(a.clone(), b))
            }
            NdTerm::App(f, u) => {
                let ft = f.infer_in(env)?;
                let ut = u.infer_in(env)?;
                match ft {
                    Formula::Imp(a, b) if *a == ut => Ok((*b).clone()),
                    Formula::Imp(a, _) => Err(TypeError::Mismatch {
                        expected: (*a).clone(),
                        found: ut,
                    }),
                    other => Err(TypeError::NotFunction(other)),
                }
            }
            NdTerm::Pair(a, b) => Ok(Formula::and(a.infer_in(env)?, b.infer_in(env)?)),
            NdTerm::Fst(t) => match t.infer_in(env)? {
                Formula::And(a, _) => Ok((*a).clone()),
                other => Err(TypeError::NotPair(other)),
            },
            NdTerm::Snd(t) => match t.infer_in(env)? {
                Formula::And(_, b) => Ok((*b).clone()),
                other => Err(TypeError::NotPair(other)),
            },
            NdTerm::Inl(t, right) => Ok(Formula::or(t.infer_in(env)?, right.clone())),
            NdTerm::Inr(left, t) => Ok(Formula::or(left.clone(), t.infer_in(env)?)),
            NdTerm::Case(t, x, u, y, v) => {
                let (a, b) = match t.infer_in(env)? {
                    Formula::Or(a, b) => ((*a).clone(), (*b).clone()),
                    other => return Err(TypeError::NotSum(other)),
                };
                let cu = with_binding(env, *x, &a, |env| u.infer_in(env))?;
                let cv = with_binding(env, *y, &b, |env| v.infer_in(env))?;
                if cu != cv {
                    return Err(TypeError::Branches(cu, cv));
                }
                Ok(cu)
            }
            NdTerm::Abort(t, c) => match t.infer_in(env)? {
                Formula::Bot => Ok(c.clone()),
                other => Err(TypeError::NotAbsurd(other)),
            },
        }
    }

    pub fn mentions(&self, x: u32) -> bool {
        match self {
            NdTerm::Var(y) => *y == x,
            NdTerm::Lam(_, _, b) | NdTerm::Fst(b) | NdTerm::Snd(b) => b.mentions(x),
            NdTerm::Inl(b, _) | NdTerm::Inr(_, b) | NdTerm::Abort(b, _) => b.mentions(x),
            NdTerm::App(a, b) | NdTerm::Pair(a, b) => a.mentions(x) || b.mentions(x),
            NdTerm::Case(t, _, u, _, v) => t.mentions(x) || u.mentions(x) || v.mentions(x),
        }
    }
}

pub(crate) fn with_binding<T>(
    env: &mut Env,
    x: u32,
    ty: &Formula,
    f: impl FnOnce(&mut Env) -> Result<T, TypeError>,
) -> Result<T, TypeError> {
    if env.contains_key(&x) {
        return Err(TypeError::Shadowed(x));
    }
    env.insert(x, ty.clone());
    let out = f(env);
    env.remove(&x);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    #[test]
    fn identity_has_implication_type() {
        let p = parse("p").unwrap();
        let id = NdTerm::Lam(0, p.clone(), Arc::new(NdTerm::Var(0)));
        assert_eq!(id.infer(&[]).unwrap(), parse("p -> p").unwrap());
    }

    #[test]
    fn case_branches_must_agree() {
        let t = NdTerm::Case(
            Arc::new(NdTerm::Var(0)),
            1,
            Arc::new(NdTerm::Var(1)),
            2,
            Arc::new(NdTerm::Var(2)),
        );
        let err = t.infer(&[parse("p \\/ q").unwrap()]).unwrap_err();
        assert!(matches!(err, TypeError::Branches(..)));
    }

    #[test]
    fn rebinding_is_rejected() {
        let t = NdTerm::Lam(0, Formula::Bot, Arc::new(NdTerm::Var(0)));
        assert_eq!(
            t.infer(&[Formula::Bot]).unwrap_err(),
            TypeError::Shadowed(0)
        );
    }
}
