//! Proof terms to Hilbert derivations by bracket abstraction: `A1` plays the
//! K combinator and `A2` the S combinator, `A3`-`A9` cover the remaining
//! introduction and elimination forms.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::hilbert::{HilbertIpcProof, IpcAxiom, IpcJustification};
use super::term::{premise_env, with_binding, Env, NdTerm, TypeError};
use crate::formula::Formula;

#[derive(Debug)]
struct Node {
    concl: Formula,
    kind: Kind,
    locals: BTreeSet<u32>,
}

#[derive(Debug)]
enum Kind {
    Axiom(IpcAxiom, Vec<Formula>),
    Hyp(usize),
    Local(u32),
    Mp { arg: Arc<Node>, fun: Arc<Node> },
}

fn axiom(ax: IpcAxiom, args: Vec<Formula>) -> Arc<Node> {
    let concl = ax.instantiate(&args).expect("arity is fixed by the caller");
    Arc::new(Node {
        concl,
        kind: Kind::Axiom(ax, args),
        locals: BTreeSet::new(),
    })
}

fn mp(arg: Arc<Node>, fun: Arc<Node>) -> Arc<Node> {
    let concl = match fun.concl.as_imp() {
        Some((a, b)) if *a == arg.concl => b.clone(),
        _ => unreachable!("ill-typed application {} to {}", fun.concl, arg.concl),
    };
    let locals = arg.locals.union(&fun.locals).copied().collect();
    Arc::new(Node {
        concl,
        kind: Kind::Mp { arg, fun },
        locals,
    })
}

/// `a -> a` from `A1` and `A2`.
fn identity(a: &Formula) -> Arc<Node> {
    let aa = Formula::imp(a.clone(), a.clone());
    let s = axiom(IpcAxiom::A2, vec![a.clone(), aa.clone(), a.clone()]);
    let k1 = axiom(IpcAxiom::A1, vec![a.clone(), aa]);
    let k2 = axiom(IpcAxiom::A1, vec![a.clone(), a.clone()]);
    mp(k2, mp(k1, s))
}

/// Turns a derivation of `node.concl` that may use local `x : a` into a
/// derivation of `a -> node.concl` that does not.
fn abstract_local(x: u32, a: &Formula, node: &Arc<Node>) -> Arc<Node> {
    if !node.locals.contains(&x) {
        let k = axiom(IpcAxiom::A1, vec![node.concl.clone(), a.clone()]);
        return mp(node.clone(), k);
    }
    match &node.kind {
        Kind::Local(_) => identity(a),
        Kind::Mp { arg, fun } => {
            if !fun.locals.contains(&x) && matches!(arg.kind, Kind::Local(y) if y == x) {
                return fun.clone();
            }
            let f = abstract_local(x, a, fun);
            let g = abstract_local(x, a, arg);
            let s = axiom(
                IpcAxiom::A2,
                vec![a.clone(), arg.concl.clone(), node.concl.clone()],
            );
            mp(g, mp(f, s))
        }
        Kind::Axiom(..) | Kind::Hyp(_) => unreachable!("closed node mentions a local"),
    }
}

struct Compiler {
    premises: usize,
}

impl Compiler {
    fn compile(&self, t: &NdTerm, env: &mut Env) -> Result<Arc<Node>, TypeError> {
        Ok(match t {
            NdTerm::Var(x) => {
                let concl = env.get(x).cloned().ok_or(TypeError::Unbound(*x))?;
                let (kind, locals) = if (*x as usize) < self.premises {
                    (Kind::Hyp(*x as usize), BTreeSet::new())
                } else {
                    (Kind::Local(*x), BTreeSet::from([*x]))
                };
                Arc::new(Node {
                    concl,
                    kind,
                    locals,
                })
            }
            NdTerm::Lam(x, a, body) => {
                let body = with_binding(env, *x, a, |env| self.compile(body, env))?;
                abstract_local(*x, a, &body)
            }
            NdTerm::App(f, u) => {
                let f = self.compile(f, env)?;
                let u = self.compile(u, env)?;
                match f.concl.as_imp() {
                    Some((a, _)) if *a == u.concl => mp(u, f),
                    Some((a, _)) => {
                        return Err(TypeError::Mismatch {
                            expected: a.clone(),
                            found: u.concl.clone(),
                        })
                    }
                    None => return Err(TypeError::NotFunction(f.concl.clone())),
                }
            }
            NdTerm::Pair(a, b) => {
                let a = self.compile(a, env)?;
                let b = self.compile(b, env)?;
                let ax = axiom(IpcAxiom::A5, vec![a.concl.clone(), b.concl.clone()]);
                mp(b, mp(a, ax))
            }
            NdTerm::Fst(t) => {
                let t = self.compile(t, env)?;
                let (a, b) = split_and(&t.concl)?;
                mp(t, axiom(IpcAxiom::A3, vec![a, b]))
            }
            NdTerm::Snd(t) => {
                let t = self.compile(t, env)?;
                let (a, b) = split_and(&t.concl)?;
                mp(t, axiom(IpcAxiom::A4, vec![a, b]))
            }
            NdTerm::Inl(t, right) => {
                let t = self.compile(t, env)?;
                let ax = axiom(IpcAxiom::A6, vec![t.concl.clone(), right.clone()]);
                mp(t, ax)
            }
            NdTerm::Inr(left, t) => {
                let t = self.compile(t, env)?;
                let ax = axiom(IpcAxiom::A7, vec![left.clone(), t.concl.clone()]);
                mp(t, ax)
            }
            NdTerm::Case(t, x, u, y, v) => {
                let t = self.compile(t, env)?;
                let (a, b) = match &t.concl {
                    Formula::Or(a, b) => ((**a).clone(), (**b).clone()),
                    other => return Err(TypeError::NotSum(other.clone())),
                };
                let u = with_binding(env, *x, &a, |env| self.compile(u, env))?;
                let v = with_binding(env, *y, &b, |env| self.compile(v, env))?;
                if u.concl != v.concl {
                    return Err(TypeError::Branches(u.concl.clone(), v.concl.clone()));
                }
                let c = u.concl.clone();
                let lu = abstract_local(*x, &a, &u);
                let lv = abstract_local(*y, &b, &v);
                let ax = axiom(IpcAxiom::A8, vec![a, b, c]);
                mp(t, mp(lv, mp(lu, ax)))
            }
            NdTerm::Abort(t, c) => {
                let t = self.compile(t, env)?;
                if t.concl != Formula::Bot {
                    return Err(TypeError::NotAbsurd(t.concl.clone()));
                }
                mp(t, axiom(IpcAxiom::A9, vec![c.clone()]))
            }
        })
    }
}

fn split_and(f: &Formula) -> Result<(Formula, Formula), TypeError> {
    match f {
        Formula::And(a, b) => Ok(((**a).clone(), (**b).clone())),
        other => Err(TypeError::NotPair(other.clone())),
    }
}

fn emit(
    node: &Node,
    lines: &mut Vec<(Formula, IpcJustification)>,
    index: &mut HashMap<Formula, usize>,
) -> usize {
    if let Some(&i) = index.get(&node.concl) {
        return i;
    }
    let just = match &node.kind {
        Kind::Axiom(ax, args) => IpcJustification::Axiom(*ax, args.clone()),
        Kind::Hyp(i) => IpcJustification::Hypothesis(*i),
        Kind::Mp { arg, fun } => {
            let i = emit(arg, lines, index);
            let j = emit(fun, lines, index);
            IpcJustification::ModusPonens(i, j)
        }
        Kind::Local(x) => unreachable!("local {x} escaped abstraction"),
    };
    lines.push((node.concl.clone(), just));
    index.insert(node.concl.clone(), lines.len() - 1);
    lines.len() - 1
}

/// Compiles a proof term over `premises` into a Hilbert derivation of the
/// term's type that uses only `A1`-`A9`, the premises and modus ponens.
pub fn compile_to_hilbert(
    premises: &[Formula],
    term: &NdTerm,
) -> Result<HilbertIpcProof, TypeError> {
    if let Some(i) = premises.iter().position(|p| !p.is_propositional()) {
        return Err(TypeError::Modal(i));
    }
    let mut env = premise_env(premises);
    let goal = term.infer_in(&mut env)?;
    let compiler = Compiler {
        premises: premises.len(),
    };
    let root = compiler.compile(term, &mut env)?;
    debug_assert_eq!(root.concl, goal);
    let mut lines = Vec::new();
    emit(&root, &mut lines, &mut HashMap::new());
    Ok(HilbertIpcProof { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::ipc::hilbert::check_hilbert_ipc;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn var(x: u32) -> Arc<NdTerm> {
        Arc::new(NdTerm::Var(x))
    }

    #[test]
    fn identity_uses_skk() {
        let t = NdTerm::Lam(0, f("p"), var(0));
        let proof = compile_to_hilbert(&[], &t).unwrap();
        check_hilbert_ipc(&proof, &[], &f("p -> p")).unwrap();
        let axioms: BTreeSet<_> = proof
            .lines
            .iter()
            .filter_map(|(_, j)| match j {
                IpcJustification::Axiom(ax, _) => Some(*ax),
                _ => None,
            })
            .collect();
        assert_eq!(axioms, BTreeSet::from([IpcAxiom::A1, IpcAxiom::A2]));
    }

    #[test]
    fn pairing_goes_through_a5() {
        let t = NdTerm::Lam(
            0,
            f("p"),
            Arc::new(NdTerm::Lam(
                1,
                f("q"),
                Arc::new(NdTerm::Pair(var(0), var(1))),
            )),
        );
        let proof = compile_to_hilbert(&[], &t).unwrap();
        check_hilbert_ipc(&proof, &[], &f("p -> (q -> p /\\ q)")).unwrap();
        assert!(proof
            .lines
            .iter()
            .any(|(_, j)| matches!(j, IpcJustification::Axiom(IpcAxiom::A5, _))));
    }

    #[test]
    fn disjunction_swap() {
        let t = NdTerm::Lam(
            0,
            f("p \\/ q"),
            Arc::new(NdTerm::Case(
                var(0),
                1,
                Arc::new(NdTerm::Inr(f("q"), var(1))),
                2,
                Arc::new(NdTerm::Inl(var(2), f("p"))),
            )),
        );
        let proof = compile_to_hilbert(&[], &t).unwrap();
        check_hilbert_ipc(&proof, &[], &f("p \\/ q -> q \\/ p")).unwrap();
    }

    #[test]
    fn premises_become_hypotheses() {
        let t = NdTerm::App(var(1), var(0));
        let premises = [f("p"), f("p -> q")];
        let proof = compile_to_hilbert(&premises, &t).unwrap();
        check_hilbert_ipc(&proof, &premises, &f("q")).unwrap();
        assert_eq!(proof.len(), 3);
    }

    #[test]
    fn ill_typed_terms_are_rejected() {
        let t = NdTerm::App(var(0), var(0));
        assert!(compile_to_hilbert(&[f("p")], &t).is_err());
    }
}
