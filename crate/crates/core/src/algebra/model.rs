use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::filter::{enumerate_ultrafilters, Filter};
use super::heyting::{enumerate_heyting, AlgebraError, HeytingAlgebra};
use super::poset::FinitePoset;
use crate::formula::{Formula, Var};

/// Values of the variables; the homomorphic extension is [`eval`].
pub type Assignment = BTreeMap<Var, usize>;

/// A Heyting algebra with a designated ultrafilter of true elements and an
/// operation interpreting the box.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LModel {
    pub algebra: HeytingAlgebra,
    pub truth: Filter,
    #[serde(rename = "box")]
    pub box_op: Vec<usize>,
}

/// The first condition a candidate model breaks.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelViolation {
    #[error("box table has the wrong length or range")]
    Shape,
    #[error("designated set is not an ultrafilter")]
    NotUltrafilter,
    #[error("condition (i) fails at {0}: box m is not below m")]
    Deflation(usize),
    #[error("condition (ii) fails at {0}, {1}, {2}")]
    Transitivity(usize, usize, usize),
    #[error("condition (iii) fails at {0}, {1}")]
    Disjunction(usize, usize),
    #[error("condition (iv) fails at {0}")]
    Truth(usize),
}

impl ModelViolation {
    /// The numbered condition, or 0 for structural problems.
    pub fn condition(&self) -> u8 {
        match self {
            ModelViolation::Deflation(_) => 1,
            ModelViolation::Transitivity(..) => 2,
            ModelViolation::Disjunction(..) => 3,
            ModelViolation::Truth(_) => 4,
            ModelViolation::Shape | ModelViolation::NotUltrafilter => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("variable {0} is unassigned")]
    Unassigned(Var),
    #[error("variable {0} is assigned {1}, outside the carrier")]
    OutOfRange(Var, usize),
}

/// Condition (ii) for one triple.
fn transitivity_holds(h: &HeytingAlgebra, b: &[usize], m: usize, m1: usize, m2: usize) -> bool {
    let lhs = b[h.imp(m, m1)];
    let rhs = h.imp(b[h.imp(m1, m2)], b[h.imp(m, m2)]);
    h.leq(lhs, rhs)
}

/// Condition (iii) for one pair.
fn disjunction_holds(h: &HeytingAlgebra, b: &[usize], m: usize, m1: usize) -> bool {
    h.leq(b[h.join(m, m1)], h.join(b[m], b[m1]))
}

/// Checks the ultrafilter and the four box conditions exhaustively.
pub fn check_model_conditions(
    h: &HeytingAlgebra,
    truth: &Filter,
    box_op: &[usize],
) -> Result<(), ModelViolation> {
    if box_op.len() != h.size() || box_op.iter().any(|&v| v >= h.size()) {
        return Err(ModelViolation::Shape);
    }
    if !truth.is_ultra(h) {
        return Err(ModelViolation::NotUltrafilter);
    }
    for m in h.elements() {
        if !h.leq(box_op[m], m) {
            return Err(ModelViolation::Deflation(m));
        }
    }
    for m in h.elements() {
        for m1 in h.elements() {
            for m2 in h.elements() {
                if !transitivity_holds(h, box_op, m, m1, m2) {
                    return Err(ModelViolation::Transitivity(m, m1, m2));
                }
            }
        }
    }
    for m in h.elements() {
        for m1 in h.elements() {
            if !disjunction_holds(h, box_op, m, m1) {
                return Err(ModelViolation::Disjunction(m, m1));
            }
        }
    }
    for m in h.elements() {
        if truth.contains(box_op[m]) != (m == h.top()) {
            return Err(ModelViolation::Truth(m));
        }
    }
    Ok(())
}

/// Top on top, bottom elsewhere.
pub fn trivial_box(h: &HeytingAlgebra) -> Vec<usize> {
    h.elements()
        .map(|m| if m == h.top() { h.top() } else { h.bot() })
        .collect()
}

/// Default bound for [`enumerate_modal_ops`].
pub const MAX_MODAL_ALGEBRA: usize = 6;

/// Every box table satisfying the four conditions for `truth`, found by
/// backtracking over the `n^n` candidate tables; each partial table is cut
/// as soon as a fully assigned instance of a condition fails.
pub fn enumerate_modal_ops(
    h: &HeytingAlgebra,
    truth: &Filter,
) -> Result<Vec<Vec<usize>>, AlgebraError> {
    if h.size() > MAX_MODAL_ALGEBRA {
        return Err(AlgebraError::Bound {
            bound: MAX_MODAL_ALGEBRA,
        });
    }
    if !truth.is_ultra(h) {
        return Ok(Vec::new());
    }
    let n = h.size();
    // (i) and (iv) are per element
    let candidates: Vec<Vec<usize>> = h
        .elements()
        .map(|m| {
            h.elements()
                .filter(|&v| h.leq(v, m) && truth.contains(v) == (m == h.top()))
                .collect()
        })
        .collect();
    // instances of (ii) and (iii), keyed by the largest element they read
    let mut triples: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    let mut pairs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for m in h.elements() {
        for m1 in h.elements() {
            let reads = [h.join(m, m1), m, m1];
            pairs[*reads.iter().max().unwrap()].push((m, m1));
            for m2 in h.elements() {
                let reads = [h.imp(m, m1), h.imp(m1, m2), h.imp(m, m2)];
                triples[*reads.iter().max().unwrap()].push((m, m1, m2));
            }
        }
    }
    let mut out = Vec::new();
    let mut table = vec![0; n];
    fn go(
        k: usize,
        h: &HeytingAlgebra,
        candidates: &[Vec<usize>],
        triples: &[Vec<(usize, usize, usize)>],
        pairs: &[Vec<(usize, usize)>],
        table: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == table.len() {
            out.push(table.clone());
            return;
        }
        for &v in &candidates[k] {
            table[k] = v;
            let ok = triples[k]
                .iter()
                .all(|&(a, b, c)| transitivity_holds(h, table, a, b, c))
                && pairs[k]
                    .iter()
                    .all(|&(a, b)| disjunction_holds(h, table, a, b));
            if ok {
                go(k + 1, h, candidates, triples, pairs, table, out);
            }
        }
    }
    go(0, h, &candidates, &triples, &pairs, &mut table, &mut out);
    Ok(out)
}

/// Every model on an algebra with at most `max_size` elements: each
/// algebra, each ultrafilter, each admissible box table.
pub fn enumerate_models(max_size: usize) -> Result<Vec<LModel>, AlgebraError> {
    let mut out = Vec::new();
    for h in enumerate_heyting(max_size)? {
        for truth in enumerate_ultrafilters(&h) {
            for box_op in enumerate_modal_ops(&h, &truth)? {
                out.push(LModel {
                    algebra: h.clone(),
                    truth: truth.clone(),
                    box_op,
                });
            }
        }
    }
    Ok(out)
}

impl LModel {
    /// Validates the model conditions.
    pub fn new(
        algebra: HeytingAlgebra,
        truth: Filter,
        box_op: Vec<usize>,
    ) -> Result<LModel, ModelViolation> {
        check_model_conditions(&algebra, &truth, &box_op)?;
        Ok(LModel {
            algebra,
            truth,
            box_op,
        })
    }

    pub fn validate(&self) -> Result<(), ModelViolation> {
        check_model_conditions(&self.algebra, &self.truth, &self.box_op)
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    pub fn boxed(&self, m: usize) -> usize {
        self.box_op[m]
    }

    pub fn is_true(&self, m: usize) -> bool {
        self.truth.contains(m)
    }

    /// Every assignment of elements to `vars`.
    pub fn assignments(&self, vars: &[Var]) -> Vec<Assignment> {
        let n = self.size();
        let count = n.pow(vars.len() as u32);
        (0..count)
            .map(|mut code| {
                vars.iter()
                    .map(|v| {
                        let value = code % n;
                        code /= n;
                        (*v, value)
                    })
                    .collect()
            })
            .collect()
    }
}

/// The value of `f` under `gamma`.
pub fn eval(model: &LModel, gamma: &Assignment, f: &Formula) -> Result<usize, EvalError> {
    let h = &model.algebra;
    Ok(match f {
        Formula::Bot => h.bot(),
        Formula::Atom(v) => match gamma.get(v) {
            None => return Err(EvalError::Unassigned(*v)),
            Some(&m) if m >= h.size() => return Err(EvalError::OutOfRange(*v, m)),
            Some(&m) => m,
        },
        Formula::Imp(a, b) => h.imp(eval(model, gamma, a)?, eval(model, gamma, b)?),
        Formula::Or(a, b) => h.join(eval(model, gamma, a)?, eval(model, gamma, b)?),
        Formula::And(a, b) => h.meet(eval(model, gamma, a)?, eval(model, gamma, b)?),
        Formula::Box(a) => model.box_op[eval(model, gamma, a)?],
    })
}

/// Whether `f` takes a designated value under `gamma`.
pub fn satisfies(model: &LModel, gamma: &Assignment, f: &Formula) -> Result<bool, EvalError> {
    Ok(model.is_true(eval(model, gamma, f)?))
}

/// The two-element Boolean model with the identity box, and the assignment
/// sending a variable to top exactly when `valuation` makes it true.
pub fn two_element_model_of(valuation: &BTreeMap<Var, bool>) -> (LModel, Assignment) {
    let h = super::heyting_from_poset(&FinitePoset::antichain(1));
    let truth = Filter([h.top()].into());
    let model = LModel::new(h.clone(), truth, h.elements().collect()).expect("two-element model");
    let gamma = valuation
        .iter()
        .map(|(v, &b)| (*v, if b { h.top() } else { h.bot() }))
        .collect();
    (model, gamma)
}
