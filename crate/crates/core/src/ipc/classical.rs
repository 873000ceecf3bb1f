use std::collections::BTreeMap;

use crate::formula::{Formula, Var};

/// Classical truth value of a box-free formula under `valuation`
/// (unlisted variables are false).
pub fn classical_value(f: &Formula, valuation: &BTreeMap<Var, bool>) -> bool {
    match f {
        Formula::Bot => false,
        Formula::Atom(v) => valuation.get(v).copied().unwrap_or(false),
        Formula::Imp(a, b) => !classical_value(a, valuation) || classical_value(b, valuation),
        Formula::Or(a, b) => classical_value(a, valuation) || classical_value(b, valuation),
        Formula::And(a, b) => classical_value(a, valuation) && classical_value(b, valuation),
        Formula::Box(_) => panic!("classical evaluation is defined for box-free formulas only"),
    }
}

/// All `2^n` valuations of `vars`, in binary counting order.
pub fn valuations(vars: &[Var]) -> impl Iterator<Item = BTreeMap<Var, bool>> + '_ {
    (0u64..1 << vars.len()).map(move |bits| {
        vars.iter()
            .enumerate()
            .map(|(i, v)| (*v, bits >> i & 1 == 1))
            .collect()
    })
}

/// A falsifying valuation, if any.
pub fn classical_countervaluation(f: &Formula) -> Option<BTreeMap<Var, bool>> {
    let vars: Vec<Var> = f.vars().into_iter().collect();
    let found = valuations(&vars).find(|v| !classical_value(f, v));
    found
}

/// Truth-table validity.
pub fn cpc_valid(f: &Formula) -> bool {
    classical_countervaluation(f).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not a classical tautology")]
pub struct NotATautology(pub Formula);

/// `(x1 \/ ~x1) /\ ... /\ (xn \/ ~xn) -> f` over the variables of `f`.
///
/// Intuitionistically provable whenever `f` is a classical tautology; the
/// excluded-middle conjuncts are what the caller discharges.
pub fn atom_em_reduction(f: &Formula) -> Result<Formula, NotATautology> {
    if !cpc_valid(f) {
        return Err(NotATautology(f.clone()));
    }
    let parts: Vec<Formula> = em_instances(f);
    Ok(Formula::imp(Formula::conjoin(&parts), f.clone()))
}

pub(crate) fn em_instances(f: &Formula) -> Vec<Formula> {
    f.vars()
        .into_iter()
        .map(|v| Formula::or(Formula::Atom(v), Formula::neg(Formula::Atom(v))))
        .collect()
}
