//! Semantic experiments: moving Kripke countermodels into L-models,
//! certifying both directions of the box embedding, and property checks on
//! finite models.

mod soundness;
mod sweep;

use std::collections::{BTreeMap, BTreeSet, HashMap};

pub use soundness::{random_soundness, SoundnessRow};
pub use sweep::{sweep, SweepOptions, SweepReport, SweepRow, SweepSummary};

use crate::algebra::{
    downset_algebra, enumerate_models, eval, satisfies, trivial_box, two_element_model_of,
    Assignment, EvalError, Filter, FinitePoset, HeytingAlgebra, LModel, MAX_MODAL_ALGEBRA,
};
use crate::formula::{enumerate_formulas, Formula, PropFormula, Var};
use crate::io::LCountermodel;
use crate::ipc::{
    classical_countervaluation, cpc_valid, ipc_prove, IpcError, IpcOutcome, KripkeModel,
};
use crate::lkernel::{check_lproof_of, classical_proof, embed_ipc, sp_instance, LProof};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemlabError {
    #[error(transparent)]
    Ipc(#[from] IpcError),
    #[error(transparent)]
    Transfer(#[from] TransferError),
    /// Evidence failed validation: an internal soundness failure.
    #[error("evidence failure: {0}")]
    Evidence(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransferError {
    #[error("a Kripke model with {0} worlds is too large to transfer")]
    TooManyWorlds(usize),
    #[error("the generated algebra exceeds {0} elements")]
    TooLarge(usize),
    #[error("transferred model is invalid: {0}")]
    Invalid(String),
}

/// Upset lattices up to this many elements are used whole; larger ones are
/// replaced by the subalgebra generated by the assigned values.
pub const FULL_TRANSFER_LIMIT: usize = 256;
const GENERATED_TRANSFER_LIMIT: usize = 4096;

/// The upset algebra of `k` with the trivial box, designated upsets those
/// containing the first maximal world, and each variable in `vars` sent to
/// the worlds forcing it. For every box-free `f` over `vars`, `[]f` is
/// satisfied iff the root forces `f`.
pub fn kripke_to_lmodel(
    k: &KripkeModel,
    vars: &[Var],
) -> Result<(LModel, Assignment), TransferError> {
    let n = k.size();
    if n > 64 {
        return Err(TransferError::TooManyWorlds(n));
    }
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|w| (0..n).map(|v| k.leq(w, v)).collect())
        .collect();
    let frame = FinitePoset::new(leq).map_err(|e| TransferError::Invalid(e.to_string()))?;
    let dual = frame.dual();
    let forcing = |x: Var| {
        (0..n)
            .filter(|&w| k.valuation(w).contains(&x))
            .fold(0u64, |m, w| m | 1 << w)
    };
    let (algebra, sets) = match dual.downsets_up_to(FULL_TRANSFER_LIMIT) {
        Some(upsets) => (downset_algebra(&dual, &upsets), upsets),
        None => generated_upsets(&frame, vars.iter().map(|&x| forcing(x)))?,
    };
    let index: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let witness = k.maximal_worlds()[0];
    let truth = Filter(
        sets.iter()
            .enumerate()
            .filter(|(_, &s)| s >> witness & 1 == 1)
            .map(|(i, _)| i)
            .collect(),
    );
    let box_op = trivial_box(&algebra);
    let model =
        LModel::new(algebra, truth, box_op).map_err(|e| TransferError::Invalid(e.to_string()))?;
    let gamma = vars.iter().map(|&x| (x, index[&forcing(x)])).collect();
    Ok((model, gamma))
}

/// The closure of the given upsets, empty and full set under intersection,
/// union and the upset implication.
fn generated_upsets(
    frame: &FinitePoset,
    generators: impl Iterator<Item = u64>,
) -> Result<(HeytingAlgebra, Vec<u64>), TransferError> {
    let n = frame.size();
    let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let above: Vec<u64> = (0..n)
        .map(|w| {
            (0..n)
                .filter(|&v| frame.leq(w, v))
                .fold(0, |m, v| m | 1 << v)
        })
        .collect();
    let imp = move |a: u64, b: u64| -> u64 {
        (0..n)
            .filter(|&w| above[w] & a & !b == 0)
            .fold(0, |m, w| m | 1 << w)
    };
    let mut sets: BTreeSet<u64> = [0, full].into_iter().chain(generators).collect();
    loop {
        let current: Vec<u64> = sets.iter().copied().collect();
        let before = sets.len();
        for &a in &current {
            for &b in &current {
                sets.insert(a & b);
                sets.insert(a | b);
                sets.insert(imp(a, b));
            }
        }
        if sets.len() > GENERATED_TRANSFER_LIMIT {
            return Err(TransferError::TooLarge(GENERATED_TRANSFER_LIMIT));
        }
        if sets.len() == before {
            break;
        }
    }
    let mut sets: Vec<u64> = sets.into_iter().collect();
    sets.sort_by_key(|m| (m.count_ones(), *m));
    Ok((HeytingAlgebra::from_sets(&sets, imp), sets))
}

/// Certificate for one side of `[]G |- []f  iff  G |-_IPC f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A kernel-checked proof of `[]f` from the boxed premises.
    Proof(LProof),
    /// A model satisfying the boxed premises and refuting `[]f`.
    Countermodel(LCountermodel),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub premises: Vec<PropFormula>,
    pub formula: PropFormula,
    pub evidence: Evidence,
    /// The IPC countermodel the L-model was built from, if any.
    pub kripke: Option<KripkeModel>,
}

impl Verdict {
    pub fn ipc_provable(&self) -> bool {
        matches!(self.evidence, Evidence::Proof(_))
    }

    /// Re-checks the evidence from scratch.
    pub fn validate(&self) -> Result<(), String> {
        let boxed: Vec<Formula> = self
            .premises
            .iter()
            .map(|p| Formula::boxed(p.formula().clone()))
            .collect();
        let goal = Formula::boxed(self.formula.formula().clone());
        match &self.evidence {
            Evidence::Proof(proof) => {
                if proof.premises != boxed {
                    return Err("proof premises are not the boxed premises".into());
                }
                check_lproof_of(proof, &goal).map_err(|e| e.to_string())
            }
            Evidence::Countermodel(cm) => {
                if cm.premises != boxed || cm.goal != goal {
                    return Err("countermodel is about a different sequent".into());
                }
                cm.check()
            }
        }
    }
}

/// Decides `premises |- f` in IPC and turns the outcome into evidence about
/// `[]premises |- []f` in L: an embedded proof or a transferred model.
pub fn verify_main_theorem(
    premises: &[PropFormula],
    f: &PropFormula,
) -> Result<Verdict, SemlabError> {
    let plain: Vec<Formula> = premises.iter().map(|p| p.formula().clone()).collect();
    let boxed: Vec<Formula> = plain.iter().cloned().map(Formula::boxed).collect();
    let goal = Formula::boxed(f.formula().clone());
    let (evidence, kripke) = match ipc_prove(premises, f)? {
        IpcOutcome::Provable(proof) => {
            let lifted = embed_ipc(&proof, &plain, f.formula())
                .map_err(|e| SemlabError::Evidence(format!("embedding rejected: {e}")))?;
            (Evidence::Proof(lifted), None)
        }
        IpcOutcome::Refutable(k) => {
            let mut vars: BTreeSet<Var> = f.vars();
            for p in &plain {
                vars.extend(p.vars());
            }
            let vars: Vec<Var> = vars.into_iter().collect();
            let (model, gamma) = kripke_to_lmodel(&k, &vars)?;
            let cm = LCountermodel::new(boxed, goal, model, gamma);
            (Evidence::Countermodel(cm), Some(k))
        }
    };
    let verdict = Verdict {
        premises: premises.to_vec(),
        formula: f.clone(),
        evidence,
        kripke,
    };
    verdict.validate().map_err(SemlabError::Evidence)?;
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(LCountermodel),
    /// Nothing within the bounds. Says nothing about larger models.
    NotFound {
        reason: String,
    },
}

/// Looks for a model satisfying `premises` and refuting `goal` among all
/// models on algebras of at most `max_algebra` elements, smallest first.
pub fn countermodel_search(
    premises: &[Formula],
    goal: &Formula,
    max_algebra: usize,
) -> SearchOutcome {
    if max_algebra > MAX_MODAL_ALGEBRA {
        return SearchOutcome::NotFound {
            reason: format!("model enumeration is limited to {MAX_MODAL_ALGEBRA} elements"),
        };
    }
    let mut vars: BTreeSet<Var> = goal.vars();
    for p in premises {
        vars.extend(p.vars());
    }
    let vars: Vec<Var> = vars.into_iter().collect();
    let models = enumerate_models(max_algebra).expect("bound checked above");
    for model in &models {
        for gamma in model.assignments(&vars) {
            let holds = |f: &Formula| satisfies(model, &gamma, f).expect("all variables assigned");
            if premises.iter().all(holds) && !holds(goal) {
                let cm = LCountermodel::new(premises.to_vec(), goal.clone(), model.clone(), gamma);
                debug_assert_eq!(cm.check(), Ok(()));
                return SearchOutcome::Found(cm);
            }
        }
    }
    SearchOutcome::NotFound {
        reason: format!(
            "no countermodel among {} models with at most {max_algebra} elements",
            models.len()
        ),
    }
}

/// Whether `f == g` is satisfied exactly when `f` and `g` denote the same
/// element.
pub fn check_identity_theorem(
    model: &LModel,
    gamma: &Assignment,
    f: &Formula,
    g: &Formula,
) -> Result<bool, EvalError> {
    let same = eval(model, gamma, f)? == eval(model, gamma, g)?;
    let identity = satisfies(model, gamma, &Formula::equiv(f.clone(), g.clone()))?;
    Ok(same == identity)
}

/// Whether the substitution principle for `phi`, `psi` in context `chi` at
/// `x` is satisfied.
pub fn check_sp_validity(
    model: &LModel,
    gamma: &Assignment,
    phi: &Formula,
    psi: &Formula,
    chi: &Formula,
    x: Var,
) -> Result<bool, EvalError> {
    satisfies(model, gamma, &sp_instance(phi, psi, chi, x))
}

/// The box-free formulas up to a size bound that evaluate to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedPrimeTheory {
    pub bound: usize,
    pub members: BTreeSet<Formula>,
}

impl BoundedPrimeTheory {
    pub fn contains(&self, f: &Formula) -> bool {
        self.members.contains(f)
    }

    /// The first failure of consistency, closure under modus ponens, or
    /// primeness, among formulas within the bound.
    pub fn violation(&self) -> Option<String> {
        if self.contains(&Formula::Bot) {
            return Some("contains bot".into());
        }
        for f in &self.members {
            match f {
                Formula::Imp(a, b) if self.contains(a) && !self.contains(b) => {
                    return Some(format!("contains {a} and {f} but not {b}"));
                }
                Formula::Or(a, b) if !self.contains(a) && !self.contains(b) => {
                    return Some(format!("contains {f} but neither disjunct"));
                }
                _ => {}
            }
        }
        None
    }
}

pub fn bounded_prime_theory(
    model: &LModel,
    gamma: &Assignment,
    bound: usize,
    vars: &[Var],
) -> Result<BoundedPrimeTheory, EvalError> {
    let top = model.algebra.top();
    let mut members = BTreeSet::new();
    for f in enumerate_formulas(vars, bound, false) {
        if eval(model, gamma, &f)? == top {
            members.insert(f);
        }
    }
    Ok(BoundedPrimeTheory { bound, members })
}

/// Either a checked L proof of a classical tautology or a two-element
/// countermodel for a non-tautology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conservativity {
    Proved(LProof),
    Refuted {
        valuation: BTreeMap<Var, bool>,
        countermodel: LCountermodel,
    },
}

/// Certifies that `f` is an L theorem exactly when it is a classical
/// tautology.
pub fn conservativity_check(f: &PropFormula) -> Result<Conservativity, SemlabError> {
    let f = f.formula();
    let proof = classical_proof(f);
    match (cpc_valid(f), proof) {
        (true, Ok(proof)) => {
            check_lproof_of(&proof, f)
                .map_err(|e| SemlabError::Evidence(format!("classical proof rejected: {e}")))?;
            Ok(Conservativity::Proved(proof))
        }
        (false, Err(_)) => {
            let valuation = classical_countervaluation(f)
                .ok_or_else(|| SemlabError::Evidence("no falsifying valuation".into()))?;
            let (model, gamma) = two_element_model_of(&valuation);
            let cm = LCountermodel::new(vec![], f.clone(), model, gamma);
            cm.check().map_err(SemlabError::Evidence)?;
            Ok(Conservativity::Refuted {
                valuation,
                countermodel: cm,
            })
        }
        (valid, _) => Err(SemlabError::Evidence(format!(
            "truth table says {valid} but the proof generator disagrees"
        ))),
    }
}
