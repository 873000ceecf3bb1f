//! Intuitionistic propositional logic: a terminating decision procedure with
//! proof and countermodel extraction, a Hilbert checker, and truth tables.

mod classical;
mod compile;
mod hilbert;
mod kripke;
mod search;
mod term;

pub(crate) use classical::em_instances;
pub use classical::{
    atom_em_reduction, classical_countervaluation, classical_value, cpc_valid, valuations,
    NotATautology,
};
pub use compile::compile_to_hilbert;
pub use hilbert::{check_hilbert_ipc, HilbertIpcProof, IpcAxiom, IpcJustification, ProofError};
pub use kripke::{kripke_eval, KripkeError, KripkeModel};
pub use term::{NdTerm, TypeError};

use crate::formula::{Formula, PropFormula};
use search::{LimitExceeded, Search};

/// Bounds on proof search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IpcLimits {
    /// Maximum number of sequents visited.
    pub max_steps: u64,
}

impl Default for IpcLimits {
    fn default() -> IpcLimits {
        IpcLimits {
            max_steps: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IpcError {
    #[error("proof search exceeded {0} steps")]
    ResourceLimit(u64),
    /// Extracted evidence failed its own check. Never expected.
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IpcOutcome {
    Provable(HilbertIpcProof),
    Refutable(KripkeModel),
}

impl IpcOutcome {
    pub fn is_provable(&self) -> bool {
        matches!(self, IpcOutcome::Provable(_))
    }
}

/// Decides `premises |- goal` in IPC with default limits.
pub fn ipc_prove(premises: &[PropFormula], goal: &PropFormula) -> Result<IpcOutcome, IpcError> {
    ipc_prove_with(premises, goal, IpcLimits::default())
}

/// Decides `premises |- goal`. A returned proof passes [`check_hilbert_ipc`];
/// a returned model forces every premise at its root and refutes the goal
/// there.
pub fn ipc_prove_with(
    premises: &[PropFormula],
    goal: &PropFormula,
    limits: IpcLimits,
) -> Result<IpcOutcome, IpcError> {
    let premises: Vec<Formula> = premises.iter().map(|p| p.formula().clone()).collect();
    let goal = goal.formula();
    let found = Search::run(&premises, goal, limits.max_steps)
        .map_err(|LimitExceeded| IpcError::ResourceLimit(limits.max_steps))?;
    match found {
        Ok(term) => {
            let proof = compile_to_hilbert(&premises, &term)
                .map_err(|e| IpcError::Internal(format!("extracted term is ill-typed: {e}")))?;
            check_hilbert_ipc(&proof, &premises, goal)
                .map_err(|e| IpcError::Internal(format!("compiled proof rejected: {e}")))?;
            Ok(IpcOutcome::Provable(proof))
        }
        Err(tree) => {
            let (parents, valuation) = tree.flatten();
            let model = KripkeModel::from_tree(&parents, valuation)
                .map_err(|e| IpcError::Internal(format!("extracted model is malformed: {e}")))?;
            let root = model.root();
            if let Some(p) = premises.iter().find(|p| !model.forces(root, p)) {
                return Err(IpcError::Internal(format!(
                    "countermodel refutes premise {p}"
                )));
            }
            if model.forces(root, goal) {
                return Err(IpcError::Internal(format!("countermodel forces {goal}")));
            }
            Ok(IpcOutcome::Refutable(model))
        }
    }
}

/// Provability only: skips proof compilation and countermodel checks.
pub fn ipc_provable(
    premises: &[Formula],
    goal: &Formula,
    limits: IpcLimits,
) -> Result<bool, IpcError> {
    debug_assert!(premises.iter().all(Formula::is_propositional) && goal.is_propositional());
    Search::run(premises, goal, limits.max_steps)
        .map(|found| found.is_ok())
        .map_err(|LimitExceeded| IpcError::ResourceLimit(limits.max_steps))
}
