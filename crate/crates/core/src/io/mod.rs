//! File formats: proofs as numbered text lines, countermodels as JSON.

mod evidence;
mod proof;

pub use evidence::{to_json, KripkeCountermodel, LCountermodel, KRIPKE_KIND, LMODEL_KIND};
pub use proof::{
    parse_ipc_proof, parse_lproof, write_ipc_proof, write_lproof, FormatError, IpcProofFile,
    IPC_HEADER, L_HEADER,
};

/// What a file claims to contain, judged from its first bytes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    IpcProof,
    LProof,
    KripkeCountermodel,
    LCountermodel,
}

pub fn detect_kind(text: &str) -> Option<FileKind> {
    let first = text.lines().next()?;
    if first == IPC_HEADER {
        return Some(FileKind::IpcProof);
    }
    if first == L_HEADER {
        return Some(FileKind::LProof);
    }
    let value: serde_json::Value = serde_json::from_str(text).ok()?;
    match value.get("kind")?.as_str()? {
        KRIPKE_KIND => Some(FileKind::KripkeCountermodel),
        LMODEL_KIND => Some(FileKind::LCountermodel),
        _ => None,
    }
}
