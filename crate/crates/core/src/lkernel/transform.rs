use super::builder::LProofBuilder;
use super::derive::k_in;
use super::{check_lproof, LJustification, LProof, ProofError};
use crate::formula::Formula;
use crate::ipc::{check_hilbert_ipc, HilbertIpcProof, IpcJustification};

/// Discharges every copy of the premise `h`: from a proof of `G, h |- c`
/// builds a proof of `G |- h -> c`, where `G` keeps the remaining premises
/// in order.
///
/// Necessitation lines are never pushed under `h ->`: the cited axiom is
/// re-derived at top level, necessitated there and then weakened.
pub fn deduction_transform(proof: &LProof, h: &Formula) -> Result<LProof, ProofError> {
    check_lproof(proof)?;
    if !proof.premises.contains(h) {
        return Err(ProofError::whole(format!("{h} is not a premise")));
    }
    let mut renumber = Vec::with_capacity(proof.premises.len());
    let mut kept = Vec::new();
    for p in &proof.premises {
        if p == h {
            renumber.push(None);
        } else {
            renumber.push(Some(kept.len()));
            kept.push(p.clone());
        }
    }
    let mut b = LProofBuilder::new(kept);
    let mut under: Vec<usize> = Vec::with_capacity(proof.lines.len());
    for (f, just) in &proof.lines {
        let line = match just {
            LJustification::Hypothesis(i) => match renumber[*i] {
                None => b.taut(Formula::imp(h.clone(), h.clone())),
                Some(j) => {
                    let plain = b.hyp(j);
                    b.weaken(plain, h)
                }
            },
            LJustification::MP(i, j) => {
                let (a, c) = proof.lines[*j].0.as_imp().expect("checked");
                let s = b.taut(Formula::imp(
                    Formula::imp(h.clone(), Formula::imp(a.clone(), c.clone())),
                    Formula::imp(
                        Formula::imp(h.clone(), a.clone()),
                        Formula::imp(h.clone(), c.clone()),
                    ),
                ));
                let s = b.mp(under[*j], s);
                b.mp(under[*i], s)
            }
            LJustification::AN(i) => {
                let (g, axiom) = &proof.lines[*i];
                let plain = b.axiom_line(g.clone(), axiom.clone());
                let boxed = b.an(plain);
                b.weaken(boxed, h)
            }
            other if other.is_axiom() => {
                let plain = b.axiom_line(f.clone(), other.clone());
                b.weaken(plain, h)
            }
            LJustification::ThmEM(a) => {
                let plain = b.em(a);
                b.weaken(plain, h)
            }
            LJustification::ThmSP { phi, psi, chi, x } => {
                let plain = b.sp(phi, psi, chi, *x);
                b.weaken(plain, h)
            }
            _ => unreachable!("axiom justifications are handled above"),
        };
        under.push(line);
    }
    let last = proof.conclusion().expect("checked proofs are nonempty");
    Ok(b.finish(&Formula::imp(h.clone(), last.clone())))
}

/// Lifts an IPC derivation of `G |- c` to an L derivation of `[]G |- []c`:
/// axioms become axiom I plus necessitation, premises become their boxed
/// forms, and each modus ponens goes through K.
pub fn embed_ipc(
    proof: &HilbertIpcProof,
    premises: &[Formula],
    goal: &Formula,
) -> Result<LProof, ProofError> {
    check_hilbert_ipc(proof, premises, goal)?;
    let boxed: Vec<Formula> = premises.iter().cloned().map(Formula::boxed).collect();
    let mut b = LProofBuilder::new(boxed);
    let mut lifted: Vec<usize> = Vec::with_capacity(proof.lines.len());
    for (f, just) in &proof.lines {
        let line = match just {
            IpcJustification::Axiom(..) => {
                let ax = b.taut(f.clone());
                b.an(ax)
            }
            IpcJustification::Hypothesis(i) => b.hyp(*i),
            IpcJustification::ModusPonens(i, j) => {
                let a = &proof.lines[*i].0;
                let k = k_in(&mut b, a, f);
                let step = b.mp(lifted[*j], k);
                b.mp(lifted[*i], step)
            }
        };
        lifted.push(line);
    }
    Ok(b.finish(&Formula::boxed(goal.clone())))
}
