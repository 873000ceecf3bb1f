use std::fmt;

use crate::formula::Formula;

/// The intuitionistic Hilbert basis used for proof objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IpcAxiom {
    /// `a -> (b -> a)`
    A1,
    /// `(a -> (b -> c)) -> ((a -> b) -> (a -> c))`
    A2,
    /// `a /\ b -> a`
    A3,
    /// `a /\ b -> b`
    A4,
    /// `a -> (b -> a /\ b)`
    A5,
    /// `a -> a \/ b`
    A6,
    /// `b -> a \/ b`
    A7,
    /// `(a -> c) -> ((b -> c) -> (a \/ b -> c))`
    A8,
    /// `bot -> a`
    A9,
}

impl IpcAxiom {
    pub const ALL: [IpcAxiom; 9] = [
        IpcAxiom::A1,
        IpcAxiom::A2,
        IpcAxiom::A3,
        IpcAxiom::A4,
        IpcAxiom::A5,
        IpcAxiom::A6,
        IpcAxiom::A7,
        IpcAxiom::A8,
        IpcAxiom::A9,
    ];

    pub fn arity(self) -> usize {
        match self {
            IpcAxiom::A2 | IpcAxiom::A8 => 3,
            IpcAxiom::A9 => 1,
            _ => 2,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            IpcAxiom::A1 => "a1",
            IpcAxiom::A2 => "a2",
            IpcAxiom::A3 => "a3",
            IpcAxiom::A4 => "a4",
            IpcAxiom::A5 => "a5",
            IpcAxiom::A6 => "a6",
            IpcAxiom::A7 => "a7",
            IpcAxiom::A8 => "a8",
            IpcAxiom::A9 => "a9",
        }
    }

    pub fn from_tag(tag: &str) -> Option<IpcAxiom> {
        IpcAxiom::ALL.into_iter().find(|a| a.tag() == tag)
    }

    /// The scheme instance for `args`, or `None` on an arity mismatch.
    pub fn instantiate(self, args: &[Formula]) -> Option<Formula> {
        if args.len() != self.arity() {
            return None;
        }
        let a = args[0].clone();
        let b = || args[1].clone();
        let c = || args[2].clone();
        use Formula as F;
        Some(match self {
            IpcAxiom::A1 => F::imp(a.clone(), F::imp(b(), a)),
            IpcAxiom::A2 => F::imp(
                F::imp(a.clone(), F::imp(b(), c())),
                F::imp(F::imp(a.clone(), b()), F::imp(a, c())),
            ),
            IpcAxiom::A3 => F::imp(F::and(a.clone(), b()), a),
            IpcAxiom::A4 => F::imp(F::and(a, b()), b()),
            IpcAxiom::A5 => F::imp(a.clone(), F::imp(b(), F::and(a, b()))),
            IpcAxiom::A6 => F::imp(a.clone(), F::or(a, b())),
            IpcAxiom::A7 => F::imp(b(), F::or(a, b())),
            IpcAxiom::A8 => F::imp(
                F::imp(a.clone(), c()),
                F::imp(F::imp(b(), c()), F::imp(F::or(a, b()), c())),
            ),
            IpcAxiom::A9 => F::imp(F::Bot, a),
        })
    }
}

impl fmt::Display for IpcAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IpcJustification {
    Axiom(IpcAxiom, Vec<Formula>),
    /// Index into the premise list.
    Hypothesis(usize),
    /// `ModusPonens(i, j)`: line `i` proves `a`, line `j` proves `a -> b`.
    ModusPonens(usize, usize),
}

/// A Hilbert-style IPC derivation. Line references are 0-based indices;
/// diagnostics count lines from 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HilbertIpcProof {
    pub lines: Vec<(Formula, IpcJustification)>,
}

impl HilbertIpcProof {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|(f, _)| f)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {reason}")]
pub struct ProofError {
    /// 1-based; 0 refers to the proof as a whole.
    pub line: usize,
    pub reason: String,
}

impl ProofError {
    pub(crate) fn at(index: usize, reason: impl Into<String>) -> ProofError {
        ProofError {
            line: index + 1,
            reason: reason.into(),
        }
    }

    pub(crate) fn whole(reason: impl Into<String>) -> ProofError {
        ProofError {
            line: 0,
            reason: reason.into(),
        }
    }
}

/// Checks `proof` as a derivation of `goal` from `premises`.
pub fn check_hilbert_ipc(
    proof: &HilbertIpcProof,
    premises: &[Formula],
    goal: &Formula,
) -> Result<(), ProofError> {
    if let Some(i) = premises.iter().position(|p| !p.is_propositional()) {
        return Err(ProofError::whole(format!(
            "premise {} is not box-free",
            i + 1
        )));
    }
    for (k, (f, just)) in proof.lines.iter().enumerate() {
        if !f.is_propositional() {
            return Err(ProofError::at(k, "formula is not box-free"));
        }
        match just {
            IpcJustification::Axiom(ax, args) => match ax.instantiate(args) {
                None => {
                    return Err(ProofError::at(
                        k,
                        format!("{ax} takes {} arguments, got {}", ax.arity(), args.len()),
                    ))
                }
                Some(inst) if inst != *f => {
                    return Err(ProofError::at(k, format!("not the {ax} instance {inst}")))
                }
                Some(_) => {}
            },
            IpcJustification::Hypothesis(i) => match premises.get(*i) {
                Some(p) if p == f => {}
                Some(p) => {
                    return Err(ProofError::at(k, format!("premise {} is {p}", i + 1)));
                }
                None => return Err(ProofError::at(k, format!("no premise {}", i + 1))),
            },
            IpcJustification::ModusPonens(i, j) => {
                if *i >= k || *j >= k {
                    return Err(ProofError::at(
                        k,
                        "modus ponens cites a line that is not earlier",
                    ));
                }
                let minor = &proof.lines[*i].0;
                let major = &proof.lines[*j].0;
                match major.as_imp() {
                    Some((a, b)) if a == minor && b == f => {}
                    _ => {
                        return Err(ProofError::at(
                            k,
                            format!("lines {} and {} do not yield this formula", i + 1, j + 1),
                        ))
                    }
                }
            }
        }
    }
    match proof.conclusion() {
        None => Err(ProofError::whole("empty proof")),
        Some(last) if last != goal => Err(ProofError::at(
            proof.lines.len() - 1,
            format!("last line is not the goal {goal}"),
        )),
        Some(_) => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn single_axiom_line() {
        let proof = HilbertIpcProof {
            lines: vec![(
                f("p -> q -> p"),
                IpcJustification::Axiom(IpcAxiom::A1, vec![f("p"), f("q")]),
            )],
        };
        check_hilbert_ipc(&proof, &[], &f("p -> q -> p")).unwrap();
    }

    #[test]
    fn modus_ponens_must_cite_earlier_lines() {
        let proof = HilbertIpcProof {
            lines: vec![
                (f("q"), IpcJustification::ModusPonens(1, 2)),
                (f("p"), IpcJustification::Hypothesis(0)),
                (f("p -> q"), IpcJustification::Hypothesis(1)),
            ],
        };
        let err = check_hilbert_ipc(&proof, &[f("p"), f("p -> q")], &f("p -> q")).unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn wrong_instance_and_goal() {
        let bad = HilbertIpcProof {
            lines: vec![(
                f("p -> p"),
                IpcJustification::Axiom(IpcAxiom::A9, vec![f("p")]),
            )],
        };
        assert_eq!(
            check_hilbert_ipc(&bad, &[], &f("p -> p")).unwrap_err().line,
            1
        );
        let ok = HilbertIpcProof {
            lines: vec![(
                f("bot -> p"),
                IpcJustification::Axiom(IpcAxiom::A9, vec![f("p")]),
            )],
        };
        assert!(check_hilbert_ipc(&ok, &[], &f("bot -> q")).is_err());
    }

    #[test]
    fn five_is_conjunction_introduction() {
        assert_eq!(
            IpcAxiom::A5.instantiate(&[f("p"), f("q")]).unwrap(),
            f("p -> (q -> p /\\ q)")
        );
    }
}
