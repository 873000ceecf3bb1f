//! The proof kernel for L: intuitionistic tautologies and three box axioms,
//! modus ponens, necessitation restricted to axiom lines, and the theorem
//! schemes for excluded middle and substitution of identicals.

mod builder;
mod derive;
mod transform;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::formula::{Formula, Skeleton, Var};
pub use crate::ipc::ProofError;
use crate::ipc::{ipc_provable, IpcLimits};

pub use builder::LProofBuilder;
pub use derive::{classical_proof, derive_box_conj, derive_box_top_equiv, derive_k};
pub use transform::{deduction_transform, embed_ipc};

/// The four axiom schemes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomScheme {
    /// Substitution instances of intuitionistic tautologies.
    I,
    /// `[]a -> a`
    II,
    /// `[](a -> b) -> ([](b -> c) -> [](a -> c))`
    III,
    /// `[](a \/ b) -> []a \/ []b`
    IV,
}

impl fmt::Display for AxiomScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomScheme::I => "I",
            AxiomScheme::II => "II",
            AxiomScheme::III => "III",
            AxiomScheme::IV => "IV",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LJustification {
    /// The witness's body must be IPC-provable and instantiate to the line.
    AxI(Skeleton),
    AxII(Formula),
    AxIII(Formula, Formula, Formula),
    AxIV(Formula, Formula),
    /// Index into the premises.
    Hypothesis(usize),
    /// `MP(i, j)`: line `i` proves `a`, line `j` proves `a -> b`.
    MP(usize, usize),
    /// Necessitation of an axiom line.
    AN(usize),
    ThmEM(Formula),
    ThmSP {
        phi: Formula,
        psi: Formula,
        chi: Formula,
        x: Var,
    },
}

impl LJustification {
    pub fn is_axiom(&self) -> bool {
        matches!(
            self,
            LJustification::AxI(_)
                | LJustification::AxII(_)
                | LJustification::AxIII(..)
                | LJustification::AxIV(..)
        )
    }
}

/// A derivation in L. Line references are 0-based; diagnostics count from 1.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LProof {
    pub premises: Vec<Formula>,
    pub lines: Vec<(Formula, LJustification)>,
}

impl LProof {
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

pub fn ax2_instance(a: &Formula) -> Formula {
    Formula::imp(Formula::boxed(a.clone()), a.clone())
}

pub fn ax3_instance(a: &Formula, b: &Formula, c: &Formula) -> Formula {
    let bx = |x: &Formula, y: &Formula| Formula::boxed(Formula::imp(x.clone(), y.clone()));
    Formula::imp(bx(a, b), Formula::imp(bx(b, c), bx(a, c)))
}

pub fn ax4_instance(a: &Formula, b: &Formula) -> Formula {
    Formula::imp(
        Formula::boxed(Formula::or(a.clone(), b.clone())),
        Formula::or(Formula::boxed(a.clone()), Formula::boxed(b.clone())),
    )
}

pub fn em_instance(a: &Formula) -> Formula {
    Formula::or(a.clone(), Formula::neg(a.clone()))
}

pub fn sp_instance(phi: &Formula, psi: &Formula, chi: &Formula, x: Var) -> Formula {
    Formula::imp(
        Formula::equiv(phi.clone(), psi.clone()),
        Formula::equiv(chi.substitute(x, phi), chi.substitute(x, psi)),
    )
}

/// Renames variables to `x0, x1, ...` in order of first occurrence.
fn canonical(f: &Formula) -> Formula {
    fn go(f: &Formula, names: &mut HashMap<Var, Var>) -> Formula {
        match f {
            Formula::Bot => Formula::Bot,
            Formula::Atom(v) => {
                let next = Var(names.len() as u32);
                Formula::Atom(*names.entry(*v).or_insert(next))
            }
            Formula::Imp(a, b) => {
                let a = go(a, names);
                Formula::imp(a, go(b, names))
            }
            Formula::Or(a, b) => {
                let a = go(a, names);
                Formula::or(a, go(b, names))
            }
            Formula::And(a, b) => {
                let a = go(a, names);
                Formula::and(a, go(b, names))
            }
            Formula::Box(a) => Formula::boxed(go(a, names)),
        }
    }
    go(f, &mut HashMap::new())
}

const TAUTOLOGY_CACHE_LIMIT: usize = 1 << 18;

/// IPC provability of a box-free formula, memoised up to renaming.
pub(crate) fn is_ipc_tautology(body: &Formula) -> Result<bool, String> {
    static CACHE: OnceLock<Mutex<HashMap<Formula, bool>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = canonical(body);
    if let Some(&known) = cache.lock().unwrap().get(&key) {
        return Ok(known);
    }
    let verdict = ipc_provable(&[], &key, IpcLimits::default()).map_err(|e| e.to_string())?;
    let mut cache = cache.lock().unwrap();
    if cache.len() >= TAUTOLOGY_CACHE_LIMIT {
        cache.clear();
    }
    cache.insert(key, verdict);
    Ok(verdict)
}

/// The lowest-numbered scheme that `f` instantiates, if any.
pub fn match_axiom(f: &Formula) -> Option<AxiomScheme> {
    if is_ipc_tautology(f.skeleton().body.formula()) == Ok(true) {
        return Some(AxiomScheme::I);
    }
    let (ante, cons) = f.as_imp()?;
    let Formula::Box(inner) = ante else {
        return None;
    };
    if **inner == *cons {
        return Some(AxiomScheme::II);
    }
    if let (Some((a, b)), Some((Formula::Box(bc), Formula::Box(ac)))) =
        (inner.as_imp(), cons.as_imp())
    {
        if let (Some((b2, c)), Some((a2, c2))) = (bc.as_imp(), ac.as_imp()) {
            if b == b2 && a == a2 && c == c2 {
                return Some(AxiomScheme::III);
            }
        }
    }
    if let (Formula::Or(a, b), Formula::Or(ba, bb)) = (&**inner, cons) {
        if **ba == Formula::boxed((**a).clone()) && **bb == Formula::boxed((**b).clone()) {
            return Some(AxiomScheme::IV);
        }
    }
    None
}

/// Checks every line of `proof`. The proved formula is the last line.
pub fn check_lproof(proof: &LProof) -> Result<(), ProofError> {
    for (k, (f, just)) in proof.lines.iter().enumerate() {
        check_line(proof, k, f, just).map_err(|reason| ProofError::at(k, reason))?;
    }
    if proof.lines.is_empty() {
        return Err(ProofError::whole("empty proof"));
    }
    Ok(())
}

/// Checks `proof` and that it ends in `goal`.
pub fn check_lproof_of(proof: &LProof, goal: &Formula) -> Result<(), ProofError> {
    check_lproof(proof)?;
    if proof.conclusion() != Some(goal) {
        return Err(ProofError::at(
            proof.lines.len() - 1,
            format!("last line is not the goal {goal}"),
        ));
    }
    Ok(())
}

fn expect(found: &Formula, wanted: Formula, what: &str) -> Result<(), String> {
    if *found == wanted {
        Ok(())
    } else {
        Err(format!("not the {what} instance {wanted}"))
    }
}

fn earlier(k: usize, i: usize) -> Result<(), String> {
    if i < k {
        Ok(())
    } else {
        Err(format!("cites line {} which is not earlier", i + 1))
    }
}

fn check_line(proof: &LProof, k: usize, f: &Formula, just: &LJustification) -> Result<(), String> {
    match just {
        LJustification::AxI(witness) => {
            if witness.instantiate() != *f {
                return Err("witness does not instantiate to this formula".into());
            }
            match is_ipc_tautology(witness.body.formula())? {
                true => Ok(()),
                false => Err(format!("{} is not an IPC tautology", witness.body)),
            }
        }
        LJustification::AxII(a) => expect(f, ax2_instance(a), "axiom II"),
        LJustification::AxIII(a, b, c) => expect(f, ax3_instance(a, b, c), "axiom III"),
        LJustification::AxIV(a, b) => expect(f, ax4_instance(a, b), "axiom IV"),
        LJustification::Hypothesis(i) => match proof.premises.get(*i) {
            Some(p) if p == f => Ok(()),
            Some(p) => Err(format!("premise {} is {p}", i + 1)),
            None => Err(format!("no premise {}", i + 1)),
        },
        LJustification::MP(i, j) => {
            earlier(k, *i)?;
            earlier(k, *j)?;
            match proof.lines[*j].0.as_imp() {
                Some((a, b)) if *a == proof.lines[*i].0 && b == f => Ok(()),
                _ => Err(format!(
                    "lines {} and {} do not yield this formula",
                    i + 1,
                    j + 1
                )),
            }
        }
        LJustification::AN(i) => {
            earlier(k, *i)?;
            let (g, cited) = &proof.lines[*i];
            if !cited.is_axiom() {
                return Err(format!(
                    "necessitation of line {}, which is not an axiom",
                    i + 1
                ));
            }
            expect(f, Formula::boxed(g.clone()), "necessitation")
        }
        LJustification::ThmEM(a) => expect(f, em_instance(a), "excluded middle"),
        LJustification::ThmSP { phi, psi, chi, x } => {
            expect(f, sp_instance(phi, psi, chi, *x), "substitution principle")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn proof(lines: Vec<(Formula, LJustification)>) -> LProof {
        LProof {
            premises: vec![],
            lines,
        }
    }

    #[test]
    fn scheme_recognition() {
        assert_eq!(match_axiom(&f("[]p -> p")), Some(AxiomScheme::II));
        assert_eq!(
            match_axiom(&f("[](p \\/ q) -> []p \\/ []q")),
            Some(AxiomScheme::IV)
        );
        assert_eq!(match_axiom(&f("[]p -> []p")), Some(AxiomScheme::I));
        assert_eq!(
            match_axiom(&f("[](p -> q) -> [](q -> r) -> [](p -> r)")),
            Some(AxiomScheme::III)
        );
        assert_eq!(
            match_axiom(&f("[](p -> p) -> (p -> p)")),
            Some(AxiomScheme::I)
        );
        assert_eq!(match_axiom(&f("p \\/ ~p")), None);
        assert_eq!(match_axiom(&f("[](p \\/ ~p)")), None);
        assert_eq!(match_axiom(&f("p -> []p")), None);
    }

    #[test]
    fn axiom_two_line() {
        let p = proof(vec![(f("[]p -> p"), LJustification::AxII(f("p")))]);
        check_lproof_of(&p, &f("[]p -> p")).unwrap();
    }

    #[test]
    fn necessitation_of_a_theorem_is_rejected() {
        let p = proof(vec![
            (f("p \\/ ~p"), LJustification::ThmEM(f("p"))),
            (f("[](p \\/ ~p)"), LJustification::AN(0)),
        ]);
        let err = check_lproof(&p).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.reason.contains("line 1"), "{}", err.reason);
    }

    #[test]
    fn necessitation_of_an_axiom() {
        let ax = f("[]p -> p");
        let p = proof(vec![
            (ax.clone(), LJustification::AxI(Skeleton::of(&f("p -> p")))),
            (ax.clone(), LJustification::AxII(f("p"))),
            (Formula::boxed(ax), LJustification::AN(1)),
        ]);
        // line 1 has a valid witness only if it instantiates to the line
        assert_eq!(check_lproof(&p).unwrap_err().line, 1);
        let mut fixed = p.clone();
        fixed.lines.remove(0);
        fixed.lines[1].1 = LJustification::AN(0);
        check_lproof(&fixed).unwrap();
    }

    #[test]
    fn tautology_witness_must_be_provable() {
        let bad = f("p \\/ ~p");
        let p = proof(vec![(bad.clone(), LJustification::AxI(Skeleton::of(&bad)))]);
        assert!(check_lproof(&p).is_err());
    }

    #[test]
    fn substitution_principle_shape() {
        let (a, b) = (f("p"), f("~~p"));
        let chi = f("[]x3 /\\ q");
        let line = sp_instance(&a, &b, &chi, Var(3));
        assert_eq!(line, f("(p == ~~p) -> ([]p /\\ q == []~~p /\\ q)"));
        let p = proof(vec![(
            line,
            LJustification::ThmSP {
                phi: a,
                psi: b,
                chi,
                x: Var(3),
            },
        )]);
        check_lproof(&p).unwrap();
    }

    #[test]
    fn modus_ponens_order() {
        let p = LProof {
            premises: vec![f("p"), f("p -> q")],
            lines: vec![
                (f("p"), LJustification::Hypothesis(0)),
                (f("q"), LJustification::MP(0, 2)),
                (f("p -> q"), LJustification::Hypothesis(1)),
            ],
        };
        assert_eq!(check_lproof(&p).unwrap_err().line, 2);
    }
}
