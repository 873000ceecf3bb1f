use std::collections::HashMap;

use super::{
    ax2_instance, ax3_instance, ax4_instance, em_instance, sp_instance, LJustification, LProof,
};
use crate::formula::{Formula, Skeleton, Var};

/// Assembles L proofs line by line. Lines are shared by formula, except
/// that axiom lines are tracked separately so necessitation always cites an
/// axiom.
#[derive(Clone, Debug, Default)]
pub struct LProofBuilder {
    premises: Vec<Formula>,
    lines: Vec<(Formula, LJustification)>,
    index: HashMap<Formula, usize>,
    axioms: HashMap<Formula, usize>,
}

impl LProofBuilder {
    pub fn new(premises: Vec<Formula>) -> LProofBuilder {
        LProofBuilder {
            premises,
            ..LProofBuilder::default()
        }
    }

    pub fn formula(&self, line: usize) -> &Formula {
        &self.lines[line].0
    }

    pub fn premises(&self) -> &[Formula] {
        &self.premises
    }

    fn push(&mut self, f: Formula, just: LJustification) -> usize {
        let is_axiom = just.is_axiom();
        let k = self.lines.len();
        self.lines.push((f.clone(), just));
        if is_axiom {
            self.axioms.entry(f.clone()).or_insert(k);
        }
        self.index.entry(f).or_insert(k);
        k
    }

    fn shared(&mut self, f: Formula, just: impl FnOnce() -> LJustification) -> usize {
        match self.index.get(&f) {
            Some(&k) => k,
            None => self.push(f, just()),
        }
    }

    fn axiom(&mut self, f: Formula, just: impl FnOnce() -> LJustification) -> usize {
        match self.axioms.get(&f) {
            Some(&k) => k,
            None => self.push(f, just()),
        }
    }

    /// Axiom I by the formula's own skeleton. The caller vouches that the
    /// skeleton is an IPC tautology; the kernel decides it.
    pub fn taut(&mut self, f: Formula) -> usize {
        let witness = Skeleton::of(&f);
        self.axiom(f, || LJustification::AxI(witness))
    }

    pub fn ax2(&mut self, a: &Formula) -> usize {
        self.axiom(ax2_instance(a), || LJustification::AxII(a.clone()))
    }

    pub fn ax3(&mut self, a: &Formula, b: &Formula, c: &Formula) -> usize {
        self.axiom(ax3_instance(a, b, c), || {
            LJustification::AxIII(a.clone(), b.clone(), c.clone())
        })
    }

    pub fn ax4(&mut self, a: &Formula, b: &Formula) -> usize {
        self.axiom(ax4_instance(a, b), || {
            LJustification::AxIV(a.clone(), b.clone())
        })
    }

    /// Re-derives an axiom line with the given justification.
    pub fn axiom_line(&mut self, f: Formula, just: LJustification) -> usize {
        assert!(just.is_axiom());
        self.axiom(f, || just)
    }

    pub fn hyp(&mut self, i: usize) -> usize {
        let f = self.premises[i].clone();
        self.shared(f, || LJustification::Hypothesis(i))
    }

    pub fn em(&mut self, a: &Formula) -> usize {
        self.shared(em_instance(a), || LJustification::ThmEM(a.clone()))
    }

    pub fn sp(&mut self, phi: &Formula, psi: &Formula, chi: &Formula, x: Var) -> usize {
        self.shared(sp_instance(phi, psi, chi, x), || LJustification::ThmSP {
            phi: phi.clone(),
            psi: psi.clone(),
            chi: chi.clone(),
            x,
        })
    }

    /// Modus ponens from `minor : a` and `major : a -> b`.
    pub fn mp(&mut self, minor: usize, major: usize) -> usize {
        let b = match self.lines[major].0.as_imp() {
            Some((a, b)) if *a == self.lines[minor].0 => b.clone(),
            _ => panic!(
                "modus ponens misuse: {} with {}",
                self.lines[minor].0, self.lines[major].0
            ),
        };
        self.shared(b, || LJustification::MP(minor, major))
    }

    /// Necessitation; `axiom` must be an axiom line.
    pub fn an(&mut self, axiom: usize) -> usize {
        assert!(
            self.lines[axiom].1.is_axiom(),
            "necessitation of a non-axiom"
        );
        let f = Formula::boxed(self.lines[axiom].0.clone());
        self.shared(f, || LJustification::AN(axiom))
    }

    /// `a /\ b` from lines `a` and `b`.
    pub fn conj(&mut self, a: usize, b: usize) -> usize {
        let (fa, fb) = (self.formula(a).clone(), self.formula(b).clone());
        let t = self.taut(Formula::imp(
            fa.clone(),
            Formula::imp(fb.clone(), Formula::and(fa, fb)),
        ));
        let t = self.mp(a, t);
        self.mp(b, t)
    }

    /// `a -> c` from lines `a -> b` and `b -> c`.
    pub fn chain(&mut self, ab: usize, bc: usize) -> usize {
        let (a, b) = split_imp(self.formula(ab));
        let (_, c) = split_imp(self.formula(bc));
        let t = self.taut(Formula::imp(
            Formula::imp(a.clone(), b.clone()),
            Formula::imp(Formula::imp(b, c.clone()), Formula::imp(a, c)),
        ));
        let t = self.mp(ab, t);
        self.mp(bc, t)
    }

    /// `h -> a` from line `a`.
    pub fn weaken(&mut self, a: usize, h: &Formula) -> usize {
        let fa = self.formula(a).clone();
        let t = self.taut(Formula::imp(fa.clone(), Formula::imp(h.clone(), fa)));
        self.mp(a, t)
    }

    /// Copies a premise-free proof, returning the line of its conclusion.
    pub fn include(&mut self, proof: &LProof) -> usize {
        assert!(
            proof.premises.is_empty(),
            "included proofs have no premises"
        );
        let mut map = Vec::with_capacity(proof.lines.len());
        for (f, just) in &proof.lines {
            let k = match just {
                LJustification::MP(i, j) => self.mp(map[*i], map[*j]),
                LJustification::AN(i) => self.an(map[*i]),
                LJustification::Hypothesis(_) => unreachable!(),
                other if other.is_axiom() => self.axiom_line(f.clone(), other.clone()),
                other => self.shared(f.clone(), || other.clone()),
            };
            map.push(k);
        }
        *map.last().expect("included proof is nonempty")
    }

    /// Ends the proof at `goal`, repeating its line last if needed.
    pub fn finish(mut self, goal: &Formula) -> LProof {
        let k = *self
            .index
            .get(goal)
            .unwrap_or_else(|| panic!("{goal} was never derived"));
        if k + 1 != self.lines.len() {
            let just = self.lines[k].1.clone();
            self.lines.push((goal.clone(), just));
        }
        LProof {
            premises: self.premises,
            lines: self.lines,
        }
    }
}

fn split_imp(f: &Formula) -> (Formula, Formula) {
    let (a, b) = f.as_imp().expect("an implication");
    (a.clone(), b.clone())
}
