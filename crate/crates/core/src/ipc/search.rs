//! Contraction-free sequent search (G4ip). Every successful branch builds a
//! proof term; every failed branch builds a countermodel tree whose root
//! forces the antecedent and refutes the goal.
//!
//! Invertible rules run first. What remains is an irreducible sequent whose
//! only options are the right disjunction rules and the left rule for
//! `(a -> b) -> c`. When all options fail, the countermodel is a fresh root
//! carrying the context's atoms, placed below the countermodels of the
//! failed options.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use super::term::NdTerm;
use crate::formula::{Formula, Var};

type Term = Arc<NdTerm>;

#[derive(Debug, Clone)]
pub(crate) struct CounterTree {
    pub atoms: BTreeSet<Var>,
    pub children: Vec<CounterTree>,
}

impl CounterTree {
    /// Preorder flattening: parent links and valuations, root first.
    pub fn flatten(&self) -> (Vec<Option<usize>>, Vec<BTreeSet<Var>>) {
        fn go(
            t: &CounterTree,
            parent: Option<usize>,
            parents: &mut Vec<Option<usize>>,
            vals: &mut Vec<BTreeSet<Var>>,
        ) {
            let me = parents.len();
            parents.push(parent);
            vals.push(t.atoms.clone());
            for c in &t.children {
                go(c, Some(me), parents, vals);
            }
        }
        let mut parents = Vec::new();
        let mut vals = Vec::new();
        go(self, None, &mut parents, &mut vals);
        (parents, vals)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct LimitExceeded;

pub(crate) type Outcome = Result<Term, CounterTree>;

#[derive(Clone, Default)]
struct Context {
    seen: HashSet<Formula>,
    queue: Vec<(Formula, Term)>,
    atoms: BTreeMap<Var, Term>,
    /// `p -> c` whose antecedent atom is not (yet) in the context.
    waiting: Vec<(Var, Formula, Term)>,
    /// `(a -> b) -> c` as `(a, b, c)`.
    nested: Vec<(Formula, Formula, Formula, Term)>,
    disjunctions: Vec<(Formula, Formula, Term)>,
    absurd: Option<Term>,
}

impl Context {
    fn push(&mut self, f: Formula, t: Term) {
        if self.seen.insert(f.clone()) {
            self.queue.push((f, t));
        }
    }

    /// Applies every single-premise invertible left rule to a fixpoint.
    fn saturate(&mut self, fresh: &mut u32) {
        while let Some((f, t)) = self.queue.pop() {
            if self.absurd.is_some() {
                return;
            }
            match f {
                Formula::Bot => self.absurd = Some(t),
                Formula::Atom(v) => {
                    let mut i = 0;
                    while i < self.waiting.len() {
                        if self.waiting[i].0 == v {
                            let (_, c, imp) = self.waiting.swap_remove(i);
                            self.push(c, Arc::new(NdTerm::App(imp, t.clone())));
                        } else {
                            i += 1;
                        }
                    }
                    self.atoms.entry(v).or_insert(t);
                }
                Formula::And(a, b) => {
                    self.push((*a).clone(), Arc::new(NdTerm::Fst(t.clone())));
                    self.push((*b).clone(), Arc::new(NdTerm::Snd(t)));
                }
                Formula::Or(a, b) => self.disjunctions.push(((*a).clone(), (*b).clone(), t)),
                Formula::Imp(a, c) => self.left_implication(&a, &c, t, fresh),
                Formula::Box(_) => unreachable!("search runs on box-free formulas"),
            }
        }
    }

    fn left_implication(&mut self, a: &Formula, c: &Formula, t: Term, fresh: &mut u32) {
        match a {
            Formula::Bot => {}
            Formula::Atom(v) => match self.atoms.get(v) {
                Some(s) => {
                    let s = s.clone();
                    self.push(c.clone(), Arc::new(NdTerm::App(t, s)));
                }
                None => self.waiting.push((*v, c.clone(), t)),
            },
            Formula::And(a1, a2) => {
                // a1 -> (a2 -> c)  by  \x.\y. t (x, y)
                let (x, y) = (next(fresh), next(fresh));
                let body = NdTerm::App(
                    t,
                    Arc::new(NdTerm::Pair(
                        Arc::new(NdTerm::Var(x)),
                        Arc::new(NdTerm::Var(y)),
                    )),
                );
                let term = NdTerm::Lam(
                    x,
                    (**a1).clone(),
                    Arc::new(NdTerm::Lam(y, (**a2).clone(), Arc::new(body))),
                );
                let f = Formula::imp((**a1).clone(), Formula::imp((**a2).clone(), c.clone()));
                self.push(f, Arc::new(term));
            }
            Formula::Or(a1, a2) => {
                let x = next(fresh);
                let left = NdTerm::Lam(
                    x,
                    (**a1).clone(),
                    Arc::new(NdTerm::App(
                        t.clone(),
                        Arc::new(NdTerm::Inl(Arc::new(NdTerm::Var(x)), (**a2).clone())),
                    )),
                );
                let y = next(fresh);
                let right = NdTerm::Lam(
                    y,
                    (**a2).clone(),
                    Arc::new(NdTerm::App(
                        t,
                        Arc::new(NdTerm::Inr((**a1).clone(), Arc::new(NdTerm::Var(y)))),
                    )),
                );
                self.push(Formula::imp((**a1).clone(), c.clone()), Arc::new(left));
                self.push(Formula::imp((**a2).clone(), c.clone()), Arc::new(right));
            }
            Formula::Imp(a1, a2) => {
                self.nested
                    .push(((**a1).clone(), (**a2).clone(), c.clone(), t));
            }
            Formula::Box(_) => unreachable!("search runs on box-free formulas"),
        }
    }
}

fn next(fresh: &mut u32) -> u32 {
    let x = *fresh;
    *fresh += 1;
    x
}

pub(crate) struct Search {
    fresh: u32,
    steps: u64,
    max_steps: u64,
}

impl Search {
    pub fn run(
        premises: &[Formula],
        goal: &Formula,
        max_steps: u64,
    ) -> Result<Outcome, LimitExceeded> {
        let mut search = Search {
            fresh: premises.len() as u32,
            steps: 0,
            max_steps,
        };
        let mut ctx = Context::default();
        for (i, p) in premises.iter().enumerate() {
            ctx.push(p.clone(), Arc::new(NdTerm::Var(i as u32)));
        }
        search.solve(ctx, goal)
    }

    fn solve(&mut self, mut ctx: Context, goal: &Formula) -> Result<Outcome, LimitExceeded> {
        self.steps += 1;
        if self.steps > self.max_steps {
            return Err(LimitExceeded);
        }
        match goal {
            Formula::Imp(a, b) => {
                let x = next(&mut self.fresh);
                ctx.push((**a).clone(), Arc::new(NdTerm::Var(x)));
                return Ok(self
                    .solve(ctx, b)?
                    .map(|t| Arc::new(NdTerm::Lam(x, (**a).clone(), t))));
            }
            Formula::And(a, b) => {
                let ta = match self.solve(ctx.clone(), a)? {
                    Ok(t) => t,
                    Err(cm) => return Ok(Err(cm)),
                };
                return Ok(self.solve(ctx, b)?.map(|tb| Arc::new(NdTerm::Pair(ta, tb))));
            }
            Formula::Box(_) => unreachable!("search runs on box-free formulas"),
            _ => {}
        }

        ctx.saturate(&mut self.fresh);
        if let Some(bot) = ctx.absurd.take() {
            return Ok(Ok(Arc::new(NdTerm::Abort(bot, goal.clone()))));
        }
        if let Formula::Atom(v) = goal {
            if let Some(t) = ctx.atoms.get(v) {
                return Ok(Ok(t.clone()));
            }
        }
        if let Some((a, b, t)) = ctx.disjunctions.pop() {
            let x = next(&mut self.fresh);
            let mut left = ctx.clone();
            left.push(a.clone(), Arc::new(NdTerm::Var(x)));
            let ta = match self.solve(left, goal)? {
                Ok(ta) => ta,
                Err(cm) => return Ok(Err(cm)),
            };
            let y = next(&mut self.fresh);
            ctx.push(b, Arc::new(NdTerm::Var(y)));
            return Ok(self
                .solve(ctx, goal)?
                .map(|tb| Arc::new(NdTerm::Case(t, x, ta, y, tb))));
        }

        let mut children = Vec::new();
        if let Formula::Or(g1, g2) = goal {
            match self.solve(ctx.clone(), g1)? {
                Ok(t) => return Ok(Ok(Arc::new(NdTerm::Inl(t, (**g2).clone())))),
                Err(cm) => children.push(cm),
            }
            match self.solve(ctx.clone(), g2)? {
                Ok(t) => return Ok(Ok(Arc::new(NdTerm::Inr((**g1).clone(), t)))),
                Err(cm) => children.push(cm),
            }
        }
        for i in 0..ctx.nested.len() {
            let (a1, a2, c, t) = ctx.nested[i].clone();
            let mut left = ctx.clone();
            left.nested.remove(i);
            // a2 -> c  by  \y. t (\z. y)
            let (y, z) = (next(&mut self.fresh), next(&mut self.fresh));
            let weakened = NdTerm::Lam(
                y,
                a2.clone(),
                Arc::new(NdTerm::App(
                    t.clone(),
                    Arc::new(NdTerm::Lam(z, a1.clone(), Arc::new(NdTerm::Var(y)))),
                )),
            );
            left.push(Formula::imp(a2.clone(), c.clone()), Arc::new(weakened));
            match self.solve(left, &Formula::imp(a1, a2))? {
                Err(cm) => children.push(cm),
                Ok(u) => {
                    // the right premise is invertible: its verdict is final
                    let mut right = ctx;
                    right.nested.remove(i);
                    right.push(c, Arc::new(NdTerm::App(t, u)));
                    return self.solve(right, goal);
                }
            }
        }
        Ok(Err(CounterTree {
            atoms: ctx.atoms.keys().copied().collect(),
            children,
        }))
    }
}
