//! The formula language: propositional variables, the five primitive
//! connectives plus the box, and the derived abbreviations.
//!
//! Derived connectives (`~`, `top`, `<->`, `==`) are expanded when they are
//! built, so every consumer only ever sees the six primitive constructors.

mod parse;
mod print;
mod skeleton;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use parse::{parse, ParseError};
pub use skeleton::Skeleton;

/// A propositional variable `x_i`.
///
/// `x0`, `x1` and `x2` are written `p`, `q` and `r` in the text syntax.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

impl Var {
    pub fn index(self) -> u32 {
        self.0
    }
}

impl serde::Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Var {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Var, D::Error> {
        let text = String::deserialize(d)?;
        match parse(&text) {
            Ok(Formula::Atom(v)) => Ok(v),
            _ => Err(serde::de::Error::custom(format!("not a variable: {text}"))),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("p"),
            1 => f.write_str("q"),
            2 => f.write_str("r"),
            n => write!(f, "x{n}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    Bot,
    Atom(Var),
    Imp(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Box(Arc<Formula>),
}

impl Formula {
    pub fn atom(index: u32) -> Formula {
        Formula::Atom(Var(index))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn boxed(a: Formula) -> Formula {
        Formula::Box(Arc::new(a))
    }

    /// `~a`, i.e. `a -> bot`.
    pub fn neg(a: Formula) -> Formula {
        Formula::imp(a, Formula::Bot)
    }

    /// `top`, i.e. `bot -> bot`.
    pub fn top() -> Formula {
        Formula::neg(Formula::Bot)
    }

    /// `(a -> b) /\ (b -> a)`.
    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::and(Formula::imp(a.clone(), b.clone()), Formula::imp(b, a))
    }

    /// Strict equivalence `[](a -> b) /\ [](b -> a)`, read as propositional identity.
    pub fn equiv(a: Formula, b: Formula) -> Formula {
        Formula::and(
            Formula::boxed(Formula::imp(a.clone(), b.clone())),
            Formula::boxed(Formula::imp(b, a)),
        )
    }

    /// Right-nested conjunction of `parts`; `top` when empty.
    pub fn conjoin(parts: &[Formula]) -> Formula {
        match parts.split_last() {
            None => Formula::top(),
            Some((last, rest)) => rest
                .iter()
                .rev()
                .fold(last.clone(), |acc, f| Formula::and(f.clone(), acc)),
        }
    }

    /// Symbol count of the text form, with `~a` counted as one connective
    /// applied to `a`.
    pub fn size(&self) -> usize {
        match self {
            Formula::Bot | Formula::Atom(_) => 1,
            Formula::Imp(a, b) if **b == Formula::Bot => 1 + a.size(),
            Formula::Imp(a, b) | Formula::Or(a, b) | Formula::And(a, b) => 1 + a.size() + b.size(),
            Formula::Box(a) => 1 + a.size(),
        }
    }

    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::Bot | Formula::Atom(_) => true,
            Formula::Imp(a, b) | Formula::Or(a, b) | Formula::And(a, b) => {
                a.is_propositional() && b.is_propositional()
            }
            Formula::Box(_) => false,
        }
    }

    /// Certifies membership in the box-free fragment.
    pub fn as_propositional(&self) -> Option<PropFormula> {
        self.is_propositional().then(|| PropFormula(self.clone()))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Formula::Bot => {}
            Formula::Atom(v) => {
                out.insert(*v);
            }
            Formula::Imp(a, b) | Formula::Or(a, b) | Formula::And(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Box(a) => a.collect_vars(out),
        }
    }

    pub fn max_var(&self) -> Option<Var> {
        self.vars().into_iter().next_back()
    }

    pub fn occurs(&self, x: Var) -> bool {
        match self {
            Formula::Bot => false,
            Formula::Atom(v) => *v == x,
            Formula::Imp(a, b) | Formula::Or(a, b) | Formula::And(a, b) => {
                a.occurs(x) || b.occurs(x)
            }
            Formula::Box(a) => a.occurs(x),
        }
    }

    /// `self[x := by]`.
    pub fn substitute(&self, x: Var, by: &Formula) -> Formula {
        if !self.occurs(x) {
            return self.clone();
        }
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Atom(v) if *v == x => by.clone(),
            Formula::Atom(_) => self.clone(),
            Formula::Imp(a, b) => Formula::imp(a.substitute(x, by), b.substitute(x, by)),
            Formula::Or(a, b) => Formula::or(a.substitute(x, by), b.substitute(x, by)),
            Formula::And(a, b) => Formula::and(a.substitute(x, by), b.substitute(x, by)),
            Formula::Box(a) => Formula::boxed(a.substitute(x, by)),
        }
    }

    /// Simultaneous substitution; variables outside `map` are left alone.
    pub fn substitute_all(&self, map: &BTreeMap<Var, Formula>) -> Formula {
        match self {
            Formula::Bot => Formula::Bot,
            Formula::Atom(v) => map.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Imp(a, b) => Formula::imp(a.substitute_all(map), b.substitute_all(map)),
            Formula::Or(a, b) => Formula::or(a.substitute_all(map), b.substitute_all(map)),
            Formula::And(a, b) => Formula::and(a.substitute_all(map), b.substitute_all(map)),
            Formula::Box(a) => Formula::boxed(a.substitute_all(map)),
        }
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton::of(self)
    }

    /// All subformulas, each listed once, children before parents.
    pub fn subformulas(&self) -> Vec<Formula> {
        fn walk(f: &Formula, seen: &mut BTreeSet<Formula>, out: &mut Vec<Formula>) {
            if seen.contains(f) {
                return;
            }
            match f {
                Formula::Bot | Formula::Atom(_) => {}
                Formula::Imp(a, b) | Formula::Or(a, b) | Formula::And(a, b) => {
                    walk(a, seen, out);
                    walk(b, seen, out);
                }
                Formula::Box(a) => walk(a, seen, out),
            }
            seen.insert(f.clone());
            out.push(f.clone());
        }
        let mut out = Vec::new();
        walk(self, &mut BTreeSet::new(), &mut out);
        out
    }

    /// Splits `a -> b`.
    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print::write_formula(f, self)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl serde::Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Formula, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A formula certified to contain no box.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PropFormula(Formula);

impl PropFormula {
    pub fn new(f: Formula) -> Option<PropFormula> {
        f.as_propositional()
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }
}

impl std::ops::Deref for PropFormula {
    type Target = Formula;

    fn deref(&self) -> &Formula {
        &self.0
    }
}

impl fmt::Display for PropFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Every formula over `vars` of size at most `max_size`, sorted by size and
/// then by the derived order. `modal` includes box formulas.
///
/// Each formula appears exactly once: a right operand `bot` under `->` is
/// produced by the negation case only.
pub fn enumerate_formulas(vars: &[Var], max_size: usize, modal: bool) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(); max_size + 1];
    if max_size == 0 {
        return Vec::new();
    }
    by_size[1].push(Formula::Bot);
    by_size[1].extend(vars.iter().map(|v| Formula::Atom(*v)));
    for n in 2..=max_size {
        let mut level = Vec::new();
        for a in &by_size[n - 1] {
            level.push(Formula::neg(a.clone()));
            if modal {
                level.push(Formula::boxed(a.clone()));
            }
        }
        for left in 1..n - 1 {
            let right = n - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    if *b != Formula::Bot {
                        level.push(Formula::imp(a.clone(), b.clone()));
                    }
                    level.push(Formula::or(a.clone(), b.clone()));
                    level.push(Formula::and(a.clone(), b.clone()));
                }
            }
        }
        level.sort();
        by_size[n] = level;
    }
    by_size.into_iter().flatten().collect()
}
