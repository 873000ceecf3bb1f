use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::formula::{Formula, Var};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KripkeError {
    #[error("model has no worlds")]
    Empty,
    #[error("order table has the wrong shape")]
    Shape,
    #[error("order is not reflexive at world {0}")]
    NotReflexive(usize),
    #[error("order is not transitive at worlds {0}, {1}, {2}")]
    NotTransitive(usize, usize, usize),
    #[error("order is not antisymmetric at worlds {0}, {1}")]
    NotAntisymmetric(usize, usize),
    #[error("world {0} is not above the root")]
    NotRooted(usize),
    #[error("valuation is not monotone from world {0} to world {1}")]
    NotMonotone(usize, usize),
}

/// A finite rooted intuitionistic Kripke model. Worlds are `0..size()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KripkeModel {
    root: usize,
    /// `order[w][v]` iff `w <= v`.
    order: Vec<Vec<bool>>,
    valuation: Vec<BTreeSet<Var>>,
}

impl KripkeModel {
    pub fn new(
        order: Vec<Vec<bool>>,
        root: usize,
        valuation: Vec<BTreeSet<Var>>,
    ) -> Result<KripkeModel, KripkeError> {
        let model = KripkeModel {
            root,
            order,
            valuation,
        };
        model.validate()?;
        Ok(model)
    }

    /// Builds the reflexive-transitive closure of a forest given by parent
    /// links. World 0 must be the only world without a parent.
    pub fn from_tree(
        parents: &[Option<usize>],
        valuation: Vec<BTreeSet<Var>>,
    ) -> Result<KripkeModel, KripkeError> {
        let n = parents.len();
        let mut order = vec![vec![false; n]; n];
        for v in 0..n {
            let mut cur = Some(v);
            let mut hops = 0;
            while let Some(w) = cur {
                order[w][v] = true;
                cur = parents[w];
                hops += 1;
                if hops > n {
                    return Err(KripkeError::NotAntisymmetric(w, v));
                }
            }
        }
        KripkeModel::new(order, 0, valuation)
    }

    pub fn validate(&self) -> Result<(), KripkeError> {
        let n = self.order.len();
        if n == 0 {
            return Err(KripkeError::Empty);
        }
        if self.valuation.len() != n
            || self.order.iter().any(|row| row.len() != n)
            || self.root >= n
        {
            return Err(KripkeError::Shape);
        }
        for w in 0..n {
            if !self.order[w][w] {
                return Err(KripkeError::NotReflexive(w));
            }
            if !self.order[self.root][w] {
                return Err(KripkeError::NotRooted(w));
            }
        }
        for w in 0..n {
            for v in 0..n {
                if !self.order[w][v] {
                    continue;
                }
                if w != v && self.order[v][w] {
                    return Err(KripkeError::NotAntisymmetric(w, v));
                }
                if !self.valuation[w].is_subset(&self.valuation[v]) {
                    return Err(KripkeError::NotMonotone(w, v));
                }
                for u in 0..n {
                    if self.order[v][u] && !self.order[w][u] {
                        return Err(KripkeError::NotTransitive(w, v, u));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn leq(&self, w: usize, v: usize) -> bool {
        self.order[w][v]
    }

    pub fn valuation(&self, w: usize) -> &BTreeSet<Var> {
        &self.valuation[w]
    }

    /// Worlds with no strict successor.
    pub fn maximal_worlds(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&w| (0..self.size()).all(|v| v == w || !self.order[w][v]))
            .collect()
    }

    /// The set of worlds forcing `f`, indexed by world.
    ///
    /// Panics on a box: the modal operator has no forcing clause here.
    pub fn truth_set(&self, f: &Formula) -> Vec<bool> {
        let n = self.size();
        match f {
            Formula::Bot => vec![false; n],
            Formula::Atom(x) => self.valuation.iter().map(|val| val.contains(x)).collect(),
            Formula::And(a, b) => {
                let (a, b) = (self.truth_set(a), self.truth_set(b));
                a.iter().zip(&b).map(|(x, y)| *x && *y).collect()
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.truth_set(a), self.truth_set(b));
                a.iter().zip(&b).map(|(x, y)| *x || *y).collect()
            }
            Formula::Imp(a, b) => {
                let (a, b) = (self.truth_set(a), self.truth_set(b));
                (0..n)
                    .map(|w| (0..n).all(|v| !self.order[w][v] || !a[v] || b[v]))
                    .collect()
            }
            Formula::Box(_) => panic!("Kripke forcing is defined for box-free formulas only"),
        }
    }

    pub fn forces(&self, w: usize, f: &Formula) -> bool {
        self.truth_set(f)[w]
    }
}

/// Intuitionistic forcing of a box-free formula at world `w`.
pub fn kripke_eval(model: &KripkeModel, w: usize, f: &Formula) -> bool {
    model.forces(w, f)
}
