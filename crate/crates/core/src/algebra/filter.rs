use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::heyting::HeytingAlgebra;

/// A set of algebra elements, checked against the filter laws on demand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Filter(pub BTreeSet<usize>);

impl Filter {
    /// `{ b : a <= b }`.
    pub fn principal(h: &HeytingAlgebra, a: usize) -> Filter {
        Filter(h.elements().filter(|&b| h.leq(a, b)).collect())
    }

    pub fn contains(&self, a: usize) -> bool {
        self.0.contains(&a)
    }

    /// Upward closed, closed under meets, without bottom, and nonempty.
    pub fn is_filter(&self, h: &HeytingAlgebra) -> bool {
        !self.0.is_empty()
            && !self.contains(h.bot())
            && self.0.iter().all(|&a| {
                h.elements().all(|b| !h.leq(a, b) || self.contains(b))
                    && self.0.iter().all(|&b| self.contains(h.meet(a, b)))
            })
    }

    /// A filter containing one argument of every join it contains.
    pub fn is_prime(&self, h: &HeytingAlgebra) -> bool {
        self.is_filter(h)
            && h.elements().all(|a| {
                h.elements()
                    .all(|b| !self.contains(h.join(a, b)) || self.contains(a) || self.contains(b))
            })
    }

    /// A filter not properly contained in another filter.
    pub fn is_ultra(&self, h: &HeytingAlgebra) -> bool {
        self.is_filter(h)
            && enumerate_filters(h)
                .iter()
                .all(|g| !g.0.is_superset(&self.0) || *g == *self)
    }
}

/// Every filter. In a finite lattice these are the principal filters of the
/// non-bottom elements.
pub fn enumerate_filters(h: &HeytingAlgebra) -> Vec<Filter> {
    h.elements()
        .filter(|&a| a != h.bot())
        .map(|a| Filter::principal(h, a))
        .collect()
}

/// The maximal filters: principal filters of the atoms.
pub fn enumerate_ultrafilters(h: &HeytingAlgebra) -> Vec<Filter> {
    let atoms = h
        .elements()
        .filter(|&a| a != h.bot() && h.elements().all(|b| b == h.bot() || b == a || !h.leq(b, a)));
    atoms.map(|a| Filter::principal(h, a)).collect()
}
