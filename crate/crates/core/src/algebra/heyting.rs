use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::poset::{posets_with_small_lattice, FinitePoset};

/// A finite Heyting algebra on `0..size`, given by its operation tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HeytingTables", into = "HeytingTables")]
pub struct HeytingAlgebra {
    size: usize,
    bot: usize,
    top: usize,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    imp: Vec<Vec<usize>>,
}

/// Unchecked tables as they appear in files.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HeytingTables {
    pub size: usize,
    pub bot: usize,
    pub top: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("tables do not have shape {0}x{0} with entries below {0}")]
    Shape(usize),
    #[error("lattice law `{law}` fails at {at:?}")]
    Lattice { law: &'static str, at: Vec<usize> },
    #[error("residuation fails at {0}, {1}, {2}")]
    Residuation(usize, usize, usize),
    #[error("size bound {bound} exceeded")]
    Bound { bound: usize },
}

impl From<HeytingAlgebra> for HeytingTables {
    fn from(h: HeytingAlgebra) -> HeytingTables {
        HeytingTables {
            size: h.size,
            bot: h.bot,
            top: h.top,
            meet: h.meet,
            join: h.join,
            imp: h.imp,
        }
    }
}

impl TryFrom<HeytingTables> for HeytingAlgebra {
    type Error = AlgebraError;

    fn try_from(t: HeytingTables) -> Result<HeytingAlgebra, AlgebraError> {
        HeytingAlgebra::from_tables(t)
    }
}

impl HeytingAlgebra {
    /// Validates bounded-lattice laws and residuation exhaustively.
    pub fn from_tables(t: HeytingTables) -> Result<HeytingAlgebra, AlgebraError> {
        let n = t.size;
        let square = |m: &Vec<Vec<usize>>| {
            m.len() == n
                && m.iter()
                    .all(|row| row.len() == n && row.iter().all(|&x| x < n))
        };
        if n == 0
            || t.bot >= n
            || t.top >= n
            || !square(&t.meet)
            || !square(&t.join)
            || !square(&t.imp)
        {
            return Err(AlgebraError::Shape(n));
        }
        let h = HeytingAlgebra {
            size: n,
            bot: t.bot,
            top: t.top,
            meet: t.meet,
            join: t.join,
            imp: t.imp,
        };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.size;
        let fail = |law, at: &[usize]| {
            Err(AlgebraError::Lattice {
                law,
                at: at.to_vec(),
            })
        };
        for a in 0..n {
            if self.meet(a, a) != a || self.join(a, a) != a {
                return fail("idempotence", &[a]);
            }
            if self.meet(a, self.bot) != self.bot || self.join(a, self.top) != self.top {
                return fail("bounds", &[a]);
            }
            for b in 0..n {
                if self.meet(a, b) != self.meet(b, a) || self.join(a, b) != self.join(b, a) {
                    return fail("commutativity", &[a, b]);
                }
                if self.meet(a, self.join(a, b)) != a || self.join(a, self.meet(a, b)) != a {
                    return fail("absorption", &[a, b]);
                }
                for c in 0..n {
                    if self.meet(a, self.meet(b, c)) != self.meet(self.meet(a, b), c)
                        || self.join(a, self.join(b, c)) != self.join(self.join(a, b), c)
                    {
                        return fail("associativity", &[a, b, c]);
                    }
                    if self.leq(self.meet(a, c), b) != self.leq(c, self.imp(a, b)) {
                        return Err(AlgebraError::Residuation(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bot(&self) -> usize {
        self.bot
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn imp(&self, a: usize, b: usize) -> usize {
        self.imp[a][b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.imp[a][self.bot]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet[a][b] == a
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// `a /\ c <= b` iff `c <= a -> b`, for every triple.
    pub fn residuation_holds(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| self.leq(self.meet(a, c), b) == self.leq(c, self.imp(a, b)))
            })
        })
    }

    /// `a -> b` equals `~a \/ b` for all `a`, `b`.
    pub fn is_boolean(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.imp(a, b) == self.join(self.neg(a), b))
        })
    }

    /// A join is top only if one of its arguments is.
    pub fn has_disjunction_property(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.join(a, b) != self.top || a == self.top || b == self.top)
        })
    }

    /// The lattice of the given subsets of some base set under inclusion,
    /// with the Heyting implication supplied by `imp`. The sets must contain
    /// the empty and the full set and be closed under all three operations.
    pub(crate) fn from_sets(sets: &[u64], imp: impl Fn(u64, u64) -> u64) -> HeytingAlgebra {
        let index: HashMap<u64, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let n = sets.len();
        let table = |op: &dyn Fn(u64, u64) -> u64| -> Vec<Vec<usize>> {
            (0..n)
                .map(|a| (0..n).map(|b| index[&op(sets[a], sets[b])]).collect())
                .collect()
        };
        let meet = table(&|a, b| a & b);
        let join = table(&|a, b| a | b);
        let imp = table(&imp);
        let bot = (0..n)
            .min_by_key(|&i| sets[i].count_ones())
            .expect("nonempty");
        let top = (0..n)
            .max_by_key(|&i| sets[i].count_ones())
            .expect("nonempty");
        HeytingAlgebra {
            size: n,
            bot,
            top,
            meet,
            join,
            imp,
        }
    }
}

/// The downsets of `p` under inclusion. Element `i` is the `i`-th downset
/// by (cardinality, bitmask), so `0` is bottom and the last one is top.
pub fn heyting_from_poset(p: &FinitePoset) -> HeytingAlgebra {
    let downs = p.downsets_up_to(usize::MAX).expect("unbounded");
    downset_algebra(p, &downs)
}

pub(crate) fn downset_algebra(p: &FinitePoset, downs: &[u64]) -> HeytingAlgebra {
    let principal: Vec<u64> = (0..p.size()).map(|a| p.down(a)).collect();
    HeytingAlgebra::from_sets(downs, |a, b| {
        principal
            .iter()
            .enumerate()
            .filter(|(_, &d)| d & a & !b == 0)
            .fold(0, |m, (x, _)| m | 1 << x)
    })
}

/// Default bound for [`enumerate_heyting`].
pub const DEFAULT_MAX_ALGEBRA: usize = 8;
/// Hard ceiling accepted by [`enumerate_heyting`].
pub const MAX_ALGEBRA: usize = 12;

/// Every Heyting algebra with at most `n` elements, one per isomorphism
/// class, ordered by size.
pub fn enumerate_heyting(n: usize) -> Result<Vec<HeytingAlgebra>, AlgebraError> {
    if n > MAX_ALGEBRA {
        return Err(AlgebraError::Bound { bound: MAX_ALGEBRA });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut out: Vec<HeytingAlgebra> = posets_with_small_lattice(n)
        .iter()
        .map(heyting_from_poset)
        .collect();
    out.sort_by_key(HeytingAlgebra::size);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_posets() {
        let one = heyting_from_poset(&FinitePoset::antichain(0));
        assert_eq!(one.size(), 1);
        let two = heyting_from_poset(&FinitePoset::antichain(1));
        assert_eq!(two.size(), 2);
        assert!(two.is_boolean());
        let four = heyting_from_poset(&FinitePoset::antichain(2));
        assert_eq!(four.size(), 4);
        assert!(four.is_boolean());
        assert!(!four.has_disjunction_property());
    }

    #[test]
    fn chain_is_not_boolean() {
        let c = heyting_from_poset(&FinitePoset::chain(2));
        assert_eq!(c.size(), 3);
        assert!(!c.is_boolean());
        assert!(c.has_disjunction_property());
        assert_ne!(c.join(1, c.neg(1)), c.top());
    }

    #[test]
    fn distributive_lattice_counts() {
        let all = enumerate_heyting(8).unwrap();
        let counts: Vec<usize> = (1..=8)
            .map(|k| all.iter().filter(|h| h.size() == k).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 5, 8, 15]);
        assert!(all.iter().all(HeytingAlgebra::residuation_holds));
        assert_eq!(enumerate_heyting(2).unwrap().len(), 2);
    }

    #[test]
    fn order_from_implication() {
        for h in enumerate_heyting(6).unwrap() {
            for a in h.elements() {
                for b in h.elements() {
                    assert_eq!(h.leq(a, b), h.imp(a, b) == h.top());
                }
            }
        }
    }

    #[test]
    fn tables_roundtrip_through_json() {
        let h = heyting_from_poset(&FinitePoset::chain(2));
        let text = serde_json::to_string(&h).unwrap();
        assert_eq!(serde_json::from_str::<HeytingAlgebra>(&text).unwrap(), h);
        let mut broken: HeytingTables = h.into();
        broken.imp[1][0] = 1;
        assert!(HeytingAlgebra::from_tables(broken).is_err());
    }
}
