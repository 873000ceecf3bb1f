use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// A finite partial order on `0..size()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinitePoset {
    /// `leq[a][b]` iff `a <= b`.
    leq: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("relation table is not square")]
    Shape,
    #[error("not reflexive at {0}")]
    NotReflexive(usize),
    #[error("not antisymmetric at {0}, {1}")]
    NotAntisymmetric(usize, usize),
    #[error("not transitive at {0}, {1}, {2}")]
    NotTransitive(usize, usize, usize),
}

impl FinitePoset {
    pub fn new(leq: Vec<Vec<bool>>) -> Result<FinitePoset, PosetError> {
        let n = leq.len();
        if leq.iter().any(|row| row.len() != n) {
            return Err(PosetError::Shape);
        }
        for a in 0..n {
            if !leq[a][a] {
                return Err(PosetError::NotReflexive(a));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return Err(PosetError::NotAntisymmetric(a, b));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return Err(PosetError::NotTransitive(a, b, c));
                    }
                }
            }
        }
        Ok(FinitePoset { leq })
    }

    pub fn antichain(n: usize) -> FinitePoset {
        FinitePoset {
            leq: (0..n).map(|a| (0..n).map(|b| a == b).collect()).collect(),
        }
    }

    pub fn chain(n: usize) -> FinitePoset {
        FinitePoset {
            leq: (0..n).map(|a| (0..n).map(|b| a <= b).collect()).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.leq.len()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// The same carrier with the order reversed.
    pub fn dual(&self) -> FinitePoset {
        let n = self.size();
        FinitePoset {
            leq: (0..n)
                .map(|a| (0..n).map(|b| self.leq[b][a]).collect())
                .collect(),
        }
    }

    /// Downsets as bitmasks, enumerated up to `limit` of them; `None` when
    /// there are more. Requires at most 64 elements.
    pub fn downsets_up_to(&self, limit: usize) -> Option<Vec<u64>> {
        let n = self.size();
        assert!(n <= 64, "downset masks hold at most 64 elements");
        // a linear extension: fewer predecessors first
        let order: Vec<usize> = (0..n)
            .sorted_by_key(|&a| (0..n).filter(|&b| self.leq[b][a]).count())
            .collect();
        let below: Vec<u64> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| b != a && self.leq[b][a])
                    .fold(0, |m, b| m | 1 << b)
            })
            .collect();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((i, set)) = stack.pop() {
            if i == n {
                out.push(set);
                if out.len() > limit {
                    return None;
                }
                continue;
            }
            let a = order[i];
            stack.push((i + 1, set));
            if below[a] & !set == 0 {
                stack.push((i + 1, set | 1 << a));
            }
        }
        out.sort_by_key(|m| (m.count_ones(), *m));
        Some(out)
    }

    /// The principal downset of `a` as a bitmask.
    pub fn down(&self, a: usize) -> u64 {
        (0..self.size())
            .filter(|&b| self.leq[b][a])
            .fold(0, |m, b| m | 1 << b)
    }

    /// Relation bits under the best relabelling; equal for isomorphic posets.
    pub fn canonical_form(&self) -> Vec<bool> {
        let n = self.size();
        (0..n)
            .permutations(n)
            .map(|perm| {
                let mut bits = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        bits.push(self.leq[perm[a]][perm[b]]);
                    }
                }
                bits
            })
            .max()
            .unwrap_or_default()
    }

    /// Extends by a new maximal element whose strict downset is `below`.
    fn extend(&self, below: u64) -> FinitePoset {
        let n = self.size();
        let mut leq: Vec<Vec<bool>> = self
            .leq
            .iter()
            .enumerate()
            .map(|(a, row)| {
                let mut row = row.clone();
                row.push(below >> a & 1 == 1);
                row
            })
            .collect();
        let mut top = vec![false; n + 1];
        top[n] = true;
        leq.push(top);
        FinitePoset { leq }
    }
}

/// All posets up to isomorphism whose downset lattice has at most
/// `max_lattice` elements, in order of size.
pub fn posets_with_small_lattice(max_lattice: usize) -> Vec<FinitePoset> {
    let mut all = Vec::new();
    let mut level = vec![FinitePoset::antichain(0)];
    while !level.is_empty() {
        all.extend(level.iter().cloned());
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for p in &level {
            let Some(downs) = p.downsets_up_to(max_lattice) else {
                continue;
            };
            for below in downs {
                let q = p.extend(below);
                if q.downsets_up_to(max_lattice).is_none() {
                    continue;
                }
                if seen.insert(q.canonical_form()) {
                    next.push(q);
                }
            }
        }
        level = next;
    }
    all
}
