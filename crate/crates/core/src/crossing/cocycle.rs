//! Cocycles as plain set families: a family of `k`-subsets of `0..n` is a
//! cocycle when every `(k+1)`-subset contains an even number of members.

use std::collections::BTreeSet;

use crate::enumerate::{binomial, combinations};

/// Families stored as bitmasks over the `k`-subsets in lexicographic order;
/// needs `C(n, k) <= 64`.
#[derive(Debug, Clone)]
pub struct Universe {
    pub n: usize,
    pub k: usize,
    subsets: Vec<Vec<usize>>,
}

impl Universe {
    pub fn new(n: usize, k: usize) -> Option<Self> {
        if k == 0 || k > n || binomial(n, k) > 64 {
            return None;
        }
        Some(Universe {
            n,
            k,
            subsets: combinations(n, k).collect(),
        })
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn members(&self, family: u64) -> Vec<Vec<usize>> {
        (0..self.subsets.len())
            .filter(|&b| family >> b & 1 == 1)
            .map(|b| self.subsets[b].clone())
            .collect()
    }

    pub fn family_of(&self, sets: &[Vec<usize>]) -> u64 {
        sets.iter()
            .filter_map(|s| self.subsets.iter().position(|x| x == s))
            .fold(0, |acc, b| acc | 1 << b)
    }

    /// `delta(D)`: all `k`-sets containing the `(k-1)`-set `d`.
    pub fn delta(&self, d: &[usize]) -> u64 {
        let mut mask = 0;
        for (b, s) in self.subsets.iter().enumerate() {
            if d.iter().all(|x| s.contains(x)) {
                mask |= 1 << b;
            }
        }
        mask
    }

    /// The first `(k+1)`-set holding an odd number of members, if any.
    pub fn odd_superset(&self, family: u64) -> Option<Vec<usize>> {
        combinations(self.n, self.k + 1).find(|m| {
            let count = (0..self.subsets.len())
                .filter(|&b| family >> b & 1 == 1 && self.subsets[b].iter().all(|x| m.contains(x)))
                .count();
            count % 2 == 1
        })
    }

    pub fn is_cocycle(&self, family: u64) -> bool {
        self.odd_superset(family).is_none()
    }

    /// Number of unordered pairs `{F, G}` of complementary members.
    pub fn disjoint_pair_count(&self, family: u64) -> usize {
        complementary_pair_count(self.n, &self.members(family))
    }

    /// All sums (mod 2) of delta generators, without repetition.
    pub fn cocycle_span(&self) -> Vec<u64> {
        let mut basis: Vec<u64> = Vec::new();
        for d in combinations(self.n, self.k - 1) {
            let mut v = self.delta(&d);
            for &b in &basis {
                v = v.min(v ^ b);
            }
            if v != 0 {
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        let mut span = BTreeSet::from([0u64]);
        for &b in &basis {
            let next: Vec<u64> = span.iter().map(|&x| x ^ b).collect();
            span.extend(next);
        }
        span.into_iter().collect()
    }

    /// Every family that is a cocycle, by checking all `2^C(n,k)` families.
    pub fn cocycles_bruteforce(&self) -> Vec<u64> {
        let m = self.subsets.len();
        assert!(m <= 24, "exhaustive family search is limited to 24 subsets");
        (0..1u64 << m).filter(|&f| self.is_cocycle(f)).collect()
    }
}

/// Unordered complementary pairs `{F, G}` within `family`, each a set of
/// `k = n / 2` indices of `0..n`.
pub fn complementary_pair_count(n: usize, family: &[Vec<usize>]) -> usize {
    let set: BTreeSet<&Vec<usize>> = family.iter().collect();
    family
        .iter()
        .filter(|f| f.len() * 2 == n && f.first() == Some(&0))
        .filter(|f| {
            let g: Vec<usize> = (0..n).filter(|i| !f.contains(i)).collect();
            set.contains(&g)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_generators_are_cocycles() {
        for (n, k) in [(4, 2), (6, 3), (5, 2), (7, 3)] {
            let u = Universe::new(n, k).unwrap();
            for d in combinations(n, k - 1) {
                assert!(u.is_cocycle(u.delta(&d)), "n={n} k={k} d={d:?}");
            }
        }
    }

    #[test]
    fn non_cocycle_detected() {
        let u = Universe::new(4, 2).unwrap();
        let single = u.family_of(&[vec![0, 1]]);
        assert_eq!(u.odd_superset(single), Some(vec![0, 1, 2]));
    }

    #[test]
    fn span_equals_all_cocycles() {
        for k in [2, 3] {
            let u = Universe::new(2 * k, k).unwrap();
            assert_eq!(u.cocycle_span(), u.cocycles_bruteforce(), "k={k}");
        }
    }

    #[test]
    fn pair_counts_even() {
        for k in [2, 3] {
            let u = Universe::new(2 * k, k).unwrap();
            for f in u.cocycle_span() {
                assert_eq!(u.disjoint_pair_count(f) % 2, 0);
            }
        }
    }
}
