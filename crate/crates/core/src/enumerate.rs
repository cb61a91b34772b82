//! Deterministic enumeration of subsets and set partitions.
//!
//! Every enumerator here yields its items in a fixed canonical order so that
//! "first hit" searches are reproducible.

/// k-subsets of `0..n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        current: (0..k).collect(),
        done: k > n,
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n - k + i {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// k-subsets of an arbitrary index list, lexicographic in positions.
pub fn combinations_of(items: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    combinations(items.len(), k).map(move |c| c.into_iter().map(|i| items[i]).collect())
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Unordered partitions of `0..n` into exactly `parts` nonempty blocks, each
/// of size at most `max_size`.
///
/// Items come out in lexicographic order of their restricted growth strings,
/// which is the same as ordering blocks by smallest element with each block
/// ascending.
#[derive(Debug, Clone)]
pub struct BoundedPartitions {
    n: usize,
    parts: usize,
    max_size: usize,
    // Restricted growth string and per-block sizes.
    rgs: Vec<usize>,
    sizes: Vec<usize>,
    started: bool,
    done: bool,
}

pub fn bounded_partitions(n: usize, parts: usize, max_size: usize) -> BoundedPartitions {
    let feasible = parts <= n && parts * max_size >= n && (parts > 0 || n == 0) && max_size > 0;
    BoundedPartitions {
        n,
        parts,
        max_size,
        rgs: Vec::with_capacity(n),
        sizes: vec![0; parts],
        started: false,
        done: !feasible,
    }
}

impl BoundedPartitions {
    fn blocks_used(&self) -> usize {
        self.sizes.iter().filter(|&&s| s > 0).count()
    }

    // Whether the prefix in `rgs` can still be completed.
    fn completable(&self) -> bool {
        let placed = self.rgs.len();
        let remaining = self.n - placed;
        let used = self.blocks_used();
        if self.parts - used > remaining {
            return false;
        }
        let capacity: usize = self.sizes.iter().map(|&s| self.max_size - s).sum();
        capacity >= remaining
    }

    // Extend a completable prefix with the smallest valid labels.
    fn fill(&mut self) {
        while self.rgs.len() < self.n {
            let pushed = self.try_push_from(0);
            debug_assert!(pushed, "completable prefix must extend");
        }
    }

    fn max_label(&self) -> usize {
        self.blocks_used().min(self.parts - 1)
    }

    fn try_push_from(&mut self, start: usize) -> bool {
        let limit = self.max_label();
        for label in start..=limit {
            if self.sizes[label] >= self.max_size {
                continue;
            }
            self.rgs.push(label);
            self.sizes[label] += 1;
            if self.completable() {
                return true;
            }
            self.rgs.pop();
            self.sizes[label] -= 1;
        }
        false
    }

    // Advance to the next valid full string; false when exhausted.
    fn advance(&mut self) -> bool {
        while let Some(last) = self.rgs.pop() {
            self.sizes[last] -= 1;
            if self.try_push_from(last + 1) {
                self.fill();
                return true;
            }
        }
        false
    }

    fn current(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.parts];
        for (i, &l) in self.rgs.iter().enumerate() {
            blocks[l].push(i);
        }
        blocks
    }
}

impl Iterator for BoundedPartitions {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.fill();
            true
        } else {
            self.advance()
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(self.current())
    }
}

/// Unordered splits of `items` (even length) into two halves; the first half
/// always holds `items[0]`. Lexicographic in the first half.
pub fn complementary_halves(items: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let m = items.len();
    assert!(m.is_multiple_of(2) && m > 0, "need a nonempty even-sized set");
    let half = m / 2;
    combinations(m - 1, half - 1)
        .map(|rest| {
            let mut first = vec![0usize];
            first.extend(rest.iter().map(|&i| i + 1));
            let second: Vec<usize> = (0..m).filter(|i| !first.contains(i)).collect();
            (
                first.into_iter().map(|i| items[i]).collect(),
                second.into_iter().map(|i| items[i]).collect(),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn combinations_lexicographic() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(combinations(9, 4).count(), binomial(9, 4));
    }

    // Brute-force oracle: all label assignments, canonicalized.
    fn oracle(n: usize, parts: usize, max_size: usize) -> Vec<Vec<Vec<usize>>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let total = parts.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let mut blocks = vec![Vec::new(); parts];
            for i in 0..n {
                blocks[c % parts].push(i);
                c /= parts;
            }
            if blocks.iter().any(|b| b.is_empty() || b.len() > max_size) {
                continue;
            }
            blocks.sort_by_key(|b| b[0]);
            if seen.insert(blocks.clone()) {
                out.push(blocks);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn bounded_partitions_match_oracle() {
        for n in 0..=8 {
            for parts in 1..=4 {
                for max_size in 1..=4 {
                    let got: Vec<_> = bounded_partitions(n, parts, max_size).collect();
                    let mut sorted = got.clone();
                    sorted.sort();
                    sorted.dedup();
                    assert_eq!(sorted.len(), got.len(), "duplicates n={n} p={parts} m={max_size}");
                    assert_eq!(sorted, oracle(n, parts, max_size), "n={n} p={parts} m={max_size}");
                }
            }
        }
    }

    #[test]
    fn bounded_partitions_are_in_canonical_order() {
        // RGS order: compare label strings.
        let labels = |p: &Vec<Vec<usize>>| {
            let n: usize = p.iter().map(Vec::len).sum();
            let mut l = vec![0; n];
            for (b, block) in p.iter().enumerate() {
                for &i in block {
                    l[i] = b;
                }
            }
            l
        };
        let all: Vec<_> = bounded_partitions(7, 3, 3).collect();
        for w in all.windows(2) {
            assert!(labels(&w[0]) < labels(&w[1]));
        }
    }

    #[test]
    fn equal_blocks_count() {
        // 12 points into three blocks of four: 12!/(4!^3 3!) = 5775
        assert_eq!(bounded_partitions(12, 3, 4).count(), 5775);
        assert_eq!(bounded_partitions(6, 2, 3).count(), 10);
    }

    #[test]
    fn halves() {
        let h = complementary_halves(&[10, 11, 12, 13]);
        assert_eq!(
            h,
            vec![
                (vec![10, 11], vec![12, 13]),
                (vec![10, 12], vec![11, 13]),
                (vec![10, 13], vec![11, 12])
            ]
        );
        assert_eq!(complementary_halves(&[0, 1, 2, 3, 4, 5, 6, 7]).len(), 35);
    }
}
