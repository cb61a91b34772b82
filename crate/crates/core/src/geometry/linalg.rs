//! Small dense exact linear algebra.

use crate::rat::Rat;

/// Determinant by Gaussian elimination. Square input only.
pub fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut det = Rat::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= &delta;
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            for j in 0..m[i].len() {
                let delta = &factor * &m[r][j];
                m[i][j] -= &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Unique(Vec<Rat>),
    Inconsistent,
    /// Columns are linearly dependent.
    RankDeficient,
}

/// Solve `a x = b` where `a` is `rows x cols`, expecting full column rank.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Solution {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::RankDeficient;
    }
    Solution::Unique((0..cols).map(|i| aug[i][cols].clone()).collect())
}

/// A nonzero vector in the kernel of `a` (`rows x cols`), or `None` if the
/// kernel is trivial. The first free column is set to one, all other free
/// columns to zero.
pub fn null_vector(a: &[Vec<Rat>], cols: usize) -> Option<Vec<Rat>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m, cols);
    let free = (0..cols).find(|c| !pivots.contains(c))?;
    let mut x = vec![Rat::zero(); cols];
    x[free] = Rat::one();
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = -&m[row][free];
    }
    Some(x)
}

/// Rank of a matrix.
pub fn rank(a: &[Vec<Rat>], cols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, cols).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(mat(&[&[2, 1], &[1, 3]])), Rat::from_int(5));
        assert_eq!(determinant(mat(&[&[0, 1], &[1, 0]])), Rat::from_int(-1));
        assert_eq!(determinant(mat(&[&[1, 2], &[2, 4]])), Rat::zero());
        assert_eq!(
            determinant(mat(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])),
            Rat::from_int(2 + (1 - 3))
        );
        assert_eq!(determinant(Vec::new()), Rat::one());
    }

    #[test]
    fn solve_cases() {
        let a = mat(&[&[1, 1], &[1, -1]]);
        let b = vec![Rat::from_int(3), Rat::from_int(1)];
        assert_eq!(
            solve(&a, &b),
            Solution::Unique(vec![Rat::from_int(2), Rat::from_int(1)])
        );
        // overdetermined, consistent
        let a = mat(&[&[1], &[2]]);
        assert_eq!(
            solve(&a, &[Rat::from_int(2), Rat::from_int(4)]),
            Solution::Unique(vec![Rat::from_int(2)])
        );
        assert_eq!(
            solve(&a, &[Rat::from_int(2), Rat::from_int(5)]),
            Solution::Inconsistent
        );
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(
            solve(&a, &[Rat::from_int(1), Rat::from_int(2)]),
            Solution::RankDeficient
        );
    }

    #[test]
    fn kernel() {
        let a = mat(&[&[1, 1, 1], &[0, 1, 2]]);
        let x = null_vector(&a, 3).unwrap();
        assert_eq!(x, vec![Rat::from_int(1), Rat::from_int(-2), Rat::from_int(1)]);
        assert!(null_vector(&mat(&[&[1, 0], &[0, 1]]), 2).is_none());
        assert_eq!(rank(&a, 3), 2);
    }
}
