//! Exact feasibility of `A x = b, x >= 0` and the convex-hull certificates
//! built on it.
//!
//! The solver is a dense phase-one simplex over rationals using Bland's
//! smallest-index rule, so it cannot cycle and its output is a deterministic
//! function of the input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hyperplane_incidences, Point, PointSet};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityProblem {
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    /// A basic feasible solution.
    Feasible(Vec<Rat>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

impl FeasibilityProblem {
    pub fn new(a: Vec<Vec<Rat>>, b: Vec<Rat>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::MalformedProblem(format!(
                "{} rows but {} right-hand sides",
                a.len(),
                b.len()
            )));
        }
        let cols = a.first().map_or(0, Vec::len);
        if a.iter().any(|row| row.len() != cols) {
            return Err(Error::MalformedProblem("ragged constraint matrix".into()));
        }
        Ok(FeasibilityProblem { a, b })
    }

    pub fn vars(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }
}

pub fn solve_feasibility(prob: &FeasibilityProblem) -> Result<Feasibility> {
    let prob = FeasibilityProblem::new(prob.a.clone(), prob.b.clone())?;
    Ok(phase_one(prob.a, prob.b))
}

fn phase_one(a: Vec<Vec<Rat>>, b: Vec<Rat>) -> Feasibility {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Feasibility::Feasible(vec![Rat::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for (i, (row, bi)) in a.into_iter().zip(b).enumerate() {
        let negate = bi.is_negative();
        let mut r = Vec::with_capacity(width);
        for x in row {
            r.push(if negate { -x } else { x });
        }
        for k in 0..m {
            r.push(if k == i { Rat::one() } else { Rat::zero() });
        }
        r.push(if negate { -bi } else { bi });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of w = sum of artificials; obj[rhs] holds -w.
    let mut obj = vec![Rat::zero(); width];
    for j in (0..n).chain(std::iter::once(rhs)) {
        let s: Rat = t.iter().map(|row| &row[j]).sum();
        obj[j] = -s;
    }

    loop {
        let Some(enter) = (0..rhs).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][rhs] / &t[i][enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // w is bounded below by zero, so some row always qualifies.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut obj, row, enter);
        basis[row] = enter;
    }

    if !obj[rhs].is_zero() {
        return Feasibility::Infeasible;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[i][rhs].clone();
        }
    }
    Feasibility::Feasible(x)
}

fn pivot(t: &mut [Vec<Rat>], obj: &mut [Rat], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for x in t[row].iter_mut() {
        if !x.is_zero() {
            *x *= &inv;
        }
    }
    let pivot_row = t[row].clone();
    let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for &j in &nonzero {
            let delta = &factor * &pivot_row[j];
            r[j] -= &delta;
        }
    }
    if !obj[col].is_zero() {
        let factor = obj[col].clone();
        for &j in &nonzero {
            let delta = &factor * &pivot_row[j];
            obj[j] -= &delta;
        }
    }
}

/// A common point `point` of several hulls together with, per part,
/// nonnegative weights summing to one that reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub point: Point,
    pub weights: Vec<Vec<Rat>>,
}

impl Witness {
    /// Exact check of the certificate against `parts`.
    pub fn certifies(&self, parts: &[Vec<usize>], ps: &PointSet) -> bool {
        self.weights.len() == parts.len()
            && parts.iter().zip(&self.weights).all(|(part, w)| {
                w.len() == part.len()
                    && part.iter().all(|&i| i < ps.len())
                    && !w.iter().any(Rat::is_negative)
                    && w.iter().sum::<Rat>() == Rat::one()
                    && Point::combination(ps.select(part), w) == self.point
            })
    }
}

fn validate_parts(parts: &[Vec<usize>], ps: &PointSet) -> Result<()> {
    if parts.is_empty() || parts.iter().any(Vec::is_empty) {
        return Err(Error::InvalidPartition("parts must be nonempty".into()));
    }
    let mut seen = vec![false; ps.len()];
    for &i in parts.iter().flatten() {
        if i >= ps.len() {
            return Err(Error::InvalidPartition(format!("index {i} out of range")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidPartition(format!("index {i} used twice")));
        }
    }
    Ok(())
}

// Variables are the weights, part by part. With `floor` every weight is
// written as floor + slack so the solver sees plain nonnegativity.
fn hull_intersection_system(parts: &[Vec<usize>], ps: &PointSet, floor: &Rat) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let d = ps.dim();
    let n: usize = parts.iter().map(Vec::len).sum();
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (part, &off) in parts.iter().zip(&offsets) {
        let mut row = vec![Rat::zero(); n];
        for k in 0..part.len() {
            row[off + k] = Rat::one();
        }
        a.push(row);
        b.push(Rat::one() - floor * &Rat::from(part.len()));
    }
    let first_sum = |c: usize, part: &[usize]| -> Rat { part.iter().map(|&j| &ps.point(j).coords()[c]).sum() };
    for (i, part) in parts.iter().enumerate().skip(1) {
        for c in 0..d {
            let mut row = vec![Rat::zero(); n];
            for (k, &j) in parts[0].iter().enumerate() {
                row[offsets[0] + k] = ps.point(j).coords()[c].clone();
            }
            for (k, &j) in part.iter().enumerate() {
                row[offsets[i] + k] = -&ps.point(j).coords()[c];
            }
            a.push(row);
            b.push(floor * &(first_sum(c, part) - first_sum(c, &parts[0])));
        }
    }
    (a, b)
}

fn witness_from(parts: &[Vec<usize>], ps: &PointSet, x: Vec<Rat>, floor: &Rat) -> Witness {
    let mut it = x.into_iter();
    let weights: Vec<Vec<Rat>> = parts
        .iter()
        .map(|p| p.iter().map(|_| it.next().unwrap() + floor).collect())
        .collect();
    let point = Point::combination(ps.select(&parts[0]), &weights[0]);
    Witness { point, weights }
}

/// A point common to the hulls of all parts, certified by a basic feasible
/// solution, or `None` if the hulls have no common point.
pub fn common_point(parts: &[Vec<usize>], ps: &PointSet) -> Result<Option<Witness>> {
    validate_parts(parts, ps)?;
    let zero = Rat::zero();
    let (a, b) = hull_intersection_system(parts, ps, &zero);
    Ok(match phase_one(a, b) {
        Feasibility::Feasible(x) => Some(witness_from(parts, ps, x, &zero)),
        Feasibility::Infeasible => None,
    })
}

pub const GENERIC_WITNESS_ATTEMPTS: u32 = 30;

/// Like [`common_point`], but every weight is strictly positive and the
/// point avoids every hyperplane spanned by `d` points of the parts with at
/// least `d + 1` elements.
///
/// Weights are bounded below by `1 / ((d+2) 2^t)` for `t = 0, 1, ...`; each
/// feasible floor gives a candidate that is accepted once it is generic.
pub fn generic_common_point(parts: &[Vec<usize>], ps: &PointSet) -> Result<Option<Witness>> {
    validate_parts(parts, ps)?;
    let d = ps.dim();
    let full: Vec<usize> = parts
        .iter()
        .filter(|p| p.len() > d)
        .flatten()
        .copied()
        .collect();
    let zero = Rat::zero();
    let (a, b) = hull_intersection_system(parts, ps, &zero);
    if !phase_one(a, b).is_feasible() {
        return Ok(None);
    }
    let base = Rat::from(d + 2).recip();
    let mut floor = base;
    for _ in 0..GENERIC_WITNESS_ATTEMPTS {
        if parts.iter().all(|p| Rat::from(p.len()) * &floor <= Rat::one()) {
            let (a, b) = hull_intersection_system(parts, ps, &floor);
            if let Feasibility::Feasible(x) = phase_one(a, b) {
                let w = witness_from(parts, ps, x, &floor);
                if hyperplane_incidences(ps, &full, &w.point).is_empty() {
                    return Ok(Some(w));
                }
            }
        }
        floor = floor / Rat::from_int(2);
    }
    Ok(None)
}

/// Closed convex hull membership of `p` in `vertices`.
pub fn in_hull(p: &Point, vertices: &[&Point]) -> Result<bool> {
    Ok(hull_weights(p, vertices)?.is_some())
}

/// Nonnegative weights summing to one with `sum w_i v_i = p`, if any.
pub fn hull_weights(p: &Point, vertices: &[&Point]) -> Result<Option<Vec<Rat>>> {
    if vertices.is_empty() {
        return Ok(None);
    }
    let d = p.dim();
    if let Some(v) = vertices.iter().find(|v| v.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: v.dim(),
        });
    }
    let mut a = vec![vec![Rat::one(); vertices.len()]];
    let mut b = vec![Rat::one()];
    for c in 0..d {
        a.push(vertices.iter().map(|v| v.coords()[c].clone()).collect());
        b.push(p.coords()[c].clone());
    }
    Ok(match phase_one(a, b) {
        Feasibility::Feasible(x) => Some(x),
        Feasibility::Infeasible => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::combinations;
    use crate::geometry::{linalg, point_in_simplex, ContainmentStatus};

    fn r(x: i64) -> Rat {
        Rat::from_int(x)
    }

    #[test]
    fn trivial_systems() {
        let p = FeasibilityProblem::new(vec![vec![r(1)]], vec![r(1)]).unwrap();
        assert_eq!(solve_feasibility(&p).unwrap(), Feasibility::Feasible(vec![r(1)]));
        let p = FeasibilityProblem::new(vec![vec![r(1)]], vec![r(-1)]).unwrap();
        assert_eq!(solve_feasibility(&p).unwrap(), Feasibility::Infeasible);
        assert!(FeasibilityProblem::new(vec![vec![r(1)], vec![]], vec![r(1), r(2)]).is_err());
        assert!(FeasibilityProblem::new(vec![vec![r(1)]], vec![]).is_err());
    }

    #[test]
    fn square_diagonals_meet_at_center() {
        let ps = PointSet::from_ints(&[&[0, 0], &[1, 1], &[1, 0], &[0, 1]]).unwrap();
        let w = common_point(&[vec![0, 1], vec![2, 3]], &ps).unwrap().unwrap();
        assert_eq!(w.point, Point::new(vec![Rat::new(1, 2), Rat::new(1, 2)]));
        assert!(w.certifies(&[vec![0, 1], vec![2, 3]], &ps));
    }

    #[test]
    fn far_triangles_have_no_common_point() {
        let ps = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[10, 10], &[11, 10], &[10, 11]]).unwrap();
        assert!(common_point(&[vec![0, 1, 2], vec![3, 4, 5]], &ps).unwrap().is_none());
    }

    #[test]
    fn hexagon_triangles() {
        let ps = crate::fixtures::hexagon();
        let parts = [vec![0, 2, 4], vec![1, 3, 5]];
        let w = common_point(&parts, &ps).unwrap().unwrap();
        assert!(w.certifies(&parts, &ps));
        for part in &parts {
            assert_ne!(
                point_in_simplex(&w.point, &ps.select(part)).unwrap(),
                ContainmentStatus::Outside
            );
        }
        let g = generic_common_point(&parts, &ps).unwrap().unwrap();
        assert!(g.certifies(&parts, &ps));
        for part in &parts {
            assert_eq!(
                point_in_simplex(&g.point, &ps.select(part)).unwrap(),
                ContainmentStatus::Interior
            );
        }
    }

    #[test]
    fn rejects_bad_parts() {
        let ps = PointSet::from_ints(&[&[0, 0], &[1, 0]]).unwrap();
        assert!(common_point(&[vec![0], vec![0]], &ps).is_err());
        assert!(common_point(&[vec![0], vec![]], &ps).is_err());
        assert!(common_point(&[vec![0], vec![7]], &ps).is_err());
        assert!(common_point(&[], &ps).is_err());
    }

    // Oracle: a system A x = b, x >= 0 is feasible iff some basic solution
    // (a square nonsingular column subset solved exactly) is nonnegative.
    fn vertex_enumeration_feasible(a: &[Vec<Rat>], b: &[Rat]) -> bool {
        let m = a.len();
        let n = a[0].len();
        let rank = linalg::rank(a, n);
        let mut rows_aug: Vec<Vec<Rat>> = a.iter().zip(b).map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        }).collect();
        if linalg::rank(&rows_aug, n + 1) > rank {
            return false;
        }
        // pick independent rows
        let mut basis_rows: Vec<usize> = Vec::new();
        for i in 0..m {
            let mut trial: Vec<Vec<Rat>> = basis_rows.iter().map(|&k| a[k].clone()).collect();
            trial.push(a[i].clone());
            if linalg::rank(&trial, n) == trial.len() {
                basis_rows.push(i);
            }
        }
        rows_aug.clear();
        if rank == 0 {
            return b.iter().all(Rat::is_zero);
        }
        combinations(n, rank).any(|cols| {
            let sub: Vec<Vec<Rat>> = basis_rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
            let rhs: Vec<Rat> = basis_rows.iter().map(|&i| b[i].clone()).collect();
            match linalg::solve(&sub, &rhs) {
                linalg::Solution::Unique(x) => !x.iter().any(Rat::is_negative),
                _ => false,
            }
        })
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn agrees_with_vertex_enumeration(
            m in 1usize..=3,
            n in 1usize..=5,
            seed in proptest::collection::vec(-3i64..=3, 24),
        ) {
            let a: Vec<Vec<Rat>> = (0..m).map(|i| (0..n).map(|j| r(seed[i * n + j])).collect()).collect();
            let b: Vec<Rat> = (0..m).map(|i| r(seed[20 + i])).collect();
            let prob = FeasibilityProblem::new(a.clone(), b.clone()).unwrap();
            let got = solve_feasibility(&prob).unwrap();
            prop_assert_eq!(got.is_feasible(), vertex_enumeration_feasible(&a, &b));
            if let Feasibility::Feasible(x) = got {
                prop_assert!(!x.iter().any(Rat::is_negative));
                for (row, bi) in a.iter().zip(&b) {
                    let lhs: Rat = row.iter().zip(&x).map(|(p, q)| p * q).sum();
                    prop_assert_eq!(&lhs, bi);
                }
                // determinism
                prop_assert_eq!(solve_feasibility(&prob).unwrap(), Feasibility::Feasible(x));
            }
        }
    }
}
