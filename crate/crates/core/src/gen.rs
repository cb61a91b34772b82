//! Seeded random rational point sets in general position.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{orientation, Orientation, Point, PointSet};
use crate::rat::Rat;

/// Numerators are drawn from `-COORD_RANGE..=COORD_RANGE`.
pub const COORD_RANGE: i64 = 100;
/// Denominators are drawn from `1..=MAX_DENOM`.
pub const MAX_DENOM: i64 = 4;

const MAX_REJECTIONS: usize = 10_000;

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> Point {
    Point::new(
        (0..d)
            .map(|_| {
                let num = rng.random_range(-COORD_RANGE..=COORD_RANGE);
                let den = rng.random_range(1..=MAX_DENOM);
                Rat::new(num, den)
            })
            .collect(),
    )
}

// Whether `p` keeps `pts` in general position, assuming `pts` already is.
fn fits(pts: &[&Point], p: &Point, d: usize) -> bool {
    if pts.contains(&p) {
        return false;
    }
    if pts.len() < d {
        // Fewer than d+1 points in total: only affine independence matters.
        let mut all: Vec<&Point> = pts.to_vec();
        all.push(p);
        let base = all[0];
        let rows: Vec<Vec<Rat>> = all[1..].iter().map(|q| q.sub(base).into_coords()).collect();
        return crate::geometry::linalg::rank(&rows, d) == rows.len();
    }
    crate::enumerate::combinations(pts.len(), d).all(|c| {
        let mut simplex: Vec<&Point> = c.iter().map(|&i| pts[i]).collect();
        simplex.push(p);
        orientation(&simplex).is_ok_and(|o| o != Orientation::Zero)
    })
}

/// `n` points in R^d drawn by rejection until no `d + 1` of them (together
/// with `extra`, if given) are affinely dependent. The result depends only on
/// the arguments.
pub fn random_general_position(d: usize, n: usize, seed: u64, extra: Option<&Point>) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::UnsupportedDimension(0, "dimension must be positive"));
    }
    if let Some(e) = extra {
        if e.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: e.dim(),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut rejections = 0;
    while points.len() < n {
        let p = random_point(&mut rng, d);
        let mut existing: Vec<&Point> = extra.into_iter().collect();
        existing.extend(points.iter());
        if fits(&existing, &p, d) {
            points.push(p);
        } else {
            rejections += 1;
            if rejections > MAX_REJECTIONS {
                return Err(Error::PerturbationFailed {
                    attempts: rejections,
                });
            }
        }
    }
    PointSet::new(d, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::in_general_position;

    #[test]
    fn deterministic_and_general() {
        for d in 1..=3 {
            let a = random_general_position(d, 8, 7, None).unwrap();
            let b = random_general_position(d, 8, 7, None).unwrap();
            assert_eq!(a, b);
            assert!(in_general_position(&a, None).is_ok());
            let o = Point::origin(d);
            let c = random_general_position(d, 8, 7, Some(&o)).unwrap();
            assert!(in_general_position(&c, Some(&o)).is_ok());
        }
        assert_ne!(
            random_general_position(2, 5, 1, None).unwrap(),
            random_general_position(2, 5, 2, None).unwrap()
        );
    }
}
