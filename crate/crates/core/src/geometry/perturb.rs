use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{in_general_position, Point, PointSet};
use crate::error::{Error, Result};
use crate::rat::Rat;

pub const PERTURB_MAX_ATTEMPTS: usize = 64;

/// Moves every coordinate by `m * diam / 2^(2k + j)` with `m` uniform in
/// `[-2^k, 2^k]`, where `diam` is the largest coordinate extent of the input
/// and `j` is the attempt number, so no coordinate moves more than
/// `diam / 2^k`. Attempts continue until the result is in
/// general position. Output depends only on `(ps, seed, k)`.
pub fn perturb(ps: &PointSet, seed: u64, k: u32) -> Result<PointSet> {
    perturb_with_attempts(ps, seed, k, PERTURB_MAX_ATTEMPTS)
}

pub fn perturb_with_attempts(
    ps: &PointSet,
    seed: u64,
    k: u32,
    max_attempts: usize,
) -> Result<PointSet> {
    if k > 62 {
        return Err(Error::SizeOutOfRange(format!("perturbation exponent {k} > 62")));
    }
    let diam = extent(ps);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 1i64 << k;
    for j in 0..max_attempts {
        let denom = Rat::from_big(BigInt::from(1), BigInt::from(2).pow(2 * k + j as u32));
        let step = &diam * &denom;
        let points = ps
            .points()
            .iter()
            .map(|p| {
                Point::new(
                    p.coords()
                        .iter()
                        .map(|c| c + &Rat::from_int(rng.random_range(-bound..=bound)) * &step)
                        .collect(),
                )
            })
            .collect();
        let candidate = PointSet::new(ps.dim(), points)?;
        let candidate = match ps.labels() {
            Some(l) => candidate.with_labels(l.to_vec())?,
            None => candidate,
        };
        if in_general_position(&candidate, None).is_ok() {
            return Ok(candidate);
        }
    }
    Err(Error::PerturbationFailed {
        attempts: max_attempts,
    })
}

fn extent(ps: &PointSet) -> Rat {
    let mut best = Rat::zero();
    for axis in 0..ps.dim() {
        let mut it = ps.points().iter().map(|p| &p.coords()[axis]);
        let Some(first) = it.next() else { break };
        let (mut lo, mut hi) = (first, first);
        for c in it {
            if c < lo {
                lo = c;
            }
            if c > hi {
                hi = c;
            }
        }
        let span = hi - lo;
        if span > best {
            best = span;
        }
    }
    if best.is_zero() {
        Rat::one()
    } else {
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collinear_points_become_general() {
        let ps = PointSet::from_ints(&[&[0, 0], &[1, 0], &[2, 0], &[3, 0]]).unwrap();
        assert!(!in_general_position(&ps, None).is_ok());
        let out = perturb(&ps, 11, 4).unwrap();
        assert!(in_general_position(&out, None).is_ok());
        assert_eq!(out.len(), 4);
    }

    #[test]
    fn deterministic_and_bounded() {
        let ps = PointSet::from_ints(&[&[0, 0], &[5, 1], &[2, 7], &[-3, 4]]).unwrap();
        let k = 6;
        let a = perturb(&ps, 99, k).unwrap();
        let b = perturb(&ps, 99, k).unwrap();
        assert_eq!(a, b);
        assert!(in_general_position(&a, None).is_ok());
        let bound = extent(&ps) / Rat::from_int(1 << k);
        for (p, q) in ps.points().iter().zip(a.points()) {
            for (x, y) in p.coords().iter().zip(q.coords()) {
                assert!((x - y).abs() <= bound);
            }
        }
        assert_ne!(perturb(&ps, 100, k).unwrap(), a);
    }

    #[test]
    fn hopeless_input_reports_failure() {
        // Two identical points in R^1 remain distinct only by luck; with zero
        // attempts nothing is tried at all.
        let ps = PointSet::from_ints(&[&[0], &[0]]).unwrap();
        assert!(matches!(
            perturb_with_attempts(&ps, 1, 2, 0),
            Err(Error::PerturbationFailed { attempts: 0 })
        ));
    }
}
