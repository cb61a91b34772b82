//! Exact planar helpers: cross products and angular order.

use std::cmp::Ordering;

use super::Point;
use crate::rat::Rat;

pub fn cross(u: &Point, v: &Point) -> Rat {
    let (a, b) = (u.coords(), v.coords());
    &a[0] * &b[1] - &a[1] * &b[0]
}

/// Rotate by +90 degrees.
pub fn perp(u: &Point) -> Point {
    let c = u.coords();
    Point::new(vec![-&c[1], c[0].clone()])
}

fn half(u: &Point) -> u8 {
    let c = u.coords();
    if c[1].is_positive() || (c[1].is_zero() && c[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Counter-clockwise order of nonzero direction vectors starting at the
/// positive x-axis. Equal directions compare equal.
pub fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    half(u).cmp(&half(v)).then_with(|| match cross(u, v).signum() {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

/// Signed side of `x` relative to the directed line `a -> b`.
pub fn side(a: &Point, b: &Point, x: &Point) -> i8 {
    cross(&b.sub(a), &x.sub(a)).signum()
}
