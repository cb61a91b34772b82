//! Small named point sets used by tests, the CLI and the Python bindings.

use crate::geometry::{Point, PointSet};
use crate::rat::Rat;

fn pt(c: &[(i64, i64)]) -> Point {
    Point::new(c.iter().map(|&(n, d)| Rat::new(n, d)).collect())
}

/// Eight points in R^3 (due to Felsner and Scheucher) with a pair of
/// disjoint tetrahedra around the origin but no linked pair of such
/// tetrahedra.
pub fn felsner_scheucher() -> PointSet {
    PointSet::from_ints(&[
        &[3, -2, 2],
        &[2, -5, 3],
        &[-3, 0, -4],
        &[-1, 2, 0],
        &[1, -5, -4],
        &[4, 1, -2],
        &[-2, -5, -4],
        &[-3, 1, 3],
    ])
    .expect("static data")
}

/// A hexagon around the origin, perturbed off the symmetric position so that
/// it and the origin are in general position. Vertices are in
/// counter-clockwise order.
pub fn hexagon() -> PointSet {
    PointSet::from_points(vec![
        pt(&[(2, 1), (1, 7)]),
        pt(&[(1, 1), (2, 1)]),
        pt(&[(-1, 1), (19, 10)]),
        pt(&[(-2, 1), (-1, 5)]),
        pt(&[(-1, 1), (-21, 10)]),
        pt(&[(11, 10), (-2, 1)]),
    ])
    .expect("static data")
}

/// [`hexagon`] followed by a point near its center (index 6).
pub fn hexagon_with_center() -> PointSet {
    let mut ps = hexagon();
    ps.push(pt(&[(1, 13), (1, 17)])).expect("dimension 2");
    ps
}

/// Two triangles around the origin, the first (indices 0..3) strictly
/// inside the second (indices 3..6).
pub fn nested_triangles() -> PointSet {
    PointSet::from_points(vec![
        pt(&[(1, 1), (-1, 1)]),
        pt(&[(-3, 2), (-2, 3)]),
        pt(&[(1, 5), (7, 5)]),
        pt(&[(10, 1), (-9, 1)]),
        pt(&[(-11, 1), (-10, 1)]),
        pt(&[(1, 1), (12, 1)]),
    ])
    .expect("static data")
}

/// Two triangles around the origin, mirror images of each other, that
/// cross.
pub fn crossing_triangles() -> PointSet {
    PointSet::from_ints(&[&[4, 0], &[-2, 3], &[-2, -3], &[-4, 0], &[2, 3], &[2, -3]])
        .expect("static data")
}
