//! Mod-2 linking of triangle boundaries in R^3.

use super::{orientation, Point};
use crate::error::{Error, Result};

fn orient4(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<i8> {
    Ok(orientation(&[a, b, c, d])?.sign())
}

fn check_3d(points: &[&Point]) -> Result<()> {
    match points.iter().find(|p| p.dim() != 3) {
        Some(p) => Err(Error::DimensionMismatch {
            expected: 3,
            found: p.dim(),
        }),
        None => Ok(()),
    }
}

/// 1 if the open segment passes through the open triangle, else 0.
///
/// Fails with `DegenerateIncidence` when an endpoint lies on the triangle's
/// plane or the segment crosses the plane on the triangle's boundary lines.
pub fn segment_triangle_parity(seg: [&Point; 2], tri: [&Point; 3]) -> Result<u8> {
    check_3d(&[seg[0], seg[1], tri[0], tri[1], tri[2]])?;
    let [a, b] = seg;
    let [p, q, r] = tri;
    let sa = orient4(p, q, r, a)?;
    let sb = orient4(p, q, r, b)?;
    if sa == 0 || sb == 0 {
        return Err(Error::DegenerateIncidence);
    }
    if sa == sb {
        return Ok(0);
    }
    let s1 = orient4(a, b, p, q)?;
    let s2 = orient4(a, b, q, r)?;
    let s3 = orient4(a, b, r, p)?;
    if s1 == 0 || s2 == 0 || s3 == 0 {
        return Err(Error::DegenerateIncidence);
    }
    Ok(u8::from(s1 == s2 && s2 == s3))
}

fn piercings(edges_of: [&Point; 3], tri: [&Point; 3]) -> Result<u8> {
    let mut total = 0;
    for i in 0..3 {
        let seg = [edges_of[i], edges_of[(i + 1) % 3]];
        total += segment_triangle_parity(seg, tri)?;
    }
    Ok(total)
}

/// Whether the boundary cycles of two triangles are linked (mod 2).
///
/// Counts how often the edges of `t1` pierce `t2`; the count with the roles
/// swapped must have the same parity and is checked on every call. The
/// boundaries must be disjoint and generic, otherwise `DegenerateIncidence`.
pub fn triangles_linked(t1: [&Point; 3], t2: [&Point; 3]) -> Result<bool> {
    let forward = piercings(t1, t2)? % 2;
    let backward = piercings(t2, t1)? % 2;
    if forward != backward {
        return Err(Error::Invariant(format!(
            "linking parity not symmetric: {forward} vs {backward}"
        )));
    }
    Ok(forward == 1)
}
