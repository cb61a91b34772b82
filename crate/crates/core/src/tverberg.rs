//! Tverberg partitions with parts of size at most `d + 1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::bounded_partitions;
use crate::error::{Error, Result};
use crate::geometry::planar::{angle_cmp, cross, perp, side};
use crate::geometry::{
    caratheodory_reduce, in_general_position, linalg, point_in_simplex, ContainmentStatus, Point,
    PointSet,
};
use crate::lp::{self, Witness};
use crate::rat::Rat;

/// Largest input accepted by the exhaustive partition search.
pub const BRUTE_FORCE_LIMIT: usize = 14;

const CHUNK: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Partition {
    pub fn new(parts: Vec<Vec<usize>>, witness: Option<Witness>) -> Self {
        Partition { parts, witness }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn witness_point(&self) -> Result<&Point> {
        self.witness
            .as_ref()
            .map(|w| &w.point)
            .ok_or_else(|| Error::InvalidPartition("partition has no witness".into()))
    }

    /// Sort each part, then order parts by smallest element. Witness weights
    /// are permuted along.
    pub fn canonicalize(&mut self) {
        let mut weights = self.witness.as_mut().map(|w| std::mem::take(&mut w.weights));
        let mut rows: Vec<(Vec<usize>, Option<Vec<Rat>>)> = Vec::with_capacity(self.parts.len());
        for (k, part) in std::mem::take(&mut self.parts).into_iter().enumerate() {
            let w = weights.as_mut().map(|ws| std::mem::take(&mut ws[k]));
            let mut pairs: Vec<(usize, Option<Rat>)> = match w {
                Some(w) => part.into_iter().zip(w.into_iter().map(Some)).collect(),
                None => part.into_iter().map(|i| (i, None)).collect(),
            };
            pairs.sort_by_key(|(i, _)| *i);
            let (idx, ws): (Vec<usize>, Vec<Option<Rat>>) = pairs.into_iter().unzip();
            let ws = ws.into_iter().collect::<Option<Vec<Rat>>>();
            rows.push((idx, ws));
        }
        rows.sort_by(|a, b| a.0.first().cmp(&b.0.first()));
        let (parts, ws): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        self.parts = parts;
        if let Some(w) = self.witness.as_mut() {
            w.weights = ws.into_iter().map(Option::unwrap_or_default).collect();
        }
    }

    /// Disjointness, index range, optional size bound and, if present, the
    /// witness certificate.
    pub fn validate(&self, ps: &PointSet, max_part_size: Option<usize>) -> Result<()> {
        let mut seen = vec![false; ps.len()];
        for (k, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidPartition(format!("part {k} is empty")));
            }
            if let Some(m) = max_part_size {
                if part.len() > m {
                    return Err(Error::InvalidPartition(format!(
                        "part {k} has {} points, more than {m}",
                        part.len()
                    )));
                }
            }
            for &i in part {
                if i >= ps.len() {
                    return Err(Error::InvalidPartition(format!("index {i} out of range")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidPartition(format!("index {i} used twice")));
                }
            }
        }
        if let Some(w) = &self.witness {
            if !w.certifies(&self.parts, ps) {
                return Err(Error::InvalidPartition("witness does not certify the parts".into()));
            }
        }
        Ok(())
    }
}

/// Which common point a partition search reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessMode {
    /// A vertex of the feasible region, as returned by the simplex method.
    #[default]
    Basic,
    /// Strictly positive weights and a point off every hyperplane spanned by
    /// points of the full-size parts.
    Generic,
}

/// How the initial partition of a pipeline run was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Radon,
    BruteForce,
    Birch,
    BirchFallback,
}

/// Two-part partition of `d + 2` points from an exact affine dependence.
pub fn radon_partition(ps: &PointSet) -> Result<Partition> {
    let d = ps.dim();
    if ps.len() != d + 2 {
        return Err(Error::WrongPointCount {
            expected: d + 2,
            found: ps.len(),
        });
    }
    let n = ps.len();
    let mut a: Vec<Vec<Rat>> = (0..d)
        .map(|c| ps.points().iter().map(|p| p.coords()[c].clone()).collect())
        .collect();
    a.push(vec![Rat::one(); n]);
    let mut alpha = linalg::null_vector(&a, n)
        .ok_or_else(|| Error::Invariant("d+2 points without affine dependence".into()))?;
    if alpha.iter().find(|x| !x.is_zero()).is_some_and(Rat::is_negative) {
        alpha.iter_mut().for_each(|x| *x = -x.clone());
    }
    let pos: Vec<usize> = (0..n).filter(|&i| !alpha[i].is_negative()).collect();
    let neg: Vec<usize> = (0..n).filter(|&i| alpha[i].is_negative()).collect();
    let total: Rat = pos.iter().map(|&i| &alpha[i]).sum();
    let wp: Vec<Rat> = pos.iter().map(|&i| &alpha[i] / &total).collect();
    let wn: Vec<Rat> = neg.iter().map(|&i| -&alpha[i] / &total).collect();
    let point = Point::combination(ps.select(&pos), &wp);
    let witness = Witness {
        point,
        weights: vec![wp, wn],
    };
    if !witness.certifies(&[pos.clone(), neg.clone()], ps) {
        return Err(Error::Invariant("Radon witness does not reconstruct".into()));
    }
    let mut p = Partition::new(vec![pos, neg], Some(witness));
    p.canonicalize();
    Ok(p)
}

fn check_tverberg_size(ps: &PointSet, r: usize) -> Result<()> {
    let (n, d) = (ps.len(), ps.dim());
    if r == 0 {
        return Err(Error::SizeOutOfRange("r must be at least 1".into()));
    }
    let lo = (d + 1) * (r - 1) + 1;
    let hi = (d + 1) * r;
    if n < lo || n > hi {
        return Err(Error::SizeOutOfRange(format!(
            "{n} points in dimension {d} with r = {r}; need {lo}..={hi}"
        )));
    }
    Ok(())
}

/// First partition in canonical order into `r` parts of size at most
/// `d + 1` whose hulls share a point.
pub fn tverberg_partition_bruteforce(ps: &PointSet, r: usize) -> Result<Partition> {
    tverberg_partition_search(ps, r, WitnessMode::Basic)
}

pub fn tverberg_partition_search(ps: &PointSet, r: usize, mode: WitnessMode) -> Result<Partition> {
    check_tverberg_size(ps, r)?;
    if ps.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGate {
            points: ps.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let probe = |parts: &Vec<Vec<usize>>| -> Option<Result<Witness>> {
        let found = match mode {
            WitnessMode::Basic => lp::common_point(parts, ps),
            WitnessMode::Generic => lp::generic_common_point(parts, ps),
        };
        found.transpose()
    };
    let mut it = bounded_partitions(ps.len(), r, ps.dim() + 1);
    loop {
        let chunk: Vec<Vec<Vec<usize>>> = it.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        // find_map_first keeps the canonical order whatever the thread count.
        if let Some((parts, w)) = chunk
            .par_iter()
            .find_map_first(|parts| probe(parts).map(|w| (parts.clone(), w)))
        {
            return Ok(Partition::new(parts, Some(w?)));
        }
    }
    Err(Error::Invariant(format!(
        "no Tverberg partition of {} points into {r} parts",
        ps.len()
    )))
}

/// Planar halfplane (Tukey) depth: the fewest points in a closed halfplane
/// whose boundary passes through `q`.
pub fn halfplane_depth(q: &Point, ps: &PointSet) -> Result<usize> {
    if ps.dim() != 2 || q.dim() != 2 {
        return Err(Error::UnsupportedDimension(ps.dim(), "halfplane depth is planar"));
    }
    let mut at_q = 0;
    let mut dirs = Vec::new();
    for p in ps.points() {
        if p == q {
            at_q += 1;
        } else {
            dirs.push(p.sub(q));
        }
    }
    let mut best = ps.len();
    for u in &dirs {
        for normal in [perp(u), perp(u).neg()] {
            let along = perp(&normal);
            for eps in [1i8, -1] {
                let count = dirs
                    .iter()
                    .filter(|v| match v.dot(&normal).signum() {
                        0 => v.dot(&along).signum() == eps,
                        s => s > 0,
                    })
                    .count();
                best = best.min(count + at_q);
            }
        }
    }
    Ok(best)
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn check_planar_gp(ps: &PointSet) -> Result<()> {
    if ps.dim() != 2 {
        return Err(Error::UnsupportedDimension(ps.dim(), "planar operation"));
    }
    let report = in_general_position(ps, None);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::GeneralPositionViolated(report))
    }
}

/// Intersection of the lines through `a, b` and `c, e`, if not parallel.
fn line_intersection(a: &Point, b: &Point, c: &Point, e: &Point) -> Option<Point> {
    let u = b.sub(a);
    let v = e.sub(c);
    let den = cross(&u, &v);
    if den.is_zero() {
        return None;
    }
    let t = cross(&c.sub(a), &v) / den;
    Some(a.add(&u.scale(&t)))
}

/// First candidate of depth at least `ceil(n / 3)`. Candidates are the
/// pairwise intersections of lines through two input points, in
/// lexicographic order of the line pairs, followed by the input points.
pub fn centerpoint_planar(ps: &PointSet) -> Result<Point> {
    check_planar_gp(ps)?;
    let n = ps.len();
    if n == 0 {
        return Err(Error::SizeOutOfRange("empty point set".into()));
    }
    let need = ceil_div(n, 3);
    let lines: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    for (x, &(a, b)) in lines.iter().enumerate() {
        for &(c, e) in &lines[x + 1..] {
            if let Some(q) = line_intersection(ps.point(a), ps.point(b), ps.point(c), ps.point(e)) {
                if halfplane_depth(&q, ps)? >= need {
                    return Ok(q);
                }
            }
        }
    }
    for p in ps.points() {
        if halfplane_depth(p, ps)? >= need {
            return Ok(p.clone());
        }
    }
    Err(Error::Invariant("no centerpoint among the candidates".into()))
}

/// A point of depth at least `ceil(n / 3)` that lies on no line through two
/// input points and coincides with none of them, or `None` when the depth
/// region has empty interior.
pub fn generic_centerpoint(ps: &PointSet) -> Result<Option<Point>> {
    check_planar_gp(ps)?;
    let n = ps.len();
    if n < 3 {
        return Ok(None);
    }
    let k = ceil_div(n, 3);
    let pts = ps.points();

    // Closed halfplanes bounded by a line through two points and holding at
    // least n - k + 1 points; their intersection is the depth-k region.
    let mut poly = bounding_box(ps);
    for a in 0..n {
        for b in a + 1..n {
            for sign in [1i8, -1] {
                let count = pts
                    .iter()
                    .filter(|x| sign * side(&pts[a], &pts[b], x) >= 0)
                    .count();
                if count > n - k {
                    poly = clip(&poly, &pts[a], &pts[b], sign);
                    if poly.len() < 3 {
                        return Ok(None);
                    }
                }
            }
        }
    }
    let m = Rat::from(poly.len());
    let sum = poly.iter().skip(1).fold(poly[0].clone(), |acc, v| acc.add(v));
    let centroid = sum.scale(&m.recip());
    let generic = |q: &Point| {
        (0..n).all(|a| (a + 1..n).all(|b| side(&pts[a], &pts[b], q) != 0))
    };
    let mut candidates = vec![centroid.clone()];
    for t in 1..=8u32 {
        let s = Rat::from_int(1i64 << t).recip();
        candidates.extend(poly.iter().map(|v| centroid.add(&v.sub(&centroid).scale(&s))));
    }
    for q in candidates {
        if generic(&q) {
            if halfplane_depth(&q, ps)? < k {
                return Err(Error::Invariant("depth region point has low depth".into()));
            }
            return Ok(Some(q));
        }
    }
    Ok(None)
}

fn bounding_box(ps: &PointSet) -> Vec<Point> {
    let xs = ps.points().iter().map(|p| &p.coords()[0]);
    let ys = ps.points().iter().map(|p| &p.coords()[1]);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let one = Rat::one();
    let (x0, x1, y0, y1) = (x0 - &one, x1 + &one, y0 - &one, y1 + &one);
    vec![
        Point::new(vec![x0.clone(), y0.clone()]),
        Point::new(vec![x1.clone(), y0]),
        Point::new(vec![x1, y1.clone()]),
        Point::new(vec![x0, y1]),
    ]
}

// Keep the part of a convex polygon where sign * side(a, b, .) >= 0.
fn clip(poly: &[Point], a: &Point, b: &Point, sign: i8) -> Vec<Point> {
    let u = b.sub(a);
    let h = |p: &Point| -> Rat {
        let v = cross(&u, &p.sub(a));
        if sign > 0 {
            v
        } else {
            -v
        }
    };
    let mut out: Vec<Point> = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let (hp, hq) = (h(p), h(q));
        if !hp.is_negative() {
            out.push(p.clone());
        }
        if hp.signum() * hq.signum() < 0 {
            let t = &hp / &(&hp - &hq);
            out.push(p.add(&q.sub(p).scale(&t)));
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    let area_zero = out.len() >= 3
        && (2..out.len()).all(|i| cross(&out[1].sub(&out[0]), &out[i].sub(&out[0])).is_zero());
    if area_zero {
        out.clear();
    }
    out
}

/// Planar partition of `3r` points into `r` triangles around a common
/// center, by angular order around a deep point. Falls back to the
/// exhaustive search if the construction does not certify.
pub fn birch_partition_planar(ps: &PointSet) -> Result<(Partition, Method)> {
    check_planar_gp(ps)?;
    let n = ps.len();
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::SizeOutOfRange(format!("{n} points is not a positive multiple of 3")));
    }
    let r = n / 3;
    if let Some(o) = generic_centerpoint(ps)? {
        let mut order: Vec<usize> = (0..n).collect();
        let dirs: Vec<Point> = ps.points().iter().map(|p| p.sub(&o)).collect();
        order.sort_by(|&i, &j| angle_cmp(&dirs[i], &dirs[j]));
        let parts: Vec<Vec<usize>> = (0..r)
            .map(|i| vec![order[i], order[i + r], order[i + 2 * r]])
            .collect();
        if let Some(p) = certify_triangles(parts, &o, ps)? {
            return Ok((p, Method::Birch));
        }
    }
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGate {
            points: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let p = tverberg_partition_search(ps, r, WitnessMode::Generic)?;
    Ok((p, Method::BirchFallback))
}

fn certify_triangles(parts: Vec<Vec<usize>>, o: &Point, ps: &PointSet) -> Result<Option<Partition>> {
    let mut weights = Vec::with_capacity(parts.len());
    for part in &parts {
        match crate::geometry::barycentric(o, &ps.select(part))? {
            Some(w) if crate::geometry::classify_barycentric(&w) == ContainmentStatus::Interior => {
                weights.push(w)
            }
            _ => return Ok(None),
        }
    }
    let mut p = Partition::new(
        parts,
        Some(Witness {
            point: o.clone(),
            weights,
        }),
    );
    p.canonicalize();
    Ok(Some(p))
}

fn recompute_weights(parts: &[Vec<usize>], o: &Point, ps: &PointSet) -> Result<Vec<Vec<Rat>>> {
    parts
        .iter()
        .map(|part| lp::hull_weights(o, &ps.select(part))?.ok_or(Error::WitnessNotContained))
        .collect()
}

/// Shrink oversized parts to `d + 1` points still containing the witness and
/// hand the removed points to parts with spare room.
pub fn balance_parts(partition: &Partition, ps: &PointSet) -> Result<Partition> {
    let o = partition.witness_point()?.clone();
    partition.validate(ps, None)?;
    let cap = ps.dim() + 1;
    let mut removed = Vec::new();
    let mut parts = Vec::with_capacity(partition.len());
    for part in &partition.parts {
        if part.len() > cap {
            let kept = caratheodory_reduce(part, &o, ps)?;
            removed.extend(part.iter().filter(|i| !kept.contains(i)));
            parts.push(kept);
        } else {
            parts.push(part.clone());
        }
    }
    removed.sort_unstable();
    let mut pending = removed.into_iter();
    for part in parts.iter_mut() {
        while part.len() < cap {
            match pending.next() {
                Some(i) => part.push(i),
                None => break,
            }
        }
    }
    if pending.next().is_some() {
        return Err(Error::SizeOutOfRange(
            "more points than r parts of size d+1 can hold".into(),
        ));
    }
    let weights = recompute_weights(&parts, &o, ps)?;
    let mut out = Partition::new(parts, Some(Witness { point: o, weights }));
    out.canonicalize();
    Ok(out)
}

fn hull_contains_all(inner: &[usize], outer: &[usize], ps: &PointSet) -> Result<bool> {
    let hull = ps.select(outer);
    for &i in inner {
        if !lp::in_hull(ps.point(i), &hull)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Insert `leftover` points one by one, each into the first part whose hull
/// already holds it, else into the part whose enlarged hull is
/// inclusion-minimal (smallest index on ties). Pairs of parts with at least
/// `d + 1` points are checked to still cross after every insertion.
pub fn extend_partition(partition: &Partition, leftover: &[usize], ps: &PointSet) -> Result<Partition> {
    let o = partition.witness_point()?.clone();
    partition.validate(ps, None)?;
    ps.check_indices(leftover)?;
    let mut used = vec![false; ps.len()];
    partition.parts.iter().flatten().for_each(|&i| used[i] = true);
    let mut parts = partition.parts.clone();
    let mut weights = partition.witness.as_ref().unwrap().weights.clone();
    let d = ps.dim();

    for &p in leftover {
        if std::mem::replace(&mut used[p], true) {
            return Err(Error::InvalidPartition(format!("point {p} is already used")));
        }
        let target = match first_containing(&parts, p, ps)? {
            Some(i) => i,
            None => minimal_extension(&parts, p, ps)?,
        };
        parts[target].push(p);
        weights[target].push(Rat::zero());

        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                if parts[i].len() > d && parts[j].len() > d {
                    let verdict = crate::crossing::classify_hulls(&parts[i], &parts[j], ps)?;
                    if verdict != crate::crossing::PairClass::Crossing {
                        return Err(Error::CrossingLost {
                            point: p,
                            i,
                            j,
                            verdict,
                        });
                    }
                }
            }
        }
    }
    let mut out = Partition::new(parts, Some(Witness { point: o, weights }));
    out.canonicalize();
    Ok(out)
}

fn first_containing(parts: &[Vec<usize>], p: usize, ps: &PointSet) -> Result<Option<usize>> {
    for (i, part) in parts.iter().enumerate() {
        if lp::in_hull(ps.point(p), &ps.select(part))? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn minimal_extension(parts: &[Vec<usize>], p: usize, ps: &PointSet) -> Result<usize> {
    let grown: Vec<Vec<usize>> = parts
        .iter()
        .map(|part| {
            let mut g = part.clone();
            g.push(p);
            g
        })
        .collect();
    let k = grown.len();
    // sub[i][j]: conv(grown[i]) is contained in conv(grown[j]).
    let mut sub = vec![vec![true; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j {
                sub[i][j] = hull_contains_all(&parts[i], &grown[j], ps)?;
            }
        }
    }
    (0..k)
        .find(|&i| !(0..k).any(|j| j != i && sub[j][i] && !sub[i][j]))
        .ok_or_else(|| Error::Invariant("no inclusion-minimal hull".into()))
}

/// Check a point against a closed simplex, used by callers that already
/// hold vertex references.
pub fn witness_in_part(o: &Point, part: &[usize], ps: &PointSet) -> Result<bool> {
    let vertices = ps.select(part);
    if vertices.len() <= ps.dim() + 1 {
        match point_in_simplex(o, &vertices) {
            Ok(s) => return Ok(s != ContainmentStatus::Outside),
            Err(Error::DegenerateSimplex) => {}
            Err(e) => return Err(e),
        }
    }
    lp::in_hull(o, &vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gen::random_general_position;

    fn pts(rows: &[&[i64]]) -> PointSet {
        PointSet::from_ints(rows).unwrap()
    }

    #[test]
    fn radon_examples() {
        let p = radon_partition(&pts(&[&[0, 0], &[1, 1], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(p.parts, vec![vec![0, 1], vec![2, 3]]);
        let half = Rat::new(1, 2);
        assert_eq!(p.witness.as_ref().unwrap().point, Point::new(vec![half.clone(), half.clone()]));

        let ps = PointSet::from_points(vec![
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[2, 0]),
            Point::from_ints(&[0, 2]),
            Point::new(vec![half.clone(), half.clone()]),
        ])
        .unwrap();
        let p = radon_partition(&ps).unwrap();
        assert_eq!(p.parts, vec![vec![0, 1, 2], vec![3]]);
        assert_eq!(p.witness.unwrap().point, Point::new(vec![half.clone(), half]));

        let p = radon_partition(&pts(&[&[-1], &[0], &[5]])).unwrap();
        assert_eq!(p.parts, vec![vec![0, 2], vec![1]]);
        assert_eq!(p.witness.unwrap().point, Point::from_ints(&[0]));
    }

    #[test]
    fn radon_rejects_wrong_count() {
        assert!(matches!(
            radon_partition(&pts(&[&[0, 0], &[1, 1], &[1, 0]])),
            Err(Error::WrongPointCount { .. })
        ));
    }

    #[test]
    fn bruteforce_line() {
        let ps = pts(&[&[-2], &[-1], &[1], &[2]]);
        let p = tverberg_partition_bruteforce(&ps, 2).unwrap();
        p.validate(&ps, Some(2)).unwrap();
        assert!(p.witness.is_some());
        // Oracle: of the three pairings only {-2,-1},{1,2} has disjoint hulls.
        assert_ne!(p.parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(p.parts, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn bruteforce_hexagon_with_center() {
        let ps = fixtures::hexagon_with_center();
        for mode in [WitnessMode::Basic, WitnessMode::Generic] {
            let p = tverberg_partition_search(&ps, 3, mode).unwrap();
            p.validate(&ps, Some(3)).unwrap();
            assert_eq!(p.len(), 3);
        }
    }

    #[test]
    fn bruteforce_five_points() {
        let ps = random_general_position(2, 5, 3, None).unwrap();
        let p = tverberg_partition_bruteforce(&ps, 2).unwrap();
        p.validate(&ps, Some(3)).unwrap();
        let mut sizes = p.sizes();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 3]);
        assert!(lp::common_point(&p.parts, &ps).unwrap().is_some());
    }

    #[test]
    fn bruteforce_gates() {
        let ps = random_general_position(2, 5, 3, None).unwrap();
        assert!(matches!(tverberg_partition_bruteforce(&ps, 3), Err(Error::SizeOutOfRange(_))));
        assert!(matches!(tverberg_partition_bruteforce(&ps, 0), Err(Error::SizeOutOfRange(_))));
        let big = random_general_position(1, 15, 3, None).unwrap();
        assert!(matches!(
            tverberg_partition_bruteforce(&big, 8),
            Err(Error::SizeGate { points: 15, .. })
        ));
    }

    #[test]
    fn bruteforce_independent_of_thread_count() {
        let ps = random_general_position(2, 9, 21, None).unwrap();
        let reference = tverberg_partition_bruteforce(&ps, 3).unwrap();
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let p = pool.install(|| tverberg_partition_bruteforce(&ps, 3)).unwrap();
            assert_eq!(p, reference);
        }
    }

    // Depth oracle: closed halfplanes through q with boundary direction
    // strictly between consecutive critical directions.
    fn depth_oracle(q: &Point, ps: &PointSet) -> usize {
        let mut crit: Vec<Point> = ps
            .points()
            .iter()
            .filter(|p| *p != q)
            .flat_map(|p| [p.sub(q), q.sub(p)])
            .collect();
        if crit.is_empty() {
            return ps.len();
        }
        crit.sort_by(angle_cmp);
        crit.dedup_by(|a, b| angle_cmp(a, b) == std::cmp::Ordering::Equal);
        let mut best = ps.len();
        for i in 0..crit.len() {
            let (a, b) = (&crit[i], &crit[(i + 1) % crit.len()]);
            let mut w = a.add(b);
            if w.coords().iter().all(Rat::is_zero) {
                w = perp(a);
            }
            let nrm = perp(&w);
            for s in [1i8, -1] {
                let c = ps
                    .points()
                    .iter()
                    .filter(|p| s * p.sub(q).dot(&nrm).signum() >= 0)
                    .count();
                best = best.min(c);
            }
        }
        best
    }

    #[test]
    fn depth_matches_oracle() {
        for seed in 0..20 {
            let ps = random_general_position(2, 9, seed, None).unwrap();
            for q in ps.points().iter().take(3) {
                assert_eq!(halfplane_depth(q, &ps).unwrap(), depth_oracle(q, &ps));
            }
            let c = generic_centerpoint(&ps).unwrap().unwrap();
            assert_eq!(halfplane_depth(&c, &ps).unwrap(), depth_oracle(&c, &ps));
            assert!(depth_oracle(&c, &ps) >= 3);
        }
    }

    #[test]
    fn centerpoint_depths() {
        let tri = pts(&[&[0, 0], &[4, 0], &[0, 4]]);
        assert!(depth_oracle(&centerpoint_planar(&tri).unwrap(), &tri) >= 1);
        let hex = fixtures::hexagon();
        assert!(depth_oracle(&centerpoint_planar(&hex).unwrap(), &hex) >= 2);
        let ps = random_general_position(2, 9, 5, None).unwrap();
        assert!(depth_oracle(&centerpoint_planar(&ps).unwrap(), &ps) >= 3);
    }

    #[test]
    fn birch_hexagon() {
        let ps = fixtures::hexagon();
        let (p, method) = birch_partition_planar(&ps).unwrap();
        assert_eq!(method, Method::Birch);
        assert_eq!(p.parts, vec![vec![0, 2, 4], vec![1, 3, 5]]);
        let o = &p.witness.as_ref().unwrap().point;
        for part in &p.parts {
            assert_eq!(point_in_simplex(o, &ps.select(part)).unwrap(), ContainmentStatus::Interior);
        }
    }

    #[test]
    fn birch_accepted_by_search_contract() {
        for seed in 0..6 {
            let ps = random_general_position(2, 9, 100 + seed, None).unwrap();
            let (p, _) = birch_partition_planar(&ps).unwrap();
            p.validate(&ps, Some(3)).unwrap();
            assert!(lp::common_point(&p.parts, &ps).unwrap().is_some());
        }
    }

    #[test]
    fn birch_rejects_degenerate() {
        let ps = pts(&[&[0, 0], &[1, 0], &[2, 0], &[0, 1], &[1, 2], &[3, 5]]);
        assert!(matches!(birch_partition_planar(&ps), Err(Error::GeneralPositionViolated(_))));
    }

    #[test]
    fn balance_examples() {
        let ps = fixtures::hexagon_with_center();
        let o = Point::combination(ps.select(&[0, 2, 4]), &[Rat::new(1, 3), Rat::new(1, 3), Rat::new(1, 3)]);
        // One part of five points and one of a single point.
        let parts = vec![vec![0, 1, 2, 3, 4], vec![6]];
        let weights = recompute_weights(&[vec![0, 1, 2, 3, 4]], &o, &ps).unwrap();
        let mut w = weights;
        w.push(vec![Rat::one()]);
        let p = Partition::new(
            parts,
            Some(Witness {
                point: o.clone(),
                weights: w,
            }),
        );
        // Witness certifies only for the first part; a singleton needs o = point 6.
        assert!(p.validate(&ps, None).is_err());

        let centre = ps.point(6).clone();
        let weights = recompute_weights(&[vec![0, 1, 2, 3, 4], vec![6]], &centre, &ps).unwrap();
        let p = Partition::new(
            vec![vec![0, 1, 2, 3, 4], vec![6]],
            Some(Witness {
                point: centre.clone(),
                weights,
            }),
        );
        let b = balance_parts(&p, &ps).unwrap();
        b.validate(&ps, Some(3)).unwrap();
        assert_eq!(b.sizes(), vec![3, 3]);
        assert_eq!(b.witness.unwrap().point, centre);

        let same = balance_parts(&b_identity(&ps), &ps).unwrap();
        assert_eq!(same, b_identity(&ps));
    }

    fn b_identity(ps: &PointSet) -> Partition {
        let mut p = tverberg_partition_bruteforce(ps, 3).unwrap();
        p.canonicalize();
        p.witness.as_mut().unwrap().weights = recompute_weights(&p.parts, &p.witness.as_ref().unwrap().point, ps).unwrap();
        p
    }

    #[test]
    fn extend_examples() {
        let mut ps = fixtures::crossing_triangles();
        let o = Point::origin(2);
        let parts = vec![vec![0, 1, 2], vec![3, 4, 5]];
        let weights = recompute_weights(&parts, &o, &ps).unwrap();
        let p = Partition::new(parts, Some(Witness { point: o, weights }));
        assert_eq!(extend_partition(&p, &[], &ps).unwrap(), p);

        // A point inside the first triangle only joins it.
        ps.push(Point::from_ints(&[3, 0])).unwrap();
        let q = extend_partition(&p, &[6], &ps).unwrap();
        assert_eq!(q.parts[0], vec![0, 1, 2, 6]);

        // A far point outside both.
        ps.push(Point::from_ints(&[20, 7])).unwrap();
        let q = extend_partition(&p, &[7], &ps).unwrap();
        q.validate(&ps, None).unwrap();
        assert_eq!(q.sizes().iter().sum::<usize>(), 7);
        assert_eq!(
            crate::crossing::classify_hulls(&q.parts[0], &q.parts[1], &ps).unwrap(),
            crate::crossing::PairClass::Crossing
        );
    }

    #[test]
    fn extend_rejects_reuse() {
        let ps = fixtures::crossing_triangles();
        let o = Point::origin(2);
        let parts = vec![vec![0, 1, 2], vec![3, 4, 5]];
        let weights = recompute_weights(&parts, &o, &ps).unwrap();
        let p = Partition::new(parts, Some(Witness { point: o, weights }));
        assert!(extend_partition(&p, &[1], &ps).is_err());
    }
}
