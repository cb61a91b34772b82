//! End-to-end pipelines, the independent verifier, and the check of the
//! eight-point example in R^3 without linked origin-containing tetrahedra.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::crossing::{self, classify_pair, FixOptions, FixTrace, PairClass};
use crate::enumerate::{combinations_of, complementary_halves};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::geometry::{
    in_general_position, linalg, point_in_simplex, triangles_linked, ContainmentStatus, Point,
    PointSet,
};
use crate::lp;
use crate::rat::Rat;
use crate::tverberg::{
    birch_partition_planar, extend_partition, tverberg_partition_search, Method, Partition,
    WitnessMode,
};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Timings {
    pub partition: Duration,
    pub fixing: Duration,
    pub extension: Duration,
    pub verification: Duration,
}

/// Verdict matrix entry `[i][j]` relates part `i` to part `j`; `None` on the
/// diagonal and for parts with fewer than `d + 1` points.
pub type VerdictMatrix = Vec<Vec<Option<PairClass>>>;

#[derive(Debug, Clone, PartialEq)]
pub struct CrossingReport {
    pub partition: Partition,
    pub verdicts: VerdictMatrix,
    pub trace: FixTrace,
    pub method: Method,
    /// Points added after fixing, in insertion order.
    pub inserted: Vec<usize>,
    /// Points left out so that every part is a full simplex.
    pub discarded: Vec<usize>,
    pub timings: Timings,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PipelineOptions {
    pub fix: FixOptions,
}

fn require_general_position(ps: &PointSet) -> Result<()> {
    let report = in_general_position(ps, None);
    if report.is_ok() {
        Ok(())
    } else {
        Err(Error::GeneralPositionViolated(report))
    }
}

fn pipeline_verdicts(partition: &Partition, ps: &PointSet) -> Result<VerdictMatrix> {
    let o = partition.witness_point()?;
    let k = ps.dim() + 1;
    let parts = &partition.parts;
    let mut m = vec![vec![None; parts.len()]; parts.len()];
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if parts[i].len() < k || parts[j].len() < k {
                continue;
            }
            let v = if parts[i].len() == k && parts[j].len() == k {
                classify_pair(&parts[i], &parts[j], ps, o)?
            } else {
                crossing::classify_hulls(&parts[i], &parts[j], ps)?
            };
            m[i][j] = Some(v);
            m[j][i] = Some(v.transposed());
        }
    }
    Ok(m)
}

/// Partition `ps` into `r` parts with a common point whose full-size parts
/// pairwise cross. Inputs larger than `(d+1) r` are handled by partitioning
/// the first `(d+1) r` points and inserting the rest afterwards.
pub fn crossing_tverberg(ps: &PointSet, r: usize, opts: PipelineOptions) -> Result<CrossingReport> {
    let (n, d) = (ps.len(), ps.dim());
    if d < 2 {
        return Err(Error::UnsupportedDimension(d, "crossing partitions need d >= 2"));
    }
    if r == 0 {
        return Err(Error::SizeOutOfRange("r must be at least 1".into()));
    }
    let lo = (d + 1) * (r - 1) + 1;
    if n < lo {
        return Err(Error::SizeOutOfRange(format!(
            "{n} points in dimension {d} with r = {r}; need at least {lo}"
        )));
    }
    require_general_position(ps)?;
    let bound = (d + 1) * r;
    let core: Vec<usize> = (0..n.min(bound)).collect();
    let leftover: Vec<usize> = (n.min(bound)..n).collect();
    let sub = ps.subset(&core);

    let mut timings = Timings::default();
    let t = Instant::now();
    let (initial, method) = if d == 2 && sub.len() == 3 * r {
        birch_partition_planar(&sub)?
    } else {
        (tverberg_partition_search(&sub, r, WitnessMode::Generic)?, Method::BruteForce)
    };
    timings.partition = t.elapsed();

    let t = Instant::now();
    let (fixed, trace) = crossing::fix_all(&initial, &sub, opts.fix)?;
    timings.fixing = t.elapsed();

    // `core` is a prefix, so indices into `sub` are indices into `ps`.
    let t = Instant::now();
    let partition = if leftover.is_empty() {
        fixed
    } else {
        extend_partition(&fixed, &leftover, ps)?
    };
    timings.extension = t.elapsed();

    let t = Instant::now();
    let size_bound = leftover.is_empty().then_some(d + 1);
    let report = verify_crossing_partition(ps, &partition, size_bound);
    if !report.is_ok() {
        return Err(Error::VerificationFailed(format!("{:?}", report.violations)));
    }
    let verdicts = pipeline_verdicts(&partition, ps)?;
    if verdicts != report.verdicts {
        return Err(Error::VerificationFailed(
            "pipeline and verifier disagree on pair verdicts".into(),
        ));
    }
    timings.verification = t.elapsed();

    Ok(CrossingReport {
        partition,
        verdicts,
        trace,
        method,
        inserted: leftover,
        discarded: Vec::new(),
        timings,
    })
}

/// `floor(n / (d+1))` pairwise crossing simplices with a common point.
/// Without `discard`, the `n mod (d+1)` highest indices are left out.
pub fn crossing_simplices(
    ps: &PointSet,
    discard: Option<&[usize]>,
    opts: PipelineOptions,
) -> Result<CrossingReport> {
    let (n, k) = (ps.len(), ps.dim() + 1);
    let r = n / k;
    if r == 0 {
        return Err(Error::SizeOutOfRange(format!(
            "{n} points are fewer than d + 1 = {k}"
        )));
    }
    let extra = n % k;
    let discarded: Vec<usize> = match discard {
        None => (n - extra..n).collect(),
        Some(list) => {
            ps.check_indices(list)?;
            let mut list = list.to_vec();
            list.sort_unstable();
            list.dedup();
            if list.len() != extra {
                return Err(Error::SizeOutOfRange(format!(
                    "must discard exactly {extra} distinct points, got {}",
                    list.len()
                )));
            }
            list
        }
    };
    let kept: Vec<usize> = (0..n).filter(|i| discarded.binary_search(i).is_err()).collect();
    let sub = ps.subset(&kept);
    let mut report = crossing_tverberg(&sub, r, opts)?;
    for part in report.partition.parts.iter_mut() {
        for i in part.iter_mut() {
            *i = kept[*i];
        }
    }
    if report.partition.parts.iter().any(|p| p.len() != k) || report.partition.len() != r {
        return Err(Error::Invariant("simplex count or size is off".into()));
    }
    report.discarded = discarded;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LinkVerdict {
    Linked { face_a: Vec<usize>, face_b: Vec<usize> },
    NotLinked,
    /// Two face boundaries touch or meet non-generically.
    FacesIntersect { face_a: Vec<usize>, face_b: Vec<usize> },
}

impl LinkVerdict {
    pub fn is_linked(&self) -> bool {
        matches!(self, LinkVerdict::Linked { .. })
    }
}

/// Whether a 2-face boundary of tetrahedron `a` is linked with a 2-face
/// boundary of tetrahedron `b`.
pub fn tetrahedra_face_linked(a: &[usize], b: &[usize], ps: &PointSet) -> Result<LinkVerdict> {
    if ps.dim() != 3 {
        return Err(Error::UnsupportedDimension(ps.dim(), "linking is defined in R^3"));
    }
    for s in [a, b] {
        if s.len() != 4 {
            return Err(Error::WrongPointCount {
                expected: 4,
                found: s.len(),
            });
        }
    }
    ps.check_indices(a)?;
    ps.check_indices(b)?;
    if a.iter().any(|i| b.contains(i)) {
        return Err(Error::InvalidPartition("tetrahedra share a vertex".into()));
    }
    let mut touching = None;
    for fa in combinations_of(a, 3) {
        for fb in combinations_of(b, 3) {
            let (ta, tb) = (ps.select(&fa), ps.select(&fb));
            match triangles_linked([ta[0], ta[1], ta[2]], [tb[0], tb[1], tb[2]]) {
                Ok(true) => {
                    return Ok(LinkVerdict::Linked {
                        face_a: fa,
                        face_b: fb,
                    })
                }
                Ok(false) => {}
                Err(Error::DegenerateIncidence) => {
                    touching.get_or_insert((fa.clone(), fb.clone()));
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(match touching {
        Some((face_a, face_b)) => LinkVerdict::FacesIntersect { face_a, face_b },
        None => LinkVerdict::NotLinked,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum FsStatus {
    Confirmed,
    Falsified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsReport {
    pub splits_checked: usize,
    pub origin_pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub origin_pair_count: usize,
    pub even: bool,
    pub linked_pairs: usize,
    pub faces_intersect_pairs: usize,
    pub status: FsStatus,
}

/// Check the built-in eight points against the origin: some split into two
/// tetrahedra has both containing the origin, and no such split is linked.
pub fn felsner_scheucher_verify() -> Result<FsReport> {
    felsner_scheucher_check(&fixtures::felsner_scheucher(), &Point::origin(3))
}

/// [`felsner_scheucher_verify`] for any eight points and center.
pub fn felsner_scheucher_check(ps: &PointSet, o: &Point) -> Result<FsReport> {
    if ps.dim() != 3 || ps.len() != 8 {
        return Err(Error::WrongPointCount {
            expected: 8,
            found: ps.len(),
        });
    }
    let splits_checked = complementary_halves(&(0..8).collect::<Vec<_>>()).len();
    let origin_pairs = crossing::enumerate_origin_pairs(ps, o)?;
    let mut linked_pairs = 0;
    let mut faces_intersect_pairs = 0;
    for (f, g) in &origin_pairs {
        match tetrahedra_face_linked(f, g, ps)? {
            LinkVerdict::Linked { .. } => linked_pairs += 1,
            LinkVerdict::FacesIntersect { .. } => faces_intersect_pairs += 1,
            LinkVerdict::NotLinked => {}
        }
    }
    let count = origin_pairs.len();
    let even = count % 2 == 0;
    let status = if count > 0 && even && linked_pairs == 0 {
        FsStatus::Confirmed
    } else {
        FsStatus::Falsified
    };
    Ok(FsReport {
        splits_checked,
        origin_pair_count: count,
        origin_pairs,
        even,
        linked_pairs,
        faces_intersect_pairs,
        status,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EmptyPart { part: usize },
    IndexOutOfRange { part: usize, index: usize },
    DuplicateIndex { index: usize },
    PartTooLarge { part: usize, size: usize, max: usize },
    MissingWitness,
    WitnessDimension { found: usize },
    WitnessWeights { part: usize },
    WitnessOutside { part: usize },
    DegeneratePart { part: usize },
    Nested { inner: usize, outer: usize },
    NoCommonPoint { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub violations: Vec<Violation>,
    pub verdicts: VerdictMatrix,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn full_dimensional(part: &[usize], ps: &PointSet) -> bool {
    let base = ps.point(part[0]);
    let rows: Vec<Vec<Rat>> = part[1..]
        .iter()
        .map(|&i| ps.point(i).sub(base).into_coords())
        .collect();
    linalg::rank(&rows, ps.dim()) == ps.dim()
}

fn weights_reproduce(point: &Point, weights: &[Rat], part: &[usize], ps: &PointSet) -> bool {
    if weights.len() != part.len() || weights.iter().any(Rat::is_negative) {
        return false;
    }
    if weights.iter().sum::<Rat>() != Rat::one() {
        return false;
    }
    let mut acc = vec![Rat::zero(); ps.dim()];
    for (w, &i) in weights.iter().zip(part) {
        for (a, c) in acc.iter_mut().zip(ps.point(i).coords()) {
            *a += &(w * c);
        }
    }
    acc == point.coords()
}

fn hull_holds(p: &Point, part: &[usize], ps: &PointSet) -> Result<bool> {
    let vertices = ps.select(part);
    if vertices.len() == ps.dim() + 1 {
        if let Ok(s) = point_in_simplex(p, &vertices) {
            return Ok(s != ContainmentStatus::Outside);
        }
    }
    lp::in_hull(p, &vertices)
}

/// Re-check a claimed crossing Tverberg partition from scratch: disjoint
/// parts, optional size bound, the witness lies in every hull, and every
/// two parts with at least `d + 1` points cross.
pub fn verify_crossing_partition(
    ps: &PointSet,
    partition: &Partition,
    max_part_size: Option<usize>,
) -> VerificationReport {
    let mut violations = Vec::new();
    let parts = &partition.parts;
    let k = ps.dim() + 1;
    let mut seen = vec![false; ps.len()];
    let mut sound = vec![true; parts.len()];
    for (p, part) in parts.iter().enumerate() {
        if part.is_empty() {
            violations.push(Violation::EmptyPart { part: p });
            sound[p] = false;
        }
        if let Some(max) = max_part_size {
            if part.len() > max {
                violations.push(Violation::PartTooLarge {
                    part: p,
                    size: part.len(),
                    max,
                });
            }
        }
        for &i in part {
            if i >= ps.len() {
                violations.push(Violation::IndexOutOfRange { part: p, index: i });
                sound[p] = false;
            } else if std::mem::replace(&mut seen[i], true) {
                violations.push(Violation::DuplicateIndex { index: i });
            }
        }
    }

    match &partition.witness {
        None => violations.push(Violation::MissingWitness),
        Some(w) if w.point.dim() != ps.dim() => violations.push(Violation::WitnessDimension {
            found: w.point.dim(),
        }),
        Some(w) => {
            for (p, part) in parts.iter().enumerate() {
                if !sound[p] {
                    continue;
                }
                let weights = w.weights.get(p).map(Vec::as_slice).unwrap_or(&[]);
                if !weights_reproduce(&w.point, weights, part, ps) {
                    violations.push(Violation::WitnessWeights { part: p });
                }
                if !hull_holds(&w.point, part, ps).unwrap_or(false) {
                    violations.push(Violation::WitnessOutside { part: p });
                }
            }
        }
    }

    let mut verdicts = vec![vec![None; parts.len()]; parts.len()];
    let full: Vec<usize> = (0..parts.len())
        .filter(|&p| sound[p] && parts[p].len() >= k)
        .filter(|&p| {
            let ok = full_dimensional(&parts[p], ps);
            if !ok {
                violations.push(Violation::DegeneratePart { part: p });
            }
            ok
        })
        .collect();
    for (x, &i) in full.iter().enumerate() {
        for &j in &full[x + 1..] {
            let v = match independent_class(&parts[i], &parts[j], ps) {
                Ok(v) => v,
                Err(_) => {
                    violations.push(Violation::DegeneratePart { part: i });
                    continue;
                }
            };
            match v {
                PairClass::Inside => violations.push(Violation::Nested { inner: i, outer: j }),
                PairClass::Contains => violations.push(Violation::Nested { inner: j, outer: i }),
                PairClass::NoCommonPoint => violations.push(Violation::NoCommonPoint { i, j }),
                PairClass::Crossing => {}
            }
            verdicts[i][j] = Some(v);
            verdicts[j][i] = Some(v.transposed());
        }
    }
    VerificationReport {
        violations,
        verdicts,
    }
}

fn independent_class(a: &[usize], b: &[usize], ps: &PointSet) -> Result<PairClass> {
    if lp::common_point(&[a.to_vec(), b.to_vec()], ps)?.is_none() {
        return Ok(PairClass::NoCommonPoint);
    }
    let inside = |inner: &[usize], outer: &[usize]| -> Result<bool> {
        let hull = ps.select(outer);
        for &i in inner {
            if !lp::in_hull(ps.point(i), &hull)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(if inside(a, b)? {
        PairClass::Inside
    } else if inside(b, a)? {
        PairClass::Contains
    } else {
        PairClass::Crossing
    })
}
