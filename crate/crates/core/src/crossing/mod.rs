//! Crossing versus nested simplex pairs, origin-containing complementary
//! pairs, and the repartitioning loop that removes nesting.

pub mod cocycle;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::enumerate::{combinations_of, complementary_halves};
use crate::error::{Error, Result};
use crate::geometry::planar::angle_cmp;
use crate::geometry::{
    barycentric, classify_barycentric, in_general_position, point_in_simplex, simplex_volume,
    ContainmentStatus, Point, PointSet,
};
use crate::lp::{self, Witness};
use crate::rat::Rat;
use crate::tverberg::Partition;

/// Relation between the hulls of two parts. `Inside` means the first hull
/// lies in the second, `Contains` the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairClass {
    Crossing,
    Inside,
    Contains,
    NoCommonPoint,
}

impl PairClass {
    pub fn is_nested(self) -> bool {
        matches!(self, PairClass::Inside | PairClass::Contains)
    }

    pub fn transposed(self) -> PairClass {
        match self {
            PairClass::Inside => PairClass::Contains,
            PairClass::Contains => PairClass::Inside,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PairClass::Crossing => "crossing",
            PairClass::Inside => "inside",
            PairClass::Contains => "contains",
            PairClass::NoCommonPoint => "no_common_point",
        }
    }
}

fn check_simplex_pair(a: &[usize], b: &[usize], ps: &PointSet) -> Result<()> {
    let k = ps.dim() + 1;
    for s in [a, b] {
        if s.len() != k {
            return Err(Error::WrongPointCount {
                expected: k,
                found: s.len(),
            });
        }
    }
    ps.check_indices(a)?;
    ps.check_indices(b)?;
    if a.iter().any(|i| b.contains(i)) {
        return Err(Error::InvalidPartition("simplices share a vertex".into()));
    }
    Ok(())
}

/// Classify two vertex-disjoint `d`-simplices that should share the point
/// `o`.
pub fn classify_pair(a: &[usize], b: &[usize], ps: &PointSet, o: &Point) -> Result<PairClass> {
    check_simplex_pair(a, b, ps)?;
    let (va, vb) = (ps.select(a), ps.select(b));
    if point_in_simplex(o, &va)? == ContainmentStatus::Outside
        || point_in_simplex(o, &vb)? == ContainmentStatus::Outside
    {
        return Ok(PairClass::NoCommonPoint);
    }
    let all_in = |inner: &[&Point], outer: &[&Point]| -> Result<bool> {
        for v in inner {
            if point_in_simplex(v, outer)? == ContainmentStatus::Outside {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(if all_in(&va, &vb)? {
        PairClass::Inside
    } else if all_in(&vb, &va)? {
        PairClass::Contains
    } else {
        PairClass::Crossing
    })
}

/// Like [`classify_pair`] for parts of any size, using LP hull membership.
pub fn classify_hulls(a: &[usize], b: &[usize], ps: &PointSet) -> Result<PairClass> {
    if lp::common_point(&[a.to_vec(), b.to_vec()], ps)?.is_none() {
        return Ok(PairClass::NoCommonPoint);
    }
    let all_in = |inner: &[usize], outer: &[usize]| -> Result<bool> {
        let hull = ps.select(outer);
        for &i in inner {
            if !lp::in_hull(ps.point(i), &hull)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(if all_in(a, b)? {
        PairClass::Inside
    } else if all_in(b, a)? {
        PairClass::Contains
    } else {
        PairClass::Crossing
    })
}

fn require_general(ps: &PointSet, indices: &[usize], o: &Point) -> Result<()> {
    let sub = ps.subset(indices);
    let report = in_general_position(&sub, Some(o));
    if report.is_ok() {
        return Ok(());
    }
    // Report violations in the caller's indices; `o` keeps index `len()`.
    let violations = report
        .violations
        .into_iter()
        .map(|c| {
            c.into_iter()
                .map(|k| indices.get(k).copied().unwrap_or(ps.len()))
                .collect()
        })
        .collect();
    Err(Error::GeneralPositionViolated(
        crate::geometry::GeneralPositionReport { violations },
    ))
}

fn contains_strictly(o: &Point, part: &[usize], ps: &PointSet) -> Result<bool> {
    Ok(point_in_simplex(o, &ps.select(part))? == ContainmentStatus::Interior)
}

/// Complementary `(d+1)`-splits `{F, G}` of `indices` with `o` in both
/// hulls, in canonical order (the first half holds the smallest index).
pub fn origin_pairs_in(
    ps: &PointSet,
    indices: &[usize],
    o: &Point,
) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let k = ps.dim() + 1;
    if indices.len() != 2 * k {
        return Err(Error::WrongPointCount {
            expected: 2 * k,
            found: indices.len(),
        });
    }
    ps.check_indices(indices)?;
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    require_general(ps, &sorted, o)?;
    let mut out = Vec::new();
    for (f, g) in complementary_halves(&sorted) {
        if contains_strictly(o, &f, ps)? && contains_strictly(o, &g, ps)? {
            out.push((f, g));
        }
    }
    Ok(out)
}

pub fn enumerate_origin_pairs(v: &PointSet, o: &Point) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let all: Vec<usize> = (0..v.len()).collect();
    origin_pairs_in(v, &all, o)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub count: usize,
    pub even: bool,
}

/// Counts origin-containing complementary pairs; an odd count is an error.
pub fn parity_check(v: &PointSet, o: &Point) -> Result<ParityReport> {
    let count = enumerate_origin_pairs(v, o)?.len();
    if count % 2 == 1 {
        return Err(Error::ParityViolated(count));
    }
    Ok(ParityReport { count, even: true })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleReport {
    pub holds: bool,
    /// A `(d+2)`-subset with a count other than 0 or 2.
    pub offending: Option<Vec<usize>>,
    pub offending_count: Option<usize>,
    /// Number of `(d+1)`-subsets whose hull contains `o`.
    pub family_size: usize,
}

/// The `(d+1)`-subsets of `v` whose hull strictly contains `o`, in
/// lexicographic order.
pub fn containing_family(v: &PointSet, o: &Point) -> Result<Vec<Vec<usize>>> {
    let all: Vec<usize> = (0..v.len()).collect();
    require_general(v, &all, o)?;
    let mut out = Vec::new();
    for f in combinations_of(&all, v.dim() + 1) {
        if contains_strictly(o, &f, v)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Every `(d+2)`-subset of `v` must contain 0 or 2 members of the
/// containing family.
pub fn cocycle_check(v: &PointSet, o: &Point) -> Result<CocycleReport> {
    let family = containing_family(v, o)?;
    let members: HashSet<Vec<usize>> = family.iter().cloned().collect();
    let all: Vec<usize> = (0..v.len()).collect();
    let d = v.dim();
    for m in combinations_of(&all, d + 2) {
        let count = (0..m.len())
            .filter(|&skip| {
                let f: Vec<usize> = m
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != skip)
                    .map(|(_, &i)| i)
                    .collect();
                members.contains(&f)
            })
            .count();
        if count != 0 && count != 2 {
            return Ok(CocycleReport {
                holds: false,
                offending: Some(m),
                offending_count: Some(count),
                family_size: family.len(),
            });
        }
    }
    Ok(CocycleReport {
        holds: true,
        offending: None,
        offending_count: None,
        family_size: family.len(),
    })
}

fn volume(part: &[usize], ps: &PointSet) -> Result<Rat> {
    simplex_volume(&ps.select(part))
}

/// Repartition the vertices of two nested simplices around `o` into two
/// crossing simplices. Crossing input comes back unchanged.
pub fn unnest_pair(
    t: &[usize],
    t2: &[usize],
    ps: &PointSet,
    o: &Point,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let verdict = classify_pair(t, t2, ps, o)?;
    match verdict {
        PairClass::Crossing => return Ok((t.to_vec(), t2.to_vec())),
        PairClass::NoCommonPoint => return Err(Error::WitnessNotContained),
        _ => {}
    }
    let outer = if verdict == PairClass::Inside { t2 } else { t };
    let outer_volume = volume(outer, ps)?;
    let mut union: Vec<usize> = t.iter().chain(t2).copied().collect();
    union.sort_unstable();
    let mut key_in = [t.to_vec(), t2.to_vec()];
    key_in.iter_mut().for_each(|s| s.sort_unstable());
    for (f, g) in origin_pairs_in(ps, &union, o)? {
        if (f == key_in[0] && g == key_in[1]) || (f == key_in[1] && g == key_in[0]) {
            continue;
        }
        if classify_pair(&f, &g, ps, o)? == PairClass::Crossing {
            if volume(&f, ps)? >= outer_volume || volume(&g, ps)? >= outer_volume {
                return Err(Error::Invariant("unnesting did not shrink the outer simplex".into()));
            }
            return Ok((f, g));
        }
    }
    Err(Error::Invariant("nested pair has no crossing repartition".into()))
}

/// A pair of vertices whose exchange pairs up the origin-containing
/// complementary splits of six planar points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapWitness {
    pub p: usize,
    pub p_prime: usize,
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    /// Index pairs `(a, b)`, `a < b`, into `pairs`.
    pub matching: Vec<(usize, usize)>,
}

pub fn swap_witness_planar(v: &PointSet, o: &Point) -> Result<SwapWitness> {
    if v.dim() != 2 {
        return Err(Error::UnsupportedDimension(v.dim(), "swap witness is planar"));
    }
    if v.len() != 6 {
        return Err(Error::WrongPointCount {
            expected: 6,
            found: v.len(),
        });
    }
    let pairs = enumerate_origin_pairs(v, o)?;

    // Rays from o and their mirror images, colored by which they are.
    let mut rays: Vec<(Point, bool, usize)> = Vec::with_capacity(12);
    for (i, p) in v.points().iter().enumerate() {
        let u = p.sub(o);
        rays.push((u.neg(), false, i));
        rays.push((u, true, i));
    }
    rays.sort_by(|a, b| angle_cmp(&a.0, &b.0));
    let t = (0..12)
        .find(|&t| rays[t].1 == rays[(t + 1) % 12].1)
        .ok_or_else(|| Error::Invariant("colors alternate around the origin".into()))?;
    let (p, p_prime) = (rays[t].2, rays[(t + 1) % 12].2);

    let swap = |s: &[usize]| -> Vec<usize> {
        let mut out: Vec<usize> = s
            .iter()
            .map(|&i| {
                if i == p {
                    p_prime
                } else if i == p_prime {
                    p
                } else {
                    i
                }
            })
            .collect();
        out.sort_unstable();
        out
    };
    let canon = |f: Vec<usize>, g: Vec<usize>| if f[0] < g[0] { (f, g) } else { (g, f) };
    let mut partner = vec![usize::MAX; pairs.len()];
    for (a, (f, g)) in pairs.iter().enumerate() {
        if f.contains(&p) == f.contains(&p_prime) {
            return Err(Error::Invariant("swap pair lies in one part".into()));
        }
        let image = canon(swap(f), swap(g));
        let b = pairs
            .iter()
            .position(|x| *x == image)
            .ok_or_else(|| Error::Invariant("swap leaves the counted splits".into()))?;
        if b == a {
            return Err(Error::Invariant("swap fixes a split".into()));
        }
        partner[a] = b;
    }
    let mut matching = Vec::new();
    for (a, &b) in partner.iter().enumerate() {
        if partner[b] != a {
            return Err(Error::Invariant("swap is not an involution".into()));
        }
        if a < b {
            matching.push((a, b));
        }
    }
    Ok(SwapWitness {
        p,
        p_prime,
        pairs,
        matching,
    })
}

/// Termination measure for the fixing loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    #[default]
    Volume,
    PointCount,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixStep {
    pub fixed: [usize; 2],
    pub volumes_before: Vec<Rat>,
    pub volumes_after: Vec<Rat>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FixTrace {
    pub measure: Measure,
    pub steps: Vec<FixStep>,
}

impl FixTrace {
    pub fn iterations(&self) -> usize {
        self.steps.len()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FixOptions {
    pub measure: Measure,
    pub budget: Option<usize>,
}

/// Number of points of `ps` strictly inside the full-dimensional simplex.
pub fn count_interior_points(simplex: &[usize], ps: &PointSet) -> Result<usize> {
    let k = ps.dim() + 1;
    if simplex.len() != k {
        return Err(Error::WrongPointCount {
            expected: k,
            found: simplex.len(),
        });
    }
    ps.check_indices(simplex)?;
    let vertices = ps.select(simplex);
    let mut count = 0;
    for p in ps.points() {
        // Degenerate vertices surface as an error here.
        let lambda = barycentric(p, &vertices)?;
        if lambda.is_some_and(|l| classify_barycentric(&l) == ContainmentStatus::Interior) {
            count += 1;
        }
    }
    Ok(count)
}

fn measure_vector(parts: &[Vec<usize>], full: &[usize], ps: &PointSet, m: Measure) -> Result<Vec<Rat>> {
    let mut v = full
        .iter()
        .map(|&i| match m {
            Measure::Volume => volume(&parts[i], ps),
            Measure::PointCount => count_interior_points(&parts[i], ps).map(Rat::from),
        })
        .collect::<Result<Vec<Rat>>>()?;
    v.sort_unstable_by(|a, b| b.cmp(a));
    Ok(v)
}

fn first_nested(parts: &[Vec<usize>], full: &[usize], ps: &PointSet, o: &Point) -> Result<Option<(usize, usize)>> {
    for (x, &i) in full.iter().enumerate() {
        for &j in &full[x + 1..] {
            let verdict = classify_pair(&parts[i], &parts[j], ps, o)?;
            if verdict.is_nested() {
                return Ok(Some((i, j)));
            }
            if verdict == PairClass::NoCommonPoint {
                return Err(Error::WitnessNotContained);
            }
        }
    }
    Ok(None)
}

/// Replace nested pairs of full-size parts by crossing ones until none is
/// left. Every step must lower the sorted measure vector lexicographically.
pub fn fix_all(partition: &Partition, ps: &PointSet, opts: FixOptions) -> Result<(Partition, FixTrace)> {
    let o = partition.witness_point()?.clone();
    partition.validate(ps, Some(ps.dim() + 1))?;
    let k = ps.dim() + 1;
    let full: Vec<usize> = (0..partition.len())
        .filter(|&i| partition.parts[i].len() == k)
        .collect();
    let mut members: Vec<usize> = full.iter().flat_map(|&i| partition.parts[i].clone()).collect();
    members.sort_unstable();
    require_general(ps, &members, &o)?;

    let mut parts = partition.parts.clone();
    let mut trace = FixTrace {
        measure: opts.measure,
        steps: Vec::new(),
    };
    while let Some((i, j)) = first_nested(&parts, &full, ps, &o)? {
        if opts.budget.is_some_and(|b| trace.steps.len() >= b) {
            let weights = partition.witness.as_ref().map(|_| weights_for(&parts, &o, ps)).transpose()?;
            let current = Partition::new(
                parts,
                weights.map(|weights| Witness {
                    point: o.clone(),
                    weights,
                }),
            );
            return Err(Error::BudgetExceeded {
                budget: opts.budget.unwrap_or(0),
                partition: Box::new(current),
                trace,
            });
        }
        let before = measure_vector(&parts, &full, ps, opts.measure)?;
        let (s, s2) = unnest_pair(&parts[i], &parts[j], ps, &o)?;
        parts[i] = s;
        parts[j] = s2;
        let after = measure_vector(&parts, &full, ps, opts.measure)?;
        if after >= before {
            return Err(Error::Invariant(format!(
                "measure did not drop when fixing parts {i} and {j}"
            )));
        }
        trace.steps.push(FixStep {
            fixed: [i, j],
            volumes_before: before,
            volumes_after: after,
        });
    }
    let weights = weights_for(&parts, &o, ps)?;
    let out = Partition::new(parts, Some(Witness { point: o, weights }));
    if out.sizes() != partition.sizes() {
        return Err(Error::Invariant("fixing changed part sizes".into()));
    }
    Ok((out, trace))
}

fn weights_for(parts: &[Vec<usize>], o: &Point, ps: &PointSet) -> Result<Vec<Vec<Rat>>> {
    parts
        .iter()
        .map(|part| {
            let vertices = ps.select(part);
            match barycentric(o, &vertices) {
                Ok(Some(w)) if !w.iter().any(Rat::is_negative) => Ok(w),
                Ok(_) => Err(Error::WitnessNotContained),
                Err(Error::DegenerateSimplex) => {
                    lp::hull_weights(o, &vertices)?.ok_or(Error::WitnessNotContained)
                }
                Err(e) => Err(e),
            }
        })
        .collect()
}
