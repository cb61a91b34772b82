//! Exact points, point sets and the geometric predicates everything else is
//! built on. There are no tolerances: every predicate is decided by the sign
//! of an exact rational quantity.

pub mod linalg;
mod linking;
mod perturb;
pub mod planar;

pub use linking::{segment_triangle_parity, triangles_linked};
pub use perturb::{perturb, perturb_with_attempts, PERTURB_MAX_ATTEMPTS};

use serde::{Deserialize, Serialize};

use crate::enumerate::{combinations, combinations_of};
use crate::error::{Error, Result};
use crate::lp;
use crate::rat::Rat;
use linalg::Solution;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<Rat>,
}

impl Point {
    pub fn new(coords: Vec<Rat>) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point::new(coords.iter().map(|&c| Rat::from_int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point::new(vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, s: &Rat) -> Point {
        Point::new(self.coords.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> Point {
        Point::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn dot(&self, other: &Point) -> Rat {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }

    /// Affine combination `sum w_i p_i`; weights need not sum to one.
    pub fn combination<'a>(points: impl IntoIterator<Item = &'a Point>, weights: &[Rat]) -> Point {
        let mut acc: Option<Vec<Rat>> = None;
        for (p, w) in points.into_iter().zip(weights) {
            let acc = acc.get_or_insert_with(|| vec![Rat::zero(); p.dim()]);
            if w.is_zero() {
                continue;
            }
            for (a, c) in acc.iter_mut().zip(&p.coords) {
                *a += w * c;
            }
        }
        Point::new(acc.unwrap_or_default())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(Rat::to_f64).collect()
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An indexed list of points of one dimension. Indices `0..len()` are the
/// handles used everywhere else.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::UnsupportedDimension(0, "dimension must be positive"));
        }
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        Ok(PointSet {
            dim,
            points,
            labels: None,
        })
    }

    /// Dimension taken from the first point.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().map_or(0, Point::dim);
        PointSet::new(dim, points)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        PointSet::from_points(rows.iter().map(|r| Point::from_ints(r)).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::WrongPointCount {
                expected: self.points.len(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn select(&self, indices: &[usize]) -> Vec<&Point> {
        indices.iter().map(|&i| &self.points[i]).collect()
    }

    /// New point set holding `indices` in the given order (labels follow).
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| indices.iter().map(|&i| l[i].clone()).collect()),
        }
    }

    pub fn push(&mut self, p: Point) -> Result<usize> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        self.points.push(p);
        if let Some(l) = self.labels.as_mut() {
            l.push(format!("{}", l.len()));
        }
        Ok(self.points.len() - 1)
    }

    pub fn translated(&self, by: &Point) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| p.sub(by)).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn check_indices(&self, indices: &[usize]) -> Result<()> {
        match indices.iter().find(|&&i| i >= self.len()) {
            Some(i) => Err(Error::InvalidPartition(format!(
                "index {i} out of range for {} points",
                self.len()
            ))),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Negative,
    Zero,
    Positive,
}

impl Orientation {
    pub fn from_sign(s: i8) -> Self {
        match s {
            s if s < 0 => Orientation::Negative,
            0 => Orientation::Zero,
            _ => Orientation::Positive,
        }
    }

    pub fn sign(self) -> i8 {
        match self {
            Orientation::Negative => -1,
            Orientation::Zero => 0,
            Orientation::Positive => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ContainmentStatus {
    Interior,
    OnBoundary,
    Outside,
}

fn common_dim(points: &[&Point]) -> Result<usize> {
    let d = points.first().map_or(0, |p| p.dim());
    match points.iter().find(|p| p.dim() != d) {
        Some(p) => Err(Error::DimensionMismatch {
            expected: d,
            found: p.dim(),
        }),
        None => Ok(d),
    }
}

fn difference_matrix(simplex: &[&Point]) -> Result<Vec<Vec<Rat>>> {
    let d = common_dim(simplex)?;
    if simplex.len() != d + 1 {
        return Err(Error::WrongPointCount {
            expected: d + 1,
            found: simplex.len(),
        });
    }
    let base = simplex[0];
    Ok(simplex[1..]
        .iter()
        .map(|p| p.sub(base).into_coords())
        .collect())
}

/// Sign of `det[p1 - p0, ..., pd - p0]` for `d + 1` points in R^d.
pub fn orientation(simplex: &[&Point]) -> Result<Orientation> {
    let m = difference_matrix(simplex)?;
    Ok(Orientation::from_sign(linalg::determinant(m).signum()))
}

/// `|det[p1 - p0, ..., pd - p0]| / d!`.
pub fn simplex_volume(simplex: &[&Point]) -> Result<Rat> {
    let m = difference_matrix(simplex)?;
    let d = m.len();
    let fact: Rat = (1..=d).map(Rat::from).product();
    Ok(linalg::determinant(m).abs() / fact)
}

/// Every `(d+1)`-subset that lies on a common hyperplane. When `extra` is
/// given it takes index `len()` in the reported subsets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralPositionReport {
    pub violations: Vec<Vec<usize>>,
}

impl GeneralPositionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn in_general_position(ps: &PointSet, extra: Option<&Point>) -> GeneralPositionReport {
    let mut pts: Vec<&Point> = ps.points().iter().collect();
    if let Some(e) = extra {
        pts.push(e);
    }
    let k = ps.dim() + 1;
    let violations = combinations(pts.len(), k)
        .filter(|c| {
            let simplex: Vec<&Point> = c.iter().map(|&i| pts[i]).collect();
            matches!(orientation(&simplex), Ok(Orientation::Zero) | Err(_))
        })
        .collect();
    GeneralPositionReport { violations }
}

/// Whether the `(d+1)`-subsets of `indices` are all affinely independent.
pub fn subset_in_general_position(ps: &PointSet, indices: &[usize]) -> bool {
    combinations_of(indices, ps.dim() + 1).all(|c| {
        orientation(&ps.select(&c)).is_ok_and(|o| o != Orientation::Zero)
    })
}

/// `d`-subsets of `indices` whose affine hull together with `q` is
/// degenerate, i.e. `q` lies on the hyperplane they span.
pub fn hyperplane_incidences(ps: &PointSet, indices: &[usize], q: &Point) -> Vec<Vec<usize>> {
    combinations_of(indices, ps.dim())
        .filter(|c| {
            let mut simplex = ps.select(c);
            simplex.push(q);
            orientation(&simplex).map_or(true, |o| o == Orientation::Zero)
        })
        .collect()
}

/// Barycentric coordinates of `p` with respect to up to `d + 1` affinely
/// independent vertices; `None` when `p` is off their affine hull.
pub fn barycentric(p: &Point, simplex: &[&Point]) -> Result<Option<Vec<Rat>>> {
    let d = p.dim();
    if let Some(q) = simplex.iter().find(|q| q.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: q.dim(),
        });
    }
    if simplex.is_empty() || simplex.len() > d + 1 {
        return Err(Error::WrongPointCount {
            expected: d + 1,
            found: simplex.len(),
        });
    }
    let k = simplex.len();
    let mut a: Vec<Vec<Rat>> = (0..d)
        .map(|row| simplex.iter().map(|v| v.coords()[row].clone()).collect())
        .collect();
    a.push(vec![Rat::one(); k]);
    let mut b: Vec<Rat> = p.coords().to_vec();
    b.push(Rat::one());
    match linalg::solve(&a, &b) {
        Solution::Unique(x) => Ok(Some(x)),
        Solution::Inconsistent => {
            // Distinguish "off the hull" from degenerate vertices.
            if linalg::rank(&a, k) < k {
                Err(Error::DegenerateSimplex)
            } else {
                Ok(None)
            }
        }
        Solution::RankDeficient => Err(Error::DegenerateSimplex),
    }
}

/// Closed-simplex containment from exact barycentric signs. Simplices with
/// fewer than `d + 1` vertices are tested inside their own affine hull, so a
/// point in the relative interior of a segment is `Interior`.
pub fn point_in_simplex(p: &Point, simplex: &[&Point]) -> Result<ContainmentStatus> {
    Ok(match barycentric(p, simplex)? {
        None => ContainmentStatus::Outside,
        Some(lambda) => classify_barycentric(&lambda),
    })
}

pub fn classify_barycentric(lambda: &[Rat]) -> ContainmentStatus {
    if lambda.iter().any(Rat::is_negative) {
        ContainmentStatus::Outside
    } else if lambda.iter().any(Rat::is_zero) {
        ContainmentStatus::OnBoundary
    } else {
        ContainmentStatus::Interior
    }
}

/// A subset of `s` of size at most `d + 1` whose hull still contains `o`.
///
/// Sets already that small are returned as they are (sorted). Larger sets
/// are searched over their `(d+1)`-subsets in lexicographic order and the
/// first containing subset wins.
pub fn caratheodory_reduce(s: &[usize], o: &Point, ps: &PointSet) -> Result<Vec<usize>> {
    ps.check_indices(s)?;
    let mut sorted = s.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if !lp::in_hull(o, &ps.select(&sorted))? {
        return Err(Error::WitnessNotContained);
    }
    let k = ps.dim() + 1;
    if sorted.len() <= k {
        return Ok(sorted);
    }
    for candidate in combinations_of(&sorted, k) {
        let vertices = ps.select(&candidate);
        let inside = match point_in_simplex(o, &vertices) {
            Ok(status) => status != ContainmentStatus::Outside,
            Err(Error::DegenerateSimplex) => lp::in_hull(o, &vertices)?,
            Err(e) => return Err(e),
        };
        if inside {
            return Ok(candidate);
        }
    }
    Err(Error::Invariant(
        "no (d+1)-subset contains a point of the hull".into(),
    ))
}
