//! Python bindings. Coordinates cross the boundary as strings ("3", "-7/4",
//! "0.25") so that no precision is lost; anything whose `str()` parses as a
//! rational is accepted on input (int, str, fractions.Fraction).

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyAny;
use serde::Serialize;

use tvk_core::applications as app;
use tvk_core::crossing::{self, FixOptions, Measure};
use tvk_core::io::PartitionDocument;
use tvk_core::tverberg;

create_exception!(tvk, TvkError, PyException);
create_exception!(tvk, GeneralPositionError, TvkError);
create_exception!(tvk, BudgetExceededError, TvkError);

fn err(e: tvk_core::Error) -> PyErr {
    match e {
        tvk_core::Error::GeneralPositionViolated(_) => GeneralPositionError::new_err(e.to_string()),
        tvk_core::Error::BudgetExceeded { .. } => BudgetExceededError::new_err(e.to_string()),
        _ => TvkError::new_err(e.to_string()),
    }
}

fn rat(obj: &Bound<'_, PyAny>) -> PyResult<tvk_core::Rat> {
    let s = obj.str()?.to_string();
    s.parse()
        .map_err(|_| TvkError::new_err(format!("not a rational number: {s:?}")))
}

fn point(coords: &[Bound<'_, PyAny>]) -> PyResult<tvk_core::Point> {
    Ok(tvk_core::Point::new(coords.iter().map(rat).collect::<PyResult<_>>()?))
}

fn center(ps: &tvk_core::PointSet, c: Option<Vec<Bound<'_, PyAny>>>) -> PyResult<tvk_core::Point> {
    match c {
        None => Ok(tvk_core::Point::origin(ps.dim())),
        Some(c) if c.len() == ps.dim() => point(&c),
        Some(c) => Err(TvkError::new_err(format!(
            "center has {} coordinates, points have {}",
            c.len(),
            ps.dim()
        ))),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| TvkError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn measure(name: &str) -> PyResult<Measure> {
    match name {
        "volume" => Ok(Measure::Volume),
        "point-count" | "point_count" => Ok(Measure::PointCount),
        _ => Err(TvkError::new_err(format!("unknown measure {name:?}"))),
    }
}

fn coords(p: &tvk_core::Point) -> Vec<String> {
    p.coords().iter().map(ToString::to_string).collect()
}

/// A finite point set in R^d with exact rational coordinates.
#[pyclass(name = "PointSet", module = "tvk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPointSet {
    inner: tvk_core::PointSet,
}

#[pymethods]
impl PyPointSet {
    #[new]
    fn new(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let pts = rows.iter().map(|r| point(r)).collect::<PyResult<Vec<_>>>()?;
        let inner = tvk_core::PointSet::from_points(pts).map_err(err)?;
        Ok(PyPointSet { inner })
    }

    /// Parse the whitespace-separated point file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = tvk_core::io::parse_points(text).map_err(err)?;
        Ok(PyPointSet { inner })
    }

    /// Seeded random points in general position; same seed, same points.
    #[staticmethod]
    #[pyo3(signature = (d, n, seed = 0, with_origin = false))]
    fn generate(d: usize, n: usize, seed: u64, with_origin: bool) -> PyResult<Self> {
        let o = with_origin.then(|| tvk_core::Point::origin(d));
        let inner = tvk_core::gen::random_general_position(d, n, seed, o.as_ref()).map_err(err)?;
        Ok(PyPointSet { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("PointSet(dim={}, n={})", self.inner.dim(), self.inner.len())
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.inner.points().iter().map(coords).collect()
    }

    fn to_text(&self) -> String {
        tvk_core::io::format_points(&self.inner)
    }

    #[pyo3(signature = (seed = 0, k = 20))]
    fn perturb(&self, seed: u64, k: u32) -> PyResult<Self> {
        let inner = tvk_core::geometry::perturb(&self.inner, seed, k).map_err(err)?;
        Ok(PyPointSet { inner })
    }

    #[pyo3(signature = (extra = None))]
    fn in_general_position(&self, extra: Option<Vec<Bound<'_, PyAny>>>) -> PyResult<bool> {
        let extra = extra.map(|e| point(&e)).transpose()?;
        Ok(tvk_core::geometry::in_general_position(&self.inner, extra.as_ref()).is_ok())
    }
}

/// Parts as lists of point indices, plus the common point when known.
#[pyclass(name = "Partition", module = "tvk", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPartition {
    inner: tverberg::Partition,
}

#[pymethods]
impl PyPartition {
    #[new]
    fn new(parts: Vec<Vec<usize>>) -> Self {
        PyPartition {
            inner: tverberg::Partition::new(parts, None),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = PartitionDocument::from_json(text).map_err(err)?;
        Ok(PyPartition {
            inner: doc.partition(),
        })
    }

    #[getter]
    fn parts(&self) -> Vec<Vec<usize>> {
        self.inner.parts.clone()
    }

    #[getter]
    fn witness(&self) -> Option<Vec<String>> {
        self.inner.witness.as_ref().map(|w| coords(&w.point))
    }

    fn sizes(&self) -> Vec<usize> {
        self.inner.sizes()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.inner.parts)
    }

    /// Raises TvkError unless the parts split the points and share a point.
    #[pyo3(signature = (points, max_part_size = None))]
    fn validate(&self, points: &PyPointSet, max_part_size: Option<usize>) -> PyResult<()> {
        self.inner.validate(&points.inner, max_part_size).map_err(err)
    }

    fn to_json(&self, points: &PyPointSet) -> String {
        PartitionDocument::from_partition(&points.inner, &self.inner).to_json()
    }
}

/// Result of the crossing pipeline.
#[pyclass(name = "CrossingReport", module = "tvk", frozen)]
struct PyCrossingReport {
    inner: app::CrossingReport,
    points: tvk_core::PointSet,
}

#[pymethods]
impl PyCrossingReport {
    #[getter]
    fn partition(&self) -> PyPartition {
        PyPartition {
            inner: self.inner.partition.clone(),
        }
    }

    /// verdicts[i][j] is "crossing", "inside", "contains", "no_common_point" or None.
    #[getter]
    fn verdicts(&self) -> Vec<Vec<Option<&'static str>>> {
        self.inner
            .verdicts
            .iter()
            .map(|row| row.iter().map(|v| v.map(crossing::PairClass::as_str)).collect())
            .collect()
    }

    #[getter]
    fn method<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.method)
    }

    #[getter]
    fn trace<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.inner.trace.steps)
    }

    #[getter]
    fn inserted(&self) -> Vec<usize> {
        self.inner.inserted.clone()
    }

    #[getter]
    fn discarded(&self) -> Vec<usize> {
        self.inner.discarded.clone()
    }

    fn to_json(&self) -> String {
        PartitionDocument::from_report(&self.points, &self.inner).to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "CrossingReport(parts={:?}, steps={})",
            self.inner.partition.parts,
            self.inner.trace.iterations()
        )
    }
}

/// Two-part partition of d + 2 points with intersecting hulls.
#[pyfunction]
fn radon(points: &PyPointSet) -> PyResult<PyPartition> {
    let inner = tverberg::radon_partition(&points.inner).map_err(err)?;
    Ok(PyPartition { inner })
}

/// Exhaustive search for r parts of at most d + 1 points (small inputs only).
#[pyfunction]
fn tverberg_partition(points: &PyPointSet, r: usize) -> PyResult<PyPartition> {
    let inner = tverberg::tverberg_partition_bruteforce(&points.inner, r).map_err(err)?;
    Ok(PyPartition { inner })
}

/// Planar partition of 3r points into r triangles around a common point.
#[pyfunction]
fn birch_partition(points: &PyPointSet) -> PyResult<PyPartition> {
    let (inner, _) = tverberg::birch_partition_planar(&points.inner).map_err(err)?;
    Ok(PyPartition { inner })
}

#[pyfunction]
#[pyo3(signature = (points, r, measure = "volume", budget = None))]
fn crossing_tverberg(
    py: Python<'_>,
    points: &PyPointSet,
    r: usize,
    measure: &str,
    budget: Option<usize>,
) -> PyResult<PyCrossingReport> {
    let opts = app::PipelineOptions {
        fix: FixOptions {
            measure: self::measure(measure)?,
            budget,
        },
    };
    let ps = points.inner.clone();
    let inner = py
        .detach(|| app::crossing_tverberg(&ps, r, opts))
        .map_err(err)?;
    Ok(PyCrossingReport { inner, points: ps })
}

#[pyfunction]
#[pyo3(signature = (points, discard = None, measure = "volume", budget = None))]
fn crossing_simplices(
    py: Python<'_>,
    points: &PyPointSet,
    discard: Option<Vec<usize>>,
    measure: &str,
    budget: Option<usize>,
) -> PyResult<PyCrossingReport> {
    let opts = app::PipelineOptions {
        fix: FixOptions {
            measure: self::measure(measure)?,
            budget,
        },
    };
    let ps = points.inner.clone();
    let inner = py
        .detach(|| app::crossing_simplices(&ps, discard.as_deref(), opts))
        .map_err(err)?;
    Ok(PyCrossingReport { inner, points: ps })
}

/// Independent check of a partition; returns {"ok", "violations", "verdicts"}.
#[pyfunction]
#[pyo3(signature = (points, partition, max_part_size = None))]
fn verify<'py>(
    py: Python<'py>,
    points: &PyPointSet,
    partition: &PyPartition,
    max_part_size: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let report = app::verify_crossing_partition(&points.inner, &partition.inner, max_part_size);
    let out = to_py(py, &report)?;
    out.set_item("ok", report.is_ok())?;
    Ok(out)
}

#[pyfunction]
#[pyo3(signature = (points, center = None))]
fn parity<'py>(
    py: Python<'py>,
    points: &PyPointSet,
    center: Option<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Bound<'py, PyAny>> {
    let o = self::center(&points.inner, center)?;
    to_py(py, &crossing::parity_check(&points.inner, &o).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (points, center = None))]
fn cocycle<'py>(
    py: Python<'py>,
    points: &PyPointSet,
    center: Option<Vec<Bound<'py, PyAny>>>,
) -> PyResult<Bound<'py, PyAny>> {
    let o = self::center(&points.inner, center)?;
    to_py(py, &crossing::cocycle_check(&points.inner, &o).map_err(err)?)
}

#[pyfunction]
fn triangles_linked(points: &PyPointSet, a: [usize; 3], b: [usize; 3]) -> PyResult<bool> {
    points.inner.check_indices(&a).map_err(err)?;
    points.inner.check_indices(&b).map_err(err)?;
    let (ta, tb) = (points.inner.select(&a), points.inner.select(&b));
    tvk_core::geometry::triangles_linked([ta[0], ta[1], ta[2]], [tb[0], tb[1], tb[2]]).map_err(err)
}

#[pyfunction]
fn tetrahedra_face_linked<'py>(
    py: Python<'py>,
    points: &PyPointSet,
    a: [usize; 4],
    b: [usize; 4],
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &app::tetrahedra_face_linked(&a, &b, &points.inner).map_err(err)?)
}

/// Check of the built-in eight points in R^3.
#[pyfunction]
fn felsner_scheucher(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &app::felsner_scheucher_verify().map_err(err)?)
}

#[pyfunction]
fn render_svg(points: &PyPointSet, partition: &PyPartition) -> PyResult<String> {
    tvk_core::svg::render(&points.inner, &partition.inner).map_err(err)
}

#[pymodule]
pub fn tvk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("TvkError", py.get_type::<TvkError>())?;
    m.add("GeneralPositionError", py.get_type::<GeneralPositionError>())?;
    m.add("BudgetExceededError", py.get_type::<BudgetExceededError>())?;
    m.add_class::<PyPointSet>()?;
    m.add_class::<PyPartition>()?;
    m.add_class::<PyCrossingReport>()?;
    m.add_function(wrap_pyfunction!(radon, m)?)?;
    m.add_function(wrap_pyfunction!(tverberg_partition, m)?)?;
    m.add_function(wrap_pyfunction!(birch_partition, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_tverberg, m)?)?;
    m.add_function(wrap_pyfunction!(crossing_simplices, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(parity, m)?)?;
    m.add_function(wrap_pyfunction!(cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(triangles_linked, m)?)?;
    m.add_function(wrap_pyfunction!(tetrahedra_face_linked, m)?)?;
    m.add_function(wrap_pyfunction!(felsner_scheucher, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    Ok(())
}
