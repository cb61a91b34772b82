//! Point files and the JSON result document.
//!
//! A point file has one point per line with whitespace-separated
//! coordinates, each a decimal literal or `p/q`. `#` starts a comment and
//! blank lines are skipped.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::applications::{CrossingReport, VerdictMatrix};
use crate::crossing::{FixStep, FixTrace, Measure};
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::lp::Witness;
use crate::rat::Rat;
use crate::tverberg::{Method, Partition};

pub fn parse_points(text: &str) -> Result<PointSet> {
    let mut points = Vec::new();
    let mut dim = None;
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let coords = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Rat>().map_err(|e| Error::Parse {
                    line: k + 1,
                    message: format!("bad coordinate {tok:?}: {}", e.0),
                })
            })
            .collect::<Result<Vec<Rat>>>()?;
        match dim {
            None => dim = Some(coords.len()),
            Some(d) if d != coords.len() => {
                return Err(Error::Parse {
                    line: k + 1,
                    message: format!("expected {d} coordinates, found {}", coords.len()),
                })
            }
            _ => {}
        }
        points.push(Point::new(coords));
    }
    let Some(d) = dim else {
        return Err(Error::Parse {
            line: 0,
            message: "no points".into(),
        });
    };
    PointSet::new(d, points)
}

pub fn format_points(ps: &PointSet) -> String {
    let mut out = String::new();
    for p in ps.points() {
        let row: Vec<String> = p.coords().iter().map(Rat::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_points(path: &Path) -> Result<PointSet> {
    parse_points(&std::fs::read_to_string(path)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationInfo {
    pub seed: u64,
    pub k: u32,
}

/// The JSON written by the `partition` and `crossing` commands and read by
/// `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionDocument {
    pub dim: usize,
    pub parts: Vec<Vec<usize>>,
    #[serde(default)]
    pub witness: Option<Witness>,
    #[serde(default)]
    pub trace: Vec<FixStep>,
    #[serde(default)]
    pub verdicts: VerdictMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<Measure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inserted: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discarded: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<PerturbationInfo>,
    /// Coordinates the partition refers to (after any perturbation).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
}

impl PartitionDocument {
    pub fn from_partition(ps: &PointSet, partition: &Partition) -> Self {
        PartitionDocument {
            dim: ps.dim(),
            parts: partition.parts.clone(),
            witness: partition.witness.clone(),
            trace: Vec::new(),
            verdicts: Vec::new(),
            method: None,
            measure: None,
            inserted: Vec::new(),
            discarded: Vec::new(),
            perturbation: None,
            points: Some(ps.points().to_vec()),
        }
    }

    pub fn from_report(ps: &PointSet, report: &CrossingReport) -> Self {
        let mut doc = Self::from_partition(ps, &report.partition);
        doc.trace = report.trace.steps.clone();
        doc.verdicts = report.verdicts.clone();
        doc.method = Some(report.method);
        doc.measure = Some(report.trace.measure);
        doc.inserted = report.inserted.clone();
        doc.discarded = report.discarded.clone();
        doc
    }

    /// Partial result of a run stopped by its step budget.
    pub fn from_trace(ps: &PointSet, partition: &Partition, trace: &FixTrace) -> Self {
        let mut doc = Self::from_partition(ps, partition);
        doc.trace = trace.steps.clone();
        doc.measure = Some(trace.measure);
        doc
    }

    pub fn partition(&self) -> Partition {
        Partition::new(self.parts.clone(), self.witness.clone())
    }

    pub fn point_set(&self) -> Result<Option<PointSet>> {
        self.points
            .as_ref()
            .map(|pts| PointSet::new(self.dim, pts.clone()))
            .transpose()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }
}
