//! SVG drawing of a planar partition.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::tverberg::Partition;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 0.05;
const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// Points as dots, each part as an unfilled polygon around its hull, and the
/// witness as a cross. Output depends only on the input.
pub fn render(ps: &PointSet, partition: &Partition) -> Result<String> {
    if ps.dim() != 2 {
        return Err(Error::UnsupportedDimension(ps.dim(), "drawings are planar"));
    }
    let mut xy: Vec<(f64, f64)> = ps
        .points()
        .iter()
        .map(|p| (p.coords()[0].to_f64(), p.coords()[1].to_f64()))
        .collect();
    let witness = partition
        .witness
        .as_ref()
        .map(|w| (w.point.coords()[0].to_f64(), w.point.coords()[1].to_f64()));
    let all: Vec<(f64, f64)> = xy.iter().copied().chain(witness).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if all.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let scale = SIZE * (1.0 - 2.0 * MARGIN) / span;
    let cx = (x0 + x1) / 2.0;
    let cy = (y0 + y1) / 2.0;
    let map = |(x, y): (f64, f64)| {
        (
            SIZE / 2.0 + (x - cx) * scale,
            SIZE / 2.0 - (y - cy) * scale,
        )
    };
    xy.iter_mut().for_each(|p| *p = map(*p));

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (k, part) in partition.parts.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let hull = hull_order(part, &xy);
        let pts: Vec<String> = hull
            .iter()
            .map(|&i| format!("{:.3},{:.3}", xy[i].0, xy[i].1))
            .collect();
        let _ = writeln!(
            s,
            r#"<polygon points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            pts.join(" ")
        );
    }
    for (i, &(x, y)) in xy.iter().enumerate() {
        let color = partition
            .parts
            .iter()
            .position(|p| p.contains(&i))
            .map_or("black", |k| PALETTE[k % PALETTE.len()]);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="4" fill="{color}"/>"#);
    }
    if let Some(w) = witness {
        let (x, y) = map(w);
        let d = 8.0;
        let _ = writeln!(
            s,
            r#"<path d="M {:.3} {:.3} L {:.3} {:.3} M {:.3} {:.3} L {:.3} {:.3}" stroke="black" stroke-width="2"/>"#,
            x - d,
            y - d,
            x + d,
            y + d,
            x - d,
            y + d,
            x + d,
            y - d
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

// Indices of `part` in convex position order (monotone chain); display only.
fn hull_order(part: &[usize], xy: &[(f64, f64)]) -> Vec<usize> {
    let mut idx = part.to_vec();
    idx.sort_by(|&a, &b| xy[a].partial_cmp(&xy[b]).unwrap_or(std::cmp::Ordering::Equal));
    if idx.len() < 3 {
        return idx;
    }
    let cross = |o: usize, a: usize, b: usize| {
        (xy[a].0 - xy[o].0) * (xy[b].1 - xy[o].1) - (xy[a].1 - xy[o].1) * (xy[b].0 - xy[o].0)
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
