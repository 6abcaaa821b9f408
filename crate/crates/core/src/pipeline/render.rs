//! SVG rendering of a triangulation document: orthographic projection of the
//! upper hemisphere onto a disk. Edges are great-circle arcs; an edge whose
//! arc crosses the equator is drawn as two segments ending at antipodal
//! boundary points. Output is deterministic byte-for-byte.

use std::collections::BTreeSet;

use crate::pipeline::doc::{validate_document, TriangulationDocument};
use crate::scalar::triple_to_f64;

#[derive(Clone, Debug)]
pub struct RenderOptions {
    pub size: u32,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { size: 800 }
    }
}

const ARC_SEGMENTS: usize = 24;
const EQUATOR_EPS: f64 = 1e-9;

fn unit(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// The representative drawn on the upper hemisphere: z > 0, ties broken
/// toward y > 0 then x > 0.
fn upper(v: [f64; 3]) -> [f64; 3] {
    if v[2] > EQUATOR_EPS {
        v
    } else if v[2] < -EQUATOR_EPS {
        [-v[0], -v[1], -v[2]]
    } else if v[1] > 0.0 || (v[1] == 0.0 && v[0] > 0.0) {
        [v[0], v[1], v[2]]
    } else {
        [-v[0], -v[1], -v[2]]
    }
}

fn fmt(x: f64) -> String {
    // avoid "-0.0000" so output is stable across sign-of-zero differences
    let v = if x.abs() < 5e-5 { 0.0 } else { x };
    format!("{v:.4}")
}

/// Render the document. Invalid documents are still rendered, with a warning
/// banner element added.
pub fn render_svg(doc: &TriangulationDocument, options: &RenderOptions) -> String {
    let size = options.size as f64;
    let half = size / 2.0;
    let radius = half * 0.94;
    let project = |v: [f64; 3]| -> (f64, f64) { (half + v[0] * radius, half - v[1] * radius) };

    let report = validate_document(doc, 0, 0);
    let valid = report.passed();

    let verts: Vec<[f64; 3]> = doc
        .vertices
        .iter()
        .map(|t| upper(unit(triple_to_f64(t))))
        .collect();

    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for f in &doc.faces {
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            edges.insert((a.min(b), a.max(b)));
        }
    }

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        options.size
    ));
    svg.push_str(&format!(
        "  <rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n",
        options.size
    ));
    svg.push_str(&format!(
        "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"#f8f8f8\" stroke=\"#888\" stroke-width=\"1\"/>\n",
        fmt(half),
        fmt(half),
        fmt(radius)
    ));

    // edges as sampled great-circle arcs, split at the equator
    for &(a, b) in &edges {
        let pa = verts[a];
        // choose the endpoint representative on b's side that keeps the arc short
        let pb_raw = verts[b];
        let dot = pa[0] * pb_raw[0] + pa[1] * pb_raw[1] + pa[2] * pb_raw[2];
        let pb = if dot >= 0.0 {
            pb_raw
        } else {
            [-pb_raw[0], -pb_raw[1], -pb_raw[2]]
        };
        let mut polylines: Vec<Vec<(f64, f64)>> = Vec::new();
        let mut current: Vec<(f64, f64)> = Vec::new();
        let mut prev: Option<[f64; 3]> = None;
        for s in 0..=ARC_SEGMENTS {
            let t = s as f64 / ARC_SEGMENTS as f64;
            let raw = unit([
                pa[0] * (1.0 - t) + pb[0] * t,
                pa[1] * (1.0 - t) + pb[1] * t,
                pa[2] * (1.0 - t) + pb[2] * t,
            ]);
            let mut v = raw;
            if let Some(p) = prev {
                // keep continuity with the previous sample's copy
                if p[0] * v[0] + p[1] * v[1] + p[2] * v[2] < 0.0 {
                    v = triple_neg_f(v);
                }
            } else {
                v = upper(v);
            }
            if let Some(p) = prev {
                if (p[2] > 0.0) != (v[2] > 0.0) && p[2].abs().max(v[2].abs()) > EQUATOR_EPS {
                    // equator crossing: close at the boundary, reopen at the
                    // antipodal boundary point
                    let w = p[2] / (p[2] - v[2]);
                    let cross = unit([
                        p[0] * (1.0 - w) + v[0] * w,
                        p[1] * (1.0 - w) + v[1] * w,
                        0.0,
                    ]);
                    let (bx, by) = project(if p[2] > 0.0 { cross } else { triple_neg_f(cross) });
                    current.push((bx, by));
                    polylines.push(std::mem::take(&mut current));
                    let reopened = if p[2] > 0.0 { triple_neg_f(cross) } else { cross };
                    let (rx, ry) = project(reopened);
                    current.push((rx, ry));
                }
            }
            let drawn = if v[2] >= 0.0 { v } else { triple_neg_f(v) };
            current.push(project(drawn));
            prev = Some(v);
        }
        if current.len() > 1 {
            polylines.push(current);
        }
        for pl in polylines {
            let mut d = String::new();
            for (i, (x, y)) in pl.iter().enumerate() {
                d.push_str(if i == 0 { "M " } else { "L " });
                d.push_str(&format!("{} {} ", fmt(*x), fmt(*y)));
            }
            svg.push_str(&format!(
                "  <path class=\"edge\" d=\"{}\" fill=\"none\" stroke=\"#2255aa\" stroke-width=\"1.2\"/>\n",
                d.trim_end()
            ));
        }
    }

    // vertices
    for (i, v) in verts.iter().enumerate() {
        let (x, y) = project(*v);
        let pseudo = doc.pseudo_flags.get(i).copied().unwrap_or(false);
        let (class, fill, r) = if pseudo {
            ("vertex pseudo", "#dd4444", 5.0)
        } else {
            ("vertex", "#222222", 3.5)
        };
        svg.push_str(&format!(
            "  <circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"{fill}\"/>\n",
            fmt(x),
            fmt(y)
        ));
    }

    if !valid {
        svg.push_str(&format!(
            "  <g class=\"warning-banner\"><rect x=\"0\" y=\"0\" width=\"{}\" height=\"26\" fill=\"#cc2222\"/><text x=\"8\" y=\"18\" fill=\"white\" font-family=\"monospace\" font-size=\"14\">validation failed: structure may not be a triangulation of P2</text></g>\n",
            options.size
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn triple_neg_f(v: [f64; 3]) -> [f64; 3] {
    [-v[0], -v[1], -v[2]]
}
