//! Input and output documents: JSON point sets (integers, decimal strings or
//! "p/q" rational strings) and triangulation documents with canonical vertex
//! coordinates, lexicographically sorted face triples, per-face plane normals
//! and metadata. Serialization is deterministic: identical structure and
//! config produce byte-identical text.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::complex::{CheckResult, Triangulation, ValidationReport, VertexId};
use crate::error::Error;
use crate::kernel::{DistinguishingPlane, ProjectivePoint};
use crate::scalar::{canonicalize, parse_entry, triple_key, Mode, Scalar, Triple};

#[derive(Clone, Debug)]
pub struct PointSetDocument {
    pub points: Vec<ProjectivePoint>,
    pub labels: Option<Vec<String>>,
}

impl PointSetDocument {
    pub fn parse(text: &str, mode: Mode) -> Result<Self, Error> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let raw_points = obj
            .get("points")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("missing \"points\" array".into()))?;
        let mut points = Vec::with_capacity(raw_points.len());
        for (i, entry) in raw_points.iter().enumerate() {
            let triple = entry
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse(format!("point {i} is not a triple")))?;
            let mut coords: Vec<Scalar> = Vec::with_capacity(3);
            for c in triple {
                coords.push(json_scalar(c, mode)?);
            }
            let t: Triple = [coords[0].clone(), coords[1].clone(), coords[2].clone()];
            let p = ProjectivePoint::new(t, mode)
                .map_err(|_| Error::Parse(format!("point {i} is the zero triple")))?;
            points.push(p);
        }
        let labels = match obj.get("labels") {
            None | Some(Value::Null) => None,
            Some(Value::Array(items)) => Some(
                items
                    .iter()
                    .map(|v| v.as_str().unwrap_or_default().to_string())
                    .collect(),
            ),
            Some(_) => return Err(Error::Parse("\"labels\" must be an array".into())),
        };
        Ok(PointSetDocument { points, labels })
    }
}

fn json_scalar(v: &Value, mode: Mode) -> Result<Scalar, Error> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::int(i, mode))
            } else if mode.is_exact() {
                Err(Error::Parse(format!(
                    "non-integer number {n} in exact mode; quote decimals or fractions as strings"
                )))
            } else {
                Scalar::from_f64(n.as_f64().ok_or_else(|| {
                    Error::Parse(format!("unrepresentable number {n}"))
                })?)
            }
        }
        Value::String(s) => parse_entry(s, mode),
        other => Err(Error::Parse(format!("bad coordinate entry {other}"))),
    }
}

/// Collapse equivalent points, keeping first occurrences in input order.
/// Returns the distinct points and, per merge, the kept index with the
/// dropped input indices.
pub fn dedup_points(
    points: &[ProjectivePoint],
) -> (Vec<ProjectivePoint>, Vec<(usize, Vec<usize>)>) {
    let mut kept = Vec::new();
    let mut index_of = BTreeMap::new();
    let mut merged: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        let key = p.key();
        match index_of.get(&key) {
            Some(&k) => merged.entry(k).or_default().push(i),
            None => {
                index_of.insert(key, kept.len());
                kept.push(p.clone());
            }
        }
    }
    (kept, merged.into_iter().collect())
}

#[derive(Clone, Debug)]
pub struct TriangulationDocument {
    pub mode: Mode,
    /// canonical coordinates, in input order after deduplication
    pub vertices: Vec<Triple>,
    pub pseudo_flags: Vec<bool>,
    /// each triple ascending, list sorted lexicographically
    pub faces: Vec<[usize; 3]>,
    /// canonicalized plane normals, parallel to `faces`
    pub planes: Vec<Triple>,
    pub warnings: Vec<String>,
    pub validation: Option<BTreeMap<String, bool>>,
    pub config_echo: BTreeMap<String, String>,
}

impl TriangulationDocument {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        let mut edges = std::collections::BTreeSet::new();
        for f in &self.faces {
            edges.insert((f[0].min(f[1]), f[0].max(f[1])));
            edges.insert((f[1].min(f[2]), f[1].max(f[2])));
            edges.insert((f[0].min(f[2]), f[0].max(f[2])));
        }
        edges.len()
    }

    pub fn euler(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Build a document from a triangulation. `order` maps document slots to
    /// vertex ids (input order after dedup for pipeline outputs); pass `None`
    /// to use ascending vertex-id order.
    pub fn from_triangulation(
        tri: &Triangulation,
        order: Option<&[(usize, VertexId)]>,
        warnings: Vec<String>,
        validation: Option<&ValidationReport>,
        config_echo: BTreeMap<String, String>,
    ) -> Result<Self, Error> {
        let ordered: Vec<VertexId> = match order {
            Some(pairs) => {
                let mut sorted = pairs.to_vec();
                sorted.sort_by_key(|&(slot, _)| slot);
                sorted.into_iter().map(|(_, v)| v).collect()
            }
            None => tri.vertex_ids().collect(),
        };
        let mut doc_index: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut vertices = Vec::with_capacity(ordered.len());
        let mut pseudo_flags = Vec::with_capacity(ordered.len());
        for (slot, &v) in ordered.iter().enumerate() {
            doc_index.insert(v, slot);
            vertices.push(tri.vertex(v).point.coords().clone());
            pseudo_flags.push(tri.vertex(v).is_pseudo);
        }
        let mut faces_planes: Vec<([usize; 3], Triple)> = Vec::new();
        for f in tri.face_ids() {
            let rec = tri.face(f);
            let mut idx = [0usize; 3];
            for (k, &v) in rec.vertices.iter().enumerate() {
                idx[k] = *doc_index
                    .get(&v)
                    .ok_or_else(|| Error::Internal("face vertex missing from order map".into()))?;
            }
            idx.sort_unstable();
            let plane = canonicalize(rec.plane.normal(), tri.mode())?;
            faces_planes.push((idx, plane));
        }
        faces_planes.sort_by_key(|fp| fp.0);
        let (faces, planes): (Vec<_>, Vec<_>) = faces_planes.into_iter().unzip();
        Ok(TriangulationDocument {
            mode: tri.mode(),
            vertices,
            pseudo_flags,
            faces,
            planes,
            warnings,
            validation: validation.map(|r| {
                r.checks
                    .iter()
                    .map(|c| (c.name.to_string(), c.passed))
                    .collect()
            }),
            config_echo,
        })
    }

    pub fn to_json_string(&self) -> String {
        let scalar_json = |s: &Scalar| -> Value {
            match s {
                Scalar::Exact(r) => {
                    if r.denom().is_one() {
                        if let Some(i) = r.numer().to_i64() {
                            return json!(i);
                        }
                    }
                    json!(format!("{s}"))
                }
                Scalar::Float(f) => json!(f),
            }
        };
        let triple_json =
            |t: &Triple| -> Value { Value::Array(t.iter().map(scalar_json).collect()) };
        let mut meta = Map::new();
        meta.insert("config".into(), json!(self.config_echo));
        meta.insert("edge_count".into(), json!(self.edge_count()));
        meta.insert("euler".into(), json!(self.euler()));
        meta.insert("face_count".into(), json!(self.face_count()));
        meta.insert(
            "mode".into(),
            json!(if self.mode.is_exact() { "exact" } else { "float" }),
        );
        if !self.mode.is_exact() {
            meta.insert("tolerance".into(), json!(self.mode.tol()));
        }
        if self.pseudo_flags.iter().any(|&b| b) {
            let pseudo: Vec<usize> = self
                .pseudo_flags
                .iter()
                .enumerate()
                .filter(|(_, b)| **b)
                .map(|(i, _)| i)
                .collect();
            meta.insert("pseudo_vertices".into(), json!(pseudo));
        }
        if let Some(validation) = &self.validation {
            meta.insert("validation".into(), json!(validation));
        }
        meta.insert("vertex_count".into(), json!(self.vertex_count()));
        meta.insert("warnings".into(), json!(self.warnings));
        let doc = json!({
            "faces": self.faces,
            "meta": Value::Object(meta),
            "planes": Value::Array(self.planes.iter().map(triple_json).collect()),
            "vertices": Value::Array(self.vertices.iter().map(triple_json).collect()),
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let meta = obj
            .get("meta")
            .and_then(|m| m.as_object())
            .ok_or_else(|| Error::Parse("missing \"meta\" object".into()))?;
        let mode = match meta.get("mode").and_then(|m| m.as_str()) {
            Some("exact") => Mode::Exact,
            Some("float") => Mode::Float {
                tol: meta
                    .get("tolerance")
                    .and_then(|t| t.as_f64())
                    .unwrap_or(Mode::DEFAULT_TOL),
            },
            _ => return Err(Error::Parse("meta.mode must be \"exact\" or \"float\"".into())),
        };
        let parse_triples = |key: &str| -> Result<Vec<Triple>, Error> {
            let arr = obj
                .get(key)
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::Parse(format!("missing \"{key}\" array")))?;
            let mut out = Vec::with_capacity(arr.len());
            for (i, entry) in arr.iter().enumerate() {
                let t = entry
                    .as_array()
                    .filter(|a| a.len() == 3)
                    .ok_or_else(|| Error::Parse(format!("{key}[{i}] is not a triple")))?;
                let mut coords = Vec::with_capacity(3);
                for c in t {
                    coords.push(json_scalar(c, mode)?);
                }
                out.push([coords[0].clone(), coords[1].clone(), coords[2].clone()]);
            }
            Ok(out)
        };
        let vertices = parse_triples("vertices")?;
        let planes = parse_triples("planes")?;
        let faces_raw = obj
            .get("faces")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("missing \"faces\" array".into()))?;
        let mut faces = Vec::with_capacity(faces_raw.len());
        for (i, entry) in faces_raw.iter().enumerate() {
            let t = entry
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse(format!("faces[{i}] is not a triple")))?;
            let mut idx = [0usize; 3];
            for (k, v) in t.iter().enumerate() {
                idx[k] = v
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("faces[{i}][{k}] is not an index")))?
                    as usize;
                if idx[k] >= vertices.len() {
                    return Err(Error::Parse(format!(
                        "faces[{i}][{k}] = {} out of range",
                        idx[k]
                    )));
                }
            }
            faces.push(idx);
        }
        if planes.len() != faces.len() {
            return Err(Error::Parse(format!(
                "{} planes for {} faces",
                planes.len(),
                faces.len()
            )));
        }
        let pseudo_flags = match meta.get("pseudo_vertices").and_then(|v| v.as_array()) {
            Some(arr) => {
                let mut flags = vec![false; vertices.len()];
                for v in arr {
                    if let Some(i) = v.as_u64() {
                        if (i as usize) < flags.len() {
                            flags[i as usize] = true;
                        }
                    }
                }
                flags
            }
            None => vec![false; vertices.len()],
        };
        let warnings = meta
            .get("warnings")
            .and_then(|v| v.as_array())
            .map(|arr| {
                arr.iter()
                    .map(|v| v.as_str().unwrap_or_default().to_string())
                    .collect()
            })
            .unwrap_or_default();
        let config_echo = meta
            .get("config")
            .and_then(|v| v.as_object())
            .map(|m| {
                m.iter()
                    .map(|(k, v)| (k.clone(), v.as_str().unwrap_or_default().to_string()))
                    .collect()
            })
            .unwrap_or_default();
        Ok(TriangulationDocument {
            mode,
            vertices,
            pseudo_flags,
            faces,
            planes,
            warnings,
            validation: None,
            config_echo,
        })
    }

    /// Reconstruct a [`Triangulation`] from the document (for rendering and
    /// the tiling check). Fails when the document is not structurally a valid
    /// complex; use [`validate_document`] for diagnosis.
    pub fn to_triangulation(&self) -> Result<Triangulation, Error> {
        let mut tri = Triangulation::new(self.mode);
        let mut ids = Vec::with_capacity(self.vertices.len());
        for (i, t) in self.vertices.iter().enumerate() {
            let p = ProjectivePoint::new(t.clone(), self.mode)
                .map_err(|_| Error::Parse(format!("vertex {i} is the zero triple")))?;
            ids.push(tri.add_vertex(p, self.pseudo_flags[i])?);
        }
        for (i, f) in self.faces.iter().enumerate() {
            let plane = DistinguishingPlane::new(self.planes[i].clone(), self.mode)
                .map_err(|_| Error::Parse(format!("plane {i} is the zero triple")))?;
            let mut reps = Vec::with_capacity(3);
            for &vi in f {
                let canon = self.vertices[vi].clone();
                let rep = match plane.side(&canon) {
                    1 => canon,
                    -1 => crate::scalar::triple_neg(&canon),
                    _ => {
                        return Err(Error::ValidationFailed(format!(
                            "face {i}: plane does not separate vertex {vi}"
                        )))
                    }
                };
                reps.push(rep);
            }
            tri.add_face_with_plane(
                [ids[f[0]], ids[f[1]], ids[f[2]]],
                [reps[0].clone(), reps[1].clone(), reps[2].clone()],
                plane,
            )
            .map_err(|e| Error::ValidationFailed(format!("face {i}: {e}")))?;
        }
        Ok(tri)
    }
}

/// Validate a document independently of [`Triangulation`]'s own bookkeeping:
/// combinatorial checks run directly over the face list, so corrupt documents
/// (an edge in three faces, a zeroed plane normal) are reported rather than
/// rejected at reconstruction.
pub fn validate_document(doc: &TriangulationDocument, tiling_samples: usize, seed: u64) -> ValidationReport {
    let mut checks = Vec::new();
    let nv = doc.vertices.len();

    // (a) simple complex: distinct vertices per face, no duplicate triples
    let mut details = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, f) in doc.faces.iter().enumerate() {
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            details.push(format!("face {i} repeats a vertex"));
        }
        let mut s = *f;
        s.sort_unstable();
        if !seen.insert(s) {
            details.push(format!("face {i} duplicates another face"));
        }
    }
    checks.push(CheckResult {
        name: "simple-complex",
        passed: details.is_empty(),
        details,
    });

    // (b) every edge in exactly two faces
    let mut edge_faces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, f) in doc.faces.iter().enumerate() {
        for (a, b) in [(f[0], f[1]), (f[1], f[2]), (f[0], f[2])] {
            edge_faces.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    let details: Vec<String> = edge_faces
        .iter()
        .filter(|(_, fs)| fs.len() != 2)
        .map(|(e, fs)| format!("edge {e:?} lies in {} faces", fs.len()))
        .collect();
    checks.push(CheckResult {
        name: "edge-degree-2",
        passed: details.is_empty(),
        details,
    });

    // (c) vertex links single cycles
    let mut details = Vec::new();
    for v in 0..nv {
        let mut link: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut nedges = 0usize;
        for f in &doc.faces {
            if let Some(k) = f.iter().position(|&x| x == v) {
                let (a, b) = (f[(k + 1) % 3], f[(k + 2) % 3]);
                link.entry(a).or_default().push(b);
                link.entry(b).or_default().push(a);
                nedges += 1;
            }
        }
        if link.is_empty() {
            details.push(format!("vertex {v} has no incident faces"));
            continue;
        }
        if link.values().any(|ns| ns.len() != 2) || nedges != link.len() {
            details.push(format!("vertex {v} link is not a 2-regular cycle"));
            continue;
        }
        // connectivity
        let start = *link.keys().next().unwrap();
        let mut seen = std::collections::BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &link[&u] {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != link.len() {
            details.push(format!("vertex {v} link splits into several cycles"));
        }
    }
    checks.push(CheckResult {
        name: "vertex-links-single-cycle",
        passed: details.is_empty(),
        details,
    });

    // (d) Euler characteristic
    let chi = nv as i64 - edge_faces.len() as i64 + doc.faces.len() as i64;
    checks.push(CheckResult {
        name: "euler-characteristic-1",
        passed: chi == 1,
        details: if chi == 1 {
            Vec::new()
        } else {
            vec![format!("V - E + F = {chi}")]
        },
    });

    // (e) plane separation
    let mut details = Vec::new();
    let mut frames: Vec<[[f64; 3]; 3]> = Vec::new();
    let mut frames_ok = true;
    for (i, f) in doc.faces.iter().enumerate() {
        match DistinguishingPlane::new(doc.planes[i].clone(), doc.mode) {
            Err(_) => {
                details.push(format!("face {i}: zero plane normal"));
                frames_ok = false;
            }
            Ok(plane) => {
                let mut frame = [[0.0f64; 3]; 3];
                let mut ok = true;
                for (k, &vi) in f.iter().enumerate() {
                    let canon = &doc.vertices[vi];
                    match plane.side(canon) {
                        1 => frame[k] = crate::scalar::triple_to_f64(canon),
                        -1 => {
                            let neg = crate::scalar::triple_neg(canon);
                            frame[k] = crate::scalar::triple_to_f64(&neg);
                        }
                        _ => {
                            details.push(format!(
                                "face {i}: plane does not strictly separate vertex {vi}"
                            ));
                            ok = false;
                        }
                    }
                }
                if ok {
                    frames.push(frame);
                } else {
                    frames_ok = false;
                }
            }
        }
    }
    checks.push(CheckResult {
        name: "plane-separation",
        passed: details.is_empty(),
        details,
    });

    // (f) sampled tiling, only meaningful when frames are reconstructible
    if tiling_samples > 0 {
        if frames_ok {
            let margin = doc.mode.tol().max(1e-12);
            let report = crate::oracle::sample_tiling_frames(&frames, tiling_samples, seed, margin);
            let details: Vec<String> = report
                .violations
                .iter()
                .take(5)
                .map(|(d, h)| format!("direction {d:?} lies in {h} face interiors"))
                .collect();
            checks.push(CheckResult {
                name: "sphere-tiling-sampled",
                passed: report.passed(),
                details,
            });
        } else {
            checks.push(CheckResult {
                name: "sphere-tiling-sampled",
                passed: false,
                details: vec!["skipped: faces not reconstructible".into()],
            });
        }
    }

    ValidationReport {
        checks,
        vertex_count: nv,
        edge_count: edge_faces.len(),
        face_count: doc.faces.len(),
        euler: chi,
    }
}

/// OBJ export: topology only, since P² does not embed in R³. Vertices are the
/// unit representatives of the canonical coordinates.
pub fn export_obj(doc: &TriangulationDocument) -> String {
    let mut out = String::new();
    out.push_str("# projtri topology-only export: the surface is the real projective plane\n");
    out.push_str("# and does not embed in R^3; coordinates are unit representatives.\n");
    for t in &doc.vertices {
        let f = crate::scalar::triple_to_f64(t);
        let norm = (f[0] * f[0] + f[1] * f[1] + f[2] * f[2]).sqrt();
        out.push_str(&format!(
            "v {:.6} {:.6} {:.6}\n",
            f[0] / norm,
            f[1] / norm,
            f[2] / norm
        ));
    }
    for f in &doc.faces {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    out
}

/// Stable key for comparing points across documents.
pub fn point_key(t: &Triple) -> crate::scalar::TripleKey {
    triple_key(t)
}
