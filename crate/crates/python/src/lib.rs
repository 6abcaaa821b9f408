//! Python bindings: the pipeline operates on JSON strings, the predicate
//! helpers on coordinate triples (float arithmetic with the default
//! tolerance; pass exact-mode work through the JSON pipeline instead).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use projtri::complex::ValidationLevel;
use projtri::kernel::ProjectivePoint;
use projtri::pipeline::{PipelineConfig, PointSetDocument, RenderOptions, SeedStrategy};
use projtri::scalar::{Mode, Scalar};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(arithmetic: &str, tolerance: f64) -> PyResult<Mode> {
    match arithmetic {
        "exact" => Ok(Mode::Exact),
        "float" => {
            if tolerance > 0.0 {
                Ok(Mode::Float { tol: tolerance })
            } else {
                Err(err("float mode requires a positive tolerance"))
            }
        }
        other => Err(err(format!("unknown arithmetic {other:?}"))),
    }
}

fn float_point(t: [f64; 3]) -> PyResult<ProjectivePoint> {
    let m = Mode::float_default();
    ProjectivePoint::new(
        [
            Scalar::from_f64(t[0]).map_err(err)?,
            Scalar::from_f64(t[1]).map_err(err)?,
            Scalar::from_f64(t[2]).map_err(err)?,
        ],
        m,
    )
    .map_err(err)
}

/// Triangulate a point-set JSON document; returns the triangulation document
/// as a JSON string.
#[pyfunction]
#[pyo3(signature = (points_json, arithmetic="exact", tolerance=1e-12, shuffle=None, validate="fast"))]
fn triangulate(
    points_json: &str,
    arithmetic: &str,
    tolerance: f64,
    shuffle: Option<u64>,
    validate: &str,
) -> PyResult<String> {
    let mode = parse_mode(arithmetic, tolerance)?;
    let validation = match validate {
        "off" => ValidationLevel::Off,
        "fast" => ValidationLevel::Fast,
        "full" => ValidationLevel::Full,
        other => return Err(err(format!("unknown validation level {other:?}"))),
    };
    let input = PointSetDocument::parse(points_json, mode).map_err(err)?;
    let config = PipelineConfig {
        mode,
        seed_strategies: vec![SeedStrategy::Linecover, SeedStrategy::Exhaustive],
        shuffle,
        validation,
        ..Default::default()
    };
    let doc = projtri::pipeline::triangulate(&input, &config).map_err(err)?;
    Ok(doc.to_json_string())
}

/// Validate a triangulation document. Returns (passed, [(check, passed)...]).
#[pyfunction]
#[pyo3(signature = (doc_json, samples=1000))]
fn validate(doc_json: &str, samples: usize) -> PyResult<(bool, Vec<(String, bool)>)> {
    let doc = projtri::pipeline::TriangulationDocument::parse(doc_json).map_err(err)?;
    let report = projtri::pipeline::validate_document(&doc, samples, 0);
    let checks = report
        .checks
        .iter()
        .map(|c| (c.name.to_string(), c.passed))
        .collect();
    Ok((report.passed(), checks))
}

/// Render a triangulation document as SVG text.
#[pyfunction]
#[pyo3(signature = (doc_json, size=800))]
fn render_svg(doc_json: &str, size: u32) -> PyResult<String> {
    let doc = projtri::pipeline::TriangulationDocument::parse(doc_json).map_err(err)?;
    Ok(projtri::pipeline::render_svg(&doc, &RenderOptions { size }))
}

/// Topology-only OBJ export of a triangulation document.
#[pyfunction]
fn export_obj(doc_json: &str) -> PyResult<String> {
    let doc = projtri::pipeline::TriangulationDocument::parse(doc_json).map_err(err)?;
    Ok(projtri::pipeline::export_obj(&doc))
}

/// Line through two points (cross product), as a canonical coefficient triple.
#[pyfunction]
fn join(p: [f64; 3], q: [f64; 3]) -> PyResult<[f64; 3]> {
    let l = projtri::kernel::join(&float_point(p)?, &float_point(q)?).map_err(err)?;
    Ok(projtri::scalar::triple_to_f64(l.coeffs()))
}

/// Intersection of two lines (cross product), as a canonical point triple.
#[pyfunction]
fn meet(l: [f64; 3], m: [f64; 3]) -> PyResult<[f64; 3]> {
    let fm = Mode::float_default();
    let a = projtri::kernel::ProjectiveLine::new(
        [
            Scalar::from_f64(l[0]).map_err(err)?,
            Scalar::from_f64(l[1]).map_err(err)?,
            Scalar::from_f64(l[2]).map_err(err)?,
        ],
        fm,
    )
    .map_err(err)?;
    let b = projtri::kernel::ProjectiveLine::new(
        [
            Scalar::from_f64(m[0]).map_err(err)?,
            Scalar::from_f64(m[1]).map_err(err)?,
            Scalar::from_f64(m[2]).map_err(err)?,
        ],
        fm,
    )
    .map_err(err)?;
    let x = projtri::kernel::meet(&a, &b).map_err(err)?;
    Ok(projtri::scalar::triple_to_f64(x.coords()))
}

/// Whether three points are collinear.
#[pyfunction]
fn collinear(p: [f64; 3], q: [f64; 3], r: [f64; 3]) -> PyResult<bool> {
    Ok(projtri::kernel::collinear(
        &float_point(p)?,
        &float_point(q)?,
        &float_point(r)?,
    ))
}

/// Classify a query against the triangle spanned by three fixed
/// representatives (the given triples select the spherical copy). Returns
/// "inside", "edge:k", "vertex:k" or "outside".
#[pyfunction]
fn classify_triangle(a: [f64; 3], b: [f64; 3], c: [f64; 3], p: [f64; 3]) -> PyResult<String> {
    let fm = Mode::float_default();
    let reps = [
        [
            Scalar::from_f64(a[0]).map_err(err)?,
            Scalar::from_f64(a[1]).map_err(err)?,
            Scalar::from_f64(a[2]).map_err(err)?,
        ],
        [
            Scalar::from_f64(b[0]).map_err(err)?,
            Scalar::from_f64(b[1]).map_err(err)?,
            Scalar::from_f64(b[2]).map_err(err)?,
        ],
        [
            Scalar::from_f64(c[0]).map_err(err)?,
            Scalar::from_f64(c[1]).map_err(err)?,
            Scalar::from_f64(c[2]).map_err(err)?,
        ],
    ];
    let plane = projtri::kernel::distinguishing_plane_for(&reps, fm).map_err(err)?;
    let result = projtri::smap::classify(
        &float_point(a)?,
        &float_point(b)?,
        &float_point(c)?,
        &float_point(p)?,
        &plane,
    )
    .map_err(err)?;
    Ok(match result {
        projtri::smap::Classification::Inside => "inside".to_string(),
        projtri::smap::Classification::OnEdge(k) => format!("edge:{k}"),
        projtri::smap::Classification::OnVertex(k) => format!("vertex:{k}"),
        projtri::smap::Classification::Outside => "outside".to_string(),
    })
}

#[pymodule]
fn _projtri(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(triangulate, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(render_svg, m)?)?;
    m.add_function(wrap_pyfunction!(export_obj, m)?)?;
    m.add_function(wrap_pyfunction!(join, m)?)?;
    m.add_function(wrap_pyfunction!(meet, m)?)?;
    m.add_function(wrap_pyfunction!(collinear, m)?)?;
    m.add_function(wrap_pyfunction!(classify_triangle, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
