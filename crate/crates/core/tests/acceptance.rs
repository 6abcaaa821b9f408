//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use projtri::complex::{EdgeKey, Triangulation, ValidationLevel, VertexId};
use projtri::kernel::{DistinguishingPlane, ProjectivePoint};
use projtri::oracle::{classify_oracle_equivalence, sample_tiling};
use projtri::pipeline::{triangulate_run, PipelineConfig};
use projtri::scalar::Mode;
use projtri::seed::{build_canonical, build_initial, find_canonical, CanonicalSet, SeedSet};
use projtri::smap::plane_transform;

const M: Mode = Mode::Exact;

fn pt(x: i64, y: i64, z: i64) -> ProjectivePoint {
    ProjectivePoint::from_ints(x, y, z, M).unwrap()
}

/// Distinct random rational points, mostly affine with a sprinkling at
/// infinity to exercise every s-mapping branch.
fn random_point_set(n: usize, seed: u64) -> Vec<ProjectivePoint> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let infinite = out.len() % 25 == 24;
        let x = rng.random_range(-10_000i64..=10_000);
        let y = rng.random_range(-10_000i64..=10_000);
        let z = if infinite { 0 } else { 1 };
        let Ok(p) = ProjectivePoint::from_ints(x, y, z, M) else {
            continue;
        };
        if seen.insert(p.key()) {
            out.push(p);
        }
    }
    out
}

/// The fifty pipeline outputs shared by criteria 2 and 4.
fn pipeline_outputs() -> &'static Vec<(usize, Triangulation)> {
    static OUTPUTS: OnceLock<Vec<(usize, Triangulation)>> = OnceLock::new();
    OUTPUTS.get_or_init(|| {
        let sizes = [10usize, 50, 100, 500];
        let mut out = Vec::with_capacity(50);
        for i in 0..50usize {
            let n = sizes[i % sizes.len()];
            let points = random_point_set(n, 1000 + i as u64);
            let config = PipelineConfig {
                mode: M,
                validation: ValidationLevel::Off,
                ..Default::default()
            };
            let run = triangulate_run(&points, &config)
                .unwrap_or_else(|e| panic!("pipeline failed on set {i} (n={n}): {e}"));
            out.push((n, run.tri));
        }
        out
    })
}

#[test]
fn criterion_1_structural_constants() {
    let quad = [pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1), pt(1, 1, 1)];
    let init = build_initial(&quad, M).unwrap();
    assert_eq!(
        (init.tri.vertex_count(), init.tri.edge_count(), init.tri.face_count()),
        (7, 18, 12)
    );
    assert_eq!(init.tri.euler_characteristic(), 1);
    let regions = init.region_map();
    assert_eq!(regions.len(), 3);
    let mut boundaries = BTreeSet::new();
    for faces in regions.values() {
        assert_eq!(faces.len(), 4, "each region has four faces");
        let mut boundary: Vec<VertexId> = faces
            .iter()
            .flat_map(|&f| init.tri.face(f).vertices)
            .filter(|v| !init.tri.vertex(*v).is_pseudo)
            .collect();
        boundary.sort();
        boundary.dedup();
        assert_eq!(boundary.len(), 4);
        boundaries.insert(boundary);
    }
    assert_eq!(boundaries.len(), 1, "all regions share one boundary set");

    let pts = vec![
        pt(1, 0, 0),
        pt(0, 1, 0),
        pt(0, 0, 1),
        pt(1, 1, 1),
        pt(1, 2, 4),
        pt(4, 2, 1),
    ];
    let cs = CanonicalSet {
        quad: [0, 1, 2, 3],
        extras: [4, 5],
    };
    let built = build_canonical(&pts, &cs, M).unwrap();
    assert_eq!(
        (built.tri.vertex_count(), built.tri.edge_count(), built.tri.face_count()),
        (6, 15, 10)
    );
    assert_eq!(built.tri.euler_characteristic(), 1);
    let ids: Vec<VertexId> = built.tri.vertex_ids().collect();
    for i in 0..6 {
        for j in (i + 1)..6 {
            assert!(
                built.tri.edge(EdgeKey::new(ids[i], ids[j])).is_some(),
                "K6 edge missing"
            );
        }
    }
    assert!(built.tri.validate(ValidationLevel::Full, 2000, 3).passed());
    println!(
        "acceptance criterion 1 (structural constants V7/E18/F12 and V6/E15/F10=K6): PASS"
    );
}

#[test]
fn criterion_2_euler_characteristic_law() {
    let start = Instant::now();
    for (n, tri) in pipeline_outputs() {
        let n = *n;
        assert_eq!(tri.vertex_count(), n, "V = n");
        assert_eq!(tri.edge_count(), 3 * n - 3, "E = 3n-3");
        assert_eq!(tri.face_count(), 2 * n - 2, "F = 2n-2");
        assert_eq!(tri.euler_characteristic(), 1);
        let report = tri.validate(ValidationLevel::Full, 1000, n as u64);
        assert!(
            report.passed(),
            "validation failures at n={n}: {:?}",
            report.failures()
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "criterion 2 exceeded 60 s: {elapsed:?}"
    );
    println!(
        "acceptance criterion 2 (Euler law V=n, E=3n-3, F=2n-2 on 50 random sets): PASS ({elapsed:?} incl. generation)"
    );
}

#[test]
fn criterion_3_predicate_oracle_equivalence() {
    let report = classify_oracle_equivalence(20, 10_000, 42);
    assert!(
        report.instances >= 12_500,
        "only {} instances",
        report.instances
    );
    assert!(
        report.disagreements.is_empty(),
        "disagreements: {:?}",
        &report.disagreements[..report.disagreements.len().min(3)]
    );
    println!(
        "acceptance criterion 3 (classify ≡ cone oracle on {} exact instances, 0 disagreements): PASS",
        report.instances
    );
}

#[test]
fn criterion_4_sphere_tiling() {
    for (i, (n, tri)) in pipeline_outputs().iter().enumerate() {
        let report = sample_tiling(tri, 10_000, 4242 + i as u64);
        assert_eq!(report.samples, 10_000);
        assert!(
            report.passed(),
            "tiling violations at n={n}: {:?}",
            &report.violations[..report.violations.len().min(3)]
        );
    }
    println!(
        "acceptance criterion 4 (sphere tiling: 10,000 directions x 50 outputs, all count=1): PASS"
    );
}

#[test]
fn criterion_5_transform_properties() {
    let fm = Mode::float_default();
    // the root-free cases are exact in f64
    let axis_z = DistinguishingPlane::from_ints(0, 0, 1, fm).unwrap();
    assert_eq!(
        plane_transform(&axis_z),
        [[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
    );
    let axis_x = DistinguishingPlane::from_ints(1, 0, 0, fm).unwrap();
    assert_eq!(
        plane_transform(&axis_x),
        [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
    );
    let axis_y = DistinguishingPlane::from_ints(0, 1, 0, fm).unwrap();
    assert_eq!(
        plane_transform(&axis_y),
        [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]]
    );

    let mut rng = StdRng::seed_from_u64(5);
    let mut max_orth: f64 = 0.0;
    let mut max_det: f64 = 0.0;
    let mut max_align: f64 = 0.0;
    for i in 0..1000 {
        let mut n = [
            rng.random_range(-1.0f64..1.0),
            rng.random_range(-1.0f64..1.0),
            rng.random_range(-1.0f64..1.0),
        ];
        if i % 5 == 0 {
            n[2] = 0.0;
        }
        if i % 25 == 0 {
            n[1] = 0.0;
            n[2] = 0.0;
        }
        let norm = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if norm < 1e-3 {
            continue;
        }
        let plane = DistinguishingPlane::new(
            [
                projtri::scalar::Scalar::from_f64(n[0]).unwrap(),
                projtri::scalar::Scalar::from_f64(n[1]).unwrap(),
                projtri::scalar::Scalar::from_f64(n[2]).unwrap(),
            ],
            fm,
        )
        .unwrap();
        let m = plane_transform(&plane);
        // M Mᵀ = I
        for r in 0..3 {
            for c in 0..3 {
                let dot: f64 = (0..3).map(|k| m[r][k] * m[c][k]).sum();
                let expect = if r == c { 1.0 } else { 0.0 };
                max_orth = max_orth.max((dot - expect).abs());
            }
        }
        // det M = 1
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        max_det = max_det.max((det - 1.0).abs());
        // Mᵀ n ∝ e3 (first two components vanish relative to |n|)
        for r in 0..2 {
            let v: f64 = (0..3).map(|k| m[k][r] * n[k]).sum();
            max_align = max_align.max(v.abs() / norm);
        }
    }
    assert!(max_orth <= 1e-12, "orthogonality defect {max_orth}");
    assert!(max_det <= 1e-12, "determinant defect {max_det}");
    assert!(max_align <= 1e-12, "alignment defect {max_align}");
    println!(
        "acceptance criterion 5 (1000 transforms: |MMt-I| {max_orth:.2e}, |det-1| {max_det:.2e}, alignment {max_align:.2e}, axis cases exact): PASS"
    );
}

#[test]
fn criterion_6_canonical_set_always_exists() {
    let mut rng = StdRng::seed_from_u64(77);
    let mut produced = 0usize;
    while produced < 1000 {
        let mut pts = Vec::with_capacity(6);
        let mut keys = BTreeSet::new();
        while pts.len() < 6 {
            let x = rng.random_range(-50i64..=50);
            let y = rng.random_range(-50i64..=50);
            let z = rng.random_range(-2i64..=2).max(1);
            let Ok(p) = ProjectivePoint::from_ints(x, y, z, M) else {
                continue;
            };
            if keys.insert(p.key()) {
                pts.push(p);
            }
        }
        let mut general = true;
        'gp: for a in 0..6 {
            for b in (a + 1)..6 {
                for c in (b + 1)..6 {
                    if projtri::kernel::collinear(&pts[a], &pts[b], &pts[c]) {
                        general = false;
                        break 'gp;
                    }
                }
            }
        }
        if !general {
            continue;
        }
        produced += 1;
        let seed = SeedSet {
            indices: [0, 1, 2, 3, 4, 5],
        };
        let cs = find_canonical(&pts, &seed, M)
            .unwrap_or_else(|e| panic!("canonical set missing for a general-position seed: {e}"));
        // and the construction it promises actually completes
        build_canonical(&pts, &cs, M)
            .unwrap_or_else(|e| panic!("canonical build failed: {e}"));
    }
    println!(
        "acceptance criterion 6 (canonical set found and built for 1000 general-position seeds): PASS"
    );
}

#[test]
fn criterion_7_degenerate_inputs() {
    let bin = env!("CARGO_BIN_EXE_projtri");
    let dir = std::env::temp_dir().join("projtri-acceptance");
    std::fs::create_dir_all(&dir).unwrap();

    // all points on one line: no quadrangulation at all
    let collinear = dir.join("all_collinear.json");
    std::fs::write(
        &collinear,
        r#"{"points": [[0,0,1],[1,1,1],[2,2,1],[3,3,1],[4,4,1],[5,5,1],[6,6,1],[7,7,1]]}"#,
    )
    .unwrap();
    let out = Command::new(bin)
        .args(["triangulate", "--input"])
        .arg(&collinear)
        .args(["--output", "/dev/null"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "all-collinear input exits 2");

    // quadrangulation exists, but all other points sit on the line through
    // two quad vertices: the flip construction's degenerate case
    let obstructed = dir.join("obstructed.json");
    std::fs::write(
        &obstructed,
        r#"{"points": [[1,0,0],[0,1,0],[0,0,1],[1,1,1],[1,2,1],[1,3,1],[1,5,1],[1,7,1]]}"#,
    )
    .unwrap();
    let out = Command::new(bin)
        .args(["triangulate", "--input"])
        .arg(&obstructed)
        .args(["--output", "/dev/null"])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(3),
        "collinear obstruction exits 3: {}",
        String::from_utf8_lossy(&out.stderr)
    );

    // duplicates merged with warnings, counts adjusted to distinct points
    let dupes = dir.join("dupes.json");
    std::fs::write(
        &dupes,
        r#"{"points": [[1,0,0],[2,0,0],[0,1,0],[0,0,1],[1,1,1],[1,2,4],[4,2,1],[2,4,8]]}"#,
    )
    .unwrap();
    let merged_out = dir.join("dupes_out.json");
    let out = Command::new(bin)
        .args(["triangulate", "--input"])
        .arg(&dupes)
        .arg("--output")
        .arg(&merged_out)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc = projtri::pipeline::TriangulationDocument::parse(
        &std::fs::read_to_string(&merged_out).unwrap(),
    )
    .unwrap();
    assert_eq!(doc.vertex_count(), 6, "8 inputs, 2 duplicates merged");
    assert_eq!(doc.edge_count(), 15);
    assert!(
        doc.warnings.iter().any(|w| w.contains("merged")),
        "merge warning recorded: {:?}",
        doc.warnings
    );
    println!(
        "acceptance criterion 7 (degenerate handling: exit 2, exit 3, duplicate merging): PASS"
    );
}

#[test]
fn criterion_8_determinism() {
    let points = random_point_set(60, 8080);
    let config = PipelineConfig {
        mode: M,
        validation: ValidationLevel::Full,
        ..Default::default()
    };
    let doc_text = |points: &[ProjectivePoint]| {
        let input = projtri::pipeline::PointSetDocument {
            points: points.to_vec(),
            labels: None,
        };
        projtri::pipeline::triangulate(&input, &config)
            .unwrap()
            .to_json_string()
    };
    let first = doc_text(&points);
    let second = doc_text(&points);
    assert_eq!(first, second, "documents byte-identical");
    let doc = projtri::pipeline::TriangulationDocument::parse(&first).unwrap();
    let svg1 = projtri::pipeline::render_svg(&doc, &Default::default());
    let svg2 = projtri::pipeline::render_svg(&doc, &Default::default());
    assert_eq!(svg1, svg2, "SVG byte-identical");

    // shuffled insertion with the same seed is also reproducible
    let shuffled = PipelineConfig {
        shuffle: Some(99),
        ..config.clone()
    };
    let input = projtri::pipeline::PointSetDocument {
        points: points.clone(),
        labels: None,
    };
    let a = projtri::pipeline::triangulate(&input, &shuffled)
        .unwrap()
        .to_json_string();
    let b = projtri::pipeline::triangulate(&input, &shuffled)
        .unwrap()
        .to_json_string();
    assert_eq!(a, b, "shuffled run with fixed seed byte-identical");
    println!("acceptance criterion 8 (byte-identical documents and SVG on reruns): PASS");
}

#[test]
fn criterion_9_desk_scale_performance() {
    let points = random_point_set(2000, 31415);
    let exact_config = PipelineConfig {
        mode: M,
        validation: ValidationLevel::Fast,
        ..Default::default()
    };
    let t0 = Instant::now();
    let run = triangulate_run(&points, &exact_config).unwrap();
    let exact_time = t0.elapsed();
    assert_eq!(run.tri.vertex_count(), 2000);
    assert!(
        exact_time.as_secs_f64() < 120.0,
        "exact mode took {exact_time:?}"
    );

    let fm = Mode::float_default();
    let float_points: Vec<ProjectivePoint> = points
        .iter()
        .map(|p| {
            let c = projtri::scalar::triple_to_f64(p.coords());
            ProjectivePoint::new(
                [
                    projtri::scalar::Scalar::from_f64(c[0]).unwrap(),
                    projtri::scalar::Scalar::from_f64(c[1]).unwrap(),
                    projtri::scalar::Scalar::from_f64(c[2]).unwrap(),
                ],
                fm,
            )
            .unwrap()
        })
        .collect();
    let float_config = PipelineConfig {
        mode: fm,
        validation: ValidationLevel::Fast,
        ..Default::default()
    };
    let t0 = Instant::now();
    let run = triangulate_run(&float_points, &float_config).unwrap();
    let float_time = t0.elapsed();
    assert_eq!(run.tri.vertex_count(), 2000);
    assert!(
        float_time.as_secs_f64() < 10.0,
        "float mode took {float_time:?}"
    );
    println!(
        "acceptance criterion 9 (n=2000: exact {exact_time:?} < 120 s, float {float_time:?} < 10 s): PASS"
    );
}
