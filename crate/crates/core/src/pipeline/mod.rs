//! End-to-end orchestration: seed search, canonical build, incremental
//! insertion by walking point location, validation, and document assembly.

pub mod doc;
pub mod render;

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::complex::{Triangulation, ValidationLevel, VertexId, WalkOutcome};
use crate::error::Error;
use crate::kernel::ProjectivePoint;
use crate::scalar::Mode;
use crate::seed::{
    build_canonical, canonical_candidates, find_canonical, find_seed_exhaustive,
    find_seed_linecover, CanonicalSet, SeedSet,
};

pub use doc::{dedup_points, export_obj, validate_document, PointSetDocument, TriangulationDocument};
pub use render::{render_svg, RenderOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedStrategy {
    Linecover,
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub mode: Mode,
    pub seed_strategies: Vec<SeedStrategy>,
    /// randomize insertion order with this seed
    pub shuffle: Option<u64>,
    pub validation: ValidationLevel,
    pub tiling_samples: usize,
    pub sample_seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            mode: Mode::Exact,
            seed_strategies: vec![SeedStrategy::Linecover, SeedStrategy::Exhaustive],
            shuffle: None,
            validation: ValidationLevel::Fast,
            tiling_samples: 1000,
            sample_seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        m.insert(
            "arithmetic".into(),
            if self.mode.is_exact() {
                "exact".into()
            } else {
                format!("float tol={}", self.mode.tol())
            },
        );
        m.insert(
            "seed_strategies".into(),
            self.seed_strategies
                .iter()
                .map(|s| match s {
                    SeedStrategy::Linecover => "linecover",
                    SeedStrategy::Exhaustive => "exhaustive",
                })
                .collect::<Vec<_>>()
                .join(","),
        );
        m.insert(
            "shuffle".into(),
            self.shuffle.map(|s| s.to_string()).unwrap_or_else(|| "off".into()),
        );
        m.insert(
            "validate".into(),
            match self.validation {
                ValidationLevel::Off => "off".into(),
                ValidationLevel::Fast => "fast".into(),
                ValidationLevel::Full => "full".into(),
            },
        );
        m.insert("tiling_samples".into(), self.tiling_samples.to_string());
        m.insert("sample_seed".into(), self.sample_seed.to_string());
        m
    }
}

/// Outcome of a full pipeline run, before document assembly.
pub struct PipelineRun {
    pub tri: Triangulation,
    /// deduplicated input index -> vertex id
    pub vertex_of_input: BTreeMap<usize, VertexId>,
    pub warnings: Vec<String>,
    pub report: Option<crate::complex::ValidationReport>,
}

/// Triangulate a point set end to end and assemble the output document.
pub fn triangulate(
    input: &PointSetDocument,
    config: &PipelineConfig,
) -> Result<TriangulationDocument, Error> {
    let run = triangulate_run(&input.points, config)?;
    let order: Vec<(usize, VertexId)> = run
        .vertex_of_input
        .iter()
        .map(|(&slot, &v)| (slot, v))
        .collect();
    TriangulationDocument::from_triangulation(
        &run.tri,
        Some(&order),
        run.warnings,
        run.report.as_ref(),
        config.echo(),
    )
}

/// The pipeline proper, returning the live structure.
pub fn triangulate_run(
    raw_points: &[ProjectivePoint],
    config: &PipelineConfig,
) -> Result<PipelineRun, Error> {
    let mut warnings = Vec::new();
    let (points, merges) = dedup_points(raw_points);
    for (kept, dropped) in &merges {
        warnings.push(format!(
            "merged duplicate points {dropped:?} into point {kept}"
        ));
        crate::log::info(format!(
            "duplicate input points {dropped:?} merged into {kept}"
        ));
    }
    if points.len() < 6 {
        return Err(Error::NoSeed(format!(
            "{} distinct points after merging duplicates; six are required",
            points.len()
        )));
    }

    // seed search, strategy order from config, then the bounded direct
    // canonical-set search for inputs with no six-point general-position subset
    let canonical = match find_seed(&points, &config.seed_strategies) {
        Ok(seed) => {
            crate::log::debug(format!("seed indices {:?}", seed.indices));
            find_canonical(&points, &seed, config.mode)?
        }
        Err(seed_err) => {
            crate::log::info(format!(
                "seed strategies failed ({seed_err}); searching for a canonical set directly"
            ));
            match direct_canonical(&points, config.mode)? {
                Some(cs) => cs,
                None => return Err(seed_err),
            }
        }
    };
    crate::log::debug(format!(
        "canonical quad {:?} extras {:?}",
        canonical.quad, canonical.extras
    ));

    let built = build_canonical(&points, &canonical, config.mode)?;
    let mut tri = built.tri;
    let mut vertex_of_input = built.vertex_of_input;

    // insertion order: input order, optionally shuffled
    let mut remaining: Vec<usize> = (0..points.len())
        .filter(|i| !vertex_of_input.contains_key(i))
        .collect();
    if let Some(seed) = config.shuffle {
        let mut rng = StdRng::seed_from_u64(seed);
        for i in (1..remaining.len()).rev() {
            let j = rng.random_range(0..=i);
            remaining.swap(i, j);
        }
    }

    let mut last_vertex = *vertex_of_input.values().next().unwrap();
    for idx in remaining {
        let p = &points[idx];
        let trace = tri.locate(p, last_vertex)?;
        let new_vertex = match trace.outcome {
            WalkOutcome::Found(f) => {
                let [f0, _, _] = tri.split_face(f, p.clone())?;
                // the new vertex is the one shared by all three children
                tri.face(f0).vertices[1]
            }
            WalkOutcome::OnEdge(e) => {
                let faces = tri.split_edge(e, p.clone())?;
                let f = tri.face(faces[0]);
                f.vertices[1]
            }
            WalkOutcome::OnVertex(v) => {
                warnings.push(format!(
                    "point {idx} coincides with an existing vertex at the tolerance; merged"
                ));
                v
            }
        };
        vertex_of_input.insert(idx, new_vertex);
        last_vertex = new_vertex;
        debug_assert!(tri.fast_check(), "structure broken after inserting {idx}");
    }

    let report = match config.validation {
        ValidationLevel::Off => None,
        level => {
            let r = tri.validate(level, config.tiling_samples, config.sample_seed);
            if !r.passed() {
                let failed: Vec<&str> = r.failures().iter().map(|c| c.name).collect();
                return Err(Error::ValidationFailed(format!(
                    "checks failed: {failed:?}"
                )));
            }
            Some(r)
        }
    };

    Ok(PipelineRun {
        tri,
        vertex_of_input,
        warnings,
        report,
    })
}

fn find_seed(points: &[ProjectivePoint], strategies: &[SeedStrategy]) -> Result<SeedSet, Error> {
    let mut last = Error::NoSeed("no seed strategy configured".into());
    for s in strategies {
        let attempt = match s {
            SeedStrategy::Linecover => find_seed_linecover(points),
            SeedStrategy::Exhaustive => find_seed_exhaustive(points),
        };
        match attempt {
            Ok(seed) => return Ok(seed),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// When no general-position seed exists, a quadrangulation with two points in
/// different regions can still triangulate unless the input is in the
/// degenerate collinear configuration; try candidates until one builds.
///
/// If quadrangulations exist but no canonical set can be completed and all
/// but two points share one line, the failure is exactly the flip
/// construction's degenerate case, reported as [`Error::CollinearObstruction`].
fn direct_canonical(
    points: &[ProjectivePoint],
    mode: Mode,
) -> Result<Option<CanonicalSet>, Error> {
    const SUBSET_BUDGET: usize = 50_000;
    const MAX_CANDIDATES: usize = 200;
    let search = canonical_candidates(points, mode, SUBSET_BUDGET, MAX_CANDIDATES);
    let mut obstructed = 0usize;
    for cs in &search.candidates {
        match build_canonical(points, cs, mode) {
            Ok(_) => return Ok(Some(cs.clone())),
            Err(Error::CollinearObstruction) => obstructed += 1,
            Err(_) => {}
        }
    }
    if obstructed > 0 {
        return Err(Error::CollinearObstruction);
    }
    if search.saw_quad && crate::seed::max_collinear_count(points) + 2 >= points.len() {
        return Err(Error::CollinearObstruction);
    }
    Ok(None)
}

/// Exit code mapping for the command-line surface.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NoSeed(_) => 2,
        Error::CollinearObstruction => 3,
        Error::Parse(_) | Error::Io(_) => 4,
        Error::ValidationFailed(_) => 5,
        _ => 1,
    }
}
