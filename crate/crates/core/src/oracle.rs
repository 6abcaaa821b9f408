//! Independent brute-force oracles: cone-membership classification against a
//! fixed representative frame, sampled sphere-tiling verification, and
//! exhaustive general-position search. Oracle arithmetic is always exact
//! rational regardless of the system-under-test's mode, so any disagreement
//! is attributable to the kernel.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::complex::Triangulation;
use crate::error::Error;
use crate::kernel::ProjectivePoint;
use crate::scalar::{triple_to_f64, Triple};
use crate::smap::Classification;

/// A membership query: three fixed representatives spanning a double cone,
/// and a query direction in R³.
#[derive(Clone, Debug)]
pub struct ConeQuery {
    pub frame: [Triple; 3],
    pub dir: Triple,
}

fn rat3(t: &Triple) -> [BigRational; 3] {
    [t[0].to_rational(), t[1].to_rational(), t[2].to_rational()]
}

fn rat_det3(a: &[BigRational; 3], b: &[BigRational; 3], c: &[BigRational; 3]) -> BigRational {
    let m0 = &b[1] * &c[2] - &b[2] * &c[1];
    let m1 = &b[0] * &c[2] - &b[2] * &c[0];
    let m2 = &b[0] * &c[1] - &b[1] * &c[0];
    &a[0] * &m0 - &a[1] * &m1 + &a[2] * &m2
}

fn rat_sign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v > &BigRational::zero() {
        1
    } else {
        -1
    }
}

/// Classify `dir` against the double cone spanned by the frame by solving
/// `dir = x·a + y·b + z·c` exactly: interior iff x, y, z all share one strict
/// sign; one zero with the others agreeing is the open edge; two zeros is a
/// vertex; anything else is outside.
pub fn oracle_cone_membership(query: &ConeQuery) -> Result<Classification, Error> {
    let a = rat3(&query.frame[0]);
    let b = rat3(&query.frame[1]);
    let c = rat3(&query.frame[2]);
    let d = rat3(&query.dir);
    let det = rat_det3(&a, &b, &c);
    let det_sign = rat_sign(&det);
    if det_sign == 0 {
        return Err(Error::SingularFrame);
    }
    let x = rat_sign(&rat_det3(&d, &b, &c)) * det_sign;
    let y = rat_sign(&rat_det3(&a, &d, &c)) * det_sign;
    let z = rat_sign(&rat_det3(&a, &b, &d)) * det_sign;
    Ok(crate::smap::coefficient_signs_classification(x, y, z))
}

/// Outcome of a sampled sphere-tiling check.
#[derive(Clone, Debug)]
pub struct TilingReport {
    pub samples: usize,
    pub resampled: usize,
    /// histogram of how many face interiors each direction landed in
    pub counts: BTreeMap<usize, usize>,
    /// directions whose count was not exactly 1
    pub violations: Vec<([f64; 3], usize)>,
}

impl TilingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.counts.keys().all(|k| *k == 1)
    }
}

/// Draw `count` pseudo-random unit directions and verify each lies in the
/// interior of exactly one face. Directions whose membership is not decidable
/// at the tolerance (boundary-proximal) are resampled.
///
/// The per-face test is the coefficient-sign solve of
/// [`oracle_cone_membership`]; an f64 evaluation with a relative error margin
/// decides all non-borderline cases and anything borderline triggers a
/// resample, so no misclassification can slip through the float fast path.
pub fn sample_tiling(tri: &Triangulation, count: usize, seed: u64) -> TilingReport {
    let margin = tri.mode().tol().max(1e-12);
    let frames: Vec<[[f64; 3]; 3]> = tri
        .face_ids()
        .map(|f| {
            let reps = tri.face(f).reps.clone();
            [
                triple_to_f64(&reps[0]),
                triple_to_f64(&reps[1]),
                triple_to_f64(&reps[2]),
            ]
        })
        .collect();
    sample_tiling_frames(&frames, count, seed, margin)
}

/// Same check over raw representative frames (used for documents).
pub fn sample_tiling_frames(
    frames: &[[[f64; 3]; 3]],
    count: usize,
    seed: u64,
    margin: f64,
) -> TilingReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = TilingReport {
        samples: 0,
        resampled: 0,
        counts: BTreeMap::new(),
        violations: Vec::new(),
    };
    let mut produced = 0usize;
    let budget = count.saturating_mul(100).max(1000);
    let mut attempts = 0usize;
    while produced < count && attempts < budget {
        attempts += 1;
        let dir = random_unit(&mut rng);
        match tiling_count(frames, dir, margin) {
            None => {
                report.resampled += 1;
            }
            Some(hits) => {
                produced += 1;
                report.samples += 1;
                *report.counts.entry(hits).or_insert(0) += 1;
                if hits != 1 {
                    report.violations.push((dir, hits));
                }
            }
        }
    }
    report
}

fn random_unit(rng: &mut StdRng) -> [f64; 3] {
    let z: f64 = rng.random_range(-1.0..1.0);
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).sqrt();
    [r * theta.cos(), r * theta.sin(), z]
}

/// Number of face interiors containing `dir`, or `None` when some face's
/// answer is within the margin of a boundary.
fn tiling_count(frames: &[[[f64; 3]; 3]], dir: [f64; 3], margin: f64) -> Option<usize> {
    let mut hits = 0usize;
    for frame in frames {
        match f64_cone_sign(frame, dir, margin) {
            ConeHit::Inside => hits += 1,
            ConeHit::Outside => {}
            ConeHit::Borderline => return None,
        }
    }
    Some(hits)
}

enum ConeHit {
    Inside,
    Outside,
    Borderline,
}

use crate::scalar::f64_det3;

fn f64_cone_sign(frame: &[[f64; 3]; 3], d: [f64; 3], margin: f64) -> ConeHit {
    let (det, det_mag) = f64_det3(frame[0], frame[1], frame[2]);
    if det.abs() <= margin * det_mag {
        return ConeHit::Borderline;
    }
    let ds = det.signum();
    let numerators = [
        f64_det3(d, frame[1], frame[2]),
        f64_det3(frame[0], d, frame[2]),
        f64_det3(frame[0], frame[1], d),
    ];
    let mut signs = [0.0f64; 3];
    for (i, (v, mag)) in numerators.iter().enumerate() {
        if v.abs() <= margin * mag {
            return ConeHit::Borderline;
        }
        signs[i] = v.signum() * ds;
    }
    if signs[0] == signs[1] && signs[1] == signs[2] {
        ConeHit::Inside
    } else {
        ConeHit::Outside
    }
}

/// Result of the classify-versus-oracle equivalence run.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub instances: usize,
    pub disagreements: Vec<String>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Exercise the kernel's in-triangle test against the cone-membership oracle:
/// a rational grid of query points against fixed triangles, plus randomized
/// instances. Exact arithmetic throughout; any disagreement is recorded.
pub fn classify_oracle_equivalence(
    grid_triangles: usize,
    random_instances: usize,
    seed: u64,
) -> EquivalenceReport {
    use crate::kernel::{distinguishing_plane_for, ProjectivePoint};
    use crate::scalar::{triple_neg, Mode, Scalar};

    let mode = Mode::Exact;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut instances = 0usize;
    let mut disagreements = Vec::new();

    let random_point = |rng: &mut StdRng| -> ProjectivePoint {
        loop {
            let x = rng.random_range(-9i64..=9);
            let y = rng.random_range(-9i64..=9);
            let z = rng.random_range(-9i64..=9);
            if let Ok(p) = ProjectivePoint::from_ints(x, y, z, mode) {
                return p;
            }
        }
    };
    let random_triangle = |rng: &mut StdRng| -> ([ProjectivePoint; 3], [Triple; 3]) {
        loop {
            let a = random_point(rng);
            let b = random_point(rng);
            let c = random_point(rng);
            if crate::kernel::collinear(&a, &b, &c) {
                continue;
            }
            // random copy: flip signs of the second and third representatives
            let ra = a.coords().clone();
            let rb = if rng.random_range(0..2) == 0 {
                b.coords().clone()
            } else {
                triple_neg(b.coords())
            };
            let rc = if rng.random_range(0..2) == 0 {
                c.coords().clone()
            } else {
                triple_neg(c.coords())
            };
            return ([a, b, c], [ra, rb, rc]);
        }
    };
    let check = |tri: &[ProjectivePoint; 3],
                     reps: &[Triple; 3],
                     p: &ProjectivePoint,
                     instances: &mut usize,
                     disagreements: &mut Vec<String>| {
        let plane = match distinguishing_plane_for(reps, mode) {
            Ok(pl) => pl,
            Err(_) => return,
        };
        let got = crate::smap::classify(&tri[0], &tri[1], &tri[2], p, &plane);
        let want = oracle_cone_membership(&ConeQuery {
            frame: reps.clone(),
            dir: p.coords().clone(),
        });
        *instances += 1;
        match (got, want) {
            (Ok(g), Ok(w)) if g == w => {}
            (g, w) => disagreements.push(format!(
                "triangle {:?} query {:?}: classify {:?} vs oracle {:?}",
                tri.iter().map(|t| t.coords()).collect::<Vec<_>>(),
                p.coords(),
                g,
                w
            )),
        }
    };

    // grid phase: odd-coordinate rational grid against fixed triangles
    let grid_vals = [-3i64, -1, 1, 3, 5];
    for _ in 0..grid_triangles {
        let (tri, reps) = random_triangle(&mut rng);
        for &x in &grid_vals {
            for &y in &grid_vals {
                for &z in &grid_vals {
                    let p = ProjectivePoint::new(
                        [
                            Scalar::int(x, mode),
                            Scalar::int(y, mode),
                            Scalar::int(z, mode),
                        ],
                        mode,
                    )
                    .expect("odd coordinates are nonzero");
                    check(&tri, &reps, &p, &mut instances, &mut disagreements);
                }
            }
        }
    }
    // randomized phase
    for _ in 0..random_instances {
        let (tri, reps) = random_triangle(&mut rng);
        let p = random_point(&mut rng);
        check(&tri, &reps, &p, &mut instances, &mut disagreements);
    }
    EquivalenceReport {
        instances,
        disagreements,
    }
}

/// All 6-subsets of the input with no three points collinear (exhaustive).
pub fn brute_force_general_position(
    points: &[ProjectivePoint],
) -> Result<Vec<[usize; 6]>, Error> {
    const BUDGET: usize = 25;
    let n = points.len();
    if n > BUDGET {
        return Err(Error::BudgetExceeded(n, BUDGET));
    }
    if n < 6 {
        return Ok(Vec::new());
    }
    // precompute collinear triples
    let mut coll = vec![false; n * n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if crate::kernel::collinear(&points[i], &points[j], &points[k]) {
                    coll[(i * n + j) * n + k] = true;
                }
            }
        }
    }
    let is_coll = |i: usize, j: usize, k: usize| coll[(i * n + j) * n + k];
    let mut out = Vec::new();
    let mut subset = [0usize; 6];
    enumerate_subsets(n, 6, &mut subset, 0, 0, &mut |s: &[usize; 6]| {
        for a in 0..6 {
            for b in (a + 1)..6 {
                for c in (b + 1)..6 {
                    if is_coll(s[a], s[b], s[c]) {
                        return;
                    }
                }
            }
        }
        out.push(*s);
    });
    Ok(out)
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    buf: &mut [usize; 6],
    depth: usize,
    start: usize,
    emit: &mut impl FnMut(&[usize; 6]),
) {
    if depth == k {
        emit(buf);
        return;
    }
    for v in start..n {
        buf[depth] = v;
        enumerate_subsets(n, k, buf, depth + 1, v + 1, emit);
    }
}
