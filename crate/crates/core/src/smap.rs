//! The in-triangle test: plane-aligning transforms, the three-case s-mapping
//! from P² to R³, and the classification of a query point against a triangle
//! with a distinguishing plane via three determinant signs.

use crate::error::Error;
use crate::kernel::{DistinguishingPlane, ProjectivePoint};
use crate::scalar::{
    component_is_zero, det3_sign, det3_sign_int, dot3, int_row, triple_scale, Mode, Scalar, Triple,
};

/// Result of the in-triangle test. Edge `k` is the edge opposite the pair
/// `(v_k, v_{k+1})`: edge 0 joins vertices 0 and 1, edge 1 joins 1 and 2,
/// edge 2 joins 2 and 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Inside,
    OnEdge(usize),
    OnVertex(usize),
    Outside,
}

impl Classification {
    pub fn is_inside(&self) -> bool {
        matches!(self, Classification::Inside)
    }
}

/// Image of a point under the s-mapping in plane-aligned coordinates.
/// Always lands in {(1,·,·)} ∪ {(0,1,·)} ∪ {(0,0,1)}.
#[derive(Clone, Debug, PartialEq)]
pub struct SMapped(pub Triple);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PlaneCase {
    /// α = β = 0: the plane is already z = 0; no transform needed.
    AxisZ,
    /// γ ≠ 0 (general case).
    GammaNonzero,
    /// γ = 0, β ≠ 0.
    BetaNonzero,
    /// γ = β = 0: fixed axis permutation.
    AlphaOnly,
}

fn plane_case(plane: &DistinguishingPlane) -> PlaneCase {
    let n = plane.normal();
    let mode = plane.mode();
    let scale = triple_scale(n);
    let z = |i: usize| component_is_zero(&n[i], scale, mode);
    if z(0) && z(1) {
        PlaneCase::AxisZ
    } else if !z(2) {
        PlaneCase::GammaNonzero
    } else if !z(1) {
        PlaneCase::BetaNonzero
    } else {
        PlaneCase::AlphaOnly
    }
}

/// Rows of the plane-aligning map, unnormalized: mutually orthogonal, each a
/// positive multiple of the corresponding row of Mᵀ. Positive row scalings do
/// not change any of the determinant signs the classification consumes, so
/// these rows stay exact in rational mode (no square roots).
fn aligned_rows(plane: &DistinguishingPlane) -> [Triple; 3] {
    let n = plane.normal();
    let mode = plane.mode();
    let (a, b, g) = (n[0].clone(), n[1].clone(), n[2].clone());
    match plane_case(plane) {
        PlaneCase::AxisZ => [
            [Scalar::one(mode), Scalar::zero(mode), Scalar::zero(mode)],
            [Scalar::zero(mode), Scalar::one(mode), Scalar::zero(mode)],
            [Scalar::zero(mode), Scalar::zero(mode), Scalar::one(mode)],
        ],
        PlaneCase::GammaNonzero => {
            let bb_gg = b.mul(&b).add(&g.mul(&g));
            [
                [Scalar::zero(mode), g.clone(), b.neg()],
                [bb_gg.neg(), a.mul(&b), a.mul(&g)],
                [a, b, g],
            ]
        }
        PlaneCase::BetaNonzero => [
            [b.clone(), a.neg(), Scalar::zero(mode)],
            [Scalar::zero(mode), Scalar::zero(mode), Scalar::int(-1, mode)],
            [a, b, Scalar::zero(mode)],
        ],
        PlaneCase::AlphaOnly => [
            [Scalar::zero(mode), Scalar::one(mode), Scalar::zero(mode)],
            [Scalar::zero(mode), Scalar::zero(mode), Scalar::one(mode)],
            [Scalar::one(mode), Scalar::zero(mode), Scalar::zero(mode)],
        ],
    }
}

/// The orientation-preserving orthogonal matrix M taking the plane
/// `αx+βy+γz = 0` to `z' = 0` (via `p' = Mᵀ·p`), materialized numerically.
/// Exact sign decisions never use this matrix; they use the root-free
/// [`aligned_rows`] frame instead.
pub fn plane_transform(plane: &DistinguishingPlane) -> [[f64; 3]; 3] {
    let n = plane.normal();
    let (a, b, g) = (n[0].to_f64(), n[1].to_f64(), n[2].to_f64());
    match plane_case(plane) {
        PlaneCase::AxisZ | PlaneCase::GammaNonzero => {
            let bg = b * b + g * g;
            let full = a * a + bg;
            let s_bg = bg.sqrt();
            let s_full = full.sqrt();
            [
                [0.0, -bg / (s_bg * s_full), a / s_full],
                [g / s_bg, a * b / (s_bg * s_full), b / s_full],
                [-b / s_bg, a * g / (s_bg * s_full), g / s_full],
            ]
        }
        PlaneCase::BetaNonzero => {
            let s = (a * a + b * b).sqrt();
            [[b / s, 0.0, a / s], [-a / s, 0.0, b / s], [0.0, -1.0, 0.0]]
        }
        PlaneCase::AlphaOnly => [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
    }
}

/// Plane-aligned coordinates of `p`, reordered as `(z', x', y')` so the
/// branch pivot is simply the first nonzero entry.
fn aligned_reordered(p: &ProjectivePoint, rows: &[Triple; 3]) -> Triple {
    let c = p.coords();
    let xp = dot3(&rows[0], c);
    let yp = dot3(&rows[1], c);
    let zp = dot3(&rows[2], c);
    [zp, xp, yp]
}

/// First nonzero index of the reordered triple and the sign of that entry.
fn pivot_of(q: &Triple, mode: Mode) -> Result<(usize, i8), Error> {
    let scale = triple_scale(q);
    for (i, c) in q.iter().enumerate() {
        if !component_is_zero(c, scale, mode) {
            return Ok((i, c.raw_sign()));
        }
    }
    Err(Error::ZeroVector)
}

/// The many-one s-mapping s: P² → R³, in coordinates aligned to `plane`.
///
/// With the plane already `z = 0` this is the literal three-case formula:
/// `(1, x/z, y/z)` when `z ≠ 0`, `(0, 1, y/x)` when `z = 0, x ≠ 0`, else
/// `(0, 0, 1)`. The value is invariant under rescaling `p` by any nonzero λ.
pub fn s_map(p: &ProjectivePoint, plane: &DistinguishingPlane) -> SMapped {
    let rows = aligned_rows(plane);
    let q = aligned_reordered(p, &rows);
    let mode = p.mode();
    let (pivot, _) = pivot_of(&q, mode).expect("nonzero point has nonzero image");
    let piv = q[pivot].clone();
    let mut out = [
        Scalar::zero(mode),
        Scalar::zero(mode),
        Scalar::zero(mode),
    ];
    for i in pivot..3 {
        out[i] = q[i].div(&piv);
    }
    out[pivot] = Scalar::one(mode);
    // reorder back to the (1, x/z, y/z) presentation
    SMapped(out)
}

/// Classify `p` against triangle `(a, b, c)` whose two spherical copies are
/// separated by `plane`.
///
/// The decision reduces to the signs of three 3×3 determinants of s-mapped
/// rows: sum ±3 means interior, a single zero with the other two equal means
/// the open edge, two zeros means a vertex, anything else is outside. Signs
/// are evaluated division-free: with pivot signs factored out, the s-row
/// determinant sign equals the aligned-coordinate determinant sign times the
/// product of the three pivot signs.
pub fn classify(
    a: &ProjectivePoint,
    b: &ProjectivePoint,
    c: &ProjectivePoint,
    p: &ProjectivePoint,
    plane: &DistinguishingPlane,
) -> Result<Classification, Error> {
    match p.mode() {
        Mode::Exact => classify_exact(a, b, c, p, plane),
        Mode::Float { .. } => classify_float(a, b, c, p, plane),
    }
}

/// Exact path over denominator-cleared integer rows: clearing denominators is
/// a positive per-row scaling of the points and a positive per-coordinate
/// scaling of the aligned frame, neither of which moves any determinant sign.
fn classify_exact(
    a: &ProjectivePoint,
    b: &ProjectivePoint,
    c: &ProjectivePoint,
    p: &ProjectivePoint,
    plane: &DistinguishingPlane,
) -> Result<Classification, Error> {
    use num_bigint::BigInt;
    use num_traits::Zero;
    let ia = int_row(a.coords());
    let ib = int_row(b.coords());
    let ic = int_row(c.coords());
    if det3_sign_int(&ia, &ib, &ic) == 0 {
        return Err(Error::DegenerateTriangle);
    }
    let ip = int_row(p.coords());
    let rows = aligned_rows(plane);
    let irows = [int_row(&rows[0]), int_row(&rows[1]), int_row(&rows[2])];
    let idot = |r: &[BigInt; 3], v: &[BigInt; 3]| -> BigInt {
        &r[0] * &v[0] + &r[1] * &v[1] + &r[2] * &v[2]
    };
    // reorder as (z', x', y') so the branch pivot is the first nonzero entry
    let q = |v: &[BigInt; 3]| -> [BigInt; 3] {
        [idot(&irows[2], v), idot(&irows[0], v), idot(&irows[1], v)]
    };
    let (qa, qb, qc, qp) = (q(&ia), q(&ib), q(&ic), q(&ip));
    let pivot = |t: &[BigInt; 3]| -> Result<(usize, i8), Error> {
        for (i, v) in t.iter().enumerate() {
            if !v.is_zero() {
                let s = match v.sign() {
                    num_bigint::Sign::Minus => -1,
                    _ => 1,
                };
                return Ok((i, s));
            }
        }
        Err(Error::ZeroVector)
    };
    let (pa, la) = pivot(&qa)?;
    let (pb, lb) = pivot(&qb)?;
    let (pc, lc) = pivot(&qc)?;
    let (pp, lp) = pivot(&qp)?;
    if pa > 0 && pb > 0 && pc > 0 && pp > 0 {
        return Err(Error::AllAtInfinity);
    }
    let d0 = det3_sign_int(&qa, &qb, &qp) * la * lb * lp;
    let d1 = det3_sign_int(&qb, &qc, &qp) * lb * lc * lp;
    let d2 = det3_sign_int(&qc, &qa, &qp) * lc * la * lp;
    classification_from_signs(d0, d1, d2)
}

fn classify_float(
    a: &ProjectivePoint,
    b: &ProjectivePoint,
    c: &ProjectivePoint,
    p: &ProjectivePoint,
    plane: &DistinguishingPlane,
) -> Result<Classification, Error> {
    let mode = p.mode();
    if det3_sign(a.coords(), b.coords(), c.coords(), mode) == 0 {
        return Err(Error::DegenerateTriangle);
    }
    let rows = aligned_rows(plane);
    let qa = aligned_reordered(a, &rows);
    let qb = aligned_reordered(b, &rows);
    let qc = aligned_reordered(c, &rows);
    let qp = aligned_reordered(p, &rows);
    let (pa, la) = pivot_of(&qa, mode)?;
    let (pb, lb) = pivot_of(&qb, mode)?;
    let (pc, lc) = pivot_of(&qc, mode)?;
    let (pp, lp) = pivot_of(&qp, mode)?;
    if pa > 0 && pb > 0 && pc > 0 && pp > 0 {
        return Err(Error::AllAtInfinity);
    }
    let d0 = det3_sign(&qa, &qb, &qp, mode) * la * lb * lp;
    let d1 = det3_sign(&qb, &qc, &qp, mode) * lb * lc * lp;
    let d2 = det3_sign(&qc, &qa, &qp, mode) * lc * la * lp;
    classification_from_signs(d0, d1, d2)
}

/// Map barycentric coefficient signs (in the face's representative basis) to
/// a classification: the coefficient on vertex k vanishes on the wall
/// opposite k, so a zero on vertex 0 with the other two agreeing is the open
/// edge (1, 2), and so on. Shared by the cone oracle and the walk.
pub(crate) fn coefficient_signs_classification(x: i8, y: i8, z: i8) -> Classification {
    let zeros = [x, y, z].iter().filter(|s| **s == 0).count();
    match zeros {
        0 => {
            if x == y && y == z {
                Classification::Inside
            } else {
                Classification::Outside
            }
        }
        1 => {
            let (edge, pair) = if x == 0 {
                (1, (y, z))
            } else if y == 0 {
                (2, (x, z))
            } else {
                (0, (x, y))
            };
            if pair.0 == pair.1 {
                Classification::OnEdge(edge)
            } else {
                Classification::Outside
            }
        }
        2 => {
            let v = if x != 0 {
                0
            } else if y != 0 {
                1
            } else {
                2
            };
            Classification::OnVertex(v)
        }
        _ => unreachable!("query direction is nonzero"),
    }
}

fn classification_from_signs(d0: i8, d1: i8, d2: i8) -> Result<Classification, Error> {
    let zeros = [d0, d1, d2].iter().filter(|s| **s == 0).count();
    match zeros {
        0 => {
            if d0 == d1 && d1 == d2 {
                Ok(Classification::Inside)
            } else {
                Ok(Classification::Outside)
            }
        }
        1 => {
            let (zero_at, others) = if d0 == 0 {
                (0, (d1, d2))
            } else if d1 == 0 {
                (1, (d0, d2))
            } else {
                (2, (d0, d1))
            };
            if others.0 == others.1 {
                Ok(Classification::OnEdge(zero_at))
            } else {
                Ok(Classification::Outside)
            }
        }
        2 => {
            // the vertex is the one shared by the two vanishing edge lines
            let v = if d0 == 0 && d2 == 0 {
                0
            } else if d0 == 0 && d1 == 0 {
                1
            } else {
                2
            };
            Ok(Classification::OnVertex(v))
        }
        _ => Err(Error::DegenerateTriangle),
    }
}
