//! Projective primitives on homogeneous triples: points and lines of the real
//! projective plane, join/meet via cross products, incidence via dot products,
//! and distinguishing planes through the origin of R³.

use crate::error::Error;
use crate::scalar::{
    canonicalize, cross3, det3, det3_sign, dot3_sign, triple_is_zero,
    triple_key, triple_scale, Mode, Scalar, Triple, TripleKey,
};

/// A point of P², stored as the canonical representative of its class:
/// the first nonzero coordinate is +1.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    coords: Triple,
    mode: Mode,
}

impl ProjectivePoint {
    pub fn new(coords: Triple, mode: Mode) -> Result<Self, Error> {
        let coords = canonicalize(&coords, mode)?;
        Ok(ProjectivePoint { coords, mode })
    }

    pub fn from_ints(x: i64, y: i64, z: i64, mode: Mode) -> Result<Self, Error> {
        Self::new(
            [
                Scalar::int(x, mode),
                Scalar::int(y, mode),
                Scalar::int(z, mode),
            ],
            mode,
        )
    }

    pub fn coords(&self) -> &Triple {
        &self.coords
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn key(&self) -> TripleKey {
        triple_key(&self.coords)
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

/// A line of P², dual to points; also kept in canonical form.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    coeffs: Triple,
    mode: Mode,
}

impl ProjectiveLine {
    pub fn new(coeffs: Triple, mode: Mode) -> Result<Self, Error> {
        let coeffs = canonicalize(&coeffs, mode)?;
        Ok(ProjectiveLine { coeffs, mode })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, mode: Mode) -> Result<Self, Error> {
        Self::new(
            [
                Scalar::int(a, mode),
                Scalar::int(b, mode),
                Scalar::int(c, mode),
            ],
            mode,
        )
    }

    pub fn coeffs(&self) -> &Triple {
        &self.coeffs
    }

    pub fn key(&self) -> TripleKey {
        triple_key(&self.coeffs)
    }
}

impl PartialEq for ProjectiveLine {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

/// An origin plane of R³ used to separate a triangle's two spherical copies.
/// The normal is stored as given (not canonicalized): its sign selects which
/// side representatives live on.
#[derive(Clone, Debug, PartialEq)]
pub struct DistinguishingPlane {
    normal: Triple,
    mode: Mode,
}

impl DistinguishingPlane {
    pub fn new(normal: Triple, mode: Mode) -> Result<Self, Error> {
        if triple_is_zero(&normal) {
            return Err(Error::ZeroVector);
        }
        Ok(DistinguishingPlane { normal, mode })
    }

    pub fn from_ints(a: i64, b: i64, c: i64, mode: Mode) -> Result<Self, Error> {
        Self::new(
            [
                Scalar::int(a, mode),
                Scalar::int(b, mode),
                Scalar::int(c, mode),
            ],
            mode,
        )
    }

    pub fn normal(&self) -> &Triple {
        &self.normal
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Sign of `normal · v` with the mode's tolerance.
    pub fn side(&self, v: &Triple) -> i8 {
        dot3_sign(&self.normal, v, self.mode)
    }

    /// Strict separation of a representative triple: all three strictly positive.
    pub fn separates(&self, reps: &[Triple; 3]) -> bool {
        reps.iter().all(|r| self.side(r) > 0)
    }
}

/// Line through two distinct points (cross product of coordinate vectors).
pub fn join(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<ProjectiveLine, Error> {
    let c = cross3(p.coords(), q.coords());
    if cross_is_degenerate(&c, p.coords(), q.coords(), p.mode) {
        return Err(Error::DegenerateJoin);
    }
    ProjectiveLine::new(c, p.mode)
}

/// Intersection point of two distinct lines (cross product of coefficient vectors).
pub fn meet(l: &ProjectiveLine, m: &ProjectiveLine) -> Result<ProjectivePoint, Error> {
    let c = cross3(l.coeffs(), m.coeffs());
    if cross_is_degenerate(&c, l.coeffs(), m.coeffs(), l.mode) {
        return Err(Error::DegenerateMeet);
    }
    ProjectivePoint::new(c, l.mode)
}

fn cross_is_degenerate(c: &Triple, a: &Triple, b: &Triple, mode: Mode) -> bool {
    match mode {
        Mode::Exact => triple_is_zero(c),
        Mode::Float { tol } => {
            let scale = triple_scale(a) * triple_scale(b);
            c.iter().all(|v| v.to_f64().abs() <= tol * scale)
        }
    }
}

/// Incidence test: `p · L = 0`.
pub fn incident(p: &ProjectivePoint, l: &ProjectiveLine) -> bool {
    dot3_sign(p.coords(), l.coeffs(), p.mode) == 0
}

/// Three points are collinear iff `det(p, q, r) = 0`.
pub fn collinear(p: &ProjectivePoint, q: &ProjectivePoint, r: &ProjectivePoint) -> bool {
    det3_sign(p.coords(), q.coords(), r.coords(), p.mode) == 0
}

/// Solve for the plane through the origin equidistant (in dot product) from
/// three fixed representatives: `n · a = n · b = n · c = d > 0`.
///
/// The caller fixes which spherical copy each representative denotes; the
/// returned plane strictly separates that copy from its antipode.
pub fn distinguishing_plane_for(reps: &[Triple; 3], mode: Mode) -> Result<DistinguishingPlane, Error> {
    if det3_sign(&reps[0], &reps[1], &reps[2], mode) == 0 {
        return Err(Error::DegenerateTriangle);
    }
    // Cramer on A·n = (1,1,1) with A rows the representatives. The solution is
    // n = (D0, D1, D2)/det where Dk replaces column k with ones; scaling by det
    // keeps entries in the ring but may flip orientation, so re-orient after.
    let ones = [
        Scalar::one(mode),
        Scalar::one(mode),
        Scalar::one(mode),
    ];
    let col = |k: usize| -> [Triple; 3] {
        let mut m = [reps[0].clone(), reps[1].clone(), reps[2].clone()];
        for row in m.iter_mut() {
            row[k] = ones[k].clone();
        }
        m
    };
    let m0 = col(0);
    let m1 = col(1);
    let m2 = col(2);
    let mut n = [
        det3(&m0[0], &m0[1], &m0[2]),
        det3(&m1[0], &m1[1], &m1[2]),
        det3(&m2[0], &m2[1], &m2[2]),
    ];
    let det = det3(&reps[0], &reps[1], &reps[2]);
    if det.raw_sign() < 0 {
        n = [n[0].neg(), n[1].neg(), n[2].neg()];
    }
    // positive rescale keeps entries small without touching orientation
    let n = crate::scalar::canonicalize_abs(&n, mode)?;
    let plane = DistinguishingPlane::new(n, mode)?;
    if !plane.separates(reps) {
        return Err(Error::Internal(
            "separating plane solve produced non-positive dots".into(),
        ));
    }
    Ok(plane)
}

/// Coefficients of `d` in the basis `(a, b, c)`, as signs only.
/// Returns `None` when the frame is singular.
pub fn barycentric_signs(
    frame: &[Triple; 3],
    d: &Triple,
    mode: Mode,
) -> Option<[i8; 3]> {
    let det_sign = det3_sign(&frame[0], &frame[1], &frame[2], mode);
    if det_sign == 0 {
        return None;
    }
    // Cramer numerators: coefficient of frame[k] replaces row k with d.
    let s0 = det3_sign(d, &frame[1], &frame[2], mode);
    let s1 = det3_sign(&frame[0], d, &frame[2], mode);
    let s2 = det3_sign(&frame[0], &frame[1], d, mode);
    Some([s0 * det_sign, s1 * det_sign, s2 * det_sign])
}

/// Representative of `p` lying strictly on the positive side of `plane`,
/// or `None` if `p` lies on the plane.
pub fn positive_rep(p: &ProjectivePoint, plane: &DistinguishingPlane) -> Option<Triple> {
    match plane.side(p.coords()) {
        1 => Some(p.coords().clone()),
        -1 => Some([
            p.coords()[0].neg(),
            p.coords()[1].neg(),
            p.coords()[2].neg(),
        ]),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: Mode = Mode::Exact;

    fn pt(x: i64, y: i64, z: i64) -> ProjectivePoint {
        ProjectivePoint::from_ints(x, y, z, M).unwrap()
    }

    fn ln(a: i64, b: i64, c: i64) -> ProjectiveLine {
        ProjectiveLine::from_ints(a, b, c, M).unwrap()
    }

    #[test]
    fn join_basis_vectors() {
        let l = join(&pt(1, 0, 0), &pt(0, 1, 0)).unwrap();
        assert_eq!(l, ln(0, 0, 1));
    }

    #[test]
    fn join_hand_example() {
        let l = join(&pt(1, 0, 1), &pt(0, 1, 1)).unwrap();
        assert_eq!(l, ln(-1, -1, 1));
    }

    #[test]
    fn join_same_point_rescaled_is_degenerate() {
        let err = join(&pt(2, 0, 2), &pt(1, 0, 1)).unwrap_err();
        assert!(matches!(err, Error::DegenerateJoin));
    }

    #[test]
    fn meet_axes() {
        let p = meet(&ln(1, 0, 0), &ln(0, 1, 0)).unwrap();
        assert_eq!(p, pt(0, 0, 1));
    }

    #[test]
    fn meet_hand_example() {
        let p = meet(&ln(-1, -1, 1), &ln(1, -1, 0)).unwrap();
        assert_eq!(p, pt(1, 1, 2));
    }

    #[test]
    fn meet_same_line_rescaled_is_degenerate() {
        let err = meet(&ln(2, 2, -2), &ln(1, 1, -1)).unwrap_err();
        assert!(matches!(err, Error::DegenerateMeet));
    }

    #[test]
    fn incidence() {
        assert!(incident(&pt(1, 0, 0), &ln(0, 0, 1)));
        let l = join(&pt(1, 0, 1), &pt(0, 1, 1)).unwrap();
        assert!(incident(&pt(1, 1, 2), &l));
        assert!(!incident(&pt(1, 0, 0), &ln(1, 0, 0)));
    }

    #[test]
    fn collinearity() {
        assert!(collinear(&pt(1, 0, 1), &pt(0, 1, 1), &pt(2, 1, 3)));
        assert!(!collinear(&pt(1, 0, 0), &pt(0, 1, 0), &pt(0, 0, 1)));
        // two arguments equivalent
        assert!(collinear(&pt(1, 0, 1), &pt(2, 0, 2), &pt(0, 1, 0)));
    }

    #[test]
    fn duality_round_trip() {
        let p = pt(1, 2, 3);
        let q = pt(0, 1, 1);
        let r = pt(1, 0, 0);
        let back = meet(&join(&p, &q).unwrap(), &join(&p, &r).unwrap()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn plane_solve_examples() {
        let reps = [
            crate::scalar::triple_int(1, 0, 1, M),
            crate::scalar::triple_int(0, 1, 1, M),
            crate::scalar::triple_int(-1, -1, 1, M),
        ];
        let plane = distinguishing_plane_for(&reps, M).unwrap();
        let n = canonicalize(plane.normal(), M).unwrap();
        assert_eq!(n, crate::scalar::triple_int(0, 0, 1, M));

        let frame = [
            crate::scalar::triple_int(1, 0, 0, M),
            crate::scalar::triple_int(0, 1, 0, M),
            crate::scalar::triple_int(0, 0, 1, M),
        ];
        let plane = distinguishing_plane_for(&frame, M).unwrap();
        let n = canonicalize(plane.normal(), M).unwrap();
        assert_eq!(n, crate::scalar::triple_int(1, 1, 1, M));

        let dep = [
            crate::scalar::triple_int(1, 0, 1, M),
            crate::scalar::triple_int(0, 1, 1, M),
            crate::scalar::triple_int(1, 1, 2, M),
        ];
        assert!(matches!(
            distinguishing_plane_for(&dep, M),
            Err(Error::DegenerateTriangle)
        ));
    }

    #[test]
    fn plane_solve_negative_orientation_input() {
        // swap two rows so the raw determinant is negative; dots must still be positive
        let reps = [
            crate::scalar::triple_int(0, 1, 1, M),
            crate::scalar::triple_int(1, 0, 1, M),
            crate::scalar::triple_int(-1, -1, 1, M),
        ];
        let plane = distinguishing_plane_for(&reps, M).unwrap();
        assert!(plane.separates(&reps));
    }
}
