//! Arithmetic backbone: every coordinate is either an exact arbitrary-precision
//! rational or an f64, selected by a global [`Mode`]. Sign decisions in float
//! mode use a relative tolerance against the magnitude of the evaluated
//! expression; exact mode decides signs exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::Error;

/// Arithmetic mode. `tol` is the relative tolerance for float sign decisions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Exact,
    Float { tol: f64 },
}

impl Mode {
    pub const DEFAULT_TOL: f64 = 1e-12;

    pub fn float_default() -> Self {
        Mode::Float {
            tol: Self::DEFAULT_TOL,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Mode::Exact)
    }

    pub fn tol(&self) -> f64 {
        match self {
            Mode::Exact => 0.0,
            Mode::Float { tol } => *tol,
        }
    }
}

/// A coordinate value in the active arithmetic mode.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn int(v: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::from_integer(BigInt::from(v))),
            Mode::Float { .. } => Scalar::Float(v as f64),
        }
    }

    pub fn zero(mode: Mode) -> Self {
        Scalar::int(0, mode)
    }

    pub fn one(mode: Mode) -> Self {
        Scalar::int(1, mode)
    }

    pub fn ratio(num: i64, den: i64, mode: Mode) -> Self {
        assert!(den != 0, "zero denominator");
        match mode {
            Mode::Exact => Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den))),
            Mode::Float { .. } => Scalar::Float(num as f64 / den as f64),
        }
    }

    pub fn from_f64(v: f64) -> Result<Self, Error> {
        if !v.is_finite() {
            return Err(Error::Parse(format!("non-finite coordinate {v}")));
        }
        Ok(Scalar::Float(v))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::float_default(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(f) => *f == 0.0,
        }
    }

    /// Raw sign, no tolerance. Tolerance-aware decisions live in the
    /// expression-level predicates which know the expression magnitude.
    pub fn raw_sign(&self) -> i8 {
        match self {
            Scalar::Exact(r) => match r.cmp(&BigRational::zero()) {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
            Scalar::Float(f) => {
                if *f > 0.0 {
                    1
                } else if *f < 0.0 {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => rational_to_f64(r),
            Scalar::Float(f) => *f,
        }
    }

    /// Exact rational view; float values convert losslessly.
    pub fn to_rational(&self) -> BigRational {
        match self {
            Scalar::Exact(r) => r.clone(),
            Scalar::Float(f) => {
                BigRational::from_float(*f).expect("finite float converts to rational")
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(f) => Scalar::Float(-f),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(f) => Scalar::Float(f.abs()),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => panic!("mixed arithmetic modes"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a - b),
            _ => panic!("mixed arithmetic modes"),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => panic!("mixed arithmetic modes"),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => {
                assert!(!b.is_zero(), "division by zero");
                Scalar::Exact(a / b)
            }
            (Scalar::Float(a), Scalar::Float(b)) => {
                assert!(*b != 0.0, "division by zero");
                Scalar::Float(a / b)
            }
            _ => panic!("mixed arithmetic modes"),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Float(v) => write!(f, "{v}"),
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // fall back through a scaled division for huge numerators
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Parse one coordinate entry: integer, `"p/q"` fraction string, or decimal string.
pub fn parse_entry(text: &str, mode: Mode) -> Result<Scalar, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty coordinate entry".into()));
    }
    if let Some((num, den)) = text.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {text:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {text:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        let r = BigRational::new(n, d);
        return Ok(match mode {
            Mode::Exact => Scalar::Exact(r),
            Mode::Float { .. } => Scalar::Float(rational_to_f64(&r)),
        });
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        // decimal string, exact as n / 10^k
        let digits: String = format!("{int_part}{frac_part}");
        let n: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal {text:?}")))?;
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        let r = BigRational::new(n, d);
        return Ok(match mode {
            Mode::Exact => Scalar::Exact(r),
            Mode::Float { .. } => Scalar::Float(rational_to_f64(&r)),
        });
    }
    let n: BigInt = text
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer {text:?}")))?;
    Ok(match mode {
        Mode::Exact => Scalar::Exact(BigRational::from_integer(n)),
        Mode::Float { .. } => Scalar::Float(rational_to_f64(&BigRational::from_integer(n))),
    })
}

// ---- three-component helpers -------------------------------------------------

pub type Triple = [Scalar; 3];

pub fn triple_int(x: i64, y: i64, z: i64, mode: Mode) -> Triple {
    [Scalar::int(x, mode), Scalar::int(y, mode), Scalar::int(z, mode)]
}

pub fn triple_neg(t: &Triple) -> Triple {
    [t[0].neg(), t[1].neg(), t[2].neg()]
}

pub fn triple_is_zero(t: &Triple) -> bool {
    t.iter().all(|c| c.is_zero())
}

pub fn triple_to_f64(t: &Triple) -> [f64; 3] {
    [t[0].to_f64(), t[1].to_f64(), t[2].to_f64()]
}

pub fn dot3(a: &Triple, b: &Triple) -> Scalar {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

pub fn cross3(a: &Triple, b: &Triple) -> Triple {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

pub fn det3(r0: &Triple, r1: &Triple, r2: &Triple) -> Scalar {
    dot3(r0, &cross3(r1, r2))
}

/// Denominator-cleared integer row: the triple scaled by the (positive) lcm
/// of its denominators. Positive row scalings preserve every determinant and
/// dot-product sign the predicates consume.
pub fn int_row(t: &Triple) -> [BigInt; 3] {
    let r: Vec<BigRational> = t.iter().map(|c| c.to_rational()).collect();
    let all_int = r.iter().all(|x| x.denom().is_one());
    if all_int {
        return [
            r[0].numer().clone(),
            r[1].numer().clone(),
            r[2].numer().clone(),
        ];
    }
    let mut l = r[0].denom().clone();
    for x in &r[1..] {
        l = num_integer::lcm(l, x.denom().clone());
    }
    [
        r[0].numer() * (&l / r[0].denom()),
        r[1].numer() * (&l / r[1].denom()),
        r[2].numer() * (&l / r[2].denom()),
    ]
}

fn bigint_to_i128(v: &BigInt) -> Option<i128> {
    v.to_i128()
}

/// Exact sign of a 3x3 integer determinant, through i128 when the entries
/// are small enough for the cofactor expansion not to overflow.
pub fn det3_sign_int(r0: &[BigInt; 3], r1: &[BigInt; 3], r2: &[BigInt; 3]) -> i8 {
    let small = r0
        .iter()
        .chain(r1.iter())
        .chain(r2.iter())
        .all(|v| v.bits() <= 40);
    if small {
        let g = |r: &[BigInt; 3]| -> [i128; 3] {
            [
                bigint_to_i128(&r[0]).unwrap(),
                bigint_to_i128(&r[1]).unwrap(),
                bigint_to_i128(&r[2]).unwrap(),
            ]
        };
        let (a, b, c) = (g(r0), g(r1), g(r2));
        let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]);
        return det.signum() as i8;
    }
    let det = &r0[0] * (&r1[1] * &r2[2] - &r1[2] * &r2[1])
        - &r0[1] * (&r1[0] * &r2[2] - &r1[2] * &r2[0])
        + &r0[2] * (&r1[0] * &r2[1] - &r1[1] * &r2[0]);
    match det.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn dot3_sign_int(a: &[BigInt; 3], b: &[BigInt; 3]) -> i8 {
    let small = a.iter().chain(b.iter()).all(|v| v.bits() <= 62);
    if small {
        let d: i128 = (0..3)
            .map(|i| bigint_to_i128(&a[i]).unwrap() * bigint_to_i128(&b[i]).unwrap())
            .sum();
        return d.signum() as i8;
    }
    let d = &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2];
    match d.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Sign of a dot product with mode-appropriate zero handling.
pub fn dot3_sign(a: &Triple, b: &Triple, mode: Mode) -> i8 {
    match mode {
        Mode::Exact => dot3_sign_int(&int_row(a), &int_row(b)),
        Mode::Float { tol } => {
            let (av, bv) = (triple_to_f64(a), triple_to_f64(b));
            let v = av[0] * bv[0] + av[1] * bv[1] + av[2] * bv[2];
            let mag = (av[0] * bv[0]).abs() + (av[1] * bv[1]).abs() + (av[2] * bv[2]).abs();
            float_sign(v, mag, tol)
        }
    }
}

/// Sign of a 3x3 determinant with mode-appropriate zero handling.
pub fn det3_sign(r0: &Triple, r1: &Triple, r2: &Triple, mode: Mode) -> i8 {
    match mode {
        Mode::Exact => det3_sign_int(&int_row(r0), &int_row(r1), &int_row(r2)),
        Mode::Float { tol } => {
            let (a, b, c) = (triple_to_f64(r0), triple_to_f64(r1), triple_to_f64(r2));
            let m0 = b[1] * c[2] - b[2] * c[1];
            let m1 = b[0] * c[2] - b[2] * c[0];
            let m2 = b[0] * c[1] - b[1] * c[0];
            let v = a[0] * m0 - a[1] * m1 + a[2] * m2;
            let mag = (a[0] * b[1] * c[2]).abs()
                + (a[0] * b[2] * c[1]).abs()
                + (a[1] * b[0] * c[2]).abs()
                + (a[1] * b[2] * c[0]).abs()
                + (a[2] * b[0] * c[1]).abs()
                + (a[2] * b[1] * c[0]).abs();
            float_sign(v, mag, tol)
        }
    }
}

/// f64 3x3 determinant with its magnitude (sum of absolute products), for
/// relative-tolerance sign decisions.
pub fn f64_det3(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> (f64, f64) {
    let terms = [
        a[0] * b[1] * c[2],
        -(a[0] * b[2] * c[1]),
        -(a[1] * b[0] * c[2]),
        a[1] * b[2] * c[0],
        a[2] * b[0] * c[1],
        -(a[2] * b[1] * c[0]),
    ];
    let v: f64 = terms.iter().sum();
    let mag: f64 = terms.iter().map(|t| t.abs()).sum();
    (v, mag)
}

/// Relative-tolerance sign: zero when the value is within `tol * magnitude`.
pub fn float_sign(v: f64, magnitude: f64, tol: f64) -> i8 {
    if v.abs() <= tol * magnitude {
        0
    } else if v > 0.0 {
        1
    } else {
        -1
    }
}

/// Zero test for one component of a vector, relative to the vector's scale.
pub fn component_is_zero(c: &Scalar, scale: f64, mode: Mode) -> bool {
    match mode {
        Mode::Exact => c.is_zero(),
        Mode::Float { tol } => c.to_f64().abs() <= tol * scale,
    }
}

pub fn triple_scale(t: &Triple) -> f64 {
    let f = triple_to_f64(t);
    f[0].abs().max(f[1].abs()).max(f[2].abs())
}

/// Scale a triple by the reciprocal of the absolute value of its first
/// nonzero coordinate: a positive scaling, so signs and separations are
/// preserved while magnitudes stay bounded.
pub fn canonicalize_abs(t: &Triple, mode: Mode) -> Result<Triple, Error> {
    let scale = match mode {
        Mode::Exact => 0.0,
        Mode::Float { .. } => triple_scale(t),
    };
    let pivot = t
        .iter()
        .position(|c| !component_is_zero(c, scale, mode))
        .ok_or(Error::ZeroVector)?;
    let p = t[pivot].abs();
    Ok([t[0].div(&p), t[1].div(&p), t[2].div(&p)])
}

/// Canonicalize a homogeneous triple: divide through by the first nonzero
/// coordinate (value and sign) so that coordinate becomes +1.
pub fn canonicalize(t: &Triple, mode: Mode) -> Result<Triple, Error> {
    let scale = match mode {
        Mode::Exact => 0.0,
        Mode::Float { .. } => triple_scale(t),
    };
    let pivot = t
        .iter()
        .position(|c| !component_is_zero(c, scale, mode))
        .ok_or(Error::ZeroVector)?;
    let p = t[pivot].clone();
    let mut out = [t[0].div(&p), t[1].div(&p), t[2].div(&p)];
    for (i, c) in out.iter_mut().enumerate() {
        if i < pivot || component_is_zero(c, 1.0, mode) {
            *c = Scalar::zero(mode);
        }
    }
    out[pivot] = Scalar::one(mode);
    Ok(out)
}

/// Total-order key for deduplication of canonical triples.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TripleKey {
    Exact([(BigInt, BigInt); 3]),
    Float([u64; 3]),
}

pub fn triple_key(t: &Triple) -> TripleKey {
    match &t[0] {
        Scalar::Exact(_) => {
            let mut parts = Vec::with_capacity(3);
            for c in t {
                let r = c.to_rational();
                parts.push((r.numer().clone(), r.denom().clone()));
            }
            TripleKey::Exact([parts[0].clone(), parts[1].clone(), parts[2].clone()])
        }
        Scalar::Float(_) => {
            let f = triple_to_f64(t);
            TripleKey::Float([
                normalize_zero(f[0]).to_bits(),
                normalize_zero(f[1]).to_bits(),
                normalize_zero(f[2]).to_bits(),
            ])
        }
    }
}

fn normalize_zero(v: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        v
    }
}
