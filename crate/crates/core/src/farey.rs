//! Exact arithmetic on slopes of essential curves on the torus and on the
//! Farey tessellation of the hyperbolic disk.
//!
//! A slope is a point of ℚ ∪ {∞} ≅ ∂H², two slopes are joined by an edge of
//! the tessellation exactly when their shortest integral vectors form a
//! ℤ-basis of ℤ², and all circular-arc comparisons reduce to signs of 2×2
//! integer determinants.  No floating point anywhere.
//!
//! Orientation convention: the boundary circle is traversed counterclockwise
//! in the order 0 → 1 → ∞ → −1 → 0, i.e. counterclockwise is the direction of
//! increasing angle of the corresponding line in ℝP¹.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Errors produced by slope arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FareyError {
    /// (0,0) is not a slope.
    ZeroVector,
    /// A representative pair summed to the zero vector (antipodal mediant).
    AntipodalMediant,
    /// The matrix does not have determinant ±1.
    NotUnimodular,
    /// An operation required two distinct slopes.
    EqualSlopes,
    /// Integer overflow while normalizing user-supplied data.
    Overflow,
}

impl fmt::Display for FareyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FareyError::ZeroVector => write!(f, "(0,0) does not define a slope"),
            FareyError::AntipodalMediant => {
                write!(f, "mediant of antipodal representatives is the zero vector")
            }
            FareyError::NotUnimodular => write!(f, "matrix determinant is not ±1"),
            FareyError::EqualSlopes => write!(f, "slopes must be distinct"),
            FareyError::Overflow => write!(f, "integer overflow"),
        }
    }
}

impl std::error::Error for FareyError {}

/// A reduced projective rational slope p/q, or ∞ = 1/0.
///
/// Canonical form: `q > 0`, or `(p, q) = (1, 0)` for ∞.  Canonicity makes
/// equality, ordering and hashing structural.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    p: i64,
    q: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Slope {
    /// Builds the canonical slope p/q, reducing and normalizing the sign.
    pub fn new(p: i64, q: i64) -> Result<Slope, FareyError> {
        if p == 0 && q == 0 {
            return Err(FareyError::ZeroVector);
        }
        if p == i64::MIN || q == i64::MIN {
            return Err(FareyError::Overflow);
        }
        if q == 0 {
            return Ok(Slope { p: 1, q: 0 });
        }
        let g = gcd(p, q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = p.checked_neg().ok_or(FareyError::Overflow)?;
            q = -q;
        }
        Ok(Slope { p, q })
    }

    pub fn infinity() -> Slope {
        Slope { p: 1, q: 0 }
    }

    pub fn from_int(n: i64) -> Slope {
        Slope { p: n, q: 1 }
    }

    pub fn is_infinity(&self) -> bool {
        self.q == 0
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    /// Direction vector (x, y) with slope = y/x; ∞ ↦ (0, 1).
    pub(crate) fn vector(&self) -> (i64, i64) {
        (self.q, self.p)
    }

    fn from_vector(x: i64, y: i64) -> Result<Slope, FareyError> {
        Slope::new(y, x)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl std::str::FromStr for Slope {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Slope, FareyError> {
        let s = s.trim();
        if s == "inf" || s == "-inf" || s == "∞" {
            return Ok(Slope::infinity());
        }
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| FareyError::ZeroVector);
        match s.split_once('/') {
            Some((a, b)) => Slope::new(parse(a)?, parse(b)?),
            None => Slope::new(parse(s)?, 1),
        }
    }
}

/// A primitive vector in ℤ²; carries the `v_i` of the relative Euler class
/// computation.  The slope of (x, y) is y/x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegralVector {
    pub x: i64,
    pub y: i64,
}

impl IntegralVector {
    pub fn slope(&self) -> Result<Slope, FareyError> {
        Slope::from_vector(self.x, self.y)
    }
}

pub(crate) fn cross(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Canonical upper-half-plane representative: y > 0, or y = 0 and x > 0.
/// Its angle in [0, π) is the ℝP¹ angle of the slope.
pub(crate) fn upper_rep(s: Slope) -> (i64, i64) {
    let (x, y) = s.vector();
    if y > 0 || (y == 0 && x > 0) {
        (x, y)
    } else {
        (-x, -y)
    }
}

/// True iff the shortest integral vectors of `a` and `b` form a ℤ-basis,
/// i.e. `a` and `b` are joined by an edge of the Farey tessellation.
pub fn farey_adjacent(a: Slope, b: Slope) -> bool {
    cross(a.vector(), b.vector()).abs() == 1
}

/// Farey sum (p+p′)/(q+q′) of the canonical representatives.
pub fn mediant(a: Slope, b: Slope) -> Result<Slope, FareyError> {
    let (p, q) = (a.p + b.p, a.q + b.q);
    if p == 0 && q == 0 {
        return Err(FareyError::AntipodalMediant);
    }
    Slope::new(p, q)
}

/// True iff `s` lies on the closed counterclockwise arc from `s1` to `s0`,
/// equivalently the ℝP¹ angle of `s` lies in [α(s₁), α(s₀)] with
/// α(s₁) ≤ α(s₀) < α(s₁) + π.
pub fn between(s: Slope, s1: Slope, s0: Slope) -> bool {
    if s1 == s0 {
        return s == s1;
    }
    let (uf, ut, ux) = (upper_rep(s1), upper_rep(s0), upper_rep(s));
    if cross(uf, ut) > 0 {
        cross(uf, ux) >= 0 && cross(ux, ut) >= 0
    } else {
        cross(uf, ux) >= 0 || cross(ux, ut) >= 0
    }
}

/// A 2×2 integer matrix acting on slope vectors (columns).
pub type Mat2 = [[i64; 2]; 2];

pub fn det2(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn apply_vec(m: &Mat2, v: (i64, i64)) -> (i64, i64) {
    (m[0][0] * v.0 + m[0][1] * v.1, m[1][0] * v.0 + m[1][1] * v.1)
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

/// Inverse of a determinant ±1 matrix.
pub fn mat_inv(m: &Mat2) -> Result<Mat2, FareyError> {
    let d = det2(m);
    match d {
        1 => Ok([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]),
        -1 => Ok([[-m[1][1], m[0][1]], [m[1][0], -m[0][0]]]),
        _ => Err(FareyError::NotUnimodular),
    }
}

/// Image of a slope under a determinant ±1 matrix.
pub fn sl2_apply(m: &Mat2, s: Slope) -> Result<Slope, FareyError> {
    if det2(m).abs() != 1 {
        return Err(FareyError::NotUnimodular);
    }
    let (x, y) = apply_vec(m, s.vector());
    Slope::from_vector(x, y)
}

fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b != 0);
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Extended gcd: returns (g, a, b) with a·x + b·y = g = gcd(x, y) ≥ 0.
fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    if y == 0 {
        if x < 0 {
            (-x, -1, 0)
        } else {
            (x, 1, 0)
        }
    } else {
        let (g, a, b) = ext_gcd(y, x.rem_euclid(y));
        (g, b, a - x.div_euclid(y) * b)
    }
}

/// An SL(2,ℤ) matrix sending the vector of `s` to (0, ±1), i.e. s ↦ ∞.
fn to_infinity(s: Slope) -> Mat2 {
    let (x, y) = s.vector();
    // Row 1 annihilates (x, y); row 2 = (c, d) with c·x + d·y = 1 makes
    // det = y·d − (−x)·c = x·c + y·d = 1.
    let (g, c, d) = ext_gcd(x, y);
    debug_assert_eq!(g, 1, "slope vectors are primitive");
    let m: Mat2 = [[y, -x], [c, d]];
    debug_assert_eq!(det2(&m), 1);
    m
}

/// The bypass hop: the slope on the counterclockwise arc [s, r] that
/// is farey-adjacent to `s` and closest to `r`.  This is the boundary slope
/// produced by attaching a bypass to a two-curve torus of slope `s` along a
/// ruling of slope `r`, and equally the single peeling step of the
/// basic-slice factorization toward `r`.
pub fn bypass_slope(s: Slope, r: Slope) -> Result<Slope, FareyError> {
    if s == r {
        return Err(FareyError::EqualSlopes);
    }
    // Transport s to ∞ by an orientation-preserving matrix.  The ccw arc
    // [∞, r'] is { t ≤ r' }, and the neighbors of ∞ are the integers, so the
    // answer is ⌊r'⌋ pulled back.
    let m = to_infinity(s);
    let (x, y) = apply_vec(&m, r.vector());
    debug_assert!(x != 0, "r == s was excluded");
    let n = floor_div(y, x);
    let inv = mat_inv(&m).expect("to_infinity is unimodular");
    let (vx, vy) = apply_vec(&inv, (1, n));
    Slope::from_vector(vx, vy)
}

/// Minimal sequence of Farey edge hops from `s_from` to `s_to`, all
/// intermediate slopes lying on the counterclockwise arc [s_from, s_to].
pub fn shortest_path(s_from: Slope, s_to: Slope) -> Vec<Slope> {
    let mut path = vec![s_from];
    let mut cur = s_from;
    while cur != s_to {
        cur = bypass_slope(cur, s_to).expect("loop runs only while cur != s_to");
        path.push(cur);
        debug_assert!(path.len() <= 10_000, "runaway Farey path");
    }
    path
}

/// Shortest integral vector of `s` with negative x-coordinate; for s = ∞ the
/// convention is (0, −1), which makes the basic-slice Euler classes come out
/// as ±(0, 1) after normalization.
pub fn primitive_vector(s: Slope) -> IntegralVector {
    if s.is_infinity() {
        IntegralVector { x: 0, y: -1 }
    } else {
        IntegralVector { x: -s.q, y: -s.p }
    }
}

/// Normalizes a boundary slope pair by an SL(2,ℤ) matrix carrying
/// (s1, s0) to (−p/q, −1) with p ≥ q > 0 (and p > q when s1 ≠ s0).
///
/// Pairs already in normal form are fixed by the identity; otherwise the
/// normal form with minimal denominator in the parabolic orbit is chosen,
/// so the result is deterministic.  The matrix has determinant +1, hence
/// counterclockwise arcs and shortest paths transport.
pub fn normalize_boundary(s1: Slope, s0: Slope) -> (Mat2, Slope, Slope) {
    let minus_one = Slope { p: -1, q: 1 };
    if s0 == minus_one && s1.q > 0 && s1.p <= -s1.q {
        return ([[1, 0], [0, 1]], s1, s0);
    }
    // Step 1: m0 · v(s0) = (1, -1).
    let (x, y) = s0.vector();
    let (_, a, b) = ext_gcd(x, y); // a·x + b·y = 1
    let m0: Mat2 = [[a, b], [-a - y, -b + x]];
    debug_assert_eq!(det2(&m0), 1);
    debug_assert_eq!(apply_vec(&m0, (x, y)), (1, -1));

    let (tx, ty) = apply_vec(&m0, s1.vector());
    let sigma = tx + ty;
    if sigma == 0 {
        // s1 and s0 coincide; normal form is (−1, −1).
        let minus_one = Slope::new(-1, 1).unwrap();
        return (m0, minus_one, minus_one);
    }
    // Step 2: parabolic stabilizer of (1,−1): p_k = [[1+k, k], [−k, 1−k]]
    // sends (tx, ty) to (tx + kσ, ty − kσ).  The image slope is < −1 exactly
    // when the new x-coordinate has sign opposite to σ; the choice with
    // minimal |x| gives the minimal-denominator normal form.
    let k = if sigma > 0 {
        floor_div(-1 - tx, sigma)
    } else {
        floor_div(1 - tx, sigma)
    };
    let pk: Mat2 = [[1 + k, k], [-k, 1 - k]];
    let m = mat_mul(&pk, &m0);
    let img1 = sl2_apply(&m, s1).expect("det +1");
    let img0 = sl2_apply(&m, s0).expect("det +1");
    debug_assert_eq!(img0, Slope::new(-1, 1).unwrap());
    debug_assert!(img1.q > 0 && img1.p < -img1.q, "image slope must be < -1");
    (m, img1, img0)
}
