//! Basic slices and their factorizations: the classification data for tight
//! contact structures on T²×I with convex boundary.
//!
//! A minimally twisting T²×I with two dividing curves per boundary torus
//! factors into basic slices along the shortest Farey path between its
//! boundary slopes.  Each basic slice carries a sign, signs shuffle freely
//! inside a continued-fraction block, and the per-block positive counts
//! (the shuffle normal form) together with the relative Euler class are a
//! complete invariant.  The gluing checker decides tightness of a monotone
//! stack of basic slices by merging removable vertices.

use crate::contfrac::{self, BlockShape, NegContFrac};
use crate::farey::{self, FareyError, IntegralVector, Slope};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SliceError {
    /// Boundary slopes coincide; the nonrotative case is handled by the
    /// annulus configurations in `divsets`.
    NonrotativeCase,
    /// The two slopes of a basic slice must be farey-adjacent.
    NotAdjacent,
    /// Slices of a factorization must chain back-to-front.
    BrokenChain,
    /// The slope chain is not monotone along a counterclockwise arc.
    NonMonotone,
    /// The slope chain is not the shortest path between its endpoints.
    NotShortest,
    /// Sign list length must match the number of slices.
    LengthMismatch,
    /// Parameters out of the classified range.
    BadParameters,
    Farey(FareyError),
    Cf(contfrac::CfError),
}

impl fmt::Display for SliceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SliceError::NonrotativeCase => {
                write!(f, "equal boundary slopes: nonrotative case, see divsets")
            }
            SliceError::NotAdjacent => write!(f, "slopes do not form an integral basis"),
            SliceError::BrokenChain => write!(f, "slices do not chain"),
            SliceError::NonMonotone => write!(f, "slope chain is not monotone along an arc"),
            SliceError::NotShortest => write!(f, "slope chain is not a shortest Farey path"),
            SliceError::LengthMismatch => write!(f, "sign list does not match slice count"),
            SliceError::BadParameters => write!(f, "parameters out of range"),
            SliceError::Farey(e) => write!(f, "{e}"),
            SliceError::Cf(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SliceError {}

impl From<FareyError> for SliceError {
    fn from(e: FareyError) -> Self {
        SliceError::Farey(e)
    }
}

impl From<contfrac::CfError> for SliceError {
    fn from(e: contfrac::CfError) -> Self {
        SliceError::Cf(e)
    }
}

/// Sign of a basic slice: the sign ε with PD(e) = ε·(v_back − v_front) under
/// the primitive-vector convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    fn factor(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// Poincaré dual of a relative Euler class in H₁(T²;ℤ) ≅ ℤ².
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerVector {
    pub x: i64,
    pub y: i64,
}

impl EulerVector {
    pub const ZERO: EulerVector = EulerVector { x: 0, y: 0 };

    fn add(self, o: EulerVector) -> EulerVector {
        EulerVector {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }
}

impl std::ops::Neg for EulerVector {
    type Output = EulerVector;

    fn neg(self) -> EulerVector {
        EulerVector {
            x: -self.x,
            y: -self.y,
        }
    }
}

fn vec_diff(b: IntegralVector, a: IntegralVector) -> EulerVector {
    EulerVector {
        x: b.x - a.x,
        y: b.y - a.y,
    }
}

/// A tight, minimally twisting T²×I whose boundary slopes form an integral
/// basis, labeled by its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasicSlice {
    pub front: Slope,
    pub back: Slope,
    pub sign: Sign,
}

impl BasicSlice {
    pub fn new(front: Slope, back: Slope, sign: Sign) -> Result<BasicSlice, SliceError> {
        if !farey::farey_adjacent(front, back) {
            return Err(SliceError::NotAdjacent);
        }
        Ok(BasicSlice { front, back, sign })
    }

    /// PD of the relative Euler class, ε·(v_back − v_front).
    pub fn euler(&self) -> EulerVector {
        let d = vec_diff(
            farey::primitive_vector(self.back),
            farey::primitive_vector(self.front),
        );
        EulerVector {
            x: self.sign.factor() * d.x,
            y: self.sign.factor() * d.y,
        }
    }
}

/// An ordered stack of basic slices, each gluing to the next.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SliceFactorization {
    slices: Vec<BasicSlice>,
}

impl SliceFactorization {
    pub fn new(slices: Vec<BasicSlice>) -> Result<SliceFactorization, SliceError> {
        for w in slices.windows(2) {
            if w[0].back != w[1].front {
                return Err(SliceError::BrokenChain);
            }
        }
        Ok(SliceFactorization { slices })
    }

    pub fn from_chain(chain: &[Slope], signs: &[Sign]) -> Result<SliceFactorization, SliceError> {
        if chain.len() != signs.len() + 1 {
            return Err(SliceError::LengthMismatch);
        }
        let slices = chain
            .windows(2)
            .zip(signs)
            .map(|(w, &s)| BasicSlice::new(w[0], w[1], s))
            .collect::<Result<Vec<_>, _>>()?;
        SliceFactorization::new(slices)
    }

    pub fn slices(&self) -> &[BasicSlice] {
        &self.slices
    }

    pub fn chain(&self) -> Vec<Slope> {
        let mut c: Vec<Slope> = self.slices.iter().map(|s| s.front).collect();
        if let Some(last) = self.slices.last() {
            c.push(last.back);
        }
        c
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.slices.iter().map(|s| s.sign).collect()
    }
}

/// Shuffle normal form of a minimally twisting factorization: the underlying
/// continued fraction together with the number of positive slices per block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinimalDescriptor {
    pub cf: NegContFrac,
    pub counts: Vec<u32>,
}

/// Exact I-twisting data: φ_I = π·half_turns, plus the fractional arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistingData {
    pub half_turns: u32,
    pub residual: (Slope, Slope),
}

/// Isotopy class of a tight T²×I with #Γ = 2 boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum T2xIClass {
    Minimal(MinimalDescriptor),
    NonMinimal { n: u32, sign: Sign },
    NonrotativeHolonomy(i64),
}

/// Slope chain of the unique basic-slice factorization from s1 to s0.
pub fn factor_minimal(s1: Slope, s0: Slope) -> Result<Vec<Slope>, SliceError> {
    if s1 == s0 {
        return Err(SliceError::NonrotativeCase);
    }
    Ok(farey::shortest_path(s1, s0))
}

/// Poincaré dual of the total relative Euler class: the signed telescoping
/// sum Σ signᵢ·(v_backᵢ − v_frontᵢ).
pub fn euler_class(f: &SliceFactorization) -> EulerVector {
    f.slices
        .iter()
        .fold(EulerVector::ZERO, |acc, s| acc.add(s.euler()))
}

/// Intersection pairing of an Euler vector with the curve class of a slope,
/// det(PD(e), v_curve).
pub fn pairing(e: EulerVector, curve: Slope) -> i64 {
    let v = farey::primitive_vector(curve);
    e.x * v.y - e.y * v.x
}

fn normalized_cf(p: i64, q: i64) -> Result<NegContFrac, SliceError> {
    if !(p > q && q >= 1) {
        return Err(if p == q && q == 1 {
            SliceError::NonrotativeCase
        } else {
            SliceError::BadParameters
        });
    }
    Ok(contfrac::to_cf(p, q)?)
}

/// Number of minimally twisting tight structures with boundary slopes
/// (−p/q, −1): |(r₀+1)⋯(r_{k−1}+1)·r_k|.
pub fn count_minimal(p: i64, q: i64) -> Result<u128, SliceError> {
    let cf = normalized_cf(p, q)?;
    Ok(contfrac::block_shape(&cf).descriptor_count())
}

/// All shuffle normal forms over CF(−p/q), in lexicographic count order.
pub fn enumerate_minimal(p: i64, q: i64) -> Result<Vec<MinimalDescriptor>, SliceError> {
    let cf = normalized_cf(p, q)?;
    let shape = contfrac::block_shape(&cf);
    let mut out = Vec::new();
    let mut counts = vec![0u32; shape.sizes.len()];
    loop {
        out.push(MinimalDescriptor {
            cf: cf.clone(),
            counts: counts.clone(),
        });
        // Increment the mixed-radix counter (last index fastest).
        let mut i = counts.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if counts[i] < shape.sizes[i] {
                counts[i] += 1;
                counts[i + 1..].iter_mut().for_each(|c| *c = 0);
                break;
            }
        }
    }
}

/// Chain slice index ranges of the continued-fraction blocks.
///
/// The block of the last coefficient sits at the front of the chain (the
/// −p/q end); the block of r₀ is the integer chain ending at −1.
fn block_segments(shape: &BlockShape) -> Vec<(usize, usize)> {
    let mut segs = vec![(0usize, 0usize); shape.sizes.len()];
    let mut off = 0usize;
    for j in (0..shape.sizes.len()).rev() {
        let b = shape.sizes[j] as usize;
        segs[j] = (off, off + b);
        off += b;
    }
    segs
}

/// Euler vector of a descriptor: within block j every slice contributes the
/// same Δv, so PD(e) = Σⱼ (2cⱼ − bⱼ)·Δvⱼ.
pub fn descriptor_euler(d: &MinimalDescriptor) -> Result<EulerVector, SliceError> {
    let slope = contfrac::from_cf(&d.cf)?;
    let (p, q) = (-slope.numer(), slope.denom());
    let chain = contfrac::path_via_cf(p, q)?;
    let shape = contfrac::block_shape(&d.cf);
    if d.counts.len() != shape.sizes.len()
        || d.counts.iter().zip(&shape.sizes).any(|(&c, &b)| c > b)
    {
        return Err(SliceError::BadParameters);
    }
    let segs = block_segments(&shape);
    let mut e = EulerVector::ZERO;
    for (j, &(lo, hi)) in segs.iter().enumerate() {
        if lo == hi {
            continue;
        }
        let dv = vec_diff(
            farey::primitive_vector(chain[lo + 1]),
            farey::primitive_vector(chain[lo]),
        );
        debug_assert!((lo..hi).all(|i| {
            vec_diff(
                farey::primitive_vector(chain[i + 1]),
                farey::primitive_vector(chain[i]),
            ) == dv
        }));
        let w = 2 * d.counts[j] as i64 - (hi - lo) as i64;
        e = e.add(EulerVector {
            x: w * dv.x,
            y: w * dv.y,
        });
    }
    Ok(e)
}

/// A concrete signed factorization realizing a descriptor: in each block the
/// positive slices come first.
pub fn realize_descriptor(d: &MinimalDescriptor) -> Result<SliceFactorization, SliceError> {
    let slope = contfrac::from_cf(&d.cf)?;
    let (p, q) = (-slope.numer(), slope.denom());
    let chain = contfrac::path_via_cf(p, q)?;
    let shape = contfrac::block_shape(&d.cf);
    let segs = block_segments(&shape);
    let mut signs = vec![Sign::Neg; chain.len() - 1];
    for (j, &(lo, hi)) in segs.iter().enumerate() {
        let positives = (d.counts[j] as usize).min(hi - lo);
        signs[lo..lo + positives].fill(Sign::Pos);
    }
    SliceFactorization::from_chain(&chain, &signs)
}

/// Per-block positive counts of a shortest-chain factorization.  Signs may be
/// permuted freely inside a block without changing the isotopy class, so this
/// is the normal form.
pub fn shuffle_normal_form(f: &SliceFactorization) -> Result<MinimalDescriptor, SliceError> {
    let chain = f.chain();
    if chain.len() < 2 {
        return Err(SliceError::BadParameters);
    }
    let (first, last) = (chain[0], chain[chain.len() - 1]);
    if chain != farey::shortest_path(first, last) {
        return Err(SliceError::NotShortest);
    }
    let (_, s1n, _) = farey::normalize_boundary(first, last);
    let cf = contfrac::to_cf(-s1n.numer(), s1n.denom())?;
    let shape = contfrac::block_shape(&cf);
    debug_assert_eq!(shape.total_slices() as usize, f.slices.len());
    let segs = block_segments(&shape);
    let counts = segs
        .iter()
        .map(|&(lo, hi)| {
            f.slices[lo..hi]
                .iter()
                .filter(|s| s.sign == Sign::Pos)
                .count() as u32
        })
        .collect();
    Ok(MinimalDescriptor { cf, counts })
}

/// True iff the structure stays tight in every cover: all slices carry one
/// common sign (every block all-positive, or every block all-negative).
pub fn is_universally_tight(d: &MinimalDescriptor) -> bool {
    let shape = contfrac::block_shape(&d.cf);
    let all_pos = d.counts.iter().zip(&shape.sizes).all(|(&c, &b)| c == b);
    let all_neg = d.counts.iter().all(|&c| c == 0);
    all_pos || all_neg
}

/// Counts how many times the cumulative slope rotation crosses the line of
/// the anchor slope; with anchor = first slope of the chain this is
/// ⌊β_I/π⌋.  Each hop sweeps the counterclockwise arc between consecutive
/// slopes, which is less than π, so anchored counts are exactly additive
/// over concatenation.
pub fn half_turns_anchored(chain: &[Slope], anchor: Slope) -> u32 {
    let mut crossings = 0u32;
    for w in chain.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a == b {
            continue;
        }
        // Does the half-open ccw angular interval (α(a), α(b)] contain the
        // anchor angle mod π?
        let (ua, ub, ux) = (
            farey::upper_rep(a),
            farey::upper_rep(b),
            farey::upper_rep(anchor),
        );
        let no_wrap = farey::cross(ua, ub) > 0;
        let after_a = farey::cross(ua, ux) > 0;
        let not_after_b = farey::cross(ub, ux) <= 0;
        let contains = if no_wrap {
            after_a && not_after_b
        } else {
            after_a || not_after_b
        };
        if contains {
            crossings += 1;
        }
    }
    crossings
}

/// Exact I-twisting of a slope chain: φ_I = π·half_turns.
pub fn twisting(chain: &[Slope]) -> TwistingData {
    if chain.is_empty() {
        let zero = Slope::new(0, 1).expect("0 is a slope");
        return TwistingData {
            half_turns: 0,
            residual: (zero, zero),
        };
    }
    TwistingData {
        half_turns: half_turns_anchored(chain, chain[0]),
        residual: (chain[0], chain[chain.len() - 1]),
    }
}

/// Tight-structure counts for T²×I with #Γ = 2 boundary, slopes (−p/q, −1) and
/// φ_I = nπ.  The nonrotative case (p = q, n = 0) is infinite before
/// quotienting by holonomy and is handled by `divsets`.
pub fn count_t2i(p: i64, q: i64, n: u32) -> Result<u128, SliceError> {
    if !(p >= q && q >= 1) {
        return Err(SliceError::BadParameters);
    }
    if n >= 1 {
        return Ok(2);
    }
    count_minimal(p, q)
}

pub fn nonminimal_class(n: u32, sign: Sign) -> Result<T2xIClass, SliceError> {
    if n == 0 {
        return Err(SliceError::BadParameters);
    }
    Ok(T2xIClass::NonMinimal { n, sign })
}

/// The three-layer splitting of a non-minimally twisting structure: a
/// minimally twisting outer factor from −p/q to −1 glued to some ξ_n^±.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMinimalDecomposition {
    pub outer_chain: Vec<Slope>,
    pub xi_n: u32,
    pub xi_sign: Sign,
}

pub fn decompose_nonminimal(
    p: i64,
    q: i64,
    n: u32,
    sign: Sign,
) -> Result<NonMinimalDecomposition, SliceError> {
    if n == 0 || !(p >= q && q >= 1) {
        return Err(SliceError::BadParameters);
    }
    let outer_chain = if p == q {
        vec![Slope::new(-1, 1).expect("-1 is a slope")]
    } else {
        let s1 = Slope::new(-p, q).map_err(SliceError::Farey)?;
        farey::shortest_path(s1, Slope::new(-1, 1).expect("-1 is a slope"))
    };
    Ok(NonMinimalDecomposition {
        outer_chain,
        xi_n: n,
        xi_sign: sign,
    })
}

/// Outcome of the gluing checker.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlueOutcome {
    Tight(MinimalDescriptor),
    Overtwisted,
}

fn neg2(a: IntegralVector) -> IntegralVector {
    IntegralVector { x: -a.x, y: -a.y }
}

fn as_euler(v: IntegralVector) -> EulerVector {
    EulerVector { x: v.x, y: v.y }
}

/// Merges two consecutive slices across a removable vertex, if the Euler
/// contributions are compatible.
///
/// The vertex b between a and c is removable when a and c are adjacent; the
/// triple is normalized so that representatives (w_a, w_a + w_c, w_c) map to
/// (1,0), (1,1), (0,1) under SL(2,ℤ), and the merge is allowed exactly when
/// (PD₁, PD₂) = (−w_c, w_a) or (w_c, −w_a).
fn try_merge(s1: &BasicSlice, s2: &BasicSlice) -> Option<BasicSlice> {
    debug_assert_eq!(s1.back, s2.front);
    if !farey::farey_adjacent(s1.front, s2.back) {
        return None;
    }
    let va = farey::primitive_vector(s1.front);
    let vc = farey::primitive_vector(s2.back);
    let wc = if farey::cross((va.x, va.y), (vc.x, vc.y)) == 1 {
        vc
    } else {
        neg2(vc)
    };
    debug_assert_eq!(farey::cross((va.x, va.y), (wc.x, wc.y)), 1);
    let (pd1, pd2) = (s1.euler(), s2.euler());
    let base = pd1 == as_euler(neg2(wc)) && pd2 == as_euler(va);
    let reversed = pd1 == as_euler(wc) && pd2 == as_euler(neg2(va));
    if !(base || reversed) {
        return None;
    }
    let merged = pd1.add(pd2);
    let dv = vec_diff(vc, va);
    let sign = if merged == dv {
        Sign::Pos
    } else if merged == -dv {
        Sign::Neg
    } else {
        return None;
    };
    Some(BasicSlice {
        front: s1.front,
        back: s2.back,
        sign,
    })
}

/// Gluing criterion: a monotone stack of basic slices is tight iff its chain is
/// the shortest sequence, or some sequence of removable-vertex merges with
/// compatible signs reduces it to the shortest sequence.
pub fn glue_check(f: &SliceFactorization) -> Result<GlueOutcome, SliceError> {
    let chain = f.chain();
    if chain.len() < 2 {
        return Err(SliceError::BadParameters);
    }
    let last = chain[chain.len() - 1];
    for w in chain.windows(2) {
        if w[0] == w[1] || !farey::between(w[1], w[0], last) {
            return Err(SliceError::NonMonotone);
        }
    }
    let shortest = farey::shortest_path(chain[0], last);

    let mut seen: HashSet<Vec<BasicSlice>> = HashSet::new();
    let mut stack = vec![f.slices.clone()];
    while let Some(state) = stack.pop() {
        if !seen.insert(state.clone()) {
            continue;
        }
        let state_chain: Vec<Slope> = {
            let mut c: Vec<Slope> = state.iter().map(|s| s.front).collect();
            c.push(state.last().expect("nonempty factorization").back);
            c
        };
        if state_chain == shortest {
            let fact = SliceFactorization { slices: state };
            return Ok(GlueOutcome::Tight(shuffle_normal_form(&fact)?));
        }
        for i in 0..state.len() - 1 {
            if let Some(merged) = try_merge(&state[i], &state[i + 1]) {
                let mut next = Vec::with_capacity(state.len() - 1);
                next.extend_from_slice(&state[..i]);
                next.push(merged);
                next.extend_from_slice(&state[i + 2..]);
                stack.push(next);
            }
        }
    }
    Ok(GlueOutcome::Overtwisted)
}

/// Splits one slice of a factorization at an intermediate adjacent slope.
/// With `compatible` the two halves merge back to the original sign; with
/// `!compatible` the split is sign-incompatible.
pub fn split_slice(
    f: &SliceFactorization,
    index: usize,
    compatible: bool,
) -> Result<SliceFactorization, SliceError> {
    let s = *f.slices.get(index).ok_or(SliceError::BadParameters)?;
    let mid = farey::mediant(s.front, s.back).map_err(SliceError::Farey)?;
    // Search the four sign pairs for ones merging back to s (or failing to).
    let mut pick = None;
    for &sa in &[Sign::Pos, Sign::Neg] {
        for &sb in &[Sign::Pos, Sign::Neg] {
            let h1 = BasicSlice::new(s.front, mid, sa)?;
            let h2 = BasicSlice::new(mid, s.back, sb)?;
            match try_merge(&h1, &h2) {
                Some(m) if compatible && m.sign == s.sign => pick = Some((h1, h2)),
                None if !compatible => pick = Some((h1, h2)),
                _ => {}
            }
        }
    }
    let (h1, h2) = pick.ok_or(SliceError::BadParameters)?;
    let mut slices = Vec::with_capacity(f.slices.len() + 1);
    slices.extend_from_slice(&f.slices[..index]);
    slices.push(h1);
    slices.push(h2);
    slices.extend_from_slice(&f.slices[index + 1..]);
    Ok(SliceFactorization { slices })
}

/// Twisting number of a Legendrian ruling computed from intersections with
/// the dividing set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TwistNumber {
    Value(i64),
    /// Ruling parallel to the dividing curves: twisting 0, non-minimal
    /// context.
    Parallel,
}

/// t(C, Fr) = −n·|C ∩ Γ|/2 for a ruling curve of the given slope on a torus
/// with 2n dividing curves of slope `dividing`.
pub fn twist_number(ruling: Slope, dividing: Slope, n: u32) -> Result<TwistNumber, SliceError> {
    if n < 1 {
        return Err(SliceError::BadParameters);
    }
    if ruling == dividing {
        return Ok(TwistNumber::Parallel);
    }
    let a = farey::primitive_vector(ruling);
    let b = farey::primitive_vector(dividing);
    let det = (a.x * b.y - a.y * b.x).abs();
    Ok(TwistNumber::Value(-(n as i64) * det))
}

/// Twist Number Lemma applicability: a bypass along a ruling of slope r on
/// the boundary of a standard neighborhood with twisting n ≤ 0 increases the
/// twisting iff 1/r ≥ n + 1.
pub fn twist_lemma_applicable(n: i64, r: Slope) -> Result<bool, SliceError> {
    if n > 0 {
        return Err(SliceError::BadParameters);
    }
    let (p, q) = (r.numer(), r.denom());
    // 1/r = q/p as an extended rational; 1/0 compares as +∞.
    Ok(if p == 0 {
        true
    } else if p > 0 {
        q >= (n + 1) * p
    } else {
        q <= (n + 1) * p
    })
}

/// New boundary slope after the Twist Number Lemma bypass.
pub fn new_neighborhood_slope(n: i64, r: Slope) -> Result<Slope, SliceError> {
    if n > 0 {
        return Err(SliceError::BadParameters);
    }
    let boundary = Slope::new(1, n).map_err(SliceError::Farey)?;
    farey::bypass_slope(boundary, r).map_err(SliceError::Farey)
}
