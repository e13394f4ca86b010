//! Negative continued fractions −p/q = r₀ − 1/(r₁ − 1/(… − 1/r_k)) with all
//! rᵢ ≤ −2, and the decrement/collapse dynamics that drive the basic-slice
//! factorization of T²×I and every counting formula in this crate.

use crate::farey::Slope;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfError {
    /// Requires p > q ≥ 1; slope −1 has no negative continued fraction.
    OutOfRange,
    NotCoprime,
    /// A coefficient was > −2.
    BadCoefficient,
    Overflow,
}

impl fmt::Display for CfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CfError::OutOfRange => write!(f, "requires p > q >= 1"),
            CfError::NotCoprime => write!(f, "p and q must be coprime"),
            CfError::BadCoefficient => write!(f, "coefficients must be <= -2"),
            CfError::Overflow => write!(f, "integer overflow evaluating continued fraction"),
        }
    }
}

impl std::error::Error for CfError {}

/// The negative continued fraction expansion of a rational −p/q < −1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NegContFrac {
    coeffs: Vec<i64>,
}

/// Result of one decrement step: either a shorter expansion or the slope −1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CfStep {
    Next(NegContFrac),
    Terminal,
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

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b) + if a.rem_euclid(b) != 0 { 1 } else { 0 }
}

/// Expansion of −p/q for p > q ≥ 1 coprime; every coefficient is ≤ −2.
pub fn to_cf(p: i64, q: i64) -> Result<NegContFrac, CfError> {
    if !(p > q && q >= 1) {
        return Err(CfError::OutOfRange);
    }
    if gcd(p, q) != 1 {
        return Err(CfError::NotCoprime);
    }
    let mut coeffs = Vec::new();
    let (mut p, mut q) = (p, q);
    loop {
        let c = ceil_div(p, q);
        coeffs.push(-c);
        let m = c * q - p; // 0 <= m < q
        if m == 0 {
            debug_assert_eq!(q, 1);
            break;
        }
        p = q;
        q = m;
    }
    Ok(NegContFrac { coeffs })
}

impl NegContFrac {
    /// Validates user-supplied coefficients (nonempty, all ≤ −2).
    pub fn new(coeffs: Vec<i64>) -> Result<NegContFrac, CfError> {
        if coeffs.is_empty() || coeffs.iter().any(|&r| r > -2) {
            return Err(CfError::BadCoefficient);
        }
        Ok(NegContFrac { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Evaluates the expansion bottom-up to the exact rational −p/q.
pub fn from_cf(cf: &NegContFrac) -> Result<Slope, CfError> {
    // r - 1/(n/d) = (r*n - d)/n, evaluated from the innermost term out.
    let (mut n, mut d): (i128, i128) = (1, 0);
    for &r in cf.coeffs.iter().rev() {
        let (nn, dd) = ((r as i128) * n - d, n);
        n = nn;
        d = dd;
        if n.abs() > i64::MAX as i128 || d.abs() > i64::MAX as i128 {
            return Err(CfError::Overflow);
        }
    }
    // n/d = r0 - 1/(...) = -p/q.
    Slope::new(n as i64, d as i64).map_err(|_| CfError::Overflow)
}

/// Increments the last coefficient and collapses trailing −1 entries:
/// (r₀,…,r_{k−1}, −1) ∼ (r₀,…,r_{k−1}+1).  An empty result means the
/// sequence of boundary slopes has reached −1.
pub fn cf_step(cf: &NegContFrac) -> CfStep {
    let mut coeffs = cf.coeffs.clone();
    *coeffs.last_mut().expect("NegContFrac is nonempty") += 1;
    while coeffs.last() == Some(&-1) {
        coeffs.pop();
        if let Some(last) = coeffs.last_mut() {
            *last += 1;
        }
    }
    if coeffs.is_empty() {
        CfStep::Terminal
    } else {
        CfStep::Next(NegContFrac { coeffs })
    }
}

/// Boundary slopes of the basic-slice factorization, in order from −p/q to
/// −1, obtained by decreasing the last entry of the expansion.  Agrees with
/// the shortest Farey path.
pub fn path_via_cf(p: i64, q: i64) -> Result<Vec<Slope>, CfError> {
    if p == q && q == 1 {
        return Ok(vec![Slope::new(-1, 1).expect("-1 is a slope")]);
    }
    let mut cf = to_cf(p, q)?;
    let mut path = vec![from_cf(&cf)?];
    loop {
        match cf_step(&cf) {
            CfStep::Next(next) => {
                path.push(from_cf(&next)?);
                cf = next;
            }
            CfStep::Terminal => {
                path.push(Slope::new(-1, 1).expect("-1 is a slope"));
                return Ok(path);
            }
        }
    }
}

/// Sizes of the continued-fraction blocks of basic slices.
///
/// Block j < k holds |r_j + 2| slices and block k holds |r_k + 1|; the number
/// of sign descriptors is Π (size_j + 1) = |(r₀+1)⋯(r_{k−1}+1)·r_k|.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockShape {
    pub sizes: Vec<u32>,
}

impl BlockShape {
    /// Π (size_j + 1), the number of sign descriptors, equal to
    /// |(r₀+1)⋯(r_{k−1}+1)·r_k|.
    pub fn descriptor_count(&self) -> u128 {
        self.sizes.iter().map(|&b| (b as u128) + 1).product()
    }

    pub fn total_slices(&self) -> u32 {
        self.sizes.iter().sum()
    }
}

pub fn block_shape(cf: &NegContFrac) -> BlockShape {
    let k = cf.coeffs.len() - 1;
    let sizes = cf
        .coeffs
        .iter()
        .enumerate()
        .map(|(j, &r)| {
            let b = if j < k { -(r + 2) } else { -(r + 1) };
            b as u32
        })
        .collect();
    BlockShape { sizes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{self, Slope};

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn to_cf_examples() {
        assert_eq!(to_cf(7, 1).unwrap().coeffs(), &[-7]);
        assert_eq!(to_cf(10, 3).unwrap().coeffs(), &[-4, -2, -2]);
        assert_eq!(to_cf(2, 1).unwrap().coeffs(), &[-2]);
        assert!(to_cf(1, 1).is_err());
        assert!(to_cf(4, 2).is_err());
        assert!(to_cf(3, 4).is_err());
    }

    #[test]
    fn from_cf_examples() {
        assert_eq!(
            from_cf(&NegContFrac::new(vec![-2]).unwrap()).unwrap(),
            s(-2, 1)
        );
        assert_eq!(
            from_cf(&NegContFrac::new(vec![-4, -2, -2]).unwrap()).unwrap(),
            s(-10, 3)
        );
        // n twos give -(n+1)/n.
        for n in 1..20 {
            let cf = NegContFrac::new(vec![-2; n]).unwrap();
            assert_eq!(from_cf(&cf).unwrap(), s(-(n as i64 + 1), n as i64));
        }
    }

    #[test]
    fn round_trips() {
        for p in 2..=500i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let cf = to_cf(p, q).unwrap();
                assert!(cf.coeffs().iter().all(|&r| r <= -2));
                assert_eq!(from_cf(&cf).unwrap(), s(-p, q), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn cf_step_examples() {
        let cf = NegContFrac::new(vec![-4, -2, -2]).unwrap();
        assert_eq!(
            cf_step(&cf),
            CfStep::Next(NegContFrac::new(vec![-3]).unwrap())
        );
        let cf = NegContFrac::new(vec![-3]).unwrap();
        assert_eq!(
            cf_step(&cf),
            CfStep::Next(NegContFrac::new(vec![-2]).unwrap())
        );
        let cf = NegContFrac::new(vec![-2]).unwrap();
        assert_eq!(cf_step(&cf), CfStep::Terminal);
    }

    #[test]
    fn path_examples() {
        assert_eq!(
            path_via_cf(10, 3).unwrap(),
            vec![s(-10, 3), s(-3, 1), s(-2, 1), s(-1, 1)]
        );
        assert_eq!(path_via_cf(1, 1).unwrap(), vec![s(-1, 1)]);
        assert_eq!(
            path_via_cf(7, 5).unwrap(),
            farey::shortest_path(s(-7, 5), s(-1, 1))
        );
    }

    #[test]
    fn path_matches_farey_and_peeling_arithmetic() {
        for p in 2..=60i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let path = path_via_cf(p, q).unwrap();
                assert_eq!(path, farey::shortest_path(s(-p, q), s(-1, 1)));
                for w in path.windows(2) {
                    let (pp, qq) = (-w[0].numer(), w[0].denom());
                    let (pn, qn) = (-w[1].numer(), w[1].denom());
                    assert_eq!(pp * qn - qq * pn, 1);
                    assert!(pp > pn && pn > 0);
                    assert!(qq >= qn && qn > 0);
                }
            }
        }
    }

    #[test]
    fn block_shapes() {
        let cf = NegContFrac::new(vec![-4, -2, -2]).unwrap();
        let shape = block_shape(&cf);
        assert_eq!(shape.sizes, vec![2, 0, 1]);
        assert_eq!(shape.descriptor_count(), 6);

        let cf = NegContFrac::new(vec![-7]).unwrap();
        assert_eq!(block_shape(&cf).sizes, vec![6]);
        assert_eq!(block_shape(&cf).descriptor_count(), 7);

        let cf = NegContFrac::new(vec![-2]).unwrap();
        assert_eq!(block_shape(&cf).sizes, vec![1]);
    }

    #[test]
    fn block_sizes_sum_to_path_length() {
        for p in 2..=80i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let cf = to_cf(p, q).unwrap();
                let shape = block_shape(&cf);
                let path = path_via_cf(p, q).unwrap();
                assert_eq!(shape.total_slices() as usize, path.len() - 1);
                // Product identity |(r0+1)...(r_{k-1}+1) r_k| = Π (b_j + 1).
                let k = cf.coeffs().len() - 1;
                let prod: i128 = cf
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, &r)| if j < k { (r + 1) as i128 } else { r as i128 })
                    .product();
                assert_eq!(prod.unsigned_abs(), shape.descriptor_count());
            }
        }
    }
}
