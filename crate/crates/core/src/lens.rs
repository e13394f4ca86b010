//! Classification data for lens spaces L(p,q) and solid tori.
//!
//! A lens space splits into two solid tori; thickening the core of one and
//! factoring the complement reduces the count to the solid torus at the dual
//! slope −p′/q′, whose continued fraction is the decrement successor of
//! CF(−p/q).  Descriptors are relabeled as the rotation numbers of the
//! surgery link, and the meridional-disk rotation number distinguishes solid
//! torus structures.

use crate::contfrac::{self, NegContFrac};
use crate::farey::Slope;
use crate::slices::{self, MinimalDescriptor, SliceError};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LensError {
    /// L(p,q) requires p > q > 0 coprime.
    BadLensParameters,
    /// Solid torus boundary requires p ≥ q > 0 coprime.
    BadSolidParameters,
    /// Descriptor does not match the expected continued fraction.
    DescriptorMismatch,
    Slice(SliceError),
}

impl fmt::Display for LensError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LensError::BadLensParameters => write!(f, "lens space requires p > q > 0 coprime"),
            LensError::BadSolidParameters => write!(f, "solid torus requires p >= q > 0 coprime"),
            LensError::DescriptorMismatch => write!(f, "descriptor over the wrong expansion"),
            LensError::Slice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for LensError {}

impl From<SliceError> for LensError {
    fn from(e: SliceError) -> Self {
        LensError::Slice(e)
    }
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

/// The lens space L(p,q), p > q > 0, gcd(p,q) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<LensSpace, LensError> {
        if p > q && q > 0 && gcd(p, q) == 1 {
            Ok(LensSpace { p, q })
        } else {
            Err(LensError::BadLensParameters)
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn cf(&self) -> NegContFrac {
        contfrac::to_cf(self.p, self.q).expect("lens parameters are validated")
    }
}

/// Rotation numbers r(γ₀),…,r(γ_k) of the surgery link; slot i ranges over
/// {rᵢ+2, rᵢ+4, …, rᵢ+2|rᵢ+1|}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensDescriptor {
    pub rotations: Vec<i64>,
}

/// A tight structure on the solid torus with boundary slope −p/q: the
/// shuffle normal form of its T²×I factor plus the rotation number of the
/// meridional disk.  `descriptor` is `None` only for slope −1, where the
/// standard neighborhood is the whole story.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolidTorusDescriptor {
    pub descriptor: Option<MinimalDescriptor>,
    pub meridian_rot: i64,
}

/// The dual slope: the unique (p′, q′) with pq′ − qp′ = 1, p > p′ > 0,
/// q ≥ q′ > 0.  CF(−p′/q′) is the decrement successor of CF(−p/q).
pub fn dual_slope(p: i64, q: i64) -> Result<(i64, i64), LensError> {
    if !(p > q && q > 0 && gcd(p, q) == 1) {
        return Err(LensError::BadLensParameters);
    }
    // q' solves q·q' ≡ ... via p q' ≡ 1 (mod q): take q' = p^{-1} mod q in
    // (0, q], then p' = (p q' - 1)/q.
    let qp = mod_inverse(p, q);
    let qp = if qp == 0 { q } else { qp }; // q = 1 forces q' = 1
    let pp = (p * qp - 1) / q;
    debug_assert_eq!(p * qp - q * pp, 1);
    debug_assert!(p > pp && pp > 0, "p'={pp}");
    debug_assert!(q >= qp && qp > 0, "q'={qp}");
    Ok((pp, qp))
}

fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let (mut t, mut newt) = (0i64, 1i64);
    let (mut r, mut newr) = (m, a.rem_euclid(m));
    while newr != 0 {
        let quot = r / newr;
        (t, newt) = (newt, t - quot * newt);
        (r, newr) = (newr, r - quot * newr);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(m)
}

/// Number of tight structures on L(p,q): |(r₀+1)(r₁+1)⋯(r_k+1)|.
pub fn count_lens(l: &LensSpace) -> u128 {
    l.cf()
        .coeffs()
        .iter()
        .map(|&r| (r + 1).unsigned_abs() as u128)
        .product()
}

/// Number of tight structures on the solid torus with boundary slope −p/q
/// and two dividing curves: |(r₀+1)⋯(r_{k−1}+1)·r_k|, or 1 at slope −1.
pub fn count_solid_torus(p: i64, q: i64) -> Result<u128, LensError> {
    if !(p >= q && q > 0 && gcd(p, q) == 1) {
        return Err(LensError::BadSolidParameters);
    }
    if p == q {
        return Ok(1);
    }
    Ok(slices::count_minimal(p, q)?)
}

/// Rotation number of the meridional disk: the pairing of the total Euler
/// vector with the meridian class.  Injective over the enumeration for a
/// fixed boundary slope.
pub fn meridian_rotation(d: &MinimalDescriptor) -> Result<i64, LensError> {
    let e = slices::descriptor_euler(d)?;
    let meridian = Slope::new(0, 1).expect("0 is a slope");
    Ok(slices::pairing(e, meridian))
}

/// All tight structures on the solid torus with boundary slope −p/q.
pub fn enumerate_solid_torus(p: i64, q: i64) -> Result<Vec<SolidTorusDescriptor>, LensError> {
    if !(p >= q && q > 0 && gcd(p, q) == 1) {
        return Err(LensError::BadSolidParameters);
    }
    if p == q {
        return Ok(vec![SolidTorusDescriptor {
            descriptor: None,
            meridian_rot: 0,
        }]);
    }
    slices::enumerate_minimal(p, q)?
        .into_iter()
        .map(|d| {
            let rot = meridian_rotation(&d)?;
            Ok(SolidTorusDescriptor {
                descriptor: Some(d),
                meridian_rot: rot,
            })
        })
        .collect()
}

/// Relabels a solid-torus descriptor over CF(−p′/q′) as the rotation-number
/// tuple of the lens surgery link: r(γⱼ) = rⱼ + 2 + 2cⱼ, with collapsed
/// trailing slots pinned at their unique value rⱼ + 2 = 0.
pub fn lens_from_solid(
    l: &LensSpace,
    d: &SolidTorusDescriptor,
) -> Result<LensDescriptor, LensError> {
    let cf = l.cf();
    let (pp, qp) = dual_slope(l.p, l.q)?;
    let counts: Vec<u32> = match &d.descriptor {
        None => {
            if (pp, qp) != (1, 1) {
                return Err(LensError::DescriptorMismatch);
            }
            Vec::new()
        }
        Some(md) => {
            let expected = contfrac::to_cf(pp, qp).map_err(SliceError::Cf)?;
            if md.cf != expected {
                return Err(LensError::DescriptorMismatch);
            }
            md.counts.clone()
        }
    };
    let rotations = cf
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let c = counts.get(i).copied().unwrap_or(0) as i64;
            r + 2 + 2 * c
        })
        .collect();
    Ok(LensDescriptor { rotations })
}

/// All tight structures on L(p,q) as rotation-number tuples, enumerated
/// through the solid torus at the dual slope.
pub fn enumerate_lens(l: &LensSpace) -> Result<Vec<LensDescriptor>, LensError> {
    let (pp, qp) = dual_slope(l.p, l.q)?;
    enumerate_solid_torus(pp, qp)?
        .iter()
        .map(|d| lens_from_solid(l, d))
        .collect()
}

/// Lens spaces carry two universally tight structures unless q = p − 1, where the
/// two coincide.
pub fn universally_tight_count_lens(l: &LensSpace) -> u128 {
    if l.q == l.p - 1 {
        1
    } else {
        2
    }
}

/// The solid torus carries two universally tight structures with
/// boundary slope −p/q < −1; one when the slope is −1.
pub fn universally_tight_count_solid(p: i64, q: i64) -> Result<u128, LensError> {
    if !(p >= q && q > 0 && gcd(p, q) == 1) {
        return Err(LensError::BadSolidParameters);
    }
    Ok(if p == q { 1 } else { 2 })
}

/// The Heegaard gluing matrix A₀ = ((−q, q′), (p, −p′)), exposed for
/// documentation and diagrams only; counting goes through `dual_slope`.
pub fn heegaard_matrix(l: &LensSpace) -> Result<[[i64; 2]; 2], LensError> {
    let (pp, qp) = dual_slope(l.p, l.q)?;
    Ok([[-l.q, qp], [l.p, -pp]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_slopes() {
        assert_eq!(dual_slope(10, 3).unwrap(), (3, 1));
        for p in 2..=40 {
            assert_eq!(dual_slope(p, 1).unwrap(), (p - 1, 1));
        }
        assert_eq!(dual_slope(7, 5).unwrap(), (4, 3)); // 7·3 − 5·4 = 1
                                                       // Exhaustive check of the defining inequalities.
        for p in 2..=60i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let (pp, qp) = dual_slope(p, q).unwrap();
                let brute = (1..p)
                    .flat_map(|a| (1..=q).map(move |b| (a, b)))
                    .filter(|&(a, b)| p * b - q * a == 1)
                    .collect::<Vec<_>>();
                assert_eq!(brute, vec![(pp, qp)], "p/q = {p}/{q}");
            }
        }
    }

    #[test]
    fn dual_cf_is_decrement_successor() {
        for p in 2..=60i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let (pp, qp) = dual_slope(p, q).unwrap();
                let stepped = match contfrac::cf_step(&contfrac::to_cf(p, q).unwrap()) {
                    contfrac::CfStep::Next(cf) => Some(cf),
                    contfrac::CfStep::Terminal => None,
                };
                match stepped {
                    Some(cf) => assert_eq!(
                        contfrac::from_cf(&cf).unwrap(),
                        Slope::new(-pp, qp).unwrap()
                    ),
                    None => assert_eq!((pp, qp), (1, 1)),
                }
            }
        }
    }

    #[test]
    fn lens_counts() {
        assert_eq!(count_lens(&LensSpace::new(10, 3).unwrap()), 3);
        assert_eq!(count_lens(&LensSpace::new(2, 1).unwrap()), 1);
        for p in 2..=50 {
            assert_eq!(count_lens(&LensSpace::new(p, 1).unwrap()), (p - 1) as u128);
        }
    }

    #[test]
    fn solid_torus_counts() {
        assert_eq!(count_solid_torus(1, 1).unwrap(), 1);
        assert_eq!(count_solid_torus(10, 3).unwrap(), 6);
        for p in 2..=40i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                assert_eq!(
                    count_solid_torus(p, q).unwrap(),
                    slices::count_minimal(p, q).unwrap()
                );
            }
        }
    }

    #[test]
    fn lens_equals_solid_at_dual() {
        for p in 2..=100i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let l = LensSpace::new(p, q).unwrap();
                let (pp, qp) = dual_slope(p, q).unwrap();
                assert_eq!(count_lens(&l), count_solid_torus(pp, qp).unwrap());
            }
        }
    }

    #[test]
    fn meridian_rotation_distinguishes() {
        let descs = enumerate_solid_torus(2, 1).unwrap();
        assert_eq!(descs.len(), 2);
        assert_ne!(descs[0].meridian_rot, descs[1].meridian_rot);
        assert_eq!(descs[0].meridian_rot, -descs[1].meridian_rot);
        for p in 2..=25i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let descs = enumerate_solid_torus(p, q).unwrap();
                let rots: std::collections::HashSet<i64> =
                    descs.iter().map(|d| d.meridian_rot).collect();
                assert_eq!(rots.len(), descs.len(), "p/q = {p}/{q}");
            }
        }
    }

    #[test]
    fn lens_enumeration_matches_count_and_slots() {
        for p in 2..=40i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let l = LensSpace::new(p, q).unwrap();
                let descs = enumerate_lens(&l).unwrap();
                assert_eq!(descs.len() as u128, count_lens(&l), "L({p},{q})");
                let set: std::collections::HashSet<_> = descs.iter().collect();
                assert_eq!(set.len(), descs.len());
                // Every slot value is admissible and has the parity of r_i.
                let cf = l.cf();
                for d in &descs {
                    assert_eq!(d.rotations.len(), cf.coeffs().len());
                    for (&rot, &r) in d.rotations.iter().zip(cf.coeffs()) {
                        assert!(rot >= r + 2 && rot <= r + 2 * (r + 1).abs());
                        assert_eq!((rot - r).rem_euclid(2), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn lens_from_solid_extremes() {
        let l = LensSpace::new(10, 3).unwrap();
        let solids = enumerate_solid_torus(3, 1).unwrap();
        assert_eq!(solids.len(), 3);
        let rotations: Vec<_> = solids
            .iter()
            .map(|d| lens_from_solid(&l, d).unwrap().rotations)
            .collect();
        // c = 0 gives the all-(r+2) tuple.
        assert!(rotations.contains(&vec![-2, 0, 0]));
        assert!(rotations.contains(&vec![0, 0, 0]));
        assert!(rotations.contains(&vec![2, 0, 0]));
    }

    #[test]
    fn universal_tightness_counts() {
        assert_eq!(
            universally_tight_count_lens(&LensSpace::new(10, 3).unwrap()),
            2
        );
        for p in 3..=40 {
            assert_eq!(
                universally_tight_count_lens(&LensSpace::new(p, p - 1).unwrap()),
                1
            );
        }
        assert_eq!(universally_tight_count_solid(1, 1).unwrap(), 1);
        assert_eq!(universally_tight_count_solid(10, 3).unwrap(), 2);
    }

    #[test]
    fn universally_tight_lens_descriptors_are_extremal() {
        for p in 2..=25i64 {
            for q in 1..p {
                if gcd(p, q) != 1 {
                    continue;
                }
                let l = LensSpace::new(p, q).unwrap();
                let cf = l.cf();
                let ut_tuples: Vec<Vec<i64>> =
                    enumerate_solid_torus(dual_slope(p, q).unwrap().0, dual_slope(p, q).unwrap().1)
                        .unwrap()
                        .iter()
                        .filter(|d| {
                            d.descriptor
                                .as_ref()
                                .is_none_or(slices::is_universally_tight)
                        })
                        .map(|d| lens_from_solid(&l, d).unwrap().rotations)
                        .collect();
                let min_tuple: Vec<i64> = cf.coeffs().iter().map(|&r| r + 2).collect();
                let max_tuple: Vec<i64> =
                    cf.coeffs().iter().map(|&r| r + 2 * (r + 1).abs()).collect();
                assert!(ut_tuples.contains(&min_tuple));
                assert!(ut_tuples.contains(&max_tuple));
                assert_eq!(
                    ut_tuples.len() as u128,
                    universally_tight_count_lens(&l),
                    "L({p},{q})"
                );
            }
        }
    }

    #[test]
    fn heegaard_matrix_shape() {
        let l = LensSpace::new(10, 3).unwrap();
        let a0 = heegaard_matrix(&l).unwrap();
        assert_eq!(a0, [[-3, 1], [10, -3]]);
        // Determinant −(qp' − pq')·... : always in −1·SL(2,Z).
        assert_eq!(a0[0][0] * a0[1][1] - a0[0][1] * a0[1][0], -1);
    }
}
