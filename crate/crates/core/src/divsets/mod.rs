//! Dividing-set combinatorics: torus dividing sets under bypass attachment,
//! edge-rounding index maps, disk chord diagrams, and annulus configurations
//! with holonomy (in `annulus`).

mod annulus;

pub use annulus::{
    count_nonrotative, disk_equivalent, dual_set, enumerate_c0, enumerate_nonrotative, glue,
    holonomy, in_c0, nonrotative_census, reflexive_census, reflexive_check, AnnulusConfig, Arc,
    ArcRow, ConfigSet, End, NonrotativeCensus, OrbitClass, Side,
};

use crate::farey::{self, FareyError, Slope};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DivsetError {
    /// Bypass along a Legendrian divide (ruling slope = dividing slope) is
    /// not modeled.
    ParallelBypass,
    /// Division number must be at least 1.
    ZeroDivision,
    /// Marking counts of the glued boundary circles differ.
    MarkingMismatch,
    /// A configuration violated its invariants.
    InvalidConfig,
    /// Holonomy window too small: candidates found at the window boundary.
    WindowSaturated,
    Farey(FareyError),
}

impl fmt::Display for DivsetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivsetError::ParallelBypass => write!(f, "bypass slope equals dividing slope"),
            DivsetError::ZeroDivision => write!(f, "division number must be >= 1"),
            DivsetError::MarkingMismatch => write!(f, "boundary marking counts differ"),
            DivsetError::InvalidConfig => write!(f, "invalid annulus configuration"),
            DivsetError::WindowSaturated => {
                write!(f, "holonomy window too small (boundary saturated)")
            }
            DivsetError::Farey(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for DivsetError {}

impl From<FareyError> for DivsetError {
    fn from(e: FareyError) -> Self {
        DivsetError::Farey(e)
    }
}

/// Dividing set of a convex torus: 2n parallel essential curves of one slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDividingSet {
    pub n: u32,
    pub slope: Slope,
}

impl TorusDividingSet {
    pub fn new(n: u32, slope: Slope) -> Result<TorusDividingSet, DivsetError> {
        if n < 1 {
            return Err(DivsetError::ZeroDivision);
        }
        Ok(TorusDividingSet { n, slope })
    }
}

/// Bypass attachment along a ruling of slope r: with more than two dividing
/// curves the count drops by two; with exactly two the slope hops one Farey
/// edge toward r.
pub fn attach_bypass(ds: &TorusDividingSet, r: Slope) -> Result<TorusDividingSet, DivsetError> {
    if r == ds.slope {
        return Err(DivsetError::ParallelBypass);
    }
    if ds.n > 1 {
        Ok(TorusDividingSet {
            n: ds.n - 1,
            slope: ds.slope,
        })
    } else {
        Ok(TorusDividingSet {
            n: 1,
            slope: farey::bypass_slope(ds.slope, r)?,
        })
    }
}

/// An exact position k/2n − 1/4n (mod 1) in the edge-rounding index map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundedPosition {
    pub source: u32,
    /// Reduced fraction in [0, 1).
    pub num: i64,
    pub den: i64,
}

/// Edge-rounding: the dividing curve at z = k/2n on one surface connects to
/// z = k/2n − 1/4n on the other, k = 0,…,2n−1.
pub fn edge_round(n: u32) -> Result<Vec<RoundedPosition>, DivsetError> {
    if n < 1 {
        return Err(DivsetError::ZeroDivision);
    }
    let den = 4 * n as i64;
    Ok((0..2 * n)
        .map(|k| {
            let num = (2 * k as i64 - 1).rem_euclid(den);
            let g = gcd(num, den);
            RoundedPosition {
                source: k,
                num: num / g.max(1),
                den: den / g.max(1),
            }
        })
        .collect())
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

/// Dividing set of a convex disk with t(∂D) = −t: a non-crossing perfect
/// matching of 2t boundary points by arcs (no closed components by Giroux's
/// criterion).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiskConfig {
    t: u32,
    /// Arcs (i, j), i < j, pairwise non-crossing.
    arcs: Vec<(u32, u32)>,
}

impl DiskConfig {
    pub fn new(t: u32, mut arcs: Vec<(u32, u32)>) -> Result<DiskConfig, DivsetError> {
        arcs.iter_mut().for_each(|a| {
            if a.0 > a.1 {
                *a = (a.1, a.0);
            }
        });
        arcs.sort_unstable();
        let n = 2 * t as usize;
        let mut used = vec![false; n];
        for &(i, j) in &arcs {
            if i == j || (j as usize) >= n || used[i as usize] || used[j as usize] {
                return Err(DivsetError::InvalidConfig);
            }
            used[i as usize] = true;
            used[j as usize] = true;
        }
        if used.iter().any(|u| !u) {
            return Err(DivsetError::InvalidConfig);
        }
        for &(i, j) in &arcs {
            for &(k, l) in &arcs {
                if (i, j) < (k, l) && i < k && k < j && j < l {
                    return Err(DivsetError::InvalidConfig);
                }
            }
        }
        Ok(DiskConfig { t, arcs })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    /// Arcs cutting off a half-disk containing no other endpoints.
    pub fn boundary_parallel_arcs(&self) -> Vec<(u32, u32)> {
        let n = 2 * self.t;
        self.arcs
            .iter()
            .copied()
            .filter(|&(i, j)| j == i + 1 || (i == 0 && j == n - 1))
            .collect()
    }
}

fn enumerate_matchings(points: &[u32], out: &mut Vec<Vec<(u32, u32)>>, acc: &mut Vec<(u32, u32)>) {
    if points.is_empty() {
        out.push(acc.clone());
        return;
    }
    let first = points[0];
    for k in (1..points.len()).step_by(2) {
        let partner = points[k];
        acc.push((first, partner));
        let inside: Vec<u32> = points[1..k].to_vec();
        let outside: Vec<u32> = points[k + 1..].to_vec();
        // Non-crossing: the inside and outside of the chord match separately.
        let mut inner_out = Vec::new();
        enumerate_matchings(&inside, &mut inner_out, &mut Vec::new());
        for inner in inner_out {
            let extra = acc.len();
            acc.extend(inner);
            enumerate_matchings(&outside, out, acc);
            acc.truncate(extra);
        }
        acc.pop();
    }
}

/// All dividing sets of a convex disk with t(∂D) = −t; there are Catalan(t).
pub fn enumerate_disk(t: u32) -> Result<Vec<DiskConfig>, DivsetError> {
    if t < 1 {
        return Err(DivsetError::ZeroDivision);
    }
    let points: Vec<u32> = (0..2 * t).collect();
    let mut raw = Vec::new();
    enumerate_matchings(&points, &mut raw, &mut Vec::new());
    let mut out: Vec<DiskConfig> = raw
        .into_iter()
        .map(|arcs| DiskConfig::new(t, arcs).expect("enumeration yields valid configs"))
        .collect();
    out.sort_by(|a, b| a.arcs.cmp(&b.arcs));
    out.dedup();
    Ok(out)
}
