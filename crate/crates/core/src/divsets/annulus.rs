//! Arc configurations on an annulus with marked boundary points: the
//! combinatorial residue of nonrotative T²×I layers.
//!
//! A configuration is a non-crossing perfect matching of the 2n₀ inner and
//! 2n₁ outer markings by embedded arcs, each arc recorded together with the
//! winding of its canonical lift to the universal cover (an infinite strip).
//! Gluing concatenates arcs across a shared boundary circle and counts the
//! closed components it produces, split by winding: homotopically trivial
//! closed curves are the overtwisted signal, essential ones add π-twisting.

use super::DivsetError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exact position on the circle ℝ/ℤ lifted to ℝ, as a reduced fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    fn new(num: i64, den: i64) -> Frac {
        debug_assert!(den > 0);
        let g = gcd(num, den).max(1);
        Frac {
            num: num / g,
            den: den / g,
        }
    }

    fn add(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    fn sub(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den - o.num * self.den, self.den * o.den)
    }

    fn add_int(self, k: i64) -> Frac {
        Frac {
            num: self.num + k * self.den,
            den: self.den,
        }
    }

    fn as_integer(self) -> Option<i64> {
        (self.den == 1).then_some(self.num)
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Which boundary circle of the annulus a marking lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Inner,
    Outer,
}

/// A marked boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct End {
    pub side: Side,
    pub idx: u32,
}

/// Flat arc representation ((side, idx), (side, idx), wind) with sides
/// encoded 0 = inner, 1 = outer.
pub type ArcRow = ((u8, u32), (u8, u32), i64);

impl End {
    pub fn new(side: Side, idx: u32) -> End {
        End { side, idx }
    }
}

/// An embedded arc between two markings, with the winding of its canonical
/// lift: the lift runs from `a` at its base position to `b` at position
/// pos(b) + wind full turns.  `a` is the endpoint with the smaller (side,
/// idx) key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub a: End,
    pub b: End,
    pub wind: i64,
}

impl Arc {
    pub fn new(a: End, b: End, wind: i64) -> Arc {
        if a <= b {
            Arc { a, b, wind }
        } else {
            Arc {
                a: b,
                b: a,
                wind: -wind,
            }
        }
    }

    pub fn is_crossing(&self) -> bool {
        self.a.side != self.b.side
    }

    fn kind_key(&self) -> (Side, Side) {
        (self.a.side, self.b.side)
    }
}

/// A dividing-set configuration on the annulus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AnnulusConfig {
    n_inner: u32,
    n_outer: u32,
    arcs: Vec<Arc>,
    essential_closed: u32,
}

impl AnnulusConfig {
    /// Builds and validates a configuration: every marking is an endpoint of
    /// exactly one arc and the lifted arc system is embedded.
    pub fn new(
        n_inner: u32,
        n_outer: u32,
        arcs: Vec<Arc>,
        essential_closed: u32,
    ) -> Result<AnnulusConfig, DivsetError> {
        if n_inner < 1 || n_outer < 1 {
            return Err(DivsetError::ZeroDivision);
        }
        let mut cfg = AnnulusConfig {
            n_inner,
            n_outer,
            arcs,
            essential_closed,
        };
        cfg.arcs.sort_unstable();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn n_inner(&self) -> u32 {
        self.n_inner
    }

    pub fn n_outer(&self) -> u32 {
        self.n_outer
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn essential_closed(&self) -> u32 {
        self.essential_closed
    }

    fn markings(&self, side: Side) -> u32 {
        match side {
            Side::Inner => 2 * self.n_inner,
            Side::Outer => 2 * self.n_outer,
        }
    }

    fn pos(&self, e: End) -> Frac {
        Frac::new(e.idx as i64, self.markings(e.side) as i64)
    }

    fn validate(&self) -> Result<(), DivsetError> {
        let mut used_inner = vec![false; 2 * self.n_inner as usize];
        let mut used_outer = vec![false; 2 * self.n_outer as usize];
        for arc in &self.arcs {
            for e in [arc.a, arc.b] {
                let used = match e.side {
                    Side::Inner => &mut used_inner,
                    Side::Outer => &mut used_outer,
                };
                let slot = used
                    .get_mut(e.idx as usize)
                    .ok_or(DivsetError::InvalidConfig)?;
                if *slot {
                    return Err(DivsetError::InvalidConfig);
                }
                *slot = true;
            }
        }
        if used_inner.iter().chain(used_outer.iter()).any(|u| !u) {
            return Err(DivsetError::InvalidConfig);
        }
        if self.has_crossing_pair() {
            return Err(DivsetError::InvalidConfig);
        }
        Ok(())
    }

    /// Boundary key on the strip-as-disk: inner line left-to-right, then the
    /// outer line right-to-left.
    fn chord(&self, arc: &Arc, shift: i64) -> ((u8, Frac), (u8, Frac)) {
        let key = |e: End, x: Frac| match e.side {
            Side::Inner => (0u8, x),
            Side::Outer => (
                1u8,
                Frac {
                    num: -x.num,
                    den: x.den,
                },
            ),
        };
        let xa = self.pos(arc.a).add_int(shift);
        let xb = self.pos(arc.b).add_int(arc.wind + shift);
        let (k1, k2) = (key(arc.a, xa), key(arc.b, xb));
        if k1 <= k2 {
            (k1, k2)
        } else {
            (k2, k1)
        }
    }

    fn has_crossing_pair(&self) -> bool {
        let interleave = |c: ((u8, Frac), (u8, Frac)), d: ((u8, Frac), (u8, Frac))| {
            (c.0 < d.0 && d.0 < c.1 && c.1 < d.1) || (d.0 < c.0 && c.0 < d.1 && d.1 < c.1)
        };
        for (i, x) in self.arcs.iter().enumerate() {
            for (j, y) in self.arcs.iter().enumerate() {
                if j < i {
                    continue;
                }
                let span = x.wind.abs() + y.wind.abs() + 2;
                for k in -span..=span {
                    if i == j && k <= 0 {
                        continue;
                    }
                    if interleave(self.chord(x, 0), self.chord(y, k)) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Arcs whose two endpoints are consecutive markings on one circle with
    /// nothing between them: each cuts off a bypass half-disk.
    pub fn boundary_parallel_arcs(&self) -> Vec<Arc> {
        self.arcs
            .iter()
            .copied()
            .filter(|arc| {
                if arc.is_crossing() {
                    return false;
                }
                let m = self.markings(arc.a.side) as i64;
                let span = arc.b.idx as i64 + arc.wind * m - arc.a.idx as i64;
                span.abs() == 1
            })
            .collect()
    }

    fn crossing_arcs(&self) -> Vec<&Arc> {
        self.arcs.iter().filter(|a| a.is_crossing()).collect()
    }

    /// The crossing arc at the smallest inner marking, if any.
    fn anchor_arc(&self) -> Option<&Arc> {
        self.crossing_arcs().into_iter().min_by_key(|a| a.a.idx)
    }

    /// Outer attachment of the anchor in absolute outer-marking units.
    pub fn anchor_offset(&self) -> Option<i64> {
        let arc = self.anchor_arc()?;
        debug_assert_eq!(arc.a.side, Side::Inner);
        Some(arc.b.idx as i64 + arc.wind * 2 * self.n_outer as i64)
    }

    /// Shifts every crossing arc by k full turns of the outer circle.
    pub fn shift_full_turns(&self, k: i64) -> AnnulusConfig {
        let arcs = self
            .arcs
            .iter()
            .map(|arc| match arc.kind_key() {
                (Side::Inner, Side::Outer) => Arc {
                    wind: arc.wind + k,
                    ..*arc
                },
                _ => *arc,
            })
            .collect();
        AnnulusConfig {
            arcs,
            ..self.clone()
        }
    }

    /// Rotates the attachment of every outer endpoint by `by` markings.
    pub fn rotate_outer(&self, by: i64) -> AnnulusConfig {
        let m = 2 * self.n_outer as i64;
        let shift = |idx: u32| -> (u32, i64) {
            let abs = idx as i64 + by;
            (abs.rem_euclid(m) as u32, abs.div_euclid(m))
        };
        let arcs = self
            .arcs
            .iter()
            .map(|arc| match arc.kind_key() {
                (Side::Inner, Side::Outer) => {
                    let (idx, carry) = shift(arc.b.idx);
                    Arc::new(arc.a, End::new(Side::Outer, idx), arc.wind + carry)
                }
                (Side::Outer, Side::Outer) => {
                    let (ia, ca) = shift(arc.a.idx);
                    let (ib, cb) = shift(arc.b.idx);
                    Arc::new(
                        End::new(Side::Outer, ia),
                        End::new(Side::Outer, ib),
                        arc.wind + cb - ca,
                    )
                }
                _ => *arc,
            })
            .collect();
        let mut cfg = AnnulusConfig {
            arcs,
            ..self.clone()
        };
        cfg.arcs.sort_unstable();
        cfg
    }

    /// Canonical representative modulo full-turn holonomy: the anchor
    /// crossing arc is shifted to winding zero.
    pub fn canonical(&self) -> AnnulusConfig {
        let mut cfg = match self.anchor_arc() {
            Some(anchor) => self.shift_full_turns(-anchor.wind),
            None => self.clone(),
        };
        cfg.arcs.sort_unstable();
        cfg
    }

    /// Serializable arc list [[side, idx], [side, idx], wind].
    pub fn arc_rows(&self) -> Vec<ArcRow> {
        self.arcs
            .iter()
            .map(|arc| {
                let row = |e: End| (if e.side == Side::Inner { 0u8 } else { 1u8 }, e.idx);
                (row(arc.a), row(arc.b), arc.wind)
            })
            .collect()
    }
}

/// A finite, sorted set of configurations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSet {
    pub configs: Vec<AnnulusConfig>,
}

impl ConfigSet {
    fn from_raw(mut configs: Vec<AnnulusConfig>) -> ConfigSet {
        configs.sort();
        configs.dedup();
        ConfigSet { configs }
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }
}

/// Glues two configurations across the shared circle (a's outer = b's inner),
/// concatenating arcs and discarding closed components.  Returns the glued
/// configuration together with the numbers of homotopically trivial and
/// essential closed curves produced.
pub fn glue(
    a: &AnnulusConfig,
    b: &AnnulusConfig,
) -> Result<(AnnulusConfig, u32, u32), DivsetError> {
    if a.n_outer != b.n_inner {
        return Err(DivsetError::MarkingMismatch);
    }
    let shared = 2 * a.n_outer as usize;

    // For each shared marking, the unique arc of a (resp. b) ending there.
    let mut a_at = vec![usize::MAX; shared];
    let mut b_at = vec![usize::MAX; shared];
    for (i, arc) in a.arcs.iter().enumerate() {
        for e in [arc.a, arc.b] {
            if e.side == Side::Outer {
                a_at[e.idx as usize] = i;
            }
        }
    }
    for (i, arc) in b.arcs.iter().enumerate() {
        for e in [arc.a, arc.b] {
            if e.side == Side::Inner {
                b_at[e.idx as usize] = i;
            }
        }
    }

    // Walks alternate between a-arcs and b-arcs through shared markings.
    // Positions are tracked in the cover; each traversal moves from one
    // endpoint's lift to the other's.
    #[derive(Clone, Copy, PartialEq)]
    enum Host {
        A,
        B,
    }
    let traverse = |host: Host, arc_idx: usize, enter: End, x: Frac| -> (End, Frac) {
        let (cfg, arc) = match host {
            Host::A => (a, &a.arcs[arc_idx]),
            Host::B => (b, &b.arcs[arc_idx]),
        };
        if arc.a == enter {
            let delta = cfg.pos(arc.b).add_int(arc.wind).sub(cfg.pos(arc.a));
            (arc.b, x.add(delta))
        } else {
            debug_assert_eq!(arc.b, enter);
            let delta = cfg.pos(arc.a).sub(cfg.pos(arc.b).add_int(arc.wind));
            (arc.a, x.add(delta))
        }
    };

    let mut visited_a = vec![false; a.arcs.len()];
    let mut visited_b = vec![false; b.arcs.len()];
    let mut new_arcs: Vec<Arc> = Vec::new();
    let mut trivial = 0u32;
    let mut essential = 0u32;

    // Open walks from every free end of a (inner side) and of b (outer side).
    let mut starts: Vec<(Host, usize, End)> = Vec::new();
    for (i, arc) in a.arcs.iter().enumerate() {
        for e in [arc.a, arc.b] {
            if e.side == Side::Inner {
                starts.push((Host::A, i, e));
            }
        }
    }
    for (i, arc) in b.arcs.iter().enumerate() {
        for e in [arc.a, arc.b] {
            if e.side == Side::Outer {
                starts.push((Host::B, i, e));
            }
        }
    }
    for (host0, idx0, end0) in starts {
        let already = match host0 {
            Host::A => visited_a[idx0],
            Host::B => visited_b[idx0],
        };
        if already {
            continue;
        }
        let start_pos = match host0 {
            Host::A => a.pos(end0),
            Host::B => b.pos(end0),
        };
        let (mut host, mut idx, mut enter, mut x) = (host0, idx0, end0, start_pos);
        let (final_end, final_x, final_host) = loop {
            match host {
                Host::A => visited_a[idx] = true,
                Host::B => visited_b[idx] = true,
            }
            let (out, nx) = traverse(host, idx, enter, x);
            if out.side == Side::Outer && host == Host::A {
                // Cross into b at the same shared marking.
                let j = out.idx as usize;
                (host, idx, enter, x) = (Host::B, b_at[j], End::new(Side::Inner, out.idx), nx);
            } else if out.side == Side::Inner && host == Host::B {
                let j = out.idx as usize;
                (host, idx, enter, x) = (Host::A, a_at[j], End::new(Side::Outer, out.idx), nx);
            } else {
                break (out, nx, host);
            }
        };
        // Record the glued arc in the combined annulus coordinates.
        let start_glued = match host0 {
            Host::A => End::new(Side::Inner, end0.idx),
            Host::B => End::new(Side::Outer, end0.idx),
        };
        let final_glued = match final_host {
            Host::A => End::new(Side::Inner, final_end.idx),
            Host::B => End::new(Side::Outer, final_end.idx),
        };
        // Lift: start at its base position, end at final_x; the stored wind
        // is relative to the glued config's own position table.
        let glued = AnnulusConfig {
            n_inner: a.n_inner,
            n_outer: b.n_outer,
            arcs: vec![],
            essential_closed: 0,
        };
        let base_shift = glued.pos(start_glued).sub(start_pos);
        debug_assert_eq!(base_shift.as_integer(), Some(0));
        let wind = final_x
            .sub(glued.pos(final_glued))
            .as_integer()
            .ok_or(DivsetError::InvalidConfig)?;
        new_arcs.push(Arc::new(start_glued, final_glued, wind));
    }

    // Closed components: cycles through arcs whose endpoints all lie on the
    // shared circle.
    for start in 0..shared {
        let idx0 = a_at[start];
        if idx0 == usize::MAX || visited_a[idx0] {
            continue;
        }
        let enter0 = End::new(Side::Outer, start as u32);
        let x0 = a.pos(enter0);
        let (mut host, mut idx, mut enter, mut x) = (Host::A, idx0, enter0, x0);
        loop {
            match host {
                Host::A => visited_a[idx] = true,
                Host::B => visited_b[idx] = true,
            }
            let (out, nx) = traverse(host, idx, enter, x);
            debug_assert!(
                (host == Host::A && out.side == Side::Outer)
                    || (host == Host::B && out.side == Side::Inner),
                "closed walks stay on the shared circle"
            );
            let j = out.idx as usize;
            if host == Host::A {
                (host, idx, enter, x) = (Host::B, b_at[j], End::new(Side::Inner, out.idx), nx);
            } else {
                (host, idx, enter, x) = (Host::A, a_at[j], End::new(Side::Outer, out.idx), nx);
                if idx == idx0 {
                    // Cycle closes; its winding is the total drift.
                    let w = x.sub(x0).as_integer().ok_or(DivsetError::InvalidConfig)?;
                    if w == 0 {
                        trivial += 1;
                    } else {
                        essential += 1;
                    }
                    break;
                }
            }
        }
    }

    let mut cfg = AnnulusConfig {
        n_inner: a.n_inner,
        n_outer: b.n_outer,
        arcs: new_arcs,
        essential_closed: a.essential_closed + b.essential_closed + essential,
    };
    cfg.arcs.sort_unstable();
    Ok((cfg, trivial, essential))
}

/// Holonomy of a two-crossing-arc configuration relative to a reference with
/// the same markings: the full-turn difference of the crossing families.
pub fn holonomy(c: &AnnulusConfig, reference: &AnnulusConfig) -> Result<i64, DivsetError> {
    if c.crossing_arcs().len() != 2 || reference.crossing_arcs().len() != 2 {
        return Err(DivsetError::InvalidConfig);
    }
    if (c.n_inner, c.n_outer) != (reference.n_inner, reference.n_outer) {
        return Err(DivsetError::MarkingMismatch);
    }
    let (ca, ra) = (
        c.anchor_arc().ok_or(DivsetError::InvalidConfig)?,
        reference.anchor_arc().ok_or(DivsetError::InvalidConfig)?,
    );
    let k = ca.wind - ra.wind;
    if reference.shift_full_turns(k) == *c {
        Ok(k)
    } else {
        Err(DivsetError::InvalidConfig)
    }
}

/// Non-crossing perfect matchings of a linearly ordered point run.
fn line_matchings(points: &[i64]) -> Vec<Vec<(i64, i64)>> {
    if points.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for k in (1..points.len()).step_by(2) {
        let inner = line_matchings(&points[1..k]);
        let outer = line_matchings(&points[k + 1..]);
        for inn in &inner {
            for outn in &outer {
                let mut m = vec![(points[0], points[k])];
                m.extend_from_slice(inn);
                m.extend_from_slice(outn);
                out.push(m);
            }
        }
    }
    out
}

/// Subsets of ℤ/total of the given size whose cyclic gaps are all even.
fn even_gap_subsets(total: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        start: usize,
        total: usize,
        size: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            // Check the wrap-around gap.
            let first = current[0];
            let last = current[size - 1];
            if (total - 1 - last + first).is_multiple_of(2) {
                out.push(current.clone());
            }
            return;
        }
        for v in start..total {
            if let Some(&prev) = current.last() {
                if (v - prev - 1) % 2 != 0 {
                    continue;
                }
            }
            current.push(v);
            rec(v + 1, total, size, current, out);
            current.pop();
        }
    }
    rec(0, total, size, &mut current, &mut out);
    out
}

/// Same-side arc from absolute marking positions (units of one marking).
fn side_arc(side: Side, markings: i64, abs1: i64, abs2: i64) -> Arc {
    let (e1, e2) = (abs1.rem_euclid(markings), abs2.rem_euclid(markings));
    let (t1, t2) = (abs1.div_euclid(markings), abs2.div_euclid(markings));
    // Rebase so the smaller-indexed end sits at its fundamental position.
    let (ea, eb, wind) = if e1 <= e2 {
        (e1, e2, t2 - t1)
    } else {
        (e2, e1, t1 - t2)
    };
    Arc::new(End::new(side, ea as u32), End::new(side, eb as u32), wind)
}

/// All per-gap parallel-arc fillings of one circle given its crossing set.
fn gap_fillings(side: Side, markings: usize, crossing: &[usize]) -> Vec<Vec<Arc>> {
    let m = markings as i64;
    let mut gap_options: Vec<Vec<Vec<Arc>>> = Vec::new();
    let c = crossing.len();
    for g in 0..c {
        let from = crossing[g] as i64;
        let to = if g + 1 < c {
            crossing[g + 1] as i64
        } else {
            crossing[0] as i64 + m
        };
        let pts: Vec<i64> = (from + 1..to).collect();
        let fillings: Vec<Vec<Arc>> = line_matchings(&pts)
            .into_iter()
            .map(|pairs| {
                pairs
                    .into_iter()
                    .map(|(x, y)| side_arc(side, m, x, y))
                    .collect()
            })
            .collect();
        gap_options.push(fillings);
    }
    // Cartesian product over gaps.
    let mut out: Vec<Vec<Arc>> = vec![vec![]];
    for opts in gap_options {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for base in &out {
            for opt in &opts {
                let mut v = base.clone();
                v.extend_from_slice(opt);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Enumerates every valid configuration whose anchor crossing arc attaches
/// at one of the given absolute outer offsets.  Conditions: every marking is
/// one arc endpoint, arcs embedded and non-crossing, at least two crossing
/// arcs (exactly `crossing` when given), no closed curves.
fn enumerate_with_offsets(
    n_inner: u32,
    n_outer: u32,
    offsets: &[i64],
    crossing: Option<usize>,
) -> Vec<AnnulusConfig> {
    let mi = 2 * n_inner as usize;
    let mo = 2 * n_outer as usize;
    let mut out = Vec::new();
    let max_cross = crossing.unwrap_or(mi.min(mo));
    let mut c = crossing.unwrap_or(2);
    while c <= max_cross {
        for s_inner in even_gap_subsets(mi, c) {
            let inner_fillings = gap_fillings(Side::Inner, mi, &s_inner);
            for s_outer in even_gap_subsets(mo, c) {
                let outer_fillings = gap_fillings(Side::Outer, mo, &s_outer);
                let outer_set: BTreeSet<usize> = s_outer.iter().copied().collect();
                for &offset in offsets {
                    let base = offset.rem_euclid(mo as i64) as usize;
                    if !outer_set.contains(&base) {
                        continue;
                    }
                    // Attach inner crossing markings, in order from the
                    // anchor, to successive outer crossing slots from the
                    // offset.
                    let slot0 = s_outer
                        .iter()
                        .position(|&v| v == base)
                        .expect("base in set");
                    let crossing_arcs: Vec<Arc> = s_inner
                        .iter()
                        .enumerate()
                        .map(|(t, &i)| {
                            let slot = slot0 + t;
                            let turn = offset.div_euclid(mo as i64) + (slot / c) as i64;
                            let o = s_outer[slot % c];
                            Arc::new(
                                End::new(Side::Inner, i as u32),
                                End::new(Side::Outer, o as u32),
                                turn,
                            )
                        })
                        .collect();
                    for fi in &inner_fillings {
                        for fo in &outer_fillings {
                            let mut arcs = crossing_arcs.clone();
                            arcs.extend_from_slice(fi);
                            arcs.extend_from_slice(fo);
                            arcs.sort_unstable();
                            // Order-preserving slot attachment keeps the
                            // system embedded; skip the quadratic check.
                            let cfg = AnnulusConfig {
                                n_inner,
                                n_outer,
                                arcs,
                                essential_closed: 0,
                            };
                            out.push(cfg);
                        }
                    }
                }
            }
        }
        c += 2;
    }
    out.sort();
    out.dedup();
    out
}

/// Census of nonrotative configurations: representatives modulo the marking
/// rotation together with their orbit structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonrotativeCensus {
    pub classes: Vec<OrbitClass>,
}

/// One class modulo holonomy: its anchored representative and the size of
/// its orbit under outer-marking rotation (modulo full turns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub representative: AnnulusConfig,
    pub orbit_len: u32,
}

/// All valid configurations with the anchor attachment in [0, window), i.e.
/// `window` holonomy translates of each class.
pub fn enumerate_nonrotative(n0: u32, n1: u32, window: u32) -> Result<ConfigSet, DivsetError> {
    if n0 < 1 || n1 < 1 {
        return Err(DivsetError::ZeroDivision);
    }
    let offsets: Vec<i64> = (0..window as i64).collect();
    Ok(ConfigSet {
        configs: enumerate_with_offsets(n0, n1, &offsets, None),
    })
}

/// Number of valid configurations modulo holonomy, with orbit metadata.
pub fn nonrotative_census(n0: u32, n1: u32) -> Result<NonrotativeCensus, DivsetError> {
    if n0 < 1 || n1 < 1 {
        return Err(DivsetError::ZeroDivision);
    }
    let reps = enumerate_with_offsets(n0, n1, &[0], None);
    let classes = reps
        .into_iter()
        .map(|rep| {
            let mut seen = BTreeSet::new();
            let turns = 2 * n1;
            for j in 0..turns as i64 {
                seen.insert(rep.rotate_outer(j).canonical());
            }
            OrbitClass {
                representative: rep,
                orbit_len: seen.len() as u32,
            }
        })
        .collect();
    Ok(NonrotativeCensus { classes })
}

pub fn count_nonrotative(n0: u32, n1: u32) -> Result<u64, DivsetError> {
    Ok(nonrotative_census(n0, n1)?.classes.len() as u64)
}

/// Does the glued configuration equal the identity configuration exactly:
/// 2m straight crossing arcs (inner j to outer j, winding zero) and no
/// trivial closed curves?  The identity is a fixed representative of its
/// holonomy class, so dual sets come out as pinned configurations, exactly
/// as in the template-matching construction.
fn glues_to_id(c: &AnnulusConfig, template: &AnnulusConfig) -> bool {
    match glue(c, template) {
        Ok((glued, trivial, _essential)) => {
            trivial == 0
                && glued.n_inner == glued.n_outer
                && glued.arcs.len() == 2 * glued.n_inner as usize
                && glued
                    .arcs
                    .iter()
                    .all(|a| a.is_crossing() && a.a.idx == a.b.idx && a.wind == 0)
        }
        Err(_) => false,
    }
}

/// Membership of `c` in C₀: every inner marking is an endpoint of a crossing
/// arc.
pub fn in_c0(c: &AnnulusConfig) -> bool {
    c.crossing_arcs().len() == 2 * c.n_inner as usize && c.n_inner <= c.n_outer
}

/// The dual set of a configuration set: all templates on the outer annulus
/// whose gluing with every member yields the identity configuration.
///
/// The identity is pinned (straight arcs, winding zero), so the dual
/// elements are pinned configurations; the window bounds the anchor offsets
/// searched, in full turns, and a member found in the outermost turn raises
/// `WindowSaturated` since further members may lie beyond.
pub fn dual_set(
    configs: &[AnnulusConfig],
    outer_markings_half: u32,
    window: u32,
) -> Result<ConfigSet, DivsetError> {
    if window < 1 {
        return Err(DivsetError::WindowSaturated);
    }
    let first = configs.first().ok_or(DivsetError::InvalidConfig)?;
    if !configs
        .iter()
        .all(|c| in_c0(c) && (c.n_inner, c.n_outer) == (first.n_inner, first.n_outer))
    {
        return Err(DivsetError::InvalidConfig);
    }
    let m = outer_markings_half;
    if m != first.n_inner || m > first.n_outer {
        return Err(DivsetError::InvalidConfig);
    }
    let n = first.n_outer;
    let span = window as i64 * 2 * m as i64;
    let offsets: Vec<i64> = (-span..=span).collect();
    let candidates = enumerate_with_offsets(n, m, &offsets, Some(2 * m as usize));
    let mut members = Vec::new();
    for cand in candidates {
        if configs.iter().all(|c| glues_to_id(c, &cand)) {
            if let Some(anchor) = cand.anchor_offset() {
                if anchor.abs() > span - 2 * m as i64 {
                    return Err(DivsetError::WindowSaturated);
                }
            }
            members.push(cand);
        }
    }
    Ok(ConfigSet::from_raw(members))
}

/// The Reflexive Property: (A*)* = {c} for a singleton {c} ⊂ C₀.
pub fn reflexive_check(c: &AnnulusConfig, window: u32) -> Result<bool, DivsetError> {
    if !in_c0(c) {
        return Err(DivsetError::InvalidConfig);
    }
    let (m, n) = (c.n_inner, c.n_outer);
    let b_candidates = template_candidates(n, m, window);
    let a_candidates = template_candidates(m, n, window);
    reflexive_against(c, &b_candidates, &a_candidates, window)
}

fn template_candidates(n_inner: u32, n_outer: u32, window: u32) -> Vec<AnnulusConfig> {
    let span = window as i64 * 2 * n_outer as i64;
    let offsets: Vec<i64> = (-span..=span).collect();
    enumerate_with_offsets(
        n_inner,
        n_outer,
        &offsets,
        Some(2 * n_inner.min(n_outer) as usize),
    )
}

fn reflexive_against(
    c: &AnnulusConfig,
    b_candidates: &[AnnulusConfig],
    a_candidates: &[AnnulusConfig],
    window: u32,
) -> Result<bool, DivsetError> {
    let m = c.n_inner;
    let span = window as i64 * 2 * m as i64;
    let mut dual = Vec::new();
    for cand in b_candidates {
        if glues_to_id(c, cand) {
            if let Some(anchor) = cand.anchor_offset() {
                if anchor.abs() > span - 2 * m as i64 {
                    return Err(DivsetError::WindowSaturated);
                }
            }
            dual.push(cand.clone());
        }
    }
    if dual.is_empty() {
        return Ok(false);
    }
    let mut double_dual = Vec::new();
    for cand in a_candidates {
        if !in_c0(cand) {
            continue;
        }
        if dual.iter().all(|t| glues_to_id(cand, t)) {
            double_dual.push(cand.clone());
        }
    }
    let double_dual = ConfigSet::from_raw(double_dual);
    Ok(double_dual.configs == vec![c.clone()])
}

/// Reflexivity of every anchored C₀ configuration at the given size, with
/// candidate enumerations shared across the whole batch.
pub fn reflexive_census(
    m: u32,
    n: u32,
    window: u32,
) -> Result<Vec<(AnnulusConfig, bool)>, DivsetError> {
    let configs = enumerate_c0(m, n)?;
    let b_candidates = template_candidates(n, m, window);
    let a_candidates = template_candidates(m, n, window);
    configs
        .into_iter()
        .map(|c| {
            let ok = reflexive_against(&c, &b_candidates, &a_candidates, window)?;
            Ok((c, ok))
        })
        .collect()
}

/// All C₀ configurations with m inner pairs and n outer pairs, anchored at
/// offset zero (one representative per holonomy class).
pub fn enumerate_c0(m: u32, n: u32) -> Result<Vec<AnnulusConfig>, DivsetError> {
    if m < 1 || n < m {
        return Err(DivsetError::ZeroDivision);
    }
    Ok(enumerate_with_offsets(m, n, &[0], Some(2 * m as usize))
        .into_iter()
        .filter(in_c0)
        .collect())
}

/// Disk-equivalence of two configurations with two inner markings: cap the
/// inner boundary with a disk joining the two inner endpoints and compare
/// the resulting chord diagrams of the outer markings.
pub fn disk_equivalent(a: &AnnulusConfig, b: &AnnulusConfig) -> Result<bool, DivsetError> {
    if a.n_inner != 1 || b.n_inner != 1 {
        return Err(DivsetError::InvalidConfig);
    }
    if a.n_outer != b.n_outer {
        return Err(DivsetError::MarkingMismatch);
    }
    Ok(capped_matching(a)? == capped_matching(b)?)
}

/// The outer-boundary chord diagram obtained by capping the two-marking
/// inner boundary; windings die in the disk.
fn capped_matching(c: &AnnulusConfig) -> Result<Vec<(u32, u32)>, DivsetError> {
    let mut crossing_targets = Vec::new();
    let mut pairs = Vec::new();
    for arc in &c.arcs {
        match arc.kind_key() {
            (Side::Inner, Side::Outer) => crossing_targets.push(arc.b.idx),
            (Side::Outer, Side::Outer) => pairs.push((arc.a.idx, arc.b.idx)),
            (Side::Inner, Side::Inner) => return Err(DivsetError::InvalidConfig),
            _ => unreachable!("arcs are stored with a <= b"),
        }
    }
    if crossing_targets.len() != 2 {
        return Err(DivsetError::InvalidConfig);
    }
    crossing_targets.sort_unstable();
    pairs.push((crossing_targets[0], crossing_targets[1]));
    pairs.sort_unstable();
    Ok(pairs)
}
