//! Deterministic SVG and DOT renderings of Farey tessellations and chord
//! diagrams.  Output is byte-stable across runs and platforms: fixed canvas,
//! fixed decimal formatting, arcs emitted in sorted order.

use crate::divsets::{AnnulusConfig, DiskConfig, Side};
use crate::farey::{self, Slope};
use std::fmt::Write;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

fn fmt_f(v: f64) -> String {
    // Avoid "-0.00".
    let v = if v.abs() < 5e-5 { 0.0 } else { v };
    format!("{v:.4}")
}

/// Angle of a slope on the boundary circle: 0 at (1,0), 1 at the top,
/// ∞ at (−1,0), −1 at the bottom.
fn slope_angle(s: Slope) -> f64 {
    if s.is_infinity() {
        return std::f64::consts::PI;
    }
    2.0 * (s.numer() as f64 / s.denom() as f64).atan()
}

fn circle_point(theta: f64, radius: f64) -> (f64, f64) {
    let c = SIZE / 2.0;
    (c + radius * theta.cos(), c - radius * theta.sin())
}

fn svg_header(out: &mut String) {
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">\n",
        SIZE as u32
    ));
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
}

/// Geodesic between two boundary points of the disk, sampled as a polyline
/// along the circle orthogonal to the boundary.  The diameter case
/// degenerates to a line.
fn geodesic_path(t1: f64, t2: f64, radius: f64) -> String {
    let pi = std::f64::consts::PI;
    let (x1, y1) = circle_point(t1, radius);
    let (x2, y2) = circle_point(t2, radius);
    let delta = (t2 - t1).rem_euclid(2.0 * pi);
    if (delta - pi).abs() < 1e-9 {
        return format!(
            "M {} {} L {} {}",
            fmt_f(x1),
            fmt_f(y1),
            fmt_f(x2),
            fmt_f(y2)
        );
    }
    // Midangle along the short way and the orthogonal circle through both
    // endpoints.
    let (start, short) = if delta <= pi {
        (t1, delta)
    } else {
        (t2, 2.0 * pi - delta)
    };
    let mid = start + short / 2.0;
    let center_dist = radius / (short / 2.0).cos();
    let c = SIZE / 2.0;
    let (gx, gy) = (c + center_dist * mid.cos(), c - center_dist * mid.sin());
    let phi1 = (y1 - gy).atan2(x1 - gx);
    let mut phi2 = (y2 - gy).atan2(x2 - gx);
    // Take the short sweep around the geodesic circle.
    while phi2 - phi1 > pi {
        phi2 -= 2.0 * pi;
    }
    while phi1 - phi2 > pi {
        phi2 += 2.0 * pi;
    }
    let r_geo = radius * (short / 2.0).tan();
    let steps = 24;
    let mut d = String::new();
    for k in 0..=steps {
        let t = k as f64 / steps as f64;
        let phi = phi1 + (phi2 - phi1) * t;
        let (x, y) = (gx + r_geo * phi.cos(), gy + r_geo * phi.sin());
        let cmd = if k == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{} {} {} ", cmd, fmt_f(x), fmt_f(y));
    }
    d.trim_end().to_string()
}

/// Edges of the Farey tessellation to the given mediant depth, starting from
/// the edge 0—∞ and recursing into both half-disks.
pub fn farey_edges(depth: u32) -> Vec<(Slope, Slope)> {
    let zero = Slope::new(0, 1).expect("0 is a slope");
    let inf = Slope::infinity();
    let minus_one = Slope::new(-1, 1).expect("-1 is a slope");
    let one = Slope::new(1, 1).expect("1 is a slope");
    let mut edges = vec![(zero, inf)];
    fn rec(a: Slope, b: Slope, depth: u32, edges: &mut Vec<(Slope, Slope)>) {
        if depth == 0 {
            return;
        }
        let m = farey::mediant(a, b).expect("tessellation parents are not antipodal");
        edges.push((a, m));
        edges.push((m, b));
        rec(a, m, depth - 1, edges);
        rec(m, b, depth - 1, edges);
    }
    // Upper half: positive slopes between 0 and ∞; lower half: negatives.
    edges.push((zero, one));
    edges.push((one, inf));
    rec(zero, one, depth.saturating_sub(1), &mut edges);
    rec(one, inf, depth.saturating_sub(1), &mut edges);
    edges.push((inf, minus_one));
    edges.push((minus_one, zero));
    rec(inf, minus_one, depth.saturating_sub(1), &mut edges);
    rec(minus_one, zero, depth.saturating_sub(1), &mut edges);
    edges.sort();
    edges.dedup();
    edges
}

/// SVG of the Farey tessellation to the given depth.
pub fn farey_svg(depth: u32) -> String {
    let radius = SIZE / 2.0 - MARGIN;
    let mut out = String::new();
    svg_header(&mut out);
    let c = SIZE / 2.0;
    out.push_str(&format!(
        "<circle cx=\"{0}\" cy=\"{0}\" r=\"{1}\" fill=\"none\" stroke=\"black\"/>\n",
        fmt_f(c),
        fmt_f(radius)
    ));
    let edges = farey_edges(depth);
    for (a, b) in &edges {
        out.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"steelblue\" stroke-width=\"0.8\"/>\n",
            geodesic_path(slope_angle(*a), slope_angle(*b), radius)
        ));
    }
    let mut labels: Vec<Slope> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    labels.sort();
    labels.dedup();
    for s in labels {
        let (x, y) = circle_point(slope_angle(s), radius + 10.0);
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\">{}</text>\n",
            fmt_f(x),
            fmt_f(y),
            s
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// DOT graph of the Farey tessellation to the given depth.
pub fn farey_dot(depth: u32) -> String {
    let edges = farey_edges(depth);
    let mut out = String::from("graph farey {\n  layout=circo;\n");
    let mut nodes: Vec<Slope> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    nodes.sort();
    nodes.dedup();
    for n in &nodes {
        let _ = writeln!(out, "  \"{n}\";");
    }
    for (a, b) in &edges {
        let _ = writeln!(out, "  \"{a}\" -- \"{b}\";");
    }
    out.push_str("}\n");
    out
}

/// SVG chord diagram of a disk dividing set.
pub fn disk_svg(config: &DiskConfig) -> String {
    let radius = SIZE / 2.0 - MARGIN;
    let n = 2 * config.t() as usize;
    let mut out = String::new();
    svg_header(&mut out);
    let c = SIZE / 2.0;
    out.push_str(&format!(
        "<circle cx=\"{0}\" cy=\"{0}\" r=\"{1}\" fill=\"none\" stroke=\"black\"/>\n",
        fmt_f(c),
        fmt_f(radius)
    ));
    let angle = |i: u32| 2.0 * std::f64::consts::PI * (i as f64) / (n as f64);
    for &(i, j) in config.arcs() {
        out.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"firebrick\" stroke-width=\"1.2\"/>\n",
            geodesic_path(angle(i), angle(j), radius)
        ));
    }
    for i in 0..n as u32 {
        let (x, y) = circle_point(angle(i), radius);
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>\n",
            fmt_f(x),
            fmt_f(y)
        ));
        let (lx, ly) = circle_point(angle(i), radius + 10.0);
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"9\" text-anchor=\"middle\">{}</text>\n",
            fmt_f(lx),
            fmt_f(ly),
            i
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// SVG of an annulus configuration: concentric circles, arcs as curves
/// through interpolated radial points.
pub fn annulus_svg(config: &AnnulusConfig) -> String {
    let outer_r = SIZE / 2.0 - MARGIN;
    let inner_r = outer_r * 0.45;
    let mut out = String::new();
    svg_header(&mut out);
    let c = SIZE / 2.0;
    for r in [inner_r, outer_r] {
        out.push_str(&format!(
            "<circle cx=\"{0}\" cy=\"{0}\" r=\"{1}\" fill=\"none\" stroke=\"black\"/>\n",
            fmt_f(c),
            fmt_f(r)
        ));
    }
    let point = |side: Side, idx: u32, frac_extra: f64, radius_t: f64| {
        let m = match side {
            Side::Inner => 2 * config.n_inner(),
            Side::Outer => 2 * config.n_outer(),
        } as f64;
        let theta = 2.0 * std::f64::consts::PI * (idx as f64 / m + frac_extra);
        let r = inner_r + (outer_r - inner_r) * radius_t;
        circle_point(theta, r)
    };
    for arc in config.arcs() {
        // Sample the straight line in (angle, radius) coordinates.
        let a_t = match arc.a.side {
            Side::Inner => 0.0,
            Side::Outer => 1.0,
        };
        let b_t = match arc.b.side {
            Side::Inner => 0.0,
            Side::Outer => 1.0,
        };
        let (a_m, b_m) = (
            2.0 * match arc.a.side {
                Side::Inner => config.n_inner(),
                Side::Outer => config.n_outer(),
            } as f64,
            2.0 * match arc.b.side {
                Side::Inner => config.n_inner(),
                Side::Outer => config.n_outer(),
            } as f64,
        );
        let theta_a = arc.a.idx as f64 / a_m;
        let theta_b = arc.b.idx as f64 / b_m + arc.wind as f64;
        let bulge = if arc.a.side == arc.b.side {
            // Parallel arc: dip toward the opposite boundary.
            if arc.a.side == Side::Inner {
                0.35
            } else {
                -0.35
            }
        } else {
            0.0
        };
        let steps = 24;
        let mut d = String::new();
        for k in 0..=steps {
            let t = k as f64 / steps as f64;
            let theta = theta_a + (theta_b - theta_a) * t;
            let base = a_t + (b_t - a_t) * t;
            let r_t = base + bulge * (std::f64::consts::PI * t).sin();
            let (x, y) = point(arc.a.side, 0, theta, r_t.clamp(0.0, 1.0));
            let cmd = if k == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{} {} {} ", cmd, fmt_f(x), fmt_f(y));
        }
        out.push_str(&format!(
            "<path d=\"{}\" fill=\"none\" stroke=\"firebrick\" stroke-width=\"1.2\"/>\n",
            d.trim_end()
        ));
    }
    for (side, count) in [
        (Side::Inner, 2 * config.n_inner()),
        (Side::Outer, 2 * config.n_outer()),
    ] {
        for i in 0..count {
            let (x, y) = point(side, i, 0.0, if side == Side::Inner { 0.0 } else { 1.0 });
            out.push_str(&format!(
                "<circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"black\"/>\n",
                fmt_f(x),
                fmt_f(y)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Minimal valid SVG for an empty payload.
pub fn empty_svg() -> String {
    let mut out = String::new();
    svg_header(&mut out);
    out.push_str("</svg>\n");
    out
}
