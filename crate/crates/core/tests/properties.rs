//! Property tests for the arithmetic invariants: Farey adjacency, bypass
//! hops, SL(2,Z) equivariance, continued fraction round trips, and the
//! annulus gluing monoid.

use contact_census::contfrac;
use contact_census::divsets::{self, AnnulusConfig, Arc, End, Side};
use contact_census::farey::{self, Mat2, Slope};
use contact_census::slices;
use proptest::prelude::*;

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn arb_slope() -> impl Strategy<Value = Slope> {
    (-60i64..=60, 0i64..=24).prop_filter_map("slope", |(p, q)| Slope::new(p, q).ok())
}

/// Random unimodular matrix as a word in the standard generators.
fn arb_sl2() -> impl Strategy<Value = Mat2> {
    proptest::collection::vec((0..2usize, -3i64..=3), 0..6).prop_map(|word| {
        let mut m: Mat2 = [[1, 0], [0, 1]];
        for (kind, k) in word {
            let g: Mat2 = if kind == 0 {
                [[1, k], [0, 1]]
            } else {
                [[1, 0], [k, 1]]
            };
            m = farey::mat_mul(&m, &g);
        }
        m
    })
}

proptest! {
    #[test]
    fn adjacency_symmetric(a in arb_slope(), b in arb_slope()) {
        prop_assert_eq!(farey::farey_adjacent(a, b), farey::farey_adjacent(b, a));
    }

    #[test]
    fn mediant_of_adjacent_is_adjacent_to_both(m in arb_sl2()) {
        // Transport the standard edge 0—∞ to a random edge.
        let a = farey::sl2_apply(&m, Slope::new(0, 1).unwrap()).unwrap();
        let b = farey::sl2_apply(&m, Slope::infinity()).unwrap();
        prop_assert!(farey::farey_adjacent(a, b));
        if let Ok(med) = farey::mediant(a, b) {
            prop_assert!(farey::farey_adjacent(med, a));
            prop_assert!(farey::farey_adjacent(med, b));
        }
    }

    #[test]
    fn sl2_preserves_structure(m in arb_sl2(), a in arb_slope(), b in arb_slope(), c in arb_slope()) {
        let (ma, mb, mc) = (
            farey::sl2_apply(&m, a).unwrap(),
            farey::sl2_apply(&m, b).unwrap(),
            farey::sl2_apply(&m, c).unwrap(),
        );
        prop_assert_eq!(farey::farey_adjacent(a, b), farey::farey_adjacent(ma, mb));
        // Orientation is preserved because the generator words have det +1.
        prop_assert_eq!(farey::det2(&m), 1);
        prop_assert_eq!(farey::between(c, a, b), farey::between(mc, ma, mb));
    }

    #[test]
    fn sl2_maps_paths_to_paths(m in arb_sl2(), a in arb_slope(), b in arb_slope()) {
        let path = farey::shortest_path(a, b);
        let mapped: Vec<Slope> = path.iter().map(|&s| farey::sl2_apply(&m, s).unwrap()).collect();
        let expect = farey::shortest_path(
            farey::sl2_apply(&m, a).unwrap(),
            farey::sl2_apply(&m, b).unwrap(),
        );
        prop_assert_eq!(mapped, expect);
    }

    #[test]
    fn path_consecutive_pairs_are_bases(a in arb_slope(), b in arb_slope()) {
        let path = farey::shortest_path(a, b);
        for w in path.windows(2) {
            prop_assert!(farey::farey_adjacent(w[0], w[1]));
            prop_assert!(farey::between(w[0], a, b));
            prop_assert!(farey::between(w[1], a, b));
        }
    }

    #[test]
    fn bypass_hop_is_adjacent_and_on_arc(s in arb_slope(), r in arb_slope()) {
        prop_assume!(s != r);
        let hop = farey::bypass_slope(s, r).unwrap();
        prop_assert!(farey::farey_adjacent(hop, s));
        prop_assert!(farey::between(hop, s, r));
    }

    #[test]
    fn cf_round_trip(p in 2i64..500, q in 1i64..499) {
        prop_assume!(q < p && gcd(p, q) == 1);
        let cf = contfrac::to_cf(p, q).unwrap();
        prop_assert!(cf.coeffs().iter().all(|&r| r <= -2));
        prop_assert_eq!(contfrac::from_cf(&cf).unwrap(), Slope::new(-p, q).unwrap());
    }

    #[test]
    fn descriptor_euler_matches_realization(p in 2i64..60, q in 1i64..59, seed in any::<u64>()) {
        prop_assume!(q < p && gcd(p, q) == 1);
        let descs = slices::enumerate_minimal(p, q).unwrap();
        let d = &descs[(seed % descs.len() as u64) as usize];
        let f = slices::realize_descriptor(d).unwrap();
        prop_assert_eq!(slices::euler_class(&f), slices::descriptor_euler(d).unwrap());
        prop_assert_eq!(&slices::shuffle_normal_form(&f).unwrap(), d);
    }

    #[test]
    fn twisting_additive_under_concatenation(
        hops in proptest::collection::vec(0u8..4, 1..8),
        split in any::<usize>(),
    ) {
        // Build a rotating chain out of quarter-ish hops.
        let stations = [
            Slope::new(0, 1).unwrap(),
            Slope::new(1, 1).unwrap(),
            Slope::infinity(),
            Slope::new(-1, 1).unwrap(),
        ];
        let mut chain = vec![stations[0]];
        let mut pos = 0usize;
        for h in &hops {
            pos = (pos + 1 + (*h as usize % 2)) % 4;
            chain.push(stations[pos]);
        }
        let cut = 1 + split % (chain.len() - 1);
        let anchor = chain[0];
        let front = &chain[..=cut];
        let back = &chain[cut..];
        let whole = slices::twisting(&chain).half_turns;
        let parts = slices::half_turns_anchored(front, anchor)
            + slices::half_turns_anchored(back, anchor);
        prop_assert_eq!(whole, parts);
    }
}

#[test]
fn bypass_hop_is_closest_over_stern_brocot() {
    // Exhaustive oracle: no Stern–Brocot node of depth <= 12 strictly
    // between the hop and r on the arc is adjacent to s.
    fn stern_brocot(depth: u32) -> Vec<Slope> {
        let mut nodes = vec![
            Slope::new(0, 1).unwrap(),
            Slope::infinity(),
            Slope::new(1, 1).unwrap(),
            Slope::new(-1, 1).unwrap(),
        ];
        fn rec(a: Slope, b: Slope, depth: u32, out: &mut Vec<Slope>) {
            if depth == 0 {
                return;
            }
            let m = farey::mediant(a, b).unwrap();
            out.push(m);
            rec(a, m, depth - 1, out);
            rec(m, b, depth - 1, out);
        }
        let (zero, one, inf, minus) = (nodes[0], nodes[2], nodes[1], nodes[3]);
        rec(zero, one, depth - 1, &mut nodes);
        rec(one, inf, depth - 1, &mut nodes);
        rec(inf, minus, depth - 1, &mut nodes);
        rec(minus, zero, depth - 1, &mut nodes);
        nodes.sort_unstable();
        nodes.dedup();
        nodes
    }
    let nodes = stern_brocot(12);
    let samples = [
        (Slope::new(-10, 3).unwrap(), Slope::new(0, 1).unwrap()),
        (Slope::new(0, 1).unwrap(), Slope::new(-1, 1).unwrap()),
        (Slope::new(-17, 5).unwrap(), Slope::new(-1, 1).unwrap()),
        (Slope::new(7, 9).unwrap(), Slope::new(-2, 5).unwrap()),
        (Slope::infinity(), Slope::new(3, 4).unwrap()),
        (Slope::new(5, 8).unwrap(), Slope::infinity()),
    ];
    for &(s, r) in &samples {
        let hop = farey::bypass_slope(s, r).unwrap();
        for &x in &nodes {
            if x == hop || x == r {
                continue;
            }
            // Strictly between hop and r on the arc [s, r].
            if farey::between(x, hop, r) {
                assert!(
                    !farey::farey_adjacent(x, s),
                    "{x} beats {hop} toward {r} for s = {s}"
                );
            }
        }
    }
}

#[test]
fn glue_is_associative_on_crossing_rich_configs() {
    let id = |w: i64| {
        AnnulusConfig::new(
            2,
            2,
            vec![
                Arc::new(End::new(Side::Inner, 0), End::new(Side::Outer, 0), w),
                Arc::new(End::new(Side::Inner, 1), End::new(Side::Outer, 1), w),
                Arc::new(End::new(Side::Inner, 2), End::new(Side::Outer, 2), w),
                Arc::new(End::new(Side::Inner, 3), End::new(Side::Outer, 3), w),
            ],
            0,
        )
        .unwrap()
    };
    let skew = AnnulusConfig::new(
        2,
        2,
        vec![
            Arc::new(End::new(Side::Inner, 0), End::new(Side::Outer, 1), 0),
            Arc::new(End::new(Side::Inner, 1), End::new(Side::Outer, 2), 0),
            Arc::new(End::new(Side::Inner, 2), End::new(Side::Outer, 3), 0),
            Arc::new(End::new(Side::Inner, 3), End::new(Side::Outer, 0), 1),
        ],
        0,
    )
    .unwrap();
    for a in [id(0), id(1), skew.clone()] {
        for b in [id(0), id(-1), skew.clone()] {
            for c in [id(2), skew.clone()] {
                let (ab, t1, e1) = divsets::glue(&a, &b).unwrap();
                let (ab_c, t2, e2) = divsets::glue(&ab, &c).unwrap();
                let (bc, t3, e3) = divsets::glue(&b, &c).unwrap();
                let (a_bc, t4, e4) = divsets::glue(&a, &bc).unwrap();
                assert_eq!(ab_c, a_bc);
                assert_eq!(t1 + t2, t3 + t4);
                assert_eq!(e1 + e2, e3 + e4);
            }
        }
    }
}

#[test]
fn stripping_boundary_parallel_arcs_leaves_parallel_crossings() {
    for (n0, n1) in [(1u32, 2u32), (1, 3), (2, 3), (2, 4)] {
        for cfg in divsets::enumerate_nonrotative(n0, n1, 2).unwrap().configs {
            // Iteratively delete arcs that cut off an endpoint-free span.
            let mut arcs: Vec<Arc> = cfg.arcs().to_vec();
            loop {
                let occupied: Vec<(Side, u32)> = arcs
                    .iter()
                    .flat_map(|a| [(a.a.side, a.a.idx), (a.b.side, a.b.idx)])
                    .collect();
                let span_free = |arc: &Arc| -> bool {
                    if arc.a.side != arc.b.side {
                        return false;
                    }
                    let m = match arc.a.side {
                        Side::Inner => 2 * n0,
                        Side::Outer => 2 * n1,
                    } as i64;
                    let lo = arc.a.idx as i64;
                    let hi = arc.b.idx as i64 + arc.wind * m;
                    let (lo, hi) = (lo.min(hi), lo.max(hi));
                    !occupied.iter().any(|&(side, idx)| {
                        side == arc.a.side && (lo + 1..hi).any(|x| x.rem_euclid(m) == idx as i64)
                    })
                };
                match arcs.iter().position(span_free) {
                    Some(i) => {
                        arcs.remove(i);
                    }
                    None => break,
                }
            }
            assert!(
                arcs.iter().all(Arc::is_crossing),
                "cfg {cfg:?} leaves non-crossing arcs {arcs:?}"
            );
        }
    }
}

#[test]
fn descriptor_realization_round_trip_with_signs() {
    // Each descriptor's realization glue-checks back to itself.
    for (p, q) in [(10i64, 3i64), (7, 5), (9, 2)] {
        for d in slices::enumerate_minimal(p, q).unwrap() {
            let f = slices::realize_descriptor(&d).unwrap();
            match slices::glue_check(&f).unwrap() {
                slices::GlueOutcome::Tight(back) => assert_eq!(back, d),
                slices::GlueOutcome::Overtwisted => panic!("realization must be tight"),
            }
        }
    }
}
