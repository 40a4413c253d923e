mod common;

use std::collections::BTreeSet;

use num_rational::BigRational;
use proptest::prelude::*;

use cpgraph::distsim::cp_distributed;
use cpgraph::generators::{sample_rcg, RcgParams};
use cpgraph::graph::{self, GeoGraph};
use cpgraph::planarize::{deleting, verify_f_axioms, verify_lemma1, verify_theorem1};
use cpgraph::{between, cp_global, inside, intersection_point, intersects, left, Edge, EdgeOrder, Point};

use common::oracle_intersects;

fn small_point() -> impl Strategy<Value = Point> {
    (-4i64..=4, -4i64..=4).prop_map(|(x, y)| Point::new(x, y))
}

fn any_point() -> impl Strategy<Value = Point> {
    prop_oneof![
        small_point(),
        (-(1i64 << 62)..(1i64 << 62), -(1i64 << 62)..(1i64 << 62)).prop_map(|(x, y)| Point::new(x, y)),
    ]
}

fn r(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn rcg(n: usize, seed: u64) -> Option<GeoGraph> {
    sample_rcg(n, &RcgParams::unit(40, 100), seed, 5_000).ok()
}

fn order(k: u8, seed: u64) -> EdgeOrder {
    if k == 0 {
        EdgeOrder::Lex
    } else {
        EdgeOrder::Seeded(seed)
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, ..ProptestConfig::default() })]

    #[test]
    fn intersects_matches_oracle(u in any_point(), v in any_point(), w in any_point(), x in any_point()) {
        prop_assert_eq!(intersects(u, v, w, x), oracle_intersects(u, v, w, x));
    }

    #[test]
    fn intersects_is_symmetric(u in small_point(), v in small_point(), w in small_point(), x in small_point()) {
        let r = intersects(u, v, w, x);
        prop_assert_eq!(r, intersects(v, u, w, x));
        prop_assert_eq!(r, intersects(u, v, x, w));
        prop_assert_eq!(r, intersects(w, x, u, v));
    }

    #[test]
    fn left_and_between(u in small_point(), v in small_point(), w in small_point()) {
        prop_assert!(!left(u, u, w) && !left(u, v, u));
        prop_assert_eq!(between(u, v, w), between(v, u, w));
        if u != v && w != u && w != v {
            // B11
            prop_assert!(left(u, v, w) || left(v, u, w));
        }
        let d = Point::new(7, -3);
        let t = |p: Point| Point::new(p.x + d.x, p.y + d.y);
        prop_assert_eq!(left(u, v, w), left(t(u), t(v), t(w)));
    }

    #[test]
    fn inside_is_rotation_invariant(u in small_point(), v in small_point(), w in small_point(), x in small_point()) {
        let r = inside(u, v, w, x);
        prop_assert_eq!(r, inside(v, w, u, x));
        prop_assert_eq!(r, inside(w, u, v, x));
        if r {
            prop_assert!(x != u && x != v && x != w);
        }
    }

    #[test]
    fn crossing_point_lies_on_both(u in small_point(), v in small_point(), w in small_point(), x in small_point()) {
        if let Ok(q) = intersection_point(u, v, w, x) {
            prop_assert!(intersects(u, v, w, x));
            // q on line uv and on line wx
            for (a, b) in [(u, v), (w, x)] {
                prop_assert_eq!((q.x() - r(a.x)) * r(b.y - a.y), (q.y() - r(a.y)) * r(b.x - a.x));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn planarization_is_deterministic(n in 5usize..25, seed in any::<u64>(), k in 0u8..2) {
        let Some(g) = rcg(n, seed) else { return Ok(()) };
        let again = rcg(n, seed).unwrap();
        prop_assert_eq!(graph::to_json(&g), graph::to_json(&again));
        let a = cp_global(&g, &order(k, seed)).unwrap();
        let b = cp_global(&g, &order(k, seed)).unwrap();
        prop_assert_eq!(a.report(&g), b.report(&g));
    }

    #[test]
    fn output_is_plane_and_connected(n in 5usize..30, seed in any::<u64>(), k in 0u8..2) {
        let Some(g) = rcg(n, seed) else { return Ok(()) };
        let t = cp_global(&g, &order(k, seed)).unwrap();
        prop_assert!(verify_f_axioms(&g, &t).holds);
        prop_assert!(verify_theorem1(&g, &t).holds);
        prop_assert!(verify_lemma1(&g, &t).holds);
        prop_assert!(t.kept.is_subset(g.edges()));
    }

    #[test]
    fn distributed_equals_global(n in 5usize..25, seed in any::<u64>(), k in 0u8..2) {
        let Some(g) = rcg(n, seed) else { return Ok(()) };
        let o = order(k, seed);
        prop_assert_eq!(cp_distributed(&g, &o).unwrap().f, cp_global(&g, &o).unwrap().kept);
    }

    /// The deleting relation of a final state satisfies D1-D6 and D11-D14 on
    /// every 4-tuple.
    #[test]
    fn deleting_satisfies_d_axioms(n in 4usize..=8, seed in any::<u64>(), k in 0u8..2) {
        let Some(g) = sample_rcg(n, &RcgParams::unit(45, 60), seed, 5_000).ok() else { return Ok(()) };
        let t = cp_global(&g, &order(k, seed)).unwrap();
        let kept: &BTreeSet<Edge> = &t.kept;
        let ids: Vec<u32> = g.vertex_ids().collect();
        let e = |a, b| g.has_edge(a, b);
        let f = |a, b| kept.contains(&Edge::new(a, b));
        let cross = |a, b, c, d| intersects(g.pos(a), g.pos(b), g.pos(c), g.pos(d));
        for &u in &ids { for &v in &ids { for &w in &ids { for &x in &ids {
            let d = deleting(&g, kept, u, v, w, x);
            let ctx = format!("{u} {v} {w} {x}");
            if d {
                prop_assert!(e(u, v) && e(w, x) && cross(u, v, w, x), "D1-D3 {}", ctx);
                prop_assert!(e(u, w) && e(v, w), "D4-D5 {}", ctx);
                prop_assert!(!f(u, v), "D6 {}", ctx);
                prop_assert!(!e(u, x) || f(w, x), "D11 {}", ctx);
                prop_assert!(!e(v, x) || f(w, x), "D12 {}", ctx);
            }
            let premise = e(u, v) && e(w, x) && cross(u, v, w, x) && e(u, w) && e(v, w);
            if premise {
                prop_assert!(d || e(u, x) || e(v, x), "D13 {}", ctx);
                prop_assert!(!f(w, x) || d, "D14 {}", ctx);
            }
        }}}}
    }
}
