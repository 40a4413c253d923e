#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use cpgraph::generators::{sample_rcg, RcgParams};
use cpgraph::graph::GeoGraph;
use cpgraph::Point;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn sub(a: Point, b: Point) -> (BigRational, BigRational) {
    (q(a.x) - q(b.x), q(a.y) - q(b.y))
}

fn cross(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn dotp(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.0 + &a.1 * &b.1
}

fn open01(t: &BigRational) -> bool {
    t.is_positive() && *t < BigRational::one()
}

fn closed01(t: &BigRational) -> bool {
    !t.is_negative() && *t <= BigRational::one()
}

/// Segment intersection by solving the two parametric lines over the
/// rationals: true iff the segments share a point lying in the relative
/// interior of at least one of them. Degenerate and identical segments never
/// intersect.
pub fn oracle_intersects(u: Point, v: Point, w: Point, x: Point) -> bool {
    if u == v || w == x || (u == w && v == x) || (u == x && v == w) {
        return false;
    }
    let r = sub(v, u);
    let s = sub(x, w);
    let wu = sub(w, u);
    let denom = cross(&r, &s);
    if !denom.is_zero() {
        let t = cross(&wu, &s) / &denom;
        let k = cross(&wu, &r) / &denom;
        return closed01(&t) && closed01(&k) && (open01(&t) || open01(&k));
    }
    if !cross(&wu, &r).is_zero() {
        return false;
    }
    // collinear: positions of w and x along u -> v
    let rr = dotp(&r, &r);
    let tw = dotp(&wu, &r) / &rr;
    let tx = dotp(&sub(x, u), &r) / &rr;
    let (lo, hi) = if tw <= tx { (tw, tx) } else { (tx, tw) };
    let a = if lo > BigRational::zero() { lo.clone() } else { BigRational::zero() };
    let b = if hi < BigRational::one() { hi.clone() } else { BigRational::one() };
    match a.cmp(&b) {
        Ordering::Greater => false,
        Ordering::Less => true,
        // a single shared point
        Ordering::Equal => open01(&a) || (lo < a && a < hi),
    }
}

/// The connected RCG corpus: general position, unit disks of radius 40 on
/// `[0,100]^2`, sizes cycling through 5..=30.
pub fn rcg_corpus(count: usize) -> Vec<(u64, GeoGraph)> {
    let params = RcgParams::unit(40, 100);
    (0..count as u64)
        .map(|seed| {
            let n = 5 + (seed as usize * 7) % 26;
            let g = sample_rcg(n, &params, seed, 20_000).expect("corpus graph");
            (seed, g)
        })
        .collect()
}
