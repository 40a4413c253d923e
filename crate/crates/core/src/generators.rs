//! Seeded random geometric graphs and the hand-transcribed figure graphs.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, so a seed names the
//! same graph on every platform.

use std::cmp::Ordering;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry::{orient, Point};
use crate::graph::{self, GeoGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("radii must satisfy 0 < r_min <= r_max (got {r_min}, {r_max})")]
    BadRadii { r_min: i64, r_max: i64 },
    #[error("no connected RCG found in {attempts} attempts")]
    Exhausted { attempts: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

fn dist2(a: Point, b: Point) -> i128 {
    let (dx, dy) = (a.x as i128 - b.x as i128, a.y as i128 - b.y as i128);
    dx * dx + dy * dy
}

/// `n` uniform points of the integer square `[0, extent]^2`. With
/// `general_position`, a draw that repeats a point or is collinear with two
/// earlier points is redrawn.
pub fn sample_points<R: Rng>(rng: &mut R, n: usize, extent: i64, general_position: bool) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::new(rng.gen_range(0..=extent), rng.gen_range(0..=extent));
        if general_position {
            let bad = pts
                .iter()
                .enumerate()
                .any(|(i, &a)| a == p || pts[i + 1..].iter().any(|&b| orient(a, b, p) == Ordering::Equal));
            if bad {
                continue;
            }
        }
        pts.push(p);
    }
    pts
}

fn build(pts: &[Point], mut edge: impl FnMut(Point, Point) -> bool) -> GeoGraph {
    let mut es = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if edge(pts[i], pts[j]) {
                es.push((i as VertexId, j as VertexId));
            }
        }
    }
    GeoGraph::new(pts.iter().enumerate().map(|(i, &p)| (i as VertexId, p)), es).expect("ids are distinct")
}

/// Edges join points at squared distance at most `radius^2`.
pub fn unit_disk(n: usize, radius: i64, extent: i64, seed: u64) -> GeoGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = sample_points(&mut rng, n, extent, false);
    let r2 = radius as i128 * radius as i128;
    build(&pts, |a, b| dist2(a, b) <= r2)
}

/// Edges below `r_min` always, above `r_max` never, and with probability one
/// half in between; pairs are visited in id order after the points are drawn.
pub fn quasi_unit_disk(n: usize, r_min: i64, r_max: i64, extent: i64, seed: u64) -> Result<GeoGraph, GeneratorError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = sample_points(&mut rng, n, extent, false);
    quasi_edges(&pts, r_min, r_max, &mut rng)
}

fn quasi_edges<R: Rng>(pts: &[Point], r_min: i64, r_max: i64, rng: &mut R) -> Result<GeoGraph, GeneratorError> {
    if r_min <= 0 || r_min > r_max {
        return Err(GeneratorError::BadRadii { r_min, r_max });
    }
    let (lo, hi) = (r_min as i128 * r_min as i128, r_max as i128 * r_max as i128);
    Ok(build(pts, |a, b| {
        let d = dist2(a, b);
        d <= lo || (d <= hi && rng.gen_bool(0.5))
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskModel {
    Unit { radius: i64 },
    Quasi { r_min: i64, r_max: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RcgParams {
    pub model: DiskModel,
    pub extent: i64,
    pub general_position: bool,
}

impl RcgParams {
    pub fn unit(radius: i64, extent: i64) -> Self {
        RcgParams { model: DiskModel::Unit { radius }, extent, general_position: true }
    }
}

/// First connected RCG among `max_attempts` draws. Attempt `k` draws from a
/// generator seeded with the `k`-th output of one seeded with `seed`.
pub fn sample_rcg(n: usize, params: &RcgParams, seed: u64, max_attempts: usize) -> Result<GeoGraph, GeneratorError> {
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(seeds.next_u64());
        let pts = sample_points(&mut rng, n, params.extent, params.general_position);
        let g = match params.model {
            DiskModel::Unit { radius } => {
                let r2 = radius as i128 * radius as i128;
                build(&pts, |a, b| dist2(a, b) <= r2)
            }
            DiskModel::Quasi { r_min, r_max } => quasi_edges(&pts, r_min, r_max, &mut rng)?,
        };
        if graph::is_connected(&g) && graph::is_rcg(&g) {
            return Ok(g);
        }
    }
    Err(GeneratorError::Exhausted { attempts: max_attempts })
}

const FIXTURES: &[(&str, &str)] = &[
    ("fig1a_1", include_str!("../data/fig1a_1.json")),
    ("fig1a_2", include_str!("../data/fig1a_2.json")),
    ("fig1a_3", include_str!("../data/fig1a_3.json")),
    ("fig1a_4", include_str!("../data/fig1a_4.json")),
    ("fig1b", include_str!("../data/fig1b.json")),
    ("fig2", include_str!("../data/fig2.json")),
    ("fig3", include_str!("../data/fig3.json")),
    ("fig5", include_str!("../data/fig5.json")),
    ("fig6b", include_str!("../data/fig6b.json")),
    ("fig8_counterexample", include_str!("../data/fig8_counterexample.json")),
    ("fig9_cycle3", include_str!("../data/fig9_cycle3.json")),
    ("cycle4", include_str!("../data/cycle4.json")),
];

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

/// A figure graph, coordinates scaled by 100 and rounded.
///
/// `fig6b` adds the edge `w1 v1`, which the drawing leaves out but the
/// construction requires. `cycle4` has no drawing; it is the square analogue
/// of `fig9_cycle3`.
pub fn fixture(name: &str) -> Result<GeoGraph, GeneratorError> {
    let (_, text) =
        FIXTURES.iter().find(|(n, _)| *n == name).ok_or_else(|| GeneratorError::UnknownFixture(name.to_string()))?;
    Ok(graph::from_json(text).expect("shipped fixtures parse"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_disk_basics() {
        assert_eq!(unit_disk(0, 5, 10, 1).n(), 0);
        assert_eq!(unit_disk(20, 30, 100, 7), unit_disk(20, 30, 100, 7));
        let pts = [Point::new(0, 0), Point::new(3, 4)];
        assert_eq!(build(&pts, |a, b| dist2(a, b) <= 25).m(), 1);
        assert_eq!(build(&pts, |a, b| dist2(a, b) <= 24).m(), 0);
    }

    #[test]
    fn quasi_degenerate_and_errors() {
        for seed in 0..5 {
            assert_eq!(quasi_unit_disk(25, 30, 30, 100, seed).unwrap(), unit_disk(25, 30, 100, seed));
        }
        assert_eq!(quasi_unit_disk(3, 5, 4, 10, 0), Err(GeneratorError::BadRadii { r_min: 5, r_max: 4 }));
        assert!(quasi_unit_disk(3, 0, 4, 10, 0).is_err());
        let g = quasi_unit_disk(2, 1000, 1000, 10, 3).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn gray_zone_is_fair() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<Point> = (0..2).map(|i| Point::new(i * 10, 0)).collect();
        let hits = (0..10_000).filter(|_| quasi_edges(&pts, 5, 20, &mut rng).unwrap().m() == 1).count();
        assert!((4_700..=5_300).contains(&hits), "{hits}");
    }

    #[test]
    fn rcg_sampling() {
        let p = RcgParams::unit(40, 100);
        assert_eq!(sample_rcg(1, &p, 0, 1).unwrap().n(), 1);
        assert_eq!(sample_rcg(5, &p, 0, 0), Err(GeneratorError::Exhausted { attempts: 0 }));
        let g = sample_rcg(15, &RcgParams::unit(60, 100), 4, 200).unwrap();
        assert!(graph::is_connected(&g) && graph::is_rcg(&g));
    }

    #[test]
    fn general_position_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let pts = sample_points(&mut rng, 30, 60, true);
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                assert_ne!(pts[i], pts[j]);
                for k in j + 1..pts.len() {
                    assert_ne!(orient(pts[i], pts[j], pts[k]), Ordering::Equal);
                }
            }
        }
    }

    #[test]
    fn fixtures_load() {
        for name in fixture_names() {
            let g = fixture(name).unwrap();
            assert!(g.n() > 0 && g.warnings().is_empty(), "{name}");
        }
        let g = fixture("fig8_counterexample").unwrap();
        assert_eq!((g.n(), g.m()), (7, 15));
        let g = fixture("fig9_cycle3").unwrap();
        assert_eq!((g.n(), g.m()), (7, 9));
        let g = fixture("fig3").unwrap();
        assert_eq!((g.n(), g.m()), (5, 8));
        assert_eq!(fixture("fig7"), Err(GeneratorError::UnknownFixture("fig7".into())));
    }
}
