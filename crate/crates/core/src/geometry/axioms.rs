//! Tuple-wise evaluation of the orientation, intersection and inside axioms
//! against a concrete `LeftModel`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Exact, GeometryError, LeftModel, Point};

/// Default number of tuples above which an axiom is sampled instead of enumerated.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

const MAX_WITNESSES: usize = 16;

type AxiomFn = fn(&dyn LeftModel, &[Point]) -> bool;

struct Axiom {
    id: &'static str,
    arity: u32,
    holds: AxiomFn,
}

macro_rules! ax {
    ($id:literal, [$($v:ident),+], |$m:ident| $body:expr) => {
        Axiom {
            id: $id,
            arity: [$(stringify!($v)),+].len() as u32,
            holds: |$m: &dyn LeftModel, t: &[Point]| {
                let mut it = t.iter().copied();
                $(let $v = it.next().unwrap();)+
                $body
            },
        }
    };
}

fn imp(a: bool, b: bool) -> bool {
    !a || b
}

fn table() -> Vec<Axiom> {
    vec![
        ax!("A1", [u, v, w], |m| imp(m.left(u, v, w) && m.left(v, u, w), !m.left(w, u, v))),
        ax!("A2", [u, v, w], |m| imp(u != w && v != w && !m.left(w, u, v) && !m.left(w, v, u), m.left(u, v, w))),
        ax!("A3", [u, v, w, x], |m| imp(m.left(u, v, w) && m.left(v, u, w) && m.left(u, x, w), m.left(u, x, v))),
        ax!("A4", [u, v, w, x], |m| imp(m.left(u, v, w) && m.left(v, u, w) && m.left(u, x, v), m.left(u, x, w))),
        ax!("A5", [u, v, w, x], |m| imp(
            m.left(u, v, w) && m.left(v, w, u) && m.left(w, u, v),
            m.left(u, v, x) || m.left(v, w, x) || m.left(w, u, x)
        )),
        ax!("A6", [u, v, w, x, y, z], |m| imp(
            m.left(u, v, z)
                && m.left(v, w, z)
                && m.left(w, u, z)
                && m.left(x, y, u)
                && m.left(x, y, v)
                && m.left(x, y, w),
            m.left(x, y, z)
        )),
        ax!("B1", [u, v], |m| !m.left(u, u, v)),
        ax!("B2", [u, v], |m| !m.left(u, v, u)),
        ax!("B3", [u, v], |m| imp(u != v, m.left(u, v, v))),
        ax!("B11", [u, v, w], |m| imp(u != v, m.left(u, v, w) || m.left(v, u, w))),
        ax!("B12", [u, v, w], |m| imp(u != w, m.left(u, v, w) || m.left(w, v, u))),
        ax!("B21", [u, v, w], |m| imp(m.between(u, v, w), m.left(u, w, v))),
        ax!("B22", [u, v, w], |m| imp(m.between(u, v, w), m.left(v, w, u))),
        ax!("B23", [u, v, w], |m| imp(m.between(u, v, w), !m.left(w, u, v))),
        ax!("B24", [u, v, w], |m| imp(m.between(u, v, w), !m.left(w, v, u))),
        ax!("B31", [u, v, w], |m| imp(m.left(u, v, w) && m.left(w, v, u), m.left(u, w, v))),
        ax!("B32", [u, v, w], |m| imp(m.left(u, v, w) && m.left(w, v, u), m.left(w, u, v))),
        ax!("B33", [u, v, w], |m| imp(m.left(u, v, w) && m.left(w, v, u), !m.left(v, u, w))),
        ax!("B34", [u, v, w], |m| imp(m.left(u, v, w) && m.left(w, v, u), !m.left(v, w, u))),
        ax!("B41", [u, v, w], |m| imp(
            m.left(u, v, w) && m.left(u, w, v),
            m.left(v, u, w) || m.left(w, v, u) || v == w
        )),
        ax!("B42", [u, v, w], |m| imp(
            m.left(u, v, w) && m.left(u, w, v),
            m.left(v, w, u) || m.left(w, u, v) || v == w
        )),
        ax!("B51", [u, v, w], |m| imp(m.left(u, v, w) && m.left(w, u, v), !m.left(v, u, w))),
        ax!("B52", [u, v, w], |m| imp(m.left(u, v, w) && m.left(u, w, v), m.left(u, w, v) || m.left(v, w, u))),
        // printed without the `v = w` escape, which B1 and B3 refute
        ax!("B53", [u, v, w], |m| imp(
            m.left(u, v, w) && m.left(u, w, v),
            m.left(w, v, u) || m.left(v, w, u) || v == w
        )),
        ax!("B61", [u, v, w], |m| imp(m.left(u, v, w) && m.left(v, w, u), !m.left(w, v, u))),
        ax!("B62", [u, v, w], |m| imp(m.left(u, v, w) && m.left(v, w, u), m.left(v, u, w) || m.left(w, u, v))),
        ax!("B63", [u, v, w], |m| imp(m.left(u, v, w) && m.left(v, w, u), m.left(u, w, v) || m.left(w, u, v))),
        ax!("B71", [u, v, w, x], |m| imp(m.between(u, v, w) && m.left(w, u, x), m.left(v, u, x))),
        ax!("B72", [u, v, w, x], |m| imp(m.between(u, v, w) && m.left(w, x, u), m.left(v, x, u))),
        ax!("B73", [u, v, w, x], |m| imp(m.between(u, v, w) && m.left(x, v, u), m.left(x, v, w))),
        ax!("B74", [u, v, w, x], |m| imp(m.between(u, v, w) && m.left(x, v, u), m.left(x, w, u))),
        ax!("B75", [u, v, w, x], |m| imp(m.between(u, v, w) && m.left(u, w, x), m.left(u, v, x))),
        ax!("B76", [u, v, w, x], |m| imp(m.between(u, v, w) && m.left(u, v, x), m.left(u, w, x))),
        ax!("B77", [u, v, w, x], |m| imp(m.between(u, v, w) && m.left(w, u, x), !m.left(w, v, x))),
        ax!("B78", [u, v, w, x], |m| imp(m.between(u, v, w) && m.left(w, x, u), !m.left(w, x, v))),
        ax!("I1", [u, v, w, x], |m| imp(m.intersects(u, v, w, x), u != w || v != x)),
        ax!("I2", [u, v, w, x], |m| imp(m.intersects(u, v, w, x), u != x || v != w)),
        ax!("I3", [u, v, w, x], |m| imp(m.intersects(u, v, w, x), m.left(u, v, w) || m.left(u, v, x))),
        ax!("I4", [u, v, w, x], |m| imp(m.intersects(u, v, w, x), m.left(v, u, w) || m.left(v, u, x))),
        ax!("I5", [u, v, w, x], |m| imp(m.intersects(u, v, w, x), m.left(w, x, u) || m.left(w, x, v))),
        ax!("I6", [u, v, w, x], |m| imp(m.intersects(u, v, w, x), m.left(x, w, u) || m.left(x, w, v))),
        ax!("I11", [u, v, w, x], |m| imp(
            m.left(u, v, w) && m.left(v, u, x) && m.left(w, x, u) && m.left(x, w, v),
            m.intersects(u, v, w, x) || u == x
        )),
        ax!("I12", [u, v, w, x], |m| imp(
            m.left(u, v, w) && m.left(v, u, x) && m.left(w, x, u) && m.left(x, w, v),
            m.intersects(u, v, w, x) || v == w
        )),
        ax!("I13", [u, v, w, x], |m| imp(
            m.left(u, v, w) && m.left(v, u, x) && m.left(w, x, v) && m.left(x, w, u),
            m.intersects(u, v, w, x)
        )),
        ax!("I14", [u, v, w, x], |m| imp(
            m.left(u, v, x) && m.left(v, u, w) && m.left(w, x, u) && m.left(x, w, v),
            m.intersects(u, v, w, x)
        )),
        ax!("I15", [u, v, w, x], |m| imp(
            m.left(u, v, x) && m.left(v, u, w) && m.left(w, x, v) && m.left(x, w, u),
            m.intersects(u, v, w, x) || u == w
        )),
        ax!("I16", [u, v, w, x], |m| imp(
            m.left(u, v, x) && m.left(v, u, w) && m.left(w, x, v) && m.left(x, w, u),
            m.intersects(u, v, w, x) || v == x
        )),
        ax!("T1", [u, v, w, x], |m| imp(m.inside(u, v, w, x), m.left(u, v, x))),
        ax!("T2", [u, v, w, x], |m| imp(m.inside(u, v, w, x), m.left(v, w, x))),
        ax!("T3", [u, v, w, x], |m| imp(m.inside(u, v, w, x), m.left(w, u, x))),
        ax!("T4", [u, v, w, x], |m| imp(m.left(u, v, x) && m.left(v, w, x) && m.left(w, u, x), m.inside(u, v, w, x))),
        ax!("T5", [u, v, w, x], |m| imp(m.left(u, v, x) && m.left(v, w, x) && m.left(w, u, x), m.inside(v, w, u, x))),
        ax!("T6", [u, v, w, x], |m| imp(m.left(u, v, x) && m.left(v, w, x) && m.left(w, u, x), m.inside(w, u, v, x))),
        ax!("T21", [u, v, w, x, y], |m| imp(m.inside(u, v, x, y) && m.inside(u, v, w, x), m.inside(u, v, w, y))),
        ax!("T22", [u, v, w, x, y], |m| imp(m.inside(v, w, x, y) && m.inside(u, v, w, x), m.inside(u, v, w, y))),
        ax!("T23", [u, v, w, x, y], |m| imp(m.inside(w, u, x, y) && m.inside(u, v, w, x), m.inside(u, v, w, y))),
        ax!("T24", [u, v, w, x, y], |m| imp(
            m.inside(u, v, w, y) && m.inside(u, v, w, x) && x != y,
            m.inside(u, v, x, y) || m.inside(v, w, x, y) || m.inside(w, u, x, y)
        )),
    ]
}

/// All axiom ids understood by [`check_axioms`], in catalog order.
pub fn axiom_ids() -> Vec<&'static str> {
    table().iter().map(|a| a.id).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub id: String,
    pub arity: u32,
    pub tuples_checked: u64,
    pub exhaustive: bool,
    pub violations: u64,
    /// Up to a handful of violating tuples.
    pub witnesses: Vec<Vec<Point>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn total_violations(&self) -> u64 {
        self.results.iter().map(|r| r.violations).sum()
    }

    pub fn holds(&self) -> bool {
        self.total_violations() == 0
    }

    pub fn get(&self, id: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.id == id)
    }
}

/// Checks the selected axioms against the exact model.
///
/// Each axiom is evaluated on every tuple over `points` when there are at most
/// `budget` tuples; otherwise `budget` tuples are drawn uniformly at random.
pub fn check_axioms(points: &[Point], ids: &[&str], budget: u64) -> Result<AxiomReport, GeometryError> {
    check_axioms_with(&Exact, points, ids, budget, 0x5eed)
}

pub fn check_axioms_with(
    model: &dyn LeftModel,
    points: &[Point],
    ids: &[&str],
    budget: u64,
    seed: u64,
) -> Result<AxiomReport, GeometryError> {
    let all = table();
    let mut selected = Vec::with_capacity(ids.len());
    for id in ids {
        match all.iter().find(|a| a.id == *id) {
            Some(a) => selected.push(a),
            None => return Err(GeometryError::UnknownAxiomId(id.to_string())),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut results = Vec::new();
    for ax in selected {
        results.push(run_one(model, ax, points, budget, &mut rng));
    }
    Ok(AxiomReport { results })
}

fn run_one(model: &dyn LeftModel, ax: &Axiom, points: &[Point], budget: u64, rng: &mut ChaCha8Rng) -> AxiomResult {
    let n = points.len() as u64;
    let k = ax.arity as usize;
    let total = n.checked_pow(ax.arity);
    let exhaustive = matches!(total, Some(t) if t <= budget);
    let mut res = AxiomResult {
        id: ax.id.to_string(),
        arity: ax.arity,
        tuples_checked: 0,
        exhaustive,
        violations: 0,
        witnesses: Vec::new(),
    };
    if n == 0 {
        res.exhaustive = true;
        return res;
    }
    let mut tuple = vec![points[0]; k];
    let record = |t: &[Point], res: &mut AxiomResult| {
        res.tuples_checked += 1;
        if !(ax.holds)(model, t) {
            res.violations += 1;
            if res.witnesses.len() < MAX_WITNESSES {
                res.witnesses.push(t.to_vec());
            }
        }
    };
    if exhaustive {
        let mut idx = vec![0usize; k];
        loop {
            for (slot, &i) in tuple.iter_mut().zip(&idx) {
                *slot = points[i];
            }
            record(&tuple, &mut res);
            // odometer increment
            let mut pos = k;
            loop {
                if pos == 0 {
                    return res;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < points.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    } else {
        for _ in 0..budget {
            for slot in tuple.iter_mut() {
                *slot = points[rng.gen_range(0..points.len())];
            }
            record(&tuple, &mut res);
        }
        res
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: i64) -> Vec<Point> {
        let mut v = Vec::new();
        for x in 0..n {
            for y in 0..n {
                v.push(Point::new(x, y));
            }
        }
        v
    }

    struct AlwaysLeft;
    impl LeftModel for AlwaysLeft {
        fn left(&self, _: Point, _: Point, _: Point) -> bool {
            true
        }
    }

    #[test]
    fn grid_a1_to_a4_hold() {
        let r = check_axioms(&grid(4), &["A1", "A2", "A3", "A4"], DEFAULT_BUDGET).unwrap();
        assert!(r.holds(), "{:?}", r);
        assert!(r.results.iter().all(|x| x.exhaustive));
    }

    #[test]
    fn stub_model_is_caught() {
        let r = check_axioms_with(&AlwaysLeft, &grid(2), &["A1"], DEFAULT_BUDGET, 1).unwrap();
        assert!(!r.holds());
        assert!(!r.results[0].witnesses.is_empty());
    }

    #[test]
    fn convex_pentagon_a5() {
        let pts = [(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)].map(Point::from);
        let r = check_axioms(&pts, &["A5"], DEFAULT_BUDGET).unwrap();
        assert!(r.holds());
        assert_eq!(r.results[0].tuples_checked, 625);
    }

    #[test]
    fn unknown_id() {
        assert_eq!(check_axioms(&grid(2), &["Q7"], 10), Err(GeometryError::UnknownAxiomId("Q7".into())));
    }

    #[test]
    fn sampling_respects_budget() {
        let r = check_axioms(&grid(3), &["A6"], 1000).unwrap();
        assert!(!r.results[0].exhaustive);
        assert_eq!(r.results[0].tuples_checked, 1000);
    }

    #[test]
    fn every_id_is_distinct() {
        let ids = axiom_ids();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids.len(), sorted.len());
    }
}
