//! The global CP-algorithm, the deleting relation and checkers for the
//! lemmas behind its correctness.

mod hull;

pub use hull::{hull_path, verify_lemma3, HullPath};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::geometry;
use crate::graph::{self, Edge, GeoGraph, PropertyReport, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarizeError {
    #[error("order is not a permutation of the edge set: {0}")]
    InvalidOrder(String),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("edge {0} is not crossed by any kept edge")]
    NoCrossingInF(Edge),
    #[error("degenerate anchor: {0}")]
    DegenerateAnchor(String),
    #[error("edge {0} is kept")]
    EdgeInF(Edge),
}

/// Edge priority for the algorithm's free choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EdgeOrder {
    /// By (min id, max id).
    Lex,
    /// Lexicographic order shuffled by a seeded ChaCha8 generator.
    Seeded(u64),
    Explicit(Vec<Edge>),
}

impl fmt::Display for EdgeOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeOrder::Lex => f.write_str("lex"),
            EdgeOrder::Seeded(s) => write!(f, "seed:{s}"),
            EdgeOrder::Explicit(_) => f.write_str("explicit"),
        }
    }
}

impl std::str::FromStr for EdgeOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "lex" {
            return Ok(EdgeOrder::Lex);
        }
        match s.strip_prefix("seed:").map(str::parse::<u64>) {
            Some(Ok(n)) => Ok(EdgeOrder::Seeded(n)),
            _ => Err(format!("expected `lex` or `seed:<n>`, got `{s}`")),
        }
    }
}

/// Resolve an order to the full edge sequence, checking it is a permutation.
pub fn edge_sequence(g: &GeoGraph, order: &EdgeOrder) -> Result<Vec<Edge>, PlanarizeError> {
    let lex: Vec<Edge> = g.edges().iter().copied().collect();
    match order {
        EdgeOrder::Lex => Ok(lex),
        EdgeOrder::Seeded(seed) => {
            let mut v = lex;
            v.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
            Ok(v)
        }
        EdgeOrder::Explicit(v) => {
            let v: Vec<Edge> = v.iter().map(|e| Edge::new(e.0, e.1)).collect();
            let set: BTreeSet<Edge> = v.iter().copied().collect();
            if set.len() != v.len() {
                return Err(PlanarizeError::InvalidOrder("repeated edge".into()));
            }
            if let Some(e) = set.iter().find(|e| !g.edges().contains(e)) {
                return Err(PlanarizeError::InvalidOrder(format!("{e} is not an edge")));
            }
            if set.len() != g.m() {
                return Err(PlanarizeError::InvalidOrder(format!("{} of {} edges listed", set.len(), g.m())));
            }
            Ok(v)
        }
    }
}

/// Why an edge left the working set without being kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Removal {
    /// Crossed by this kept edge.
    CrossedBy(Edge),
    /// Chosen, but these crossing edges violate its CP-condition.
    CpFailure(Vec<Edge>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CpTrace {
    /// Edges in the order they were chosen from the working set.
    pub order: Vec<Edge>,
    pub kept: BTreeSet<Edge>,
    pub removed: BTreeMap<Edge, Removal>,
    /// Oriented `(u, v, w, x)`: `wx` deletes `uv`, on the final state.
    pub deletions: Vec<[VertexId; 4]>,
}

impl CpTrace {
    /// A trace carrying only a kept set, for checking hand-built states.
    pub fn from_kept(g: &GeoGraph, kept: BTreeSet<Edge>) -> Self {
        let deletions = deletion_records(g, &kept);
        CpTrace { order: Vec::new(), kept, removed: BTreeMap::new(), deletions }
    }

    pub fn output(&self, g: &GeoGraph) -> GeoGraph {
        g.with_edges(&self.kept).expect("kept edges come from g")
    }

    /// Stable text report: kept edges, removal causes, deletion records.
    pub fn report(&self, g: &GeoGraph) -> String {
        let name = |e: &Edge| format!("{}-{}", g.name(e.0), g.name(e.1));
        let mut s = String::new();
        writeln!(s, "order: {}", self.order.iter().map(name).collect::<Vec<_>>().join(" ")).unwrap();
        writeln!(s, "kept ({}):", self.kept.len()).unwrap();
        for e in &self.kept {
            writeln!(s, "  {}", name(e)).unwrap();
        }
        writeln!(s, "removed ({}):", self.removed.len()).unwrap();
        for (e, why) in &self.removed {
            match why {
                Removal::CrossedBy(c) => writeln!(s, "  {} crossed by kept {}", name(e), name(c)).unwrap(),
                Removal::CpFailure(w) => writeln!(
                    s,
                    "  {} fails CP-condition against {}",
                    name(e),
                    w.iter().map(name).collect::<Vec<_>>().join(", ")
                )
                .unwrap(),
            }
        }
        writeln!(s, "deleting ({}):", self.deletions.len()).unwrap();
        for d in &self.deletions {
            let n: Vec<String> = d.iter().map(|&v| g.name(v)).collect();
            writeln!(s, "  deleting({})", n.join(", ")).unwrap();
        }
        s
    }
}

/// All edges of `g` whose drawings cross `e`.
pub fn crossing_edges(g: &GeoGraph, e: Edge) -> Vec<Edge> {
    g.edges().iter().copied().filter(|&f| f != e && g.edges_cross(e, f)).collect()
}

/// For every `wx ∈ E` crossing `uv`: `(uw ∧ ux) ∨ (vw ∧ vx)`. On failure
/// returns the violating edges.
pub fn cp_condition(g: &GeoGraph, uv: Edge) -> Result<(bool, Vec<Edge>), PlanarizeError> {
    if !g.edges().contains(&uv) {
        return Err(PlanarizeError::UnknownEdge(uv));
    }
    let (u, v) = (uv.0, uv.1);
    let bad: Vec<Edge> = crossing_edges(g, uv)
        .into_iter()
        .filter(|wx| {
            let (w, x) = (wx.0, wx.1);
            !((g.has_edge(u, w) && g.has_edge(u, x)) || (g.has_edge(v, w) && g.has_edge(v, x)))
        })
        .collect();
    Ok((bad.is_empty(), bad))
}

pub fn cp_global(g: &GeoGraph, order: &EdgeOrder) -> Result<CpTrace, PlanarizeError> {
    let seq = edge_sequence(g, order)?;
    let mut in_w: BTreeSet<Edge> = seq.iter().copied().collect();
    let mut trace =
        CpTrace { order: Vec::new(), kept: BTreeSet::new(), removed: BTreeMap::new(), deletions: Vec::new() };
    for uv in seq {
        if !in_w.remove(&uv) {
            continue;
        }
        trace.order.push(uv);
        let (ok, bad) = cp_condition(g, uv)?;
        if ok {
            trace.kept.insert(uv);
            for wx in crossing_edges(g, uv) {
                if in_w.remove(&wx) {
                    trace.removed.insert(wx, Removal::CrossedBy(uv));
                }
            }
        } else {
            trace.removed.insert(uv, Removal::CpFailure(bad));
        }
    }
    trace.deletions = deletion_records(g, &trace.kept);
    Ok(trace)
}

/// `wx` prohibits `uv`: both edges, crossing, redundancy edges `wu` and
/// `wv`, and either no edge from `x` to `u` or `v`, or `wx` kept.
pub fn deleting(g: &GeoGraph, kept: &BTreeSet<Edge>, u: VertexId, v: VertexId, w: VertexId, x: VertexId) -> bool {
    let e = |a, b| g.has_edge(a, b);
    e(u, v)
        && e(w, x)
        && geometry::intersects(g.pos(u), g.pos(v), g.pos(w), g.pos(x))
        && e(u, w)
        && e(v, w)
        && ((!e(u, x) && !e(v, x)) || kept.contains(&Edge::new(w, x)))
}

/// Every oriented `(u, v, w, x)` with `deleting` true, in lexicographic order.
pub fn deletion_records(g: &GeoGraph, kept: &BTreeSet<Edge>) -> Vec<[VertexId; 4]> {
    let mut out = Vec::new();
    for (e, f) in graph::crossing_pairs(g) {
        for (a, b) in [(e, f), (f, e)] {
            for (u, v) in [(a.0, a.1), (a.1, a.0)] {
                for (w, x) in [(b.0, b.1), (b.1, b.0)] {
                    if deleting(g, kept, u, v, w, x) {
                        out.push([u, v, w, x]);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Every edge outside F is crossed by an edge of F.
pub fn verify_lemma1(g: &GeoGraph, trace: &CpTrace) -> PropertyReport {
    let mut r = PropertyReport::new("every removed edge is crossed by a kept edge");
    for &e in g.edges() {
        if trace.kept.contains(&e) {
            continue;
        }
        if !trace.kept.iter().any(|&f| g.edges_cross(e, f)) {
            r.push(vec![e.0, e.1]);
        }
    }
    r
}

/// Some `uv ∈ E` with `u ∈ X`, `v ∉ X` such that every kept edge crossing it
/// lies entirely outside `X`. `None` means no such edge exists.
pub fn verify_lemma2(
    g: &GeoGraph,
    trace: &CpTrace,
    x_set: &BTreeSet<VertexId>,
) -> Result<Option<(VertexId, VertexId)>, PlanarizeError> {
    if x_set.is_empty() || x_set.len() >= g.n() {
        return Err(PlanarizeError::BadPartition("X and its complement must be nonempty".into()));
    }
    if let Some(v) = x_set.iter().find(|v| !g.contains_vertex(**v)) {
        return Err(PlanarizeError::BadPartition(format!("unknown vertex {v}")));
    }
    if let Some(e) = trace.kept.iter().find(|e| x_set.contains(&e.0) != x_set.contains(&e.1)) {
        return Err(PlanarizeError::BadPartition(format!("kept edge {e} leaves X")));
    }
    for &e in g.edges() {
        let (u, v) = if x_set.contains(&e.0) { (e.0, e.1) } else { (e.1, e.0) };
        if !x_set.contains(&u) || x_set.contains(&v) {
            continue;
        }
        let ok =
            trace.kept.iter().filter(|&&f| g.edges_cross(e, f)).all(|f| !x_set.contains(&f.0) && !x_set.contains(&f.1));
        if ok {
            return Ok(Some((u, v)));
        }
    }
    Ok(None)
}

/// Literal check of F1-F6 on the kept set.
pub fn verify_f_axioms(g: &GeoGraph, trace: &CpTrace) -> PropertyReport {
    let mut r = PropertyReport::new("F1-F6");
    let kept: Vec<Edge> = trace.kept.iter().copied().collect();
    for e in &kept {
        if !g.edges().contains(e) {
            r.push(vec![e.0, e.1]);
        }
    }
    for i in 0..kept.len() {
        for j in i + 1..kept.len() {
            if g.edges_cross(kept[i], kept[j]) {
                r.push(vec![kept[i].0, kept[i].1, kept[j].0, kept[j].1]);
            }
        }
    }
    for e in &kept {
        let (pu, pv) = g.segment(*e);
        for w in g.vertex_ids() {
            if w != e.0 && w != e.1 && geometry::between(pu, pv, g.pos(w)) {
                r.push(vec![e.0, e.1, w]);
            }
        }
        for wx in crossing_edges(g, *e) {
            for (u, v) in [(e.0, e.1), (e.1, e.0)] {
                for (w, x) in [(wx.0, wx.1), (wx.1, wx.0)] {
                    let f5 = g.has_edge(u, w) || g.has_edge(v, w);
                    let f6 = g.has_edge(u, x) || g.has_edge(v, x);
                    if !(f5 && f6) {
                        r.push(vec![u, v, w, x]);
                    }
                }
            }
        }
    }
    r
}

/// `(V, F)` is plane, and connected whenever `g` is a connected RCG.
pub fn verify_theorem1(g: &GeoGraph, trace: &CpTrace) -> PropertyReport {
    let out = trace.output(g);
    let mut r = PropertyReport::new("plane and connected output");
    for (e, f) in graph::crossing_pairs(&out) {
        r.push(vec![e.0, e.1, f.0, f.1]);
    }
    if graph::is_connected(g) && graph::is_rcg(g) {
        let comps = graph::components(&out);
        if comps.len() > 1 {
            for c in comps.iter().skip(1) {
                r.push(c.clone());
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    /// The fig3 fixture relabelled: w x u v y.
    fn fig3() -> GeoGraph {
        let vs = [
            (0, Point::new(-501, 170)),
            (1, Point::new(-600, 30)),
            (2, Point::new(-700, 100)),
            (3, Point::new(-300, 100)),
            (4, Point::new(-400, 30)),
        ];
        let (w, x, u, v, y) = (0, 1, 2, 3, 4);
        GeoGraph::new(vs, [(u, v), (u, w), (w, v), (w, x), (w, y), (y, v), (u, x), (x, y)]).unwrap()
    }

    #[test]
    fn fig3_orders() {
        let g = fig3();
        let (w, x, u, v, y) = (0, 1, 2, 3, 4);
        let t = cp_global(&g, &EdgeOrder::Lex).unwrap();
        // lex puts w-x (0,1) first
        let expect: BTreeSet<Edge> =
            [(w, x), (u, w), (w, v), (w, y), (y, v), (u, x), (x, y)].iter().map(|&(a, b)| Edge::new(a, b)).collect();
        assert_eq!(t.kept, expect);
        assert_eq!(t.removed[&Edge::new(u, v)], Removal::CrossedBy(Edge::new(w, x)));
        assert!(deleting(&g, &t.kept, u, v, w, x));
        assert!(!deleting(&g, &t.kept, w, x, u, v));

        let mut first = vec![Edge::new(u, v)];
        first.extend(g.edges().iter().filter(|&&e| e != Edge::new(u, v)));
        let t = cp_global(&g, &EdgeOrder::Explicit(first)).unwrap();
        let expect: BTreeSet<Edge> =
            [(u, v), (u, w), (w, v), (y, v), (u, x), (x, y)].iter().map(|&(a, b)| Edge::new(a, b)).collect();
        assert_eq!(t.kept, expect);
        assert_eq!(t.removed[&Edge::new(w, x)], Removal::CrossedBy(Edge::new(u, v)));
        assert_eq!(t.removed[&Edge::new(w, y)], Removal::CrossedBy(Edge::new(u, v)));
        assert!(verify_lemma1(&g, &t).holds);
        assert!(verify_theorem1(&g, &t).holds);
        assert!(verify_f_axioms(&g, &t).holds);
    }

    #[test]
    fn cp_condition_examples() {
        let g = fig3();
        assert!(cp_condition(&g, Edge::new(0, 1)).unwrap().0);
        assert_eq!(cp_condition(&g, Edge::new(2, 4)), Err(PlanarizeError::UnknownEdge(Edge(2, 4))));
        let single = GeoGraph::new([(0, Point::new(0, 0)), (1, Point::new(1, 1))], [(0, 1)]).unwrap();
        assert_eq!(cp_condition(&single, Edge(0, 1)).unwrap(), (true, vec![]));
        let t = cp_global(&single, &EdgeOrder::Seeded(3)).unwrap();
        assert_eq!(t.kept.len(), 1);
    }

    #[test]
    fn invalid_orders() {
        let g = fig3();
        assert!(cp_global(&g, &EdgeOrder::Explicit(vec![Edge(0, 1)])).is_err());
        let mut dup: Vec<Edge> = g.edges().iter().copied().collect();
        dup[1] = dup[0];
        assert!(cp_global(&g, &EdgeOrder::Explicit(dup)).is_err());
        assert_eq!("seed:12".parse::<EdgeOrder>(), Ok(EdgeOrder::Seeded(12)));
        assert!("seed:x".parse::<EdgeOrder>().is_err());
    }

    #[test]
    fn empty_graph() {
        let g = GeoGraph::new([], []).unwrap();
        let t = cp_global(&g, &EdgeOrder::Lex).unwrap();
        assert!(t.kept.is_empty() && t.order.is_empty());
    }

    #[test]
    fn lemma2_fig6a() {
        // u1 v1 u2 u3 a u4 b c, x100
        let pts = [(-300, 0), (300, 0), (-98, 296), (-54, 98), (0, 300), (24, 136), (20, 24), (-152, -66)];
        let vs = pts.iter().enumerate().map(|(i, &(x, y))| (i as u32, Point::new(x, y)));
        let (u1, v1, u2, u3, a, u4, b, c) = (0, 1, 2, 3, 4, 5, 6, 7);
        let es = [(u1, v1), (u2, u3), (u3, a), (u3, u4), (u4, b), (u1, u2), (u2, v1), (u3, v1), (u4, v1), (u2, c)];
        let g = GeoGraph::new(vs, es).unwrap();
        let kept: BTreeSet<Edge> = [(u3, a), (u4, b), (u2, c)].iter().map(|&(p, q)| Edge::new(p, q)).collect();
        let t = CpTrace::from_kept(&g, kept);
        let x: BTreeSet<VertexId> = (0..8).filter(|&i| i != v1).collect();
        assert_eq!(verify_lemma2(&g, &t, &x).unwrap(), Some((u4, v1)));
        let all: BTreeSet<VertexId> = (0..8).collect();
        assert!(matches!(verify_lemma2(&g, &t, &all), Err(PlanarizeError::BadPartition(_))));
    }

    #[test]
    fn collinear_overlap_can_isolate() {
        // a vertex on the interior of a kept edge loses both of its edges
        let g = GeoGraph::new(
            [(0, Point::new(0, 0)), (1, Point::new(4, 0)), (2, Point::new(2, 0))],
            [(0, 1), (0, 2), (1, 2)],
        )
        .unwrap();
        assert!(graph::is_rcg(&g));
        let t = cp_global(&g, &EdgeOrder::Lex).unwrap();
        assert_eq!(t.kept.len(), 1);
        assert!(!verify_f_axioms(&g, &t).holds);
        assert!(!verify_theorem1(&g, &t).holds);
    }
}
