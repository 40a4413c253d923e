//! Geometric graphs and checkers for their structural properties.

mod io;

pub use io::{from_json, to_json, GraphFile, VertexRecord};

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::geometry::{self, Point};

pub type VertexId = u32;

/// An undirected edge, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: VertexId,
    pub pos: Point,
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("duplicate vertex id {0}")]
    DuplicateId(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(Edge),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Vertex positions plus a symmetric, loop-free edge relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeoGraph {
    vertices: Vec<Vertex>,
    index: BTreeMap<VertexId, usize>,
    edges: BTreeSet<Edge>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl GeoGraph {
    pub fn new<I, E>(vertices: I, edges: E) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, Point)>,
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let vs = vertices.into_iter().map(|(id, pos)| Vertex { id, pos, label: None }).collect();
        Self::from_parts(vs, edges)
    }

    pub fn from_parts<E>(mut vertices: Vec<Vertex>, edges: E) -> Result<Self, GraphError>
    where
        E: IntoIterator<Item = (VertexId, VertexId)>,
    {
        vertices.sort_by_key(|v| v.id);
        let mut index = BTreeMap::new();
        let mut adj = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(GraphError::DuplicateId(v.id));
            }
            adj.insert(v.id, BTreeSet::new());
        }
        let mut g = GeoGraph { vertices, index, edges: BTreeSet::new(), adj };
        for (a, b) in edges {
            g.insert_edge(a, b)?;
        }
        Ok(g)
    }

    fn insert_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        for v in [a, b] {
            if !self.index.contains_key(&v) {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        self.edges.insert(Edge::new(a, b));
        self.adj.get_mut(&a).unwrap().insert(b);
        self.adj.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    /// The same vertex set restricted to the given edges.
    pub fn with_edges<'a, I>(&self, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        Self::from_parts(self.vertices.clone(), edges.into_iter().map(|e| (e.0, e.1)))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().map(|v| v.id)
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn pos(&self, v: VertexId) -> Point {
        self.vertices[self.index[&v]].pos
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.vertices[self.index[&v]].label.as_deref()
    }

    /// Vertex id carrying the given label.
    pub fn by_label(&self, label: &str) -> Option<VertexId> {
        self.vertices.iter().find(|v| v.label.as_deref() == Some(label)).map(|v| v.id)
    }

    /// Display name of a vertex: its label if any, else its id.
    pub fn name(&self, v: VertexId) -> String {
        match self.label(v) {
            Some(l) => l.to_string(),
            None => v.to_string(),
        }
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.edges.contains(&Edge::new(a, b))
    }

    pub fn neighbors(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.adj[&v]
    }

    pub fn segment(&self, e: Edge) -> (Point, Point) {
        (self.pos(e.0), self.pos(e.1))
    }

    /// Whether the straight-line drawings of two edges cross.
    pub fn edges_cross(&self, e: Edge, f: Edge) -> bool {
        let (a, b) = self.segment(e);
        let (c, d) = self.segment(f);
        geometry::intersects(a, b, c, d)
    }

    /// Non-fatal validation findings, such as coincident vertex positions.
    pub fn warnings(&self) -> Vec<String> {
        let mut seen: BTreeMap<Point, VertexId> = BTreeMap::new();
        let mut out = Vec::new();
        for v in &self.vertices {
            if let Some(prev) = seen.insert(v.pos, v.id) {
                out.push(format!("vertices {} and {} share position {}", prev, v.id, v.pos));
            }
        }
        out
    }
}

const MAX_WITNESSES: usize = 1000;

/// Outcome of a property check with witness tuples of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: String,
    pub violations: Vec<Vec<VertexId>>,
    /// Violations found beyond the stored witnesses.
    pub truncated: usize,
    pub holds: bool,
}

impl PropertyReport {
    pub fn new(property: impl Into<String>) -> Self {
        PropertyReport { property: property.into(), violations: Vec::new(), truncated: 0, holds: true }
    }

    pub fn push(&mut self, witness: Vec<VertexId>) {
        self.holds = false;
        if self.violations.len() < MAX_WITNESSES {
            self.violations.push(witness);
        } else {
            self.truncated += 1;
        }
    }

    pub fn violation_count(&self) -> usize {
        self.violations.len() + self.truncated
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            return write!(f, "{}: holds", self.property);
        }
        write!(f, "{}: {} violation(s)", self.property, self.violation_count())?;
        for w in self.violations.iter().take(10) {
            let s: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            write!(f, "\n  ({})", s.join(", "))?;
        }
        if self.violation_count() > 10 {
            write!(f, "\n  ...")?;
        }
        Ok(())
    }
}

/// All unordered pairs of crossing edges, in edge order.
pub fn crossing_pairs(g: &GeoGraph) -> Vec<(Edge, Edge)> {
    let es: Vec<Edge> = g.edges.iter().copied().collect();
    let mut out = Vec::new();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            if g.edges_cross(es[i], es[j]) {
                out.push((es[i], es[j]));
            }
        }
    }
    out
}

pub fn is_plane(g: &GeoGraph) -> bool {
    crossing_pairs(g).is_empty()
}

/// Redundancy: for crossing edges `uv`, `wx`, in every orientation,
/// `E(u,w) ∨ E(v,x)`; equivalently some endpoint sees the other three.
pub fn check_redundancy(g: &GeoGraph) -> PropertyReport {
    let mut r = PropertyReport::new("redundancy");
    for (e, f) in crossing_pairs(g) {
        let (u, v, w, x) = (e.0, e.1, f.0, f.1);
        let ok = (g.has_edge(u, w) || g.has_edge(v, x)) && (g.has_edge(u, x) || g.has_edge(v, w));
        if !ok {
            r.push(vec![u, v, w, x]);
        }
    }
    r
}

/// Edge triangles `(u, v, w)` with `u < v < w`.
pub fn triangles(g: &GeoGraph) -> Vec<(VertexId, VertexId, VertexId)> {
    let mut out = Vec::new();
    for e in g.edges.iter() {
        let (u, v) = (e.0, e.1);
        for &w in g.neighbors(v).range(v + 1..) {
            if g.has_edge(u, w) {
                out.push((u, v, w));
            }
        }
    }
    out
}

/// Vertices lying inside the edge triangle `uvw` in either orientation.
pub fn triangle_interior(g: &GeoGraph, u: VertexId, v: VertexId, w: VertexId) -> Vec<VertexId> {
    let (pu, pv, pw) = (g.pos(u), g.pos(v), g.pos(w));
    g.vertex_ids()
        .filter(|&x| x != u && x != v && x != w)
        .filter(|&x| {
            let px = g.pos(x);
            geometry::inside(pu, pv, pw, px) || geometry::inside(pu, pw, pv, px)
        })
        .collect()
}

/// Coexistence: every vertex inside an edge triangle is joined to all three
/// corners, or to at least two of them when `weak` is set.
pub fn check_coexistence(g: &GeoGraph, weak: bool) -> PropertyReport {
    let mut r = PropertyReport::new(if weak { "weak coexistence" } else { "coexistence" });
    for (u, v, w) in triangles(g) {
        for x in triangle_interior(g, u, v, w) {
            let k = [u, v, w].iter().filter(|&&c| g.has_edge(c, x)).count();
            if k < if weak { 2 } else { 3 } {
                r.push(vec![u, v, w, x]);
            }
        }
    }
    r
}

pub fn is_rcg(g: &GeoGraph) -> bool {
    check_redundancy(g).holds && check_coexistence(g, false).holds
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &GeoGraph) -> Vec<Vec<VertexId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in g.vertex_ids() {
        if !seen.insert(s) {
            continue;
        }
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &b in g.neighbors(a) {
                if seen.insert(b) {
                    comp.push(b);
                    queue.push_back(b);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &GeoGraph) -> bool {
    components(g).len() <= 1
}

/// Hop distances from `s`, up to `limit`.
pub fn bfs(g: &GeoGraph, s: VertexId, limit: usize) -> BTreeMap<VertexId, usize> {
    let mut dist = BTreeMap::from([(s, 0)]);
    let mut queue = VecDeque::from([s]);
    while let Some(a) = queue.pop_front() {
        let d = dist[&a];
        if d == limit {
            continue;
        }
        for &b in g.neighbors(a) {
            if let Entry::Vacant(slot) = dist.entry(b) {
                slot.insert(d + 1);
                queue.push_back(b);
            }
        }
    }
    dist
}

/// Vertices within two hops of `u`, excluding `u`.
pub fn two_hop(g: &GeoGraph, u: VertexId) -> Result<BTreeSet<VertexId>, GraphError> {
    if !g.contains_vertex(u) {
        return Err(GraphError::UnknownVertex(u));
    }
    let mut out: BTreeSet<VertexId> = bfs(g, u, 2).into_keys().collect();
    out.remove(&u);
    Ok(out)
}

/// Pairs of distinct vertices farther apart than `k` hops.
pub fn pairs_beyond(g: &GeoGraph, k: usize) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for a in g.vertex_ids() {
        let d = bfs(g, a, k);
        for b in g.vertex_ids().filter(|&b| b > a) {
            if !d.contains_key(&b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// For `w` strictly between `u` and `v` and `uv ∈ E`, both `uw` and `wv` are edges.
pub fn check_collinear_closure(g: &GeoGraph) -> PropertyReport {
    let mut r = PropertyReport::new("collinear closure");
    for e in g.edges.iter() {
        let (u, v) = (e.0, e.1);
        let (pu, pv) = (g.pos(u), g.pos(v));
        for w in g.vertex_ids() {
            if w == u || w == v || !geometry::between(pu, pv, g.pos(w)) {
                continue;
            }
            if !(g.has_edge(u, w) && g.has_edge(w, v)) {
                r.push(vec![u, v, w]);
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::new(x, y)
    }

    fn fig1a_top_left(drop_wu: bool) -> GeoGraph {
        // u v w x
        let vs = [(0, pt(-700, 100)), (1, pt(-300, 100)), (2, pt(-500, 200)), (3, pt(-500, 0))];
        let mut es = vec![(0, 1), (2, 3), (0, 2), (2, 1)];
        if drop_wu {
            es.retain(|&e| e != (0, 2));
        }
        GeoGraph::new(vs, es).unwrap()
    }

    #[test]
    fn construction_errors() {
        let vs = [(0, pt(0, 0)), (1, pt(1, 0))];
        assert_eq!(GeoGraph::new(vs, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(GeoGraph::new(vs, [(0, 7)]), Err(GraphError::UnknownVertex(7)));
        assert_eq!(GeoGraph::new([(0, pt(0, 0)), (0, pt(1, 1))], []), Err(GraphError::DuplicateId(0)));
        let g = GeoGraph::new([(0, pt(0, 0)), (1, pt(0, 0))], [(1, 0), (0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.warnings().len(), 1);
    }

    #[test]
    fn redundancy() {
        assert!(check_redundancy(&fig1a_top_left(false)).holds);
        let r = check_redundancy(&fig1a_top_left(true));
        assert!(!r.holds);
        assert_eq!(r.violations, vec![vec![0, 1, 2, 3]]);
        assert!(check_redundancy(&GeoGraph::new([], []).unwrap()).holds);
    }

    #[test]
    fn crossing_pairs_examples() {
        assert_eq!(crossing_pairs(&fig1a_top_left(false)), vec![(Edge(0, 1), Edge(2, 3))]);
        let path = GeoGraph::new([(0, pt(0, 0)), (1, pt(1, 0)), (2, pt(2, 1))], [(0, 1), (1, 2)]).unwrap();
        assert!(crossing_pairs(&path).is_empty());
        let k4 = GeoGraph::new(
            [(0, pt(0, 0)), (1, pt(4, 0)), (2, pt(4, 4)), (3, pt(0, 4))],
            [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(crossing_pairs(&k4), vec![(Edge(0, 2), Edge(1, 3))]);
    }

    #[test]
    fn coexistence() {
        let vs = [(0, pt(-3, -5)), (1, pt(5, -5)), (2, pt(1, 1)), (3, pt(1, -3))];
        let full = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 2), (3, 1)];
        let g = GeoGraph::new(vs, full).unwrap();
        assert!(check_coexistence(&g, false).holds);
        let g = GeoGraph::new(vs, full.into_iter().filter(|&e| e != (0, 3))).unwrap();
        let r = check_coexistence(&g, false);
        assert_eq!(r.violations, vec![vec![0, 1, 2, 3]]);
        assert!(check_coexistence(&g, true).holds);
        let tri = GeoGraph::new([(0, pt(0, 0)), (1, pt(4, 0)), (2, pt(0, 4))], [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(check_coexistence(&tri, false).holds);
    }

    #[test]
    fn degenerate_triangle_interior() {
        // collinear u=0, w=2, v=4 with all three edges; x at 1 lies in the open segment
        let g = GeoGraph::new([(0, pt(0, 0)), (1, pt(4, 0)), (2, pt(2, 0)), (3, pt(1, 0))], [(0, 1), (1, 2), (0, 2)])
            .unwrap();
        assert_eq!(triangle_interior(&g, 0, 1, 2), vec![3]);
    }

    #[test]
    fn components_and_two_hop() {
        let g = GeoGraph::new([(0, pt(0, 0)), (1, pt(1, 0)), (2, pt(2, 0))], []).unwrap();
        assert_eq!(components(&g), vec![vec![0], vec![1], vec![2]]);
        let path =
            GeoGraph::new([(0, pt(0, 0)), (1, pt(1, 0)), (2, pt(2, 0)), (3, pt(3, 0))], [(0, 1), (1, 2), (2, 3)])
                .unwrap();
        assert_eq!(two_hop(&path, 0).unwrap(), BTreeSet::from([1, 2]));
        assert_eq!(two_hop(&path, 9), Err(GraphError::UnknownVertex(9)));
        let star =
            GeoGraph::new([(0, pt(0, 0)), (1, pt(1, 0)), (2, pt(0, 1)), (3, pt(-1, 0))], [(0, 1), (0, 2), (0, 3)])
                .unwrap();
        assert_eq!(two_hop(&star, 0).unwrap(), BTreeSet::from([1, 2, 3]));
        let two_tri = GeoGraph::new(
            (0..6).map(|i| (i, pt(i as i64 * 10, (i % 2) as i64))),
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)],
        )
        .unwrap();
        assert_eq!(components(&two_tri).len(), 2);
        assert_eq!(pairs_beyond(&path, 2), vec![(0, 3)]);
    }

    #[test]
    fn collinear_closure() {
        let vs = [(0, pt(0, 0)), (1, pt(4, 0)), (2, pt(2, 0))];
        let g = GeoGraph::new(vs, [(0, 1), (0, 2), (2, 1)]).unwrap();
        assert!(check_collinear_closure(&g).holds);
        let g = GeoGraph::new(vs, [(0, 1)]).unwrap();
        assert_eq!(check_collinear_closure(&g).violations, vec![vec![0, 1, 2]]);
        assert!(!is_rcg(&g) || !check_collinear_closure(&g).holds);
        let g = GeoGraph::new([(0, pt(0, 0)), (1, pt(4, 0)), (2, pt(2, 1))], [(0, 1)]).unwrap();
        assert!(check_collinear_closure(&g).holds);
    }

    #[test]
    fn truncation() {
        let mut r = PropertyReport::new("x");
        for i in 0..1005 {
            r.push(vec![i]);
        }
        assert_eq!(r.violations.len(), 1000);
        assert_eq!(r.truncated, 5);
        assert_eq!(r.violation_count(), 1005);
    }
}
