//! Round-based simulation of the distributed CP-algorithm.
//!
//! Each vertex holds a frozen copy of its 2-hop neighbourhood and decides its
//! own edges from that copy alone. A decision on `uv` waits until every
//! higher-priority crossing edge in the deciding vertex's view is settled.
//! Both endpoints compute a verdict, exchange it, and keep the edge only when
//! both agree to keep it.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::geometry::{self, Point};
use crate::graph::{self, Edge, GeoGraph, PropertyReport, VertexId};
use crate::planarize::{self, CpTrace, EdgeOrder, PlanarizeError, Removal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistsimError {
    #[error("invalid priority: {0}")]
    InvalidPriority(String),
}

/// A vertex's frozen 2-hop subgraph. Every read is logged so tests can audit
/// that nothing outside the view is touched.
#[derive(Debug)]
pub struct View {
    owner: VertexId,
    pos: BTreeMap<VertexId, Point>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
    log: RefCell<BTreeSet<VertexId>>,
}

impl View {
    fn new(g: &GeoGraph, owner: VertexId) -> Self {
        let mut ids = graph::two_hop(g, owner).expect("owner is a vertex");
        ids.insert(owner);
        let pos = ids.iter().map(|&v| (v, g.pos(v))).collect();
        let adj =
            ids.iter().map(|&v| (v, g.neighbors(v).iter().copied().filter(|w| ids.contains(w)).collect())).collect();
        View { owner, pos, adj, log: RefCell::new(BTreeSet::new()) }
    }

    fn touch(&self, v: VertexId) {
        assert!(self.pos.contains_key(&v), "vertex {} read {v} outside its view", self.owner);
        self.log.borrow_mut().insert(v);
    }

    pub fn owner(&self) -> VertexId {
        self.owner
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.pos.contains_key(&v)
    }

    pub fn pos(&self, v: VertexId) -> Point {
        self.touch(v);
        self.pos[&v]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.touch(a);
        self.touch(b);
        self.adj[&a].contains(&b)
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.touch(v);
        self.adj[&v].iter().copied().collect()
    }

    pub fn vertex_ids(&self) -> Vec<VertexId> {
        self.pos.keys().copied().collect()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (&a, ns) in &self.adj {
            out.extend(ns.iter().filter(|&&b| b > a).map(|&b| Edge(a, b)));
        }
        out
    }

    fn crosses(&self, e: Edge, f: Edge) -> bool {
        geometry::intersects(self.pos(e.0), self.pos(e.1), self.pos(f.0), self.pos(f.1))
    }

    /// Vertex ids read so far.
    pub fn accessed(&self) -> BTreeSet<VertexId> {
        self.log.borrow().clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MessageKind {
    /// An endpoint's verdict on a shared edge, sent to the other endpoint.
    Verdict,
    /// The settled status of an edge, sent through an endpoint's 2-hop set.
    Decision,
    /// From an endpoint of a kept edge to the ends of an edge it crosses.
    RemoveIntersecting,
    /// From an endpoint of a removed edge to its neighbours.
    RemoveOwn,
}

impl fmt::Display for MessageKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            MessageKind::Verdict => "verdict",
            MessageKind::Decision => "decision",
            MessageKind::RemoveIntersecting => "remove-intersecting",
            MessageKind::RemoveOwn => "remove-own",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Message {
    Verdict { edge: Edge, keep: bool },
    Decision { edge: Edge, keep: bool },
    RemoveIntersecting { edge: Edge, by: Edge },
    RemoveOwn { edge: Edge },
}

impl Message {
    fn kind(&self) -> MessageKind {
        match self {
            Message::Verdict { .. } => MessageKind::Verdict,
            Message::Decision { .. } => MessageKind::Decision,
            Message::RemoveIntersecting { .. } => MessageKind::RemoveIntersecting,
            Message::RemoveOwn { .. } => MessageKind::RemoveOwn,
        }
    }
}

#[derive(Debug)]
pub struct NodeState {
    pub id: VertexId,
    pub view: View,
    /// Settled edges this vertex knows about.
    pub decided: BTreeMap<Edge, bool>,
    /// Own verdicts, with the reason for a removal verdict.
    verdicts: BTreeMap<Edge, (bool, Option<Removal>)>,
    partner: BTreeMap<Edge, bool>,
    removal_notes: BTreeMap<Edge, Edge>,
    /// Higher-priority crossing edges in view, per own edge; filled on first use.
    blockers: BTreeMap<Edge, Vec<Edge>>,
    inbox: VecDeque<Message>,
    outbox: Vec<(VertexId, Message)>,
}

impl NodeState {
    fn new(g: &GeoGraph, id: VertexId) -> Self {
        NodeState {
            id,
            view: View::new(g, id),
            decided: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            partner: BTreeMap::new(),
            removal_notes: BTreeMap::new(),
            blockers: BTreeMap::new(),
            inbox: VecDeque::new(),
            outbox: Vec::new(),
        }
    }

    /// The local condition for `uv` with `u` = self: no `wx` in view crosses
    /// `uv` with `x` adjacent to neither `u` nor `v`.
    fn local_condition(&self, v: VertexId) -> (bool, Vec<Edge>) {
        let (u, view) = (self.id, &self.view);
        let uv = Edge::new(u, v);
        let mut bad = BTreeSet::new();
        for w in view.vertex_ids() {
            for x in view.neighbors(w) {
                let wx = Edge::new(w, x);
                if wx == uv || !view.crosses(uv, wx) {
                    continue;
                }
                if !view.has_edge(v, x) && !view.has_edge(u, x) {
                    bad.insert(wx);
                }
            }
        }
        (bad.is_empty(), bad.into_iter().collect())
    }

    fn step(&mut self, rank: &BTreeMap<Edge, usize>, two_hop: &BTreeSet<VertexId>) {
        while let Some(m) = self.inbox.pop_front() {
            match m {
                Message::Verdict { edge, keep } => {
                    self.partner.insert(edge, keep);
                }
                Message::Decision { edge, keep } => {
                    self.decided.insert(edge, keep);
                }
                Message::RemoveIntersecting { edge, by } => {
                    self.removal_notes.entry(edge).or_insert(by);
                }
                Message::RemoveOwn { .. } => {}
            }
        }
        let u = self.id;
        let mut own: Vec<Edge> = self.view.neighbors(u).into_iter().map(|v| Edge::new(u, v)).collect();
        own.sort_by_key(|e| rank[e]);
        for uv in own {
            if self.decided.contains_key(&uv) {
                continue;
            }
            if !self.verdicts.contains_key(&uv) {
                let view = &self.view;
                let crossing = self.blockers.entry(uv).or_insert_with(|| {
                    view.edges()
                        .into_iter()
                        .filter(|&f| f != uv && rank[&f] < rank[&uv] && view.crosses(uv, f))
                        .collect()
                });
                if crossing.iter().any(|f| !self.decided.contains_key(f)) {
                    continue;
                }
                let v = uv.other(u);
                let verdict = if let Some(f) = crossing.iter().find(|f| self.decided[f]) {
                    (false, Some(Removal::CrossedBy(*f)))
                } else if let Some(&f) = self.removal_notes.get(&uv) {
                    (false, Some(Removal::CrossedBy(f)))
                } else {
                    match self.local_condition(v) {
                        (true, _) => (true, None),
                        (false, bad) => (false, Some(Removal::CpFailure(bad))),
                    }
                };
                self.outbox.push((v, Message::Verdict { edge: uv, keep: verdict.0 }));
                self.verdicts.insert(uv, verdict);
            }
            let Some(&theirs) = self.partner.get(&uv) else { continue };
            let keep = self.verdicts[&uv].0 && theirs;
            self.decided.insert(uv, keep);
            for &t in two_hop {
                self.outbox.push((t, Message::Decision { edge: uv, keep }));
            }
            if keep {
                for f in self.view.edges() {
                    if f != uv && !self.decided.contains_key(&f) && self.view.crosses(uv, f) {
                        self.outbox.push((f.0, Message::RemoveIntersecting { edge: f, by: uv }));
                        self.outbox.push((f.1, Message::RemoveIntersecting { edge: f, by: uv }));
                    }
                }
            } else {
                for t in self.view.neighbors(u) {
                    self.outbox.push((t, Message::RemoveOwn { edge: uv }));
                }
            }
        }
    }
}

#[derive(Debug)]
pub struct SimResult {
    pub f: BTreeSet<Edge>,
    pub rounds: usize,
    pub messages: BTreeMap<MessageKind, usize>,
    /// Removal reasons as seen by the lower-id endpoint, or the other one if
    /// only it found a reason.
    pub removed: BTreeMap<Edge, Removal>,
    pub priority: Vec<Edge>,
    pub nodes: Vec<NodeState>,
}

impl SimResult {
    pub fn trace(&self, g: &GeoGraph) -> CpTrace {
        let mut t = CpTrace::from_kept(g, self.f.clone());
        t.order = self.priority.clone();
        t.removed = self.removed.clone();
        t
    }

    /// The trace report followed by a message-count table.
    pub fn report(&self, g: &GeoGraph) -> String {
        let mut s = self.trace(g).report(g);
        writeln!(s, "rounds: {}", self.rounds).unwrap();
        writeln!(s, "messages:").unwrap();
        for (k, n) in &self.messages {
            writeln!(s, "  {k:<20} {n}").unwrap();
        }
        s
    }

    pub fn total_messages(&self) -> usize {
        self.messages.values().sum()
    }
}

pub fn cp_distributed(g: &GeoGraph, priority: &EdgeOrder) -> Result<SimResult, DistsimError> {
    let seq = planarize::edge_sequence(g, priority).map_err(|e| match e {
        PlanarizeError::InvalidOrder(m) => DistsimError::InvalidPriority(m),
        other => DistsimError::InvalidPriority(other.to_string()),
    })?;
    let rank: BTreeMap<Edge, usize> = seq.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let ids: Vec<VertexId> = g.vertex_ids().collect();
    let two_hops: BTreeMap<VertexId, BTreeSet<VertexId>> =
        ids.iter().map(|&v| (v, graph::two_hop(g, v).expect("vertex"))).collect();
    let mut nodes: BTreeMap<VertexId, NodeState> = ids.iter().map(|&v| (v, NodeState::new(g, v))).collect();
    let mut messages: BTreeMap<MessageKind, usize> = BTreeMap::new();
    let mut rounds = 0;
    loop {
        for (id, n) in nodes.iter_mut() {
            n.step(&rank, &two_hops[id]);
        }
        let mut sent = Vec::new();
        for n in nodes.values_mut() {
            sent.append(&mut n.outbox);
        }
        let settled =
            nodes.values().all(|n| n.view.neighbors(n.id).iter().all(|&v| n.decided.contains_key(&Edge::new(n.id, v))));
        if sent.is_empty() && settled {
            break;
        }
        rounds += 1;
        if sent.is_empty() {
            // cannot happen: the lowest-ranked pending edge is always free to proceed
            panic!("distributed run stalled after {rounds} rounds");
        }
        for (to, m) in sent {
            *messages.entry(m.kind()).or_default() += 1;
            nodes.get_mut(&to).expect("recipient").inbox.push_back(m);
        }
    }
    let mut f = BTreeSet::new();
    let mut removed = BTreeMap::new();
    for &e in &seq {
        let (a, b) = (&nodes[&e.0], &nodes[&e.1]);
        let (ka, kb) = (a.decided[&e], b.decided[&e]);
        assert_eq!(ka, kb, "endpoints disagree on {e}");
        if ka {
            f.insert(e);
        } else {
            let reason = a.verdicts[&e].1.clone().or_else(|| b.verdicts[&e].1.clone()).expect("a removal verdict");
            removed.insert(e, reason);
        }
    }
    Ok(SimResult { f, rounds, messages, removed, priority: seq, nodes: nodes.into_values().collect() })
}

/// For every crossing pair `(uv, wx)` and orientation where `wx` could break
/// the CP-condition of `uv` from `u`'s side, `w` or `x` is within two hops of
/// `u`.
pub fn detectability_check(g: &GeoGraph) -> PropertyReport {
    let mut r = PropertyReport::new("crossings that can remove an edge are visible within two hops");
    let hops: BTreeMap<VertexId, BTreeSet<VertexId>> =
        g.vertex_ids().map(|v| (v, graph::two_hop(g, v).expect("vertex"))).collect();
    for (e, f) in graph::crossing_pairs(g) {
        for (a, b) in [(e, f), (f, e)] {
            let (w, x) = (b.0, b.1);
            for (u, v) in [(a.0, a.1), (a.1, a.0)] {
                if g.has_edge(v, w) && g.has_edge(v, x) {
                    continue;
                }
                if !hops[&u].contains(&w) && !hops[&u].contains(&x) {
                    r.push(vec![u, v, w, x]);
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::fixture;

    #[test]
    fn fig3_uv_first() {
        let g = fixture("fig3").unwrap();
        let (u, v) = (g.by_label("u").unwrap(), g.by_label("v").unwrap());
        let mut order = vec![Edge::new(u, v)];
        order.extend(g.edges().iter().filter(|&&e| e != Edge::new(u, v)));
        let o = EdgeOrder::Explicit(order);
        let sim = cp_distributed(&g, &o).unwrap();
        assert_eq!(sim.f, planarize::cp_global(&g, &o).unwrap().kept);
        assert!(sim.f.contains(&Edge::new(u, v)));
        assert_eq!(sim.f.len(), 6);
    }

    #[test]
    fn single_edge() {
        let g = GeoGraph::new([(0, Point::new(0, 0)), (1, Point::new(5, 0))], [(0, 1)]).unwrap();
        let sim = cp_distributed(&g, &EdgeOrder::Lex).unwrap();
        assert_eq!(sim.f.len(), 1);
        assert_eq!(sim.messages.get(&MessageKind::RemoveIntersecting), None);
        assert_eq!(sim.messages.get(&MessageKind::RemoveOwn), None);
        assert!(sim.report(&g).contains("rounds:"));
    }

    #[test]
    fn bad_priority() {
        let g = fixture("fig5").unwrap();
        assert!(matches!(
            cp_distributed(&g, &EdgeOrder::Explicit(vec![Edge(0, 1)])),
            Err(DistsimError::InvalidPriority(_))
        ));
    }

    #[test]
    fn fig5_detectable() {
        assert!(detectability_check(&fixture("fig5").unwrap()).holds);
    }

    #[test]
    fn views_stay_local() {
        let g = fixture("fig8_counterexample").unwrap();
        let sim = cp_distributed(&g, &EdgeOrder::Seeded(5)).unwrap();
        for n in &sim.nodes {
            let mut allowed = graph::two_hop(&g, n.id).unwrap();
            allowed.insert(n.id);
            assert!(n.view.accessed().is_subset(&allowed));
        }
    }
}
