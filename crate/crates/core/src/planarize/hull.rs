use std::cmp::Ordering;

use crate::geometry::{self, orient, GeometryError, Point, RationalPoint};
use crate::graph::{Edge, GeoGraph, PropertyReport, VertexId};

use super::{CpTrace, PlanarizeError};

/// The path of kept edges from `u1` to `w1` along the convex hull of the
/// vertices inside the triangle `u1 q w1`, where `q` is the crossing point of
/// `u1v1` with the kept edge `w1x1` nearest to `u1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullPath {
    pub u1: VertexId,
    pub v1: VertexId,
    pub w1: VertexId,
    pub x1: VertexId,
    pub anchor: RationalPoint,
    /// Vertices strictly between the corners, by id.
    pub inner: Vec<VertexId>,
    /// `u1, ..., w1`.
    pub chain: Vec<VertexId>,
}

pub fn hull_path(g: &GeoGraph, trace: &CpTrace, u1: VertexId, v1: VertexId) -> Result<HullPath, PlanarizeError> {
    let uv = Edge::new(u1, v1);
    if !g.edges().contains(&uv) {
        return Err(PlanarizeError::UnknownEdge(uv));
    }
    if trace.kept.contains(&uv) {
        return Err(PlanarizeError::EdgeInF(uv));
    }
    let (pu, pv) = (g.pos(u1), g.pos(v1));
    let mut best: Option<(Edge, RationalPoint, num_rational::BigRational)> = None;
    let mut tie = false;
    for &f in trace.kept.iter().filter(|&&f| g.edges_cross(uv, f)) {
        let q = geometry::intersection_point(pu, pv, g.pos(f.0), g.pos(f.1)).map_err(|e| match e {
            GeometryError::CollinearOverlap => PlanarizeError::DegenerateAnchor(format!("{f} overlaps {uv}")),
            other => PlanarizeError::DegenerateAnchor(other.to_string()),
        })?;
        let d = q.dist2_to(pu);
        match &best {
            Some((_, _, bd)) if d > *bd => {}
            Some((_, _, bd)) if d == *bd => tie = true,
            _ => {
                tie = false;
                best = Some((f, q, d));
            }
        }
    }
    let Some((f, q, _)) = best else { return Err(PlanarizeError::NoCrossingInF(uv)) };
    if tie {
        return Err(PlanarizeError::DegenerateAnchor(format!("several kept edges cross {uv} nearest to {u1}")));
    }
    let redundant = |w| g.has_edge(w, u1) && g.has_edge(w, v1);
    let (w1, x1) = if redundant(f.0) {
        (f.0, f.1)
    } else if redundant(f.1) {
        (f.1, f.0)
    } else {
        return Err(PlanarizeError::DegenerateAnchor(format!("no endpoint of {f} is adjacent to both {u1} and {v1}")));
    };
    let pw = g.pos(w1);
    let px = g.pos(x1);
    if q.equals_point(pw) || orient(pu, pv, pw) == Ordering::Equal {
        return Err(PlanarizeError::DegenerateAnchor(format!("{} lies on {uv}", g.name(w1))));
    }
    // walk counter-clockwise when w1 is left of u1 -> v1, clockwise otherwise
    let ccw = orient(pu, pv, pw) == Ordering::Greater;
    let l = |a: Point, b: Point, c: Point| if ccw { geometry::left(a, b, c) } else { geometry::left(a, c, b) };
    let ins = |a, b, c, y| l(a, b, y) && l(b, c, y) && l(c, a, y);
    let inner: Vec<VertexId> = g
        .vertex_ids()
        .filter(|&y| {
            let py = g.pos(y);
            y != u1 && y != w1 && ins(pu, pv, pw, py) && ins(pu, px, pw, py)
        })
        .collect();
    let mut pts: Vec<VertexId> = inner.clone();
    pts.push(u1);
    pts.push(w1);
    let chain = wrap(g, &pts, u1, w1, ccw)?;
    Ok(HullPath { u1, v1, w1, x1, anchor: q, inner, chain })
}

fn wrap(
    g: &GeoGraph,
    pts: &[VertexId],
    from: VertexId,
    to: VertexId,
    ccw: bool,
) -> Result<Vec<VertexId>, PlanarizeError> {
    let wrong_side = if ccw { Ordering::Less } else { Ordering::Greater };
    let dist2 = |a: Point, b: Point| {
        let (dx, dy) = (a.x as i128 - b.x as i128, a.y as i128 - b.y as i128);
        dx * dx + dy * dy
    };
    let mut chain = vec![from];
    let mut cur = from;
    while cur != to {
        let pc = g.pos(cur);
        let next = pts
            .iter()
            .copied()
            .filter(|&p| p != cur && g.pos(p) != pc && !chain.contains(&p))
            .filter(|&p| pts.iter().all(|&y| orient(pc, g.pos(p), g.pos(y)) != wrong_side))
            .min_by_key(|&p| (dist2(pc, g.pos(p)), p));
        match next {
            Some(p) if chain.len() <= pts.len() => {
                chain.push(p);
                cur = p;
            }
            _ => {
                return Err(PlanarizeError::DegenerateAnchor(format!(
                    "hull walk from {} stalled at {}",
                    g.name(from),
                    g.name(cur)
                )))
            }
        }
    }
    Ok(chain)
}

/// Every chain step is a kept edge and no kept edge crosses the chain.
pub fn verify_lemma3(g: &GeoGraph, trace: &CpTrace, path: &HullPath) -> PropertyReport {
    let mut r = PropertyReport::new(format!("hull path {}-{} is made of kept edges", g.name(path.u1), g.name(path.w1)));
    if path.chain.first() != Some(&path.u1) || path.chain.last() != Some(&path.w1) {
        r.push(path.chain.clone());
    }
    for s in path.chain.windows(2) {
        let seg = Edge::new(s[0], s[1]);
        if !trace.kept.contains(&seg) {
            r.push(vec![s[0], s[1]]);
        }
        let (a, b) = (g.pos(s[0]), g.pos(s[1]));
        for f in &trace.kept {
            if *f != seg && geometry::intersects(a, b, g.pos(f.0), g.pos(f.1)) {
                r.push(vec![s[0], s[1], f.0, f.1]);
            }
        }
    }
    r
}
