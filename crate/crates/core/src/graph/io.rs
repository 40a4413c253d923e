use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{GeoGraph, GraphError, Vertex, VertexId};
use crate::geometry::Point;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub id: VertexId,
    pub x: i64,
    pub y: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<[VertexId; 2]>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<GeoGraph, GraphError> {
        let vs =
            self.vertices.into_iter().map(|r| Vertex { id: r.id, pos: Point::new(r.x, r.y), label: r.label }).collect();
        GeoGraph::from_parts(vs, self.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

pub fn from_json(text: &str) -> Result<GeoGraph, GraphError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    file.into_graph()
}

/// Canonical text: vertices by id, edges as sorted `[min, max]` pairs, one per line.
pub fn to_json(g: &GeoGraph) -> String {
    let mut s = String::from("{\n  \"vertices\": [");
    for (i, v) in g.vertices().iter().enumerate() {
        s.push_str(if i == 0 { "\n" } else { ",\n" });
        write!(s, "    {{\"id\": {}, \"x\": {}, \"y\": {}", v.id, v.pos.x, v.pos.y).unwrap();
        if let Some(l) = &v.label {
            write!(s, ", \"label\": {}", serde_json::Value::String(l.clone())).unwrap();
        }
        s.push('}');
    }
    if g.n() > 0 {
        s.push_str("\n  ");
    }
    s.push_str("],\n  \"edges\": [");
    for (i, e) in g.edges().iter().enumerate() {
        s.push_str(if i == 0 { "\n" } else { ",\n" });
        write!(s, "    [{}, {}]", e.0, e.1).unwrap();
    }
    if g.m() > 0 {
        s.push_str("\n  ");
    }
    s.push_str("]\n}\n");
    s
}
