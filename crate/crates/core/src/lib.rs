//! Geometric graphs, the CP planarization algorithm and its proof obligations.

pub mod distsim;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod planarize;
pub mod smtgen;

pub use geometry::{
    between, inside, intersection_point, intersects, left, GeometryError, LeftModel, Point, RationalPoint,
};
pub use graph::{Edge, GeoGraph, GraphError, PropertyReport, VertexId};
pub use planarize::{cp_global, CpTrace, EdgeOrder, HullPath, PlanarizeError};
