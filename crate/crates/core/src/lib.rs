//! Conflict collections of planar graphs.
//!
//! Exact order-type predicates over integer points, the labelled family of
//! stacked triangulations built from `K4`, straight-line embeddability
//! search, certified big-integer evaluation of the sign-pattern bounds used
//! to upper-bound the size of conflict collections, and the explicit
//! octahedron-based collection.
//!
//! All geometry is exact: coordinates are arbitrary-precision integers and
//! every predicate reduces to the sign of a 2x2 determinant.

pub mod bounds;
pub mod construction;
pub mod embedding;
mod error;
pub mod geom;
pub mod otdb;
pub mod sampling;
pub mod triangulations;

pub use error::{Error, Result};
pub use geom::{LabelledPointSet, Point, SignPattern};
pub use triangulations::{Edge, Face, FacedTriangulation, LabelledGraph, StackedTriangulation};
