//! Atoroidal 4-valent plane graphs.
//!
//! A link projection is a 4-valent graph embedded in the sphere. This crate
//! represents such graphs as combinatorial maps, decides which simple closed
//! curves meeting the graph in at most six points are trivial, decomposes
//! projections along non-trivial curves into atoroidal pieces, and enumerates
//! atoroidal graphs by repeated surgery on the antiprism family.

pub mod canon;
pub mod curves;
pub mod decompose;
pub mod enumerate;
pub mod error;
pub mod planar_code;
pub mod planemap;
pub mod surgery;

pub use canon::{canonical_code, is_isomorphic, CanonicalCode, Chirality};
pub use curves::{
    classify_side, enumerate_curves, find_nontrivial_curve, is_atoroidal, is_hyperbolic,
    is_irreducible, is_trivial, split_sides, CurveCode, SideGraphData, SidePattern,
};
pub use decompose::{cut_along, decompose, reassemble, DecompositionTree, Gluing};
pub use error::{CurveError, DecomposeError, EnumerateError, MapError, ParseError, SurgeryError};
pub use planemap::{exception, torus_graph, Dart, ExceptionKind, FaceVector, PlaneMap};
pub use surgery::{
    apply_surgery, atoroidal_predecessors, legal_surgeries, simple_vertices, split_at, SplitMove, SurgeryMove,
};
