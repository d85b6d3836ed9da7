//! Extension and enumeration of minimal Roman dominating functions.
//!
//! A Roman dominating function (rdf) assigns 0, 1 or 2 to every vertex so that
//! each 0-vertex has a neighbor valued 2. This crate decides whether a given
//! assignment can be raised to a minimal rdf, and lists all minimal rdfs of a
//! graph: by a subset walk over the 2-vertices, by a branch-and-reduce search
//! with polynomial delay, or by brute force for cross-checking.

pub mod cli;
pub mod extension;
pub mod graph;
pub mod oracle;
pub mod rdf;
pub mod refined;
pub mod simple;
pub mod stats;

pub use extension::{
    ext_po_rd, ext_rd, gen_ext_po_rd, gen_ext_rd, project_grdf, ExtensionInstance,
};
pub use graph::{Graph, GraphError, VertexId, VertexSet};
pub use rdf::{is_minimal_rdf, is_po_minimal_rdf, is_rdf, Assignment, Order};
pub use refined::{enumerate_minimal_rdf_refined, Grdf, Label};
pub use simple::{enumerate_minimal_rdf_simple, enumerate_po_minimal_simple};
pub use stats::EnumStats;
