//! Exact analysis of disjoint edge pairs in geometric graphs.
//!
//! A geometric graph is a set of points in general position with integer
//! coordinates, joined by straight segments. This crate counts pairs of
//! disjoint edges, derives the local structure of locally convex graphs,
//! checks the known inequalities on concrete instances and generates the
//! extremal and random families used to probe them. All arithmetic is exact.

pub mod aggregates;
pub mod disjoint;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod local;
pub mod rational;
pub mod verifier;

pub use aggregates::{aggregates, potential, prune_leftmost, GraphAggregates, PrunedGraph};
pub use disjoint::{dj_counts, dj_edge, dj_graph};
pub use geometry::{orientation, segments_disjoint, Point, Sign};
pub use graph::{Edge, GeometricGraph, GraphDocument, GraphError, VertexId};
pub use local::{LocalStructure, VertexLocalData};
pub use verifier::{check_all, check_claim, ClaimId, ClaimReport, Verdict};
