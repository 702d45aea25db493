//! Whole-graph quantities and the leftmost-edge pruning step.

use num::rational::BigRational;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::disjoint::dj_counts;
use crate::graph::{Edge, GeometricGraph, VertexId};
use crate::local::LocalStructure;
use crate::rational::{binom3, ratio, Exact};

/// A value that exists only under some precondition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applicable<T> {
    Value(T),
    NotApplicable(&'static str),
}

impl<T> Applicable<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Applicable::Value(v) => Some(v),
            Applicable::NotApplicable(_) => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Applicable<U> {
        match self {
            Applicable::Value(v) => Applicable::Value(f(v)),
            Applicable::NotApplicable(r) => Applicable::NotApplicable(r),
        }
    }
}

impl<T: Serialize> Serialize for Applicable<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Applicable::Value(v) => v.serialize(s),
            Applicable::NotApplicable(reason) => {
                use serde::ser::SerializeMap;
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("not_applicable", reason)?;
                m.end()
            }
        }
    }
}

pub(crate) const NOT_LOCALLY_CONVEX: &str = "graph is not locally convex";
pub(crate) const LOW_DEGREE: &str = "graph has an isolated vertex";
pub(crate) const EMPTY: &str = "graph has no vertices";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCount {
    pub edge: Edge,
    pub dj: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphAggregates {
    pub n: usize,
    pub e: usize,
    pub dj_total: u64,
    pub dj_per_edge: Vec<EdgeCount>,
    pub m_max: u64,
    pub avg_degree: Applicable<Exact>,
    pub n_l: Applicable<usize>,
    pub n_r: Applicable<usize>,
    pub t_l: Applicable<usize>,
    pub t_r: Applicable<usize>,
    pub n_ell_pairs: Applicable<usize>,
    pub potential: Applicable<Exact>,
}

/// `F = (n/2) * C(2e/n, 3)` with the generalized binomial.
pub fn potential(n: usize, e: usize) -> BigRational {
    assert!(n > 0, "potential of the empty graph");
    let d = ratio(2 * e as i64, n as i64);
    ratio(n as i64, 2) * binom3(&d)
}

pub fn average_degree(n: usize, e: usize) -> BigRational {
    ratio(2 * e as i64, n as i64)
}

/// Counts of the leftmost (or rightmost) structure of a locally convex
/// graph without isolated vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideCounts {
    /// vertices that are the extreme neighbor of each of their neighbors
    pub saturated: usize,
    /// edges that are the extreme edge of both endpoints
    pub doubled: usize,
}

pub(crate) fn side_counts(
    g: &GeometricGraph,
    local: &LocalStructure,
    extreme: impl Fn(&LocalStructure, VertexId) -> Option<VertexId>,
) -> SideCounts {
    let saturated = (0..g.n())
        .filter(|&v| {
            g.degree(v) > 0 && g.neighbors(v).iter().all(|&w| extreme(local, w) == Some(v))
        })
        .count();
    let doubled = g
        .edges()
        .iter()
        .filter(|e| extreme(local, e.u()) == Some(e.v()) && extreme(local, e.v()) == Some(e.u()))
        .count();
    SideCounts { saturated, doubled }
}

/// Edges `uv` whose endpoints' leftmost edges `u l_u` and `v l_v` are disjoint.
pub(crate) fn leftmost_disjoint_pairs(g: &GeometricGraph, local: &LocalStructure) -> Vec<Edge> {
    g.edges()
        .iter()
        .copied()
        .filter(|e| {
            let (u, v) = (e.u(), e.v());
            match (local.leftmost(u), local.leftmost(v)) {
                (Some(lu), Some(lv)) => g.edges_disjoint(Edge::new(u, lu), Edge::new(v, lv)),
                _ => false,
            }
        })
        .collect()
}

pub fn aggregates(g: &GeometricGraph) -> GraphAggregates {
    let local = LocalStructure::new(g);
    aggregates_with(g, &local, &dj_counts(g))
}

pub(crate) fn aggregates_with(
    g: &GeometricGraph,
    local: &LocalStructure,
    counts: &[u64],
) -> GraphAggregates {
    let (n, e) = (g.n(), g.e());
    let dj_per_edge: Vec<EdgeCount> = g
        .edges()
        .iter()
        .zip(counts)
        .map(|(&edge, &dj)| EdgeCount { edge, dj })
        .collect();
    let dj_total = counts.iter().sum::<u64>() / 2;
    let m_max = counts.iter().copied().max().unwrap_or(0);

    let structural: Result<(), &'static str> = if !local.locally_convex() {
        Err(NOT_LOCALLY_CONVEX)
    } else if g.min_degree().is_none_or(|d| d < 1) {
        Err(if n == 0 { EMPTY } else { LOW_DEGREE })
    } else {
        Ok(())
    };
    let gated = |f: &dyn Fn() -> usize| match structural {
        Ok(()) => Applicable::Value(f()),
        Err(r) => Applicable::NotApplicable(r),
    };
    let left = || side_counts(g, local, |l, v| l.leftmost(v));
    let right = || side_counts(g, local, |l, v| l.rightmost(v));
    let by_n = |f: &dyn Fn() -> BigRational| {
        if n == 0 {
            Applicable::NotApplicable(EMPTY)
        } else {
            Applicable::Value(Exact(f()))
        }
    };

    GraphAggregates {
        n,
        e,
        dj_total,
        dj_per_edge,
        m_max,
        avg_degree: by_n(&|| average_degree(n, e)),
        n_l: gated(&|| left().saturated),
        n_r: gated(&|| right().saturated),
        t_l: gated(&|| left().doubled),
        t_r: gated(&|| right().doubled),
        n_ell_pairs: gated(&|| leftmost_disjoint_pairs(g, local).len()),
        potential: by_n(&|| potential(n, e)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PruneError {
    #[error("graph is not locally convex (vertex {0} is not convex)")]
    NotLocallyConvex(VertexId),
    #[error("vertex {0} has degree {1}, below the required minimum of 2")]
    LowDegree(VertexId, usize),
}

/// The graph left after deleting every leftmost edge and every vertex all
/// of whose edges are leftmost edges of its neighbors.
#[derive(Clone, Debug)]
pub struct PrunedGraph {
    pub graph: GeometricGraph,
    /// original id of each surviving vertex
    pub kept: Vec<VertexId>,
    pub n_l: usize,
    pub t_l: usize,
    pub expected_vertices: usize,
    /// `e - n + t_l`, signed because it is a prediction
    pub expected_edges: i64,
}

impl PrunedGraph {
    pub fn cardinalities_hold(&self) -> bool {
        self.graph.n() == self.expected_vertices && self.graph.e() as i64 == self.expected_edges
    }
}

pub fn prune_leftmost(g: &GeometricGraph) -> Result<PrunedGraph, PruneError> {
    let local = LocalStructure::new(g);
    prune_leftmost_with(g, &local)
}

pub(crate) fn prune_leftmost_with(
    g: &GeometricGraph,
    local: &LocalStructure,
) -> Result<PrunedGraph, PruneError> {
    if let Some(v) = local.first_non_convex() {
        return Err(PruneError::NotLocallyConvex(v));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 2) {
        return Err(PruneError::LowDegree(v, g.degree(v)));
    }
    let counts = side_counts(g, local, |l, v| l.leftmost(v));
    let is_leftmost_edge =
        |e: Edge| local.leftmost(e.u()) == Some(e.v()) || local.leftmost(e.v()) == Some(e.u());
    let saturated = |v: VertexId| g.neighbors(v).iter().all(|&w| local.leftmost(w) == Some(v));
    let (graph, kept) = g.restrict(|v| !saturated(v), |e| !is_leftmost_edge(e));
    Ok(PrunedGraph {
        graph,
        kept,
        n_l: counts.saturated,
        t_l: counts.doubled,
        expected_vertices: g.n() - counts.saturated,
        expected_edges: g.e() as i64 - g.n() as i64 + counts.doubled as i64,
    })
}
