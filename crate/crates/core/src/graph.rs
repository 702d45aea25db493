//! Validated geometric graphs and their JSON interchange form.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{first_degeneracy, segments_disjoint, Degeneracy, Point};

pub type VertexId = usize;

/// Unordered vertex pair stored with the smaller index first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// # Panics
    ///
    /// Panics on a loop.
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "loop edge");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn u(&self) -> VertexId {
        self.0
    }

    pub fn v(&self) -> VertexId {
        self.1
    }

    pub fn has(&self, x: VertexId) -> bool {
        self.0 == x || self.1 == x
    }

    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.has(other.0) || self.has(other.1)
    }

    /// The endpoint other than `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.0 == x {
            self.1
        } else {
            self.0
        }
    }
}

impl From<[usize; 2]> for Edge {
    fn from(a: [usize; 2]) -> Self {
        Edge::new(a[0], a[1])
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("point {index} at {point} exceeds the coordinate limit 2^30")]
    CoordinateOverflow { index: usize, point: Point },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("points {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("edge [{0}, {1}] references a vertex outside 0..{2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("edge [{0}, {0}] is a loop")]
    Loop(usize),
    #[error("edge [{0}, {1}] appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(Edge),
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),
    #[error("malformed graph document: {0}")]
    Malformed(String),
}

/// A straight-line drawing on points in general position; immutable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricGraph {
    points: Vec<Point>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<VertexId>>,
}

impl GeometricGraph {
    /// Validates and builds a graph. Edges are stored sorted.
    pub fn new(points: Vec<Point>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        for (index, point) in points.iter().enumerate() {
            if !point.within_limit() {
                return Err(GraphError::CoordinateOverflow {
                    index,
                    point: *point,
                });
            }
        }
        match first_degeneracy(&points) {
            Some(Degeneracy::Duplicate(i, j)) => return Err(GraphError::DuplicatePoint(i, j)),
            Some(Degeneracy::Collinear(i, j, k)) => {
                return Err(GraphError::CollinearTriple(i, j, k))
            }
            None => {}
        }
        let n = points.len();
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::IndexOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::Loop(a));
            }
            if !set.insert(Edge::new(a, b)) {
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        let edges: Vec<Edge> = set.into_iter().collect();
        let mut adjacency = vec![Vec::new(); n];
        for e in &edges {
            adjacency[e.u()].push(e.v());
            adjacency[e.v()].push(e.u());
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(GeometricGraph {
            points,
            edges,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn e(&self) -> usize {
        self.edges.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: VertexId) -> Point {
        self.points[v]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).max()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a < self.n() && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Position of `edge` in [`GeometricGraph::edges`].
    pub fn edge_index(&self, edge: Edge) -> Option<usize> {
        self.edges.binary_search(&edge).ok()
    }

    /// Closed-segment disjointness of two edges.
    pub fn edges_disjoint(&self, a: Edge, b: Edge) -> bool {
        segments_disjoint(
            self.points[a.u()],
            self.points[a.v()],
            self.points[b.u()],
            self.points[b.v()],
        )
    }

    /// Graph on the vertices where `keep` holds, with edges filtered by
    /// `keep_edge`. Vertices are renumbered in increasing order; the returned
    /// map sends new ids to old ones.
    pub fn restrict(
        &self,
        keep: impl Fn(VertexId) -> bool,
        keep_edge: impl Fn(Edge) -> bool,
    ) -> (GeometricGraph, Vec<VertexId>) {
        let old_ids: Vec<VertexId> = (0..self.n()).filter(|&v| keep(v)).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old_ids.iter().enumerate() {
            new_id[v] = i;
        }
        let points: Vec<Point> = old_ids.iter().map(|&v| self.points[v]).collect();
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .copied()
            .filter(|e| keep(e.u()) && keep(e.v()) && keep_edge(*e))
            .map(|e| Edge::new(new_id[e.u()], new_id[e.v()]))
            .collect();
        let mut adjacency = vec![Vec::new(); points.len()];
        for e in &edges {
            adjacency[e.u()].push(e.v());
            adjacency[e.v()].push(e.u());
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let mut edges = edges;
        edges.sort_unstable();
        (
            GeometricGraph {
                points,
                edges,
                adjacency,
            },
            old_ids,
        )
    }

    /// The graph with vertex `v` and its incident edges removed.
    pub fn without_vertex(&self, v: VertexId) -> GeometricGraph {
        self.restrict(|x| x != v, |_| true).0
    }

    pub fn to_document(&self, name: Option<String>) -> GraphDocument {
        GraphDocument {
            name,
            points: self.points.clone(),
            edges: self.edges.clone(),
        }
    }
}

/// JSON interchange form: `{"name"?, "points": [[x, y], ...], "edges": [[i, j], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub points: Vec<Point>,
    #[serde(deserialize_with = "raw_pairs")]
    pub edges: Vec<Edge>,
}

// Edges are read as raw pairs so that loops reach validation instead of
// panicking inside `Edge::new`.
fn raw_pairs<'de, D>(de: D) -> Result<Vec<Edge>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let raw: Vec<[usize; 2]> = Vec::deserialize(de)?;
    if let Some(p) = raw.iter().find(|p| p[0] == p[1]) {
        return Err(serde::de::Error::custom(format!(
            "edge [{}, {}] is a loop",
            p[0], p[1]
        )));
    }
    Ok(raw.into_iter().map(Edge::from).collect())
}

impl GraphDocument {
    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        serde_json::from_str(text).map_err(|e| GraphError::Malformed(e.to_string()))
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph documents serialize");
        s.push('\n');
        s
    }

    pub fn into_graph(self) -> Result<GeometricGraph, GraphError> {
        // duplicates must survive until validation, so no dedup here
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|e| (e.u(), e.v())).collect();
        GeometricGraph::new(self.points, &pairs)
    }
}
