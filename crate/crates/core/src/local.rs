//! Convexity of vertices, leftmost/rightmost edges and the per-vertex
//! bookkeeping built on them.
//!
//! For a convex vertex `v` of degree at least one, the directions to its
//! neighbors fit in a cone narrower than a half-turn. The rightmost
//! neighbor `r_v` opens that cone and the leftmost neighbor `l_v` closes it
//! when sweeping counterclockwise around `v`; the oriented angle
//! `r_v v l_v` is the largest angle spanned by two neighbors.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{orientation, point_in_convex_hull, widest_gap_indices, Point, Sign};
use crate::graph::{Edge, GeometricGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is isolated")]
    Isolated(VertexId),
    #[error("vertex {0} lies inside the convex hull of its neighbors")]
    NonConvex(VertexId),
    #[error("graph is not locally convex (vertex {0} is not convex)")]
    NotLocallyConvex(VertexId),
}

/// `v` lies strictly outside the closed convex hull of its neighbors.
/// Isolated vertices count as convex.
pub fn is_convex_vertex(g: &GeometricGraph, v: VertexId) -> bool {
    let nbrs: Vec<Point> = g.neighbors(v).iter().map(|&w| g.point(w)).collect();
    nbrs.is_empty() || !point_in_convex_hull(g.point(v), &nbrs)
}

pub fn is_locally_convex(g: &GeometricGraph) -> bool {
    (0..g.n()).all(|v| is_convex_vertex(g, v))
}

/// The leftmost and rightmost neighbors of a convex vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Extremes {
    pub leftmost: VertexId,
    pub rightmost: VertexId,
}

/// `(leftmost, rightmost)` neighbors of `v`. A degree-one vertex has its
/// only neighbor on both sides.
pub fn extreme_edges(g: &GeometricGraph, v: VertexId) -> Result<Extremes, LocalError> {
    if v >= g.n() {
        return Err(LocalError::UnknownVertex(v));
    }
    let nbrs = g.neighbors(v);
    if nbrs.is_empty() {
        return Err(LocalError::Isolated(v));
    }
    let dirs: Vec<Point> = nbrs.iter().map(|&w| g.point(w)).collect();
    let gap = widest_gap_indices(g.point(v), &dirs)
        .expect("graph construction guarantees general position");
    match gap {
        Some((first, last)) => Ok(Extremes {
            leftmost: nbrs[last],
            rightmost: nbrs[first],
        }),
        None => Err(LocalError::NonConvex(v)),
    }
}

/// Convexity and extreme neighbors of every vertex, computed once.
#[derive(Clone, Debug)]
pub struct LocalStructure {
    convex: Vec<bool>,
    extremes: Vec<Option<Extremes>>,
}

impl LocalStructure {
    pub fn new(g: &GeometricGraph) -> Self {
        let mut convex = Vec::with_capacity(g.n());
        let mut extremes = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            match extreme_edges(g, v) {
                Ok(x) => {
                    convex.push(true);
                    extremes.push(Some(x));
                }
                Err(LocalError::Isolated(_)) => {
                    convex.push(true);
                    extremes.push(None);
                }
                Err(_) => {
                    convex.push(false);
                    extremes.push(None);
                }
            }
        }
        LocalStructure { convex, extremes }
    }

    pub fn is_convex(&self, v: VertexId) -> bool {
        self.convex[v]
    }

    pub fn first_non_convex(&self) -> Option<VertexId> {
        self.convex.iter().position(|c| !c)
    }

    pub fn non_convex_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.convex
            .iter()
            .enumerate()
            .filter(|(_, c)| !**c)
            .map(|(v, _)| v)
    }

    pub fn locally_convex(&self) -> bool {
        self.first_non_convex().is_none()
    }

    pub fn extremes(&self, v: VertexId) -> Option<Extremes> {
        self.extremes[v]
    }

    pub fn leftmost(&self, v: VertexId) -> Option<VertexId> {
        self.extremes[v].map(|x| x.leftmost)
    }

    pub fn rightmost(&self, v: VertexId) -> Option<VertexId> {
        self.extremes[v].map(|x| x.rightmost)
    }
}

/// Everything the discharging argument needs to know about one vertex.
///
/// `set_l` holds the edges `l_v x` with a positive oriented angle
/// `x l_v v`; `set_r` the edges `r_v x` with a negative angle `x r_v v`.
/// The primed sets keep the edges whose far endpoint shares the same
/// leftmost (rightmost) neighbor. `dj_l` / `dj_r` are the edges touching a
/// neighbor of `v` and disjoint from `v l_v` / `v r_v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexLocalData {
    pub vertex: VertexId,
    pub is_convex: bool,
    pub leftmost: VertexId,
    pub rightmost: VertexId,
    pub alpha_l: usize,
    pub alpha_r: usize,
    pub delta_l: u8,
    pub delta_r: u8,
    pub beta_l: u8,
    pub beta_r: u8,
    pub set_l: Vec<Edge>,
    pub set_r: Vec<Edge>,
    pub set_lp: Vec<Edge>,
    pub set_rp: Vec<Edge>,
    pub dj_l: Vec<Edge>,
    pub dj_r: Vec<Edge>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn side_extreme(local: &LocalStructure, v: VertexId, side: Side) -> VertexId {
    match side {
        Side::Left => local.leftmost(v),
        Side::Right => local.rightmost(v),
    }
    .expect("extremes exist for non-isolated vertices of a locally convex graph")
}

/// Edges `a x` (for `a` the extreme neighbor on `side`) whose angle `x a v`
/// has the sign selecting that side, with the primed subset.
fn side_sets(
    g: &GeometricGraph,
    local: &LocalStructure,
    v: VertexId,
    side: Side,
) -> (Vec<Edge>, Vec<Edge>, u8) {
    let a = side_extreme(local, v, side);
    let wanted = match side {
        Side::Left => Sign::Positive,
        Side::Right => Sign::Negative,
    };
    let mut all = Vec::new();
    let mut primed = Vec::new();
    let mut delta = 0;
    for &x in g.neighbors(a) {
        if x == v {
            continue;
        }
        // oriented angle x a v
        if orientation(g.point(a), g.point(x), g.point(v)) != wanted {
            continue;
        }
        let edge = Edge::new(a, x);
        all.push(edge);
        if side_extreme(local, x, side) == a {
            primed.push(edge);
        } else {
            delta = 1;
        }
    }
    all.sort_unstable();
    primed.sort_unstable();
    (all, primed, delta)
}

fn disjoint_near(g: &GeometricGraph, v: VertexId, extreme: VertexId) -> Vec<Edge> {
    let reference = Edge::new(v, extreme);
    let mut out = BTreeSet::new();
    for &w in g.neighbors(v) {
        for &t in g.neighbors(w) {
            let e = Edge::new(w, t);
            if g.edges_disjoint(reference, e) {
                out.insert(e);
            }
        }
    }
    out.into_iter().collect()
}

fn alpha(g: &GeometricGraph, local: &LocalStructure, v: VertexId, side: Side) -> usize {
    g.neighbors(v)
        .iter()
        .filter(|&&w| side_extreme(local, w, side) == v)
        .count()
}

pub(crate) fn local_data_unchecked(
    g: &GeometricGraph,
    local: &LocalStructure,
    v: VertexId,
) -> VertexLocalData {
    let ext = local.extremes(v).expect("checked by caller");
    let (set_l, set_lp, delta_l) = side_sets(g, local, v, Side::Left);
    let (set_r, set_rp, delta_r) = side_sets(g, local, v, Side::Right);
    let alpha_l = alpha(g, local, v, Side::Left);
    let alpha_r = alpha(g, local, v, Side::Right);
    let deg = g.degree(v);
    VertexLocalData {
        vertex: v,
        is_convex: true,
        leftmost: ext.leftmost,
        rightmost: ext.rightmost,
        alpha_l,
        alpha_r,
        delta_l,
        delta_r,
        beta_l: u8::from(alpha_l == deg),
        beta_r: u8::from(alpha_r == deg),
        set_l,
        set_r,
        set_lp,
        set_rp,
        dj_l: disjoint_near(g, v, ext.leftmost),
        dj_r: disjoint_near(g, v, ext.rightmost),
    }
}

/// Per-vertex data for `v`; requires a locally convex graph and `deg v >= 1`.
pub fn vertex_local_data(g: &GeometricGraph, v: VertexId) -> Result<VertexLocalData, LocalError> {
    if v >= g.n() {
        return Err(LocalError::UnknownVertex(v));
    }
    let local = LocalStructure::new(g);
    if let Some(w) = local.first_non_convex() {
        return Err(LocalError::NotLocallyConvex(w));
    }
    if g.degree(v) == 0 {
        return Err(LocalError::Isolated(v));
    }
    Ok(local_data_unchecked(g, &local, v))
}

/// Per-vertex data for every vertex, `None` for isolated ones.
pub fn all_local_data(g: &GeometricGraph) -> Result<Vec<Option<VertexLocalData>>, LocalError> {
    let local = LocalStructure::new(g);
    all_local_data_with(g, &local)
}

pub(crate) fn all_local_data_with(
    g: &GeometricGraph,
    local: &LocalStructure,
) -> Result<Vec<Option<VertexLocalData>>, LocalError> {
    if let Some(w) = local.first_non_convex() {
        return Err(LocalError::NotLocallyConvex(w));
    }
    Ok((0..g.n())
        .map(|v| (g.degree(v) > 0).then(|| local_data_unchecked(g, local, v)))
        .collect())
}
