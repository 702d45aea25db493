//! The edge-charging argument behind the local disjointness bound.
//!
//! Fix a vertex `v` with extreme neighbors `l_v`, `r_v` and call the other
//! neighbors *middle*. Every edge gets a charge:
//!
//! * 0 if it touches `v`;
//! * 1 if it belongs to `set_l(v)` or `set_r(v)`;
//! * otherwise the number of its endpoints that are middle neighbors.
//!
//! The charges sum to the right-hand side of the local bound, and each edge
//! of charge `c` should be disjoint from at least `c` of the two extreme
//! edges `v l_v`, `v r_v`. [`charge_assignment`] computes the charges and
//! audits both facts.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{orientation, Sign};
use crate::graph::{Edge, GeometricGraph, VertexId};
use crate::local::{local_data_unchecked, LocalStructure, VertexLocalData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChargeError {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("graph is not locally convex (vertex {0} is not convex)")]
    NotLocallyConvex(VertexId),
    #[error("vertex {0} has degree {1}, below the required minimum of 2")]
    LowDegree(VertexId, usize),
}

/// One edge that contradicts the charging argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeFailure {
    pub edge: Edge,
    pub charge: u8,
    pub reason: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeAudit {
    pub vertex: VertexId,
    /// charge of every edge, in the graph's edge order
    pub charges: Vec<(Edge, u8)>,
    pub total: u64,
    /// `sum over middle w of (deg w - 1) + |set_l| + |set_r|`
    pub bound_rhs: u64,
    pub failures: Vec<ChargeFailure>,
}

impl ChargeAudit {
    pub fn passed(&self) -> bool {
        self.total == self.bound_rhs && self.failures.is_empty()
    }
}

/// Right-hand side of the local bound at `v`.
pub(crate) fn local_bound_rhs(g: &GeometricGraph, data: &VertexLocalData) -> u64 {
    let middle: u64 = g
        .neighbors(data.vertex)
        .iter()
        .filter(|&&w| w != data.leftmost && w != data.rightmost)
        .map(|&w| g.degree(w) as u64 - 1)
        .sum();
    middle + data.set_l.len() as u64 + data.set_r.len() as u64
}

pub(crate) fn audit_with(g: &GeometricGraph, data: &VertexLocalData) -> ChargeAudit {
    let v = data.vertex;
    let (l, r) = (data.leftmost, data.rightmost);
    let left_edge = Edge::new(v, l);
    let right_edge = Edge::new(v, r);
    let is_middle = |w: VertexId| w != l && w != r && g.has_edge(v, w);
    let in_lr =
        |e: &Edge| data.set_l.binary_search(e).is_ok() || data.set_r.binary_search(e).is_ok();

    let mut charges = Vec::with_capacity(g.e());
    let mut failures = Vec::new();
    let mut total = 0u64;
    for &e in g.edges() {
        let charge: u8 = if e.has(v) {
            0
        } else if in_lr(&e) {
            1
        } else {
            u8::from(is_middle(e.u())) + u8::from(is_middle(e.v()))
        };
        total += u64::from(charge);
        charges.push((e, charge));

        let off_left = g.edges_disjoint(e, left_edge);
        let off_right = g.edges_disjoint(e, right_edge);
        match charge {
            1 if !(off_left || off_right) => failures.push(ChargeFailure {
                edge: e,
                charge,
                reason: "charge-1 edge meets both extreme edges",
            }),
            2 => {
                if !(off_left && off_right) {
                    failures.push(ChargeFailure {
                        edge: e,
                        charge,
                        reason: "charge-2 edge meets an extreme edge",
                    });
                }
                let (pv, pl, pr) = (g.point(v), g.point(l), g.point(r));
                let inside = |w: VertexId| {
                    orientation(pv, pr, g.point(w)) == Sign::Positive
                        && orientation(pv, g.point(w), pl) == Sign::Positive
                };
                if !(inside(e.u()) && inside(e.v())) {
                    failures.push(ChargeFailure {
                        edge: e,
                        charge,
                        reason: "charge-2 edge leaves the extreme cone",
                    });
                }
            }
            _ => {}
        }
    }
    ChargeAudit {
        vertex: v,
        charges,
        total,
        bound_rhs: local_bound_rhs(g, data),
        failures,
    }
}

/// Charges for every edge relative to `v`, with the audit of the
/// charging argument. Requires a locally convex graph of minimum degree 2.
pub fn charge_assignment(g: &GeometricGraph, v: VertexId) -> Result<ChargeAudit, ChargeError> {
    if v >= g.n() {
        return Err(ChargeError::UnknownVertex(v));
    }
    let local = LocalStructure::new(g);
    if let Some(w) = local.first_non_convex() {
        return Err(ChargeError::NotLocallyConvex(w));
    }
    if let Some(w) = (0..g.n()).find(|&w| g.degree(w) < 2) {
        return Err(ChargeError::LowDegree(w, g.degree(w)));
    }
    Ok(audit_with(g, &local_data_unchecked(g, &local, v)))
}
