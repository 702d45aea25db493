//! The analysis report document and its consistency audit.

use djgraph::aggregates::{aggregates, Applicable, GraphAggregates};
use djgraph::graph::GeometricGraph;
use djgraph::local::{all_local_data, VertexLocalData};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub locally_convex: bool,
    pub aggregates: GraphAggregates,
    /// one entry per vertex, `null` for isolated vertices
    pub vertices: Applicable<Vec<Option<VertexLocalData>>>,
}

pub fn analyze(g: &GeometricGraph, name: Option<String>) -> AnalysisReport {
    let (locally_convex, vertices) = match all_local_data(g) {
        Ok(data) => (true, Applicable::Value(data)),
        Err(_) => (
            false,
            Applicable::NotApplicable("graph is not locally convex"),
        ),
    };
    AnalysisReport {
        name,
        locally_convex,
        aggregates: aggregates(g),
        vertices,
    }
}

/// Result of checking a saved analysis report against itself and against
/// a fresh recomputation on the graph.
#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct ReportAudit {
    pub consistent: bool,
    pub problems: Vec<String>,
}

pub fn audit_report(report: &Value, g: &GeometricGraph) -> Result<ReportAudit, String> {
    let agg = report
        .get("aggregates")
        .ok_or("missing \"aggregates\" object")?;
    let field = |name: &str| {
        agg.get(name)
            .and_then(Value::as_u64)
            .ok_or(format!("aggregates.{name} is not an unsigned integer"))
    };
    let dj_total = field("dj_total")?;
    let per_edge = agg
        .get("dj_per_edge")
        .and_then(Value::as_array)
        .ok_or("aggregates.dj_per_edge is not an array")?;
    let mut sum = 0u64;
    for entry in per_edge {
        sum += entry
            .get("dj")
            .and_then(Value::as_u64)
            .ok_or("dj_per_edge entry without an integer \"dj\"")?;
    }

    let mut problems = Vec::new();
    if sum != 2 * dj_total {
        problems.push(format!(
            "handshake mismatch: sum of per-edge counts is {sum}, twice dj_total is {}",
            2 * dj_total
        ));
    }
    let fresh = aggregates(g);
    if dj_total != fresh.dj_total {
        problems.push(format!(
            "dj_total is {dj_total}, recomputed value is {}",
            fresh.dj_total
        ));
    }
    if per_edge.len() != fresh.dj_per_edge.len() {
        problems.push(format!(
            "dj_per_edge lists {} edges, graph has {}",
            per_edge.len(),
            fresh.dj_per_edge.len()
        ));
    }
    for name in ["n", "e", "m_max"] {
        let expected = match name {
            "n" => fresh.n as u64,
            "e" => fresh.e as u64,
            _ => fresh.m_max,
        };
        let found = field(name)?;
        if found != expected {
            problems.push(format!("{name} is {found}, recomputed value is {expected}"));
        }
    }
    Ok(ReportAudit {
        consistent: problems.is_empty(),
        problems,
    })
}
