//! Command implementations. Each returns the outcome plus a one-line
//! summary for the error stream; the report body goes to `out`.

use std::path::Path;

use djgraph::generators::GenSpec;
use djgraph::verifier::{ClaimId, ClaimReport, Instance, Verdict};
use serde::Serialize;

use crate::oracle::run_oracles;
use crate::report::{analyze, audit_report, ReportAudit};
use crate::search::{run_search, SearchConfig};
use crate::{emit, read_graph, to_pretty_json, CliError, Outcome};

pub struct Finished {
    pub outcome: Outcome,
    pub summary: String,
}

pub fn generate(spec: &GenSpec, out: Option<&Path>) -> Result<Finished, CliError> {
    let g = spec.generate()?;
    let doc = g.to_document(Some(spec.name()));
    emit(out, &doc.to_json())?;
    Ok(Finished {
        outcome: Outcome::Clean,
        summary: format!("{}: {} points, {} edges", spec.name(), g.n(), g.e()),
    })
}

pub fn analyze_file(input: &Path, out: Option<&Path>) -> Result<Finished, CliError> {
    let (doc, g) = read_graph(input)?;
    let report = analyze(&g, doc.name);
    emit(out, &to_pretty_json(&report))?;
    Ok(Finished {
        outcome: Outcome::Clean,
        summary: format!(
            "n={} e={} dj_total={} m_max={}",
            report.aggregates.n,
            report.aggregates.e,
            report.aggregates.dj_total,
            report.aggregates.m_max
        ),
    })
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    claims: Vec<ClaimReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report_audit: Option<ReportAudit>,
}

pub fn verify_file(
    input: &Path,
    claims: &[ClaimId],
    saved_report: Option<&Path>,
    out: Option<&Path>,
) -> Result<Finished, CliError> {
    let (doc, g) = read_graph(input)?;
    let report_audit = match saved_report {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_owned(),
                source,
            })?;
            let malformed = |message: String| CliError::Report {
                path: path.to_owned(),
                message,
            };
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| malformed(e.to_string()))?;
            Some(audit_report(&value, &g).map_err(malformed)?)
        }
        None => None,
    };
    let inst = Instance::new(&g);
    let reports: Vec<ClaimReport> = claims.iter().map(|&c| inst.check(c)).collect();
    let violated: Vec<&str> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Violated)
        .map(|r| r.claim.name())
        .collect();
    let audit_failed = report_audit.as_ref().is_some_and(|a| !a.consistent);

    let body = VerifyReport {
        name: doc.name,
        claims: reports,
        report_audit,
    };
    emit(out, &to_pretty_json(&body))?;

    let mut summary = if violated.is_empty() {
        format!("{} claims checked, none violated", claims.len())
    } else {
        format!("violated: {}", violated.join(", "))
    };
    if audit_failed {
        summary.push_str("; saved report is inconsistent");
    }
    Ok(Finished {
        outcome: if violated.is_empty() && !audit_failed {
            Outcome::Clean
        } else {
            Outcome::Violations
        },
        summary,
    })
}

pub fn oracle_file(input: &Path, out: Option<&Path>) -> Result<Finished, CliError> {
    let (_, g) = read_graph(input)?;
    let report = run_oracles(&g);
    emit(out, &to_pretty_json(&report))?;
    Ok(Finished {
        outcome: if report.agree {
            Outcome::Clean
        } else {
            Outcome::Violations
        },
        summary: format!(
            "dj_graph={} brute_force={} agree={}",
            report.dj_graph, report.brute_force, report.agree
        ),
    })
}

pub fn search(
    cfg: &SearchConfig,
    out: Option<&Path>,
    csv: Option<&Path>,
) -> Result<Finished, CliError> {
    let report = run_search(cfg)?;
    emit(out, &to_pretty_json(&report))?;
    if let Some(path) = csv {
        std::fs::write(path, report.tallies_csv()).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
    }
    Ok(Finished {
        outcome: if report.has_violations() {
            Outcome::Violations
        } else {
            Outcome::Clean
        },
        summary: format!(
            "{} instances, {} violations ({} candidate counterexamples)",
            report.instances_run,
            report.violations.len(),
            report.candidate_counterexamples
        ),
    })
}
