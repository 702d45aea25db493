//! Batch front end for the `djgraph` library: instance generation,
//! analysis, claim verification, oracle cross-checks and seeded searches.
//!
//! Every command writes one JSON document (to `--out` or stdout) whose body
//! is a pure function of the inputs and flags. Exit codes: 0 clean, 1 a
//! violation or disagreement was found, 2 bad input or configuration.

pub mod commands;
pub mod oracle;
pub mod report;
pub mod search;

use std::path::{Path, PathBuf};

use djgraph::generators::GenError;
use djgraph::graph::{GeometricGraph, GraphDocument, GraphError};
use djgraph::verifier::{ClaimId, UnknownClaim};
use thiserror::Error;

/// Environment variable consulted when `--parallelism` is not given.
pub const PARALLELISM_ENV: &str = "DJGRAPH_PARALLELISM";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        #[source]
        source: GraphError,
    },
    #[error("{0}")]
    Generate(#[from] GenError),
    #[error("{0}; valid claims: all, {valid}", valid = ClaimId::valid_names())]
    Claim(#[from] UnknownClaim),
    #[error("{path}: malformed report: {message}")]
    Report { path: PathBuf, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// How a successful run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Violations,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Clean => 0,
            Outcome::Violations => 1,
        }
    }
}

pub const EXIT_INPUT_ERROR: u8 = 2;

pub fn read_graph(path: &Path) -> Result<(GraphDocument, GeometricGraph), CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    let wrap = |source| CliError::Graph {
        path: path.to_owned(),
        source,
    };
    let doc = GraphDocument::from_json(&text).map_err(wrap)?;
    let graph = doc.clone().into_graph().map_err(wrap)?;
    Ok((doc, graph))
}

/// Writes `body` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

/// Parses `all` or a comma-separated list of claim names.
pub fn parse_claims(list: &str) -> Result<Vec<ClaimId>, CliError> {
    if list.trim() == "all" {
        return Ok(ClaimId::ALL.to_vec());
    }
    let claims = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<ClaimId>, _>>()?;
    if claims.is_empty() {
        return Err(CliError::Config("empty claim list".into()));
    }
    Ok(claims)
}

pub(crate) fn to_pretty_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
