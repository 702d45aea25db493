//! Seeded falsification search over random instance families.
//!
//! Instance `i` depends only on `(master_seed, i)` and the family
//! parameters. Workers share nothing but the configuration and results are
//! merged in index order, so the report is the same for any thread count.

use std::collections::BTreeMap;

use djgraph::aggregates::potential;
use djgraph::generators::{derive_seed, GenError, GenSpec, Probability};
use djgraph::graph::GeometricGraph;
use djgraph::rational::{format_ratio, int, ratio};
use djgraph::verifier::{check_claim, ClaimId, ClaimReport, Instance, Verdict};
use num::rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Redraws allowed per instance while looking for the minimum degree.
pub const MAX_DRAWS: u64 = 10_000;

pub const CANDIDATE_LABEL: &str = "candidate counterexample - requires manual audit";
pub const DEFECT_LABEL: &str = "violation of a proven statement";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RandomConvex,
    RandomGeneral,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub family: Family,
    /// inclusive vertex-count range
    pub n_range: (usize, usize),
    pub p: Vec<Probability>,
    /// coordinate box for the general family
    #[serde(rename = "box")]
    pub coord_box: i64,
    /// instances are redrawn until every vertex has at least this degree
    pub min_degree: usize,
    pub instances: u64,
    pub master_seed: u64,
    pub claims: Vec<ClaimId>,
    pub stop_on_violation: bool,
    /// worker threads; kept out of the report body
    #[serde(skip)]
    pub parallelism: usize,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let (lo, hi) = self.n_range;
        if lo > hi {
            return Err(CliError::Config(format!("empty n range {lo}:{hi}")));
        }
        let min_n = match self.family {
            Family::RandomConvex => 3,
            Family::RandomGeneral => 1,
        };
        if lo < min_n {
            return Err(CliError::Config(format!(
                "n range must start at {min_n} or more for this family"
            )));
        }
        if self.instances == 0 {
            return Err(CliError::Config("instances must be at least 1".into()));
        }
        if self.p.is_empty() {
            return Err(CliError::Config("no edge probability given".into()));
        }
        if self.claims.is_empty() {
            return Err(CliError::Config("no claims selected".into()));
        }
        if self.parallelism == 0 {
            return Err(CliError::Config("parallelism must be at least 1".into()));
        }
        if self.min_degree >= hi {
            return Err(CliError::Config(format!(
                "minimum degree {} is unreachable with at most {hi} vertices",
                self.min_degree
            )));
        }
        Ok(())
    }

    /// The generator call of instance `index`.
    pub fn instance(&self, index: u64) -> Result<(GenSpec, GeometricGraph), CliError> {
        let base = derive_seed(self.master_seed, index);
        let (lo, hi) = self.n_range;
        let span = (hi - lo + 1) as u64;
        for draw in 0..MAX_DRAWS {
            let s = |k: u64| derive_seed(base, 3 * draw + k);
            let n = lo + (s(0) % span) as usize;
            let p = self.p[(s(1) % self.p.len() as u64) as usize];
            let seed = s(2);
            let spec = match self.family {
                Family::RandomConvex => GenSpec::RandomConvex { n, p, seed },
                Family::RandomGeneral => GenSpec::RandomGeneral {
                    n,
                    p,
                    seed,
                    coord_box: self.coord_box,
                },
            };
            let g = spec.generate()?;
            if g.min_degree().unwrap_or(0) >= self.min_degree {
                return Ok((spec, g));
            }
        }
        Err(CliError::Config(format!(
            "instance {index}: no graph with minimum degree {} after {MAX_DRAWS} draws",
            self.min_degree
        )))
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Tally {
    pub claim: String,
    pub holds: u64,
    pub violated: u64,
    pub not_applicable: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ViolationEntry {
    pub instance: u64,
    pub spec: GenSpec,
    pub label: &'static str,
    pub report: ClaimReport,
}

impl ViolationEntry {
    /// Regenerates the instance and re-checks the claim.
    pub fn replay(&self) -> Result<ClaimReport, GenError> {
        Ok(check_claim(&self.spec.generate()?, self.report.claim))
    }
}

/// Densest instance seen for one value of the largest per-edge count.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DensityRecord {
    pub m: u64,
    pub max_e_over_n: String,
    pub n: usize,
    pub e: usize,
    pub instance: u64,
}

/// Smallest `DJ(G) - (n/2) C(2e/n, 3)` over instances with `2e >= n`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SlackRecord {
    pub min_slack: String,
    pub instance: u64,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Extremes {
    pub density_by_m: Vec<DensityRecord>,
    pub potential_slack: Option<SlackRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub instances_run: u64,
    pub tallies: Vec<Tally>,
    pub candidate_counterexamples: u64,
    pub defects: u64,
    pub violations: Vec<ViolationEntry>,
    pub extremes: Extremes,
}

impl SearchReport {
    pub fn has_violations(&self) -> bool {
        !self.violations.is_empty()
    }

    /// Tally table with columns `claim,holds,violated,not_applicable`.
    pub fn tallies_csv(&self) -> String {
        let mut out = String::from("claim,holds,violated,not_applicable\n");
        for t in &self.tallies {
            out.push_str(&format!(
                "{},{},{},{}\n",
                t.claim, t.holds, t.violated, t.not_applicable
            ));
        }
        out
    }
}

struct InstanceOutcome {
    index: u64,
    spec: GenSpec,
    reports: Vec<ClaimReport>,
    n: usize,
    e: usize,
    m: u64,
    slack: Option<BigRational>,
}

fn run_instance(cfg: &SearchConfig, index: u64) -> Result<InstanceOutcome, CliError> {
    let (spec, g) = cfg.instance(index)?;
    let inst = Instance::new(&g);
    let reports = cfg.claims.iter().map(|&c| inst.check(c)).collect();
    let (n, e) = (g.n(), g.e());
    let slack = (n > 0 && 2 * e >= n).then(|| int(inst.dj_total() as i64) - potential(n, e));
    Ok(InstanceOutcome {
        index,
        spec,
        reports,
        n,
        e,
        m: inst.m_max(),
        slack,
    })
}

pub fn run_search(cfg: &SearchConfig) -> Result<SearchReport, CliError> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;

    let chunk = if cfg.stop_on_violation {
        (64 * cfg.parallelism as u64).max(64)
    } else {
        cfg.instances
    };
    let mut outcomes: Vec<InstanceOutcome> = Vec::new();
    let mut start = 0;
    while start < cfg.instances {
        let end = (start + chunk).min(cfg.instances);
        let batch: Vec<InstanceOutcome> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map(|i| run_instance(cfg, i))
                .collect::<Result<_, _>>()
        })?;
        outcomes.extend(batch);
        if cfg.stop_on_violation {
            let first_bad = outcomes
                .iter()
                .position(|o| o.reports.iter().any(|r| r.verdict == Verdict::Violated));
            if let Some(pos) = first_bad {
                outcomes.truncate(pos + 1);
                break;
            }
        }
        start = end;
    }
    Ok(merge(cfg, outcomes))
}

fn merge(cfg: &SearchConfig, outcomes: Vec<InstanceOutcome>) -> SearchReport {
    let mut tallies: Vec<Tally> = cfg
        .claims
        .iter()
        .map(|c| Tally {
            claim: c.name().to_string(),
            ..Tally::default()
        })
        .collect();
    let mut violations = Vec::new();
    let mut density: BTreeMap<u64, (BigRational, DensityRecord)> = BTreeMap::new();
    let mut slack: Option<(BigRational, u64)> = None;

    for o in &outcomes {
        for (tally, report) in tallies.iter_mut().zip(&o.reports) {
            match report.verdict {
                Verdict::Holds => tally.holds += 1,
                Verdict::NotApplicable => tally.not_applicable += 1,
                Verdict::Violated => {
                    tally.violated += 1;
                    violations.push(ViolationEntry {
                        instance: o.index,
                        spec: o.spec.clone(),
                        label: if report.claim.is_conjecture() {
                            CANDIDATE_LABEL
                        } else {
                            DEFECT_LABEL
                        },
                        report: report.clone(),
                    });
                }
            }
        }
        if o.n > 0 {
            let ratio_now = ratio(o.e as i64, o.n as i64);
            let better = density.get(&o.m).is_none_or(|(best, _)| ratio_now > *best);
            if better {
                let record = DensityRecord {
                    m: o.m,
                    max_e_over_n: format_ratio(&ratio_now),
                    n: o.n,
                    e: o.e,
                    instance: o.index,
                };
                density.insert(o.m, (ratio_now, record));
            }
        }
        if let Some(s) = &o.slack {
            if slack.as_ref().is_none_or(|(best, _)| s < best) {
                slack = Some((s.clone(), o.index));
            }
        }
    }

    let candidate_counterexamples = violations
        .iter()
        .filter(|v| v.label == CANDIDATE_LABEL)
        .count() as u64;
    SearchReport {
        config: cfg.clone(),
        instances_run: outcomes.len() as u64,
        tallies,
        candidate_counterexamples,
        defects: violations.len() as u64 - candidate_counterexamples,
        violations,
        extremes: Extremes {
            density_by_m: density.into_values().map(|(_, r)| r).collect(),
            potential_slack: slack.map(|(s, instance)| SlackRecord {
                min_slack: format_ratio(&s),
                instance,
            }),
        },
    }
}
