//! Instance-level checks of every inequality and identity in the
//! disjoint-edge theory, with exact arithmetic and structured verdicts.
//!
//! Each check evaluates its own preconditions first. When they fail the
//! verdict is `not_applicable`; a check never passes or fails outside its
//! hypothesis.

mod charge;
mod oracle;

use std::cell::OnceCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::aggregates::{
    average_degree, leftmost_disjoint_pairs, potential, prune_leftmost_with, side_counts,
    PruneError, PrunedGraph,
};
use crate::disjoint::{dj_counts, dj_graph};
use crate::graph::{Edge, GeometricGraph, VertexId};
use crate::local::{all_local_data_with, LocalStructure, VertexLocalData};
use crate::rational::{format_ratio, int, ratio, sqrt_edge_bound, QuadraticSurd};

pub use charge::{charge_assignment, ChargeAudit, ChargeError, ChargeFailure};
pub use oracle::convex_chord_oracle;

macro_rules! claim_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Registry of checkable statements, in report order.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum ClaimId {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl ClaimId {
            pub const ALL: &'static [ClaimId] = &[$(ClaimId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(ClaimId::$variant => $name,)*
                }
            }
        }

        impl FromStr for ClaimId {
            type Err = UnknownClaim;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(ClaimId::$variant),)*
                    _ => Err(UnknownClaim(s.to_string())),
                }
            }
        }
    };
}

claim_ids! {
    Lemma2_1 => "lemma_2_1",
    Identity3 => "identity_3",
    Corollary2_2 => "corollary_2_2",
    Lemma2_3 => "lemma_2_3",
    IneqLLpd => "ineq_LLpd",
    Corollary2_4 => "corollary_2_4",
    Corollary2_5 => "corollary_2_5",
    Theorem1 => "theorem_1",
    Theorem1NonconvexBranch => "theorem_1_nonconvex_branch",
    Theorem2 => "theorem_2",
    Theorem3 => "theorem_3",
    DjGeEMinusN => "dj_ge_e_minus_n",
    Eq9 => "eq_9",
    Ineq10 => "ineq_10",
    Ineq11 => "ineq_11",
    NellEqualsEGprime => "nell_equals_eGprime",
    PruneCardinalities => "prune_cardinalities",
    FRemovalMonotone => "F_removal_monotone",
    Conjecture1 => "conjecture_1",
    Conjecture2 => "conjecture_2",
    Conjecture1Threshold => "conjecture_1_threshold",
}

impl ClaimId {
    /// Open conjectures (and the remark conditional on one): a violation is
    /// a candidate counterexample rather than a defect.
    pub fn is_conjecture(self) -> bool {
        matches!(
            self,
            ClaimId::Conjecture1 | ClaimId::Conjecture2 | ClaimId::Conjecture1Threshold
        )
    }

    pub fn valid_names() -> String {
        ClaimId::ALL
            .iter()
            .map(|c| c.name())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown claim {0:?}")]
pub struct UnknownClaim(pub String);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

/// Where a per-element check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Vertex(VertexId),
    Edge(Edge),
}

/// Preconditions evaluated for a check, plus claim-specific detail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Context {
    pub locally_convex: bool,
    pub min_degree: Option<usize>,
    pub two_e_ge_n: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub context: Context,
}

impl ClaimReport {
    /// `lhs == rhs` as rendered, i.e. the relation is tight.
    pub fn is_tight(&self) -> bool {
        self.lhs.is_some() && self.lhs == self.rhs
    }
}

/// A graph with everything the checks share computed once.
pub struct Instance<'g> {
    g: &'g GeometricGraph,
    local: LocalStructure,
    counts: Vec<u64>,
    dj_total: u64,
    data: OnceCell<Option<Vec<Option<VertexLocalData>>>>,
    pruned: OnceCell<Result<PrunedGraph, PruneError>>,
    pruned_dj: OnceCell<u64>,
}

const NOT_LC: &str = "graph is not locally convex";
const LOW_DEG: &str = "minimum degree is below 2";
const EMPTY: &str = "graph has no vertices";
const SPARSE: &str = "2e < n";

impl<'g> Instance<'g> {
    pub fn new(g: &'g GeometricGraph) -> Self {
        let counts = dj_counts(g);
        let dj_total = counts.iter().sum::<u64>() / 2;
        Instance {
            g,
            local: LocalStructure::new(g),
            counts,
            dj_total,
            data: OnceCell::new(),
            pruned: OnceCell::new(),
            pruned_dj: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &GeometricGraph {
        self.g
    }

    pub fn dj_total(&self) -> u64 {
        self.dj_total
    }

    pub fn m_max(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    fn edge_dj(&self, e: Edge) -> u64 {
        self.counts[self.g.edge_index(e).expect("edge of the graph")]
    }

    fn context(&self) -> Context {
        Context {
            locally_convex: self.local.locally_convex(),
            min_degree: self.g.min_degree(),
            two_e_ge_n: 2 * self.g.e() >= self.g.n(),
            detail: BTreeMap::new(),
        }
    }

    fn local_data(&self) -> Option<&[Option<VertexLocalData>]> {
        self.data
            .get_or_init(|| all_local_data_with(self.g, &self.local).ok())
            .as_deref()
    }

    /// Local data of every vertex, for graphs meeting the standing
    /// assumptions (locally convex, minimum degree 2).
    fn section_data(&self) -> Result<Vec<&VertexLocalData>, &'static str> {
        if self.g.n() == 0 {
            return Err(EMPTY);
        }
        if !self.local.locally_convex() {
            return Err(NOT_LC);
        }
        if self.g.min_degree().unwrap_or(0) < 2 {
            return Err(LOW_DEG);
        }
        let data = self.local_data().expect("locally convex");
        Ok(data
            .iter()
            .map(|d| d.as_ref().expect("no isolated vertices"))
            .collect())
    }

    fn pruned(&self) -> &PrunedGraph {
        self.pruned
            .get_or_init(|| prune_leftmost_with(self.g, &self.local))
            .as_ref()
            .expect("pruning is only requested under its preconditions")
    }

    fn pruned_dj(&self) -> u64 {
        *self
            .pruned_dj
            .get_or_init(|| dj_graph(&self.pruned().graph))
    }

    pub fn check(&self, claim: ClaimId) -> ClaimReport {
        let ctx = self.context();
        let out = match claim {
            ClaimId::Lemma2_1 => self.lemma_2_1(ctx),
            ClaimId::Identity3 => self.identity_3(ctx),
            ClaimId::Corollary2_2 => self.corollary_2_2(ctx),
            ClaimId::Lemma2_3 => self.lemma_2_3(ctx),
            ClaimId::IneqLLpd => self.ineq_llpd(ctx),
            ClaimId::Corollary2_4 => self.corollary_2_4(ctx),
            ClaimId::Corollary2_5 => self.corollary_2_5(ctx),
            ClaimId::Theorem1 => self.theorem_1(ctx),
            ClaimId::Theorem1NonconvexBranch => self.theorem_1_nonconvex(ctx),
            ClaimId::Theorem2 => self.theorem_2(ctx),
            ClaimId::Theorem3 => self.theorem_3(ctx),
            ClaimId::DjGeEMinusN => self.dj_ge_e_minus_n(ctx),
            ClaimId::Eq9 => self.eq_9(ctx),
            ClaimId::Ineq10 => self.ineq_10(ctx),
            ClaimId::Ineq11 => self.ineq_11(ctx),
            ClaimId::NellEqualsEGprime => self.nell_equals_eg_prime(ctx),
            ClaimId::PruneCardinalities => self.prune_cardinalities(ctx),
            ClaimId::FRemovalMonotone => self.f_removal_monotone(ctx),
            ClaimId::Conjecture1 => self.conjecture_1(ctx),
            ClaimId::Conjecture2 => self.conjecture_2(ctx),
            ClaimId::Conjecture1Threshold => self.conjecture_1_threshold(ctx),
        };
        out.finish(claim)
    }

    pub fn check_all(&self) -> Vec<ClaimReport> {
        ClaimId::ALL.iter().map(|&c| self.check(c)).collect()
    }

    /// Charge audits at every vertex; `None` outside the standing assumptions.
    pub fn charge_audits(&self) -> Option<Vec<ChargeAudit>> {
        let data = self.section_data().ok()?;
        Some(data.iter().map(|d| charge::audit_with(self.g, d)).collect())
    }

    fn lemma_2_1(&self, ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        let (mut lhs_sum, mut rhs_sum) = (0u64, 0u64);
        for d in &data {
            let lhs = (d.dj_l.len() + d.dj_r.len()) as u64;
            let rhs = charge::local_bound_rhs(self.g, d);
            if lhs < rhs {
                return Outcome::violated(ctx, int_q(lhs), int_q(rhs), Witness::Vertex(d.vertex));
            }
            let audit = charge::audit_with(self.g, d);
            if !audit.passed() {
                let mut o = Outcome::violated(
                    ctx,
                    int_q(audit.total),
                    int_q(audit.bound_rhs),
                    Witness::Vertex(d.vertex),
                );
                let why = match audit.failures.first() {
                    Some(f) => format!("edge {} (charge {}): {}", f.edge, f.charge, f.reason),
                    None => "charge total differs from the bound".to_string(),
                };
                o.ctx.detail.insert("charge_audit".into(), why);
                return o;
            }
            lhs_sum += lhs;
            rhs_sum += rhs;
        }
        let mut o = Outcome::compare(ctx, int_q(lhs_sum), int_q(rhs_sum), Rel::Ge);
        o.ctx
            .detail
            .insert("scope".into(), "sums over all vertices".into());
        o
    }

    fn identity_3(&self, ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        let n = self.g.n() as u64;
        let sum_l: u64 = data.iter().map(|d| d.alpha_l as u64).sum();
        let sum_r: u64 = data.iter().map(|d| d.alpha_r as u64).sum();
        let mut o = if sum_l != n {
            Outcome::compare(ctx, int_q(sum_l), int_q(n), Rel::Eq)
        } else {
            Outcome::compare(ctx, int_q(sum_r), int_q(n), Rel::Eq)
        };
        o.ctx.detail.insert("sum_alpha_l".into(), sum_l.to_string());
        o.ctx.detail.insert("sum_alpha_r".into(), sum_r.to_string());
        o
    }

    fn dj_local_sum(data: &[&VertexLocalData]) -> u64 {
        data.iter()
            .map(|d| (d.dj_l.len() + d.dj_r.len()) as u64)
            .sum()
    }

    fn corollary_2_2(&self, ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        let (n, e) = (self.g.n() as i64, self.g.e() as i64);
        let mut rhs: i64 = 0;
        for d in &data {
            let deg = self.g.degree(d.vertex) as i64;
            rhs += deg * deg - (d.alpha_l + d.alpha_r) as i64 * deg;
            rhs += (d.set_l.len() + d.set_r.len()) as i64;
        }
        rhs -= 2 * (e - n);
        Outcome::compare(ctx, int_q(Self::dj_local_sum(&data)), int(rhs), Rel::Ge)
    }

    fn lemma_2_3(&self, ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        let pairs = |a: usize| (a * a.saturating_sub(1) / 2) as u64;
        let lp: u64 = data.iter().map(|d| d.set_lp.len() as u64).sum();
        let rp: u64 = data.iter().map(|d| d.set_rp.len() as u64).sum();
        let al: u64 = data.iter().map(|d| pairs(d.alpha_l)).sum();
        let ar: u64 = data.iter().map(|d| pairs(d.alpha_r)).sum();
        let mut o = if lp != al {
            Outcome::compare(ctx, int_q(lp), int_q(al), Rel::Eq)
        } else {
            Outcome::compare(ctx, int_q(rp), int_q(ar), Rel::Eq)
        };
        o.ctx.detail.insert("left".into(), format!("{lp} = {al}"));
        o.ctx.detail.insert("right".into(), format!("{rp} = {ar}"));
        o
    }

    fn ineq_llpd(&self, ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        for d in &data {
            let checks = [
                (d.set_l.len(), d.set_lp.len(), d.delta_l),
                (d.set_r.len(), d.set_rp.len(), d.delta_r),
            ];
            for (all, primed, delta) in checks {
                let rhs = (primed + delta as usize) as u64;
                let delta_consistent = (delta == 1) == (all > primed);
                if (all as u64) < rhs || !delta_consistent {
                    let mut o = Outcome::violated(
                        ctx,
                        int_q(all as u64),
                        int_q(rhs),
                        Witness::Vertex(d.vertex),
                    );
                    if !delta_consistent {
                        o.ctx.detail.insert(
                            "delta".into(),
                            "indicator disagrees with set difference".into(),
                        );
                    }
                    return o;
                }
            }
        }
        let lhs: u64 = data
            .iter()
            .map(|d| (d.set_l.len() + d.set_r.len()) as u64)
            .sum();
        let rhs: u64 = data
            .iter()
            .map(|d| (d.set_lp.len() + d.set_rp.len()) as u64 + u64::from(d.delta_l + d.delta_r))
            .sum();
        let mut o = Outcome::compare(ctx, int_q(lhs), int_q(rhs), Rel::Ge);
        o.ctx
            .detail
            .insert("scope".into(), "sums over all vertices".into());
        o
    }

    fn corollary_2_4(&self, ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        let (n, e) = (self.g.n() as i64, self.g.e() as i64);
        let n_l = side_counts(self.g, &self.local, |l, v| l.leftmost(v)).saturated as i64;
        let n_r = side_counts(self.g, &self.local, |l, v| l.rightmost(v)).saturated as i64;
        if n_l == n || n_r == n {
            return Outcome::na(ctx, "every vertex is saturated on one side");
        }
        let s = 2 * e - n;
        let deltas: i64 = data.iter().map(|d| i64::from(d.delta_l + d.delta_r)).sum();
        let rhs = ratio(s * s, 2 * (n - n_l)) + ratio(s * s, 2 * (n - n_r)) - int(s) + int(deltas);
        let mut o = Outcome::compare(ctx, int_q(Self::dj_local_sum(&data)), rhs, Rel::Ge);
        o.ctx.detail.insert("n_l".into(), n_l.to_string());
        o.ctx.detail.insert("n_r".into(), n_r.to_string());
        o
    }

    fn corollary_2_5(&self, ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        let (n, e) = (self.g.n() as i64, self.g.e() as i64);
        let lhs: u64 = data
            .iter()
            .map(|d| {
                self.edge_dj(Edge::new(d.vertex, d.leftmost))
                    + self.edge_dj(Edge::new(d.vertex, d.rightmost))
            })
            .sum();
        let rhs = ratio((2 * e - n) * (2 * e - 2 * n), n);
        Outcome::compare(ctx, int_q(lhs), rhs, Rel::Ge)
    }

    fn theorem_1(&self, mut ctx: Context) -> Outcome {
        let (n, e) = (self.g.n() as u64, self.g.e() as u64);
        let m = self.m_max();
        let sqrt_branch = sqrt_edge_bound(n, m);
        let linear = int(n as i64 + 3 * m as i64 - 1);
        let lhs = int(e as i64);
        let (rhs, dominant) = match sqrt_branch.cmp_rational(&linear) {
            Ordering::Less => (QuadraticSurd::from_rational(linear.clone()), "linear"),
            Ordering::Equal => (sqrt_branch.clone(), "tie"),
            Ordering::Greater => (sqrt_branch.clone(), "sqrt"),
        };
        ctx.detail.insert("m".into(), m.to_string());
        ctx.detail
            .insert("sqrt_branch".into(), sqrt_branch.to_string());
        ctx.detail
            .insert("linear_branch".into(), format_ratio(&linear));
        ctx.detail.insert("dominant_branch".into(), dominant.into());
        Outcome::compare_surd(ctx, lhs, rhs, Rel::Le)
    }

    fn theorem_1_nonconvex(&self, mut ctx: Context) -> Outcome {
        let m = self.m_max();
        let e = self.g.e() as u64;
        let mut tightest: Option<(VertexId, u64)> = None;
        for v in self.local.non_convex_vertices() {
            let rhs = 3 * m + self.g.degree(v) as u64;
            if e > rhs {
                ctx.detail.insert("m".into(), m.to_string());
                return Outcome::violated(ctx, int_q(e), int_q(rhs), Witness::Vertex(v));
            }
            if tightest.is_none_or(|(_, r)| rhs < r) {
                tightest = Some((v, rhs));
            }
        }
        match tightest {
            None => Outcome::na(ctx, "every vertex is convex"),
            Some((v, rhs)) => {
                ctx.detail.insert("m".into(), m.to_string());
                ctx.detail.insert("vertex".into(), v.to_string());
                Outcome::compare(ctx, int_q(e), int_q(rhs), Rel::Le)
            }
        }
    }

    fn theorem_2(&self, ctx: Context) -> Outcome {
        if !ctx.locally_convex {
            return Outcome::na(ctx, NOT_LC);
        }
        self.dj_against_potential(ctx)
    }

    fn dj_against_potential(&self, mut ctx: Context) -> Outcome {
        let (n, e) = (self.g.n(), self.g.e());
        if n == 0 {
            return Outcome::na(ctx, EMPTY);
        }
        if !ctx.two_e_ge_n {
            return Outcome::na(ctx, SPARSE);
        }
        ctx.detail
            .insert("d".into(), format_ratio(&average_degree(n, e)));
        Outcome::compare(ctx, int_q(self.dj_total), potential(n, e), Rel::Ge)
    }

    fn theorem_3(&self, ctx: Context) -> Outcome {
        if self.dj_total > 0 {
            return Outcome::na(ctx, "graph has a pair of disjoint edges");
        }
        Outcome::compare(
            ctx,
            int_q(self.g.e() as u64),
            int_q(self.g.n() as u64),
            Rel::Le,
        )
    }

    fn dj_ge_e_minus_n(&self, ctx: Context) -> Outcome {
        let rhs = self.g.e() as i64 - self.g.n() as i64;
        Outcome::compare(ctx, int_q(self.dj_total), int(rhs), Rel::Ge)
    }

    fn eq_9(&self, mut ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        let dj_l: u64 = data.iter().map(|d| d.dj_l.len() as u64).sum();
        let n_ell = leftmost_disjoint_pairs(self.g, &self.local).len() as i64;
        let pruned_dj = self.pruned_dj();
        let rhs = pruned_dj as i64 + dj_l as i64 - n_ell;
        ctx.detail.insert("dj_pruned".into(), pruned_dj.to_string());
        ctx.detail.insert("sum_dj_l".into(), dj_l.to_string());
        ctx.detail.insert("n_ell_pairs".into(), n_ell.to_string());
        let mut distinct = BTreeSet::new();
        for d in &data {
            let left = Edge::new(d.vertex, d.leftmost);
            distinct.extend(d.dj_l.iter().map(|&f| (left.min(f), left.max(f))));
        }
        ctx.detail.insert(
            "repeated_pairs".into(),
            (dj_l - distinct.len() as u64).to_string(),
        );
        Outcome::compare(ctx, int_q(self.dj_total), int(rhs), Rel::Ge)
    }

    fn ineq_10(&self, mut ctx: Context) -> Outcome {
        let data = match self.section_data() {
            Ok(d) => d,
            Err(r) => return Outcome::na(ctx, r),
        };
        let counts = side_counts(self.g, &self.local, |l, v| l.leftmost(v));
        let deltas: u64 = data.iter().map(|d| u64::from(d.delta_l)).sum();
        let (n_l, t_l) = (counts.saturated as u64, counts.doubled as u64);
        ctx.detail.insert("n_l".into(), n_l.to_string());
        ctx.detail.insert("t_l".into(), t_l.to_string());
        ctx.detail.insert("sum_delta_l".into(), deltas.to_string());
        if deltas + n_l < 2 * t_l {
            return Outcome::compare(ctx, int_q(deltas + n_l), int_q(2 * t_l), Rel::Ge);
        }
        Outcome::compare(ctx, int_q(2 * t_l), int_q(n_l), Rel::Ge)
            .relabel("lhs is 2 t_l, rhs is n_l; sum_delta_l + n_l >= 2 t_l also checked")
    }

    fn ineq_11(&self, mut ctx: Context) -> Outcome {
        if let Err(r) = self.section_data() {
            return Outcome::na(ctx, r);
        }
        let pruned = self.pruned();
        let (n, e) = (self.g.n() as i64, self.g.e() as i64);
        let (np, ep) = (pruned.graph.n() as i64, pruned.graph.e() as i64);
        if np == 0 || pruned.n_l as i64 == n {
            return Outcome::na(ctx, "pruned graph has no vertices");
        }
        let d_pruned = ratio(2 * ep, np);
        let middle = ratio(2 * e - n, n - pruned.n_l as i64) - int(1);
        let d_minus_2 = average_degree(n as usize, e as usize) - int(2);
        ctx.detail
            .insert("d_pruned".into(), format_ratio(&d_pruned));
        ctx.detail
            .insert("d_minus_2".into(), format_ratio(&d_minus_2));
        if d_pruned < middle || !ctx.two_e_ge_n {
            return Outcome::compare(ctx, d_pruned, middle, Rel::Ge);
        }
        Outcome::compare(ctx, middle, d_minus_2, Rel::Ge)
            .relabel("lhs is (2e-n)/(n-n_l)-1, rhs is d-2; d_pruned >= lhs also checked")
    }

    fn nell_equals_eg_prime(&self, mut ctx: Context) -> Outcome {
        if let Err(r) = self.section_data() {
            return Outcome::na(ctx, r);
        }
        let pruned = self.pruned();
        let survives = |e: &Edge| {
            self.local.leftmost(e.u()) != Some(e.v()) && self.local.leftmost(e.v()) != Some(e.u())
        };
        let pairs = leftmost_disjoint_pairs(self.g, &self.local);
        for e in self.g.edges() {
            let disjoint = pairs.binary_search(e).is_ok();
            if disjoint != survives(e) {
                ctx.detail.insert(
                    "mismatch".into(),
                    format!(
                        "leftmost edges disjoint: {disjoint}, edge kept after pruning: {}",
                        survives(e)
                    ),
                );
                return Outcome::violated(
                    ctx,
                    int_q(pairs.len() as u64),
                    int_q(pruned.graph.e() as u64),
                    Witness::Edge(*e),
                );
            }
        }
        Outcome::compare(
            ctx,
            int_q(pairs.len() as u64),
            int_q(pruned.graph.e() as u64),
            Rel::Eq,
        )
    }

    fn prune_cardinalities(&self, mut ctx: Context) -> Outcome {
        if let Err(r) = self.section_data() {
            return Outcome::na(ctx, r);
        }
        let p = self.pruned();
        ctx.detail.insert(
            "vertices".into(),
            format!("{} = {}", p.graph.n(), p.expected_vertices),
        );
        ctx.detail.insert("n_l".into(), p.n_l.to_string());
        ctx.detail.insert("t_l".into(), p.t_l.to_string());
        if p.graph.n() != p.expected_vertices {
            return Outcome::compare(
                ctx,
                int_q(p.graph.n() as u64),
                int_q(p.expected_vertices as u64),
                Rel::Eq,
            );
        }
        Outcome::compare(
            ctx,
            int_q(p.graph.e() as u64),
            int(p.expected_edges),
            Rel::Eq,
        )
    }

    fn f_removal_monotone(&self, mut ctx: Context) -> Outcome {
        let (n, e) = (self.g.n(), self.g.e());
        if !(e > n && n > 1) {
            return Outcome::na(ctx, "requires e > n > 1");
        }
        let low: Vec<VertexId> = (0..n).filter(|&v| self.g.degree(v) <= 1).collect();
        if low.is_empty() {
            return Outcome::na(ctx, "no vertex of degree 0 or 1");
        }
        let before = potential(n, e);
        let mut first: Option<(VertexId, BigRational)> = None;
        for &v in &low {
            let smaller = self.g.without_vertex(v);
            let after = potential(smaller.n(), smaller.e());
            if after <= before {
                return Outcome::violated(ctx, after, before, Witness::Vertex(v));
            }
            first.get_or_insert((v, after));
        }
        let (v, after) = first.expect("non-empty");
        ctx.detail.insert("vertex".into(), v.to_string());
        Outcome::compare(ctx, after, before, Rel::Gt)
    }

    fn conjecture_1(&self, mut ctx: Context) -> Outcome {
        let (n, e) = (self.g.n() as u64, self.g.e() as u64);
        let m = self.m_max();
        ctx.detail.insert("m".into(), m.to_string());
        Outcome::compare_surd(ctx, int(e as i64), sqrt_edge_bound(n, m), Rel::Le)
    }

    fn conjecture_2(&self, ctx: Context) -> Outcome {
        self.dj_against_potential(ctx)
    }

    fn conjecture_1_threshold(&self, mut ctx: Context) -> Outcome {
        let m = self.m_max();
        let n = self.g.n() as u64;
        ctx.detail.insert("m".into(), m.to_string());
        if m <= 1 {
            return Outcome::na(ctx, "threshold undefined for m <= 1");
        }
        let mi = m as i64;
        // 3m(sqrt(1+8m) - 3) / (2(m-1))
        let threshold = QuadraticSurd::new(
            ratio(-9 * mi, 2 * (mi - 1)),
            ratio(3 * mi, 2 * (mi - 1)),
            BigInt::from(1) + BigInt::from(8) * BigInt::from(m),
        );
        ctx.detail.insert("threshold".into(), threshold.to_string());
        let met = threshold.cmp_rational(&int(n as i64)) != Ordering::Greater;
        ctx.detail.insert("threshold_met".into(), met.to_string());
        if !met {
            return Outcome::na(ctx, "n is below the threshold");
        }
        let bound = sqrt_edge_bound(n, m);
        let within = bound.cmp_rational(&int(self.g.e() as i64)) != Ordering::Less;
        ctx.detail.insert(
            "conjecture_1".into(),
            format!("e = {} <= {}", self.g.e(), bound),
        );
        let mut o = Outcome::compare_surd(ctx, int(n as i64), threshold, Rel::Ge);
        if !within {
            o.verdict = Verdict::Violated;
        }
        o
    }
}

#[derive(Clone, Copy)]
enum Rel {
    Ge,
    Gt,
    Le,
    Eq,
}

impl Rel {
    fn holds(self, ord: Ordering) -> bool {
        match self {
            Rel::Ge => ord != Ordering::Less,
            Rel::Gt => ord == Ordering::Greater,
            Rel::Le => ord != Ordering::Greater,
            Rel::Eq => ord == Ordering::Equal,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Rel::Ge => ">=",
            Rel::Gt => ">",
            Rel::Le => "<=",
            Rel::Eq => "=",
        }
    }
}

struct Outcome {
    verdict: Verdict,
    lhs: Option<String>,
    rhs: Option<String>,
    witness: Option<Witness>,
    ctx: Context,
}

impl Outcome {
    fn na(mut ctx: Context, reason: &str) -> Self {
        ctx.detail.insert("reason".into(), reason.to_string());
        Outcome {
            verdict: Verdict::NotApplicable,
            lhs: None,
            rhs: None,
            witness: None,
            ctx,
        }
    }

    fn violated(ctx: Context, lhs: BigRational, rhs: BigRational, witness: Witness) -> Self {
        Outcome {
            verdict: Verdict::Violated,
            lhs: Some(format_ratio(&lhs)),
            rhs: Some(format_ratio(&rhs)),
            witness: Some(witness),
            ctx,
        }
    }

    fn compare(mut ctx: Context, lhs: BigRational, rhs: BigRational, rel: Rel) -> Self {
        ctx.detail.insert("relation".into(), rel.symbol().into());
        Outcome {
            verdict: if rel.holds(lhs.cmp(&rhs)) {
                Verdict::Holds
            } else {
                Verdict::Violated
            },
            lhs: Some(format_ratio(&lhs)),
            rhs: Some(format_ratio(&rhs)),
            witness: None,
            ctx,
        }
    }

    fn compare_surd(mut ctx: Context, lhs: BigRational, rhs: QuadraticSurd, rel: Rel) -> Self {
        ctx.detail.insert("relation".into(), rel.symbol().into());
        let ord = rhs.cmp_rational(&lhs).reverse();
        Outcome {
            verdict: if rel.holds(ord) {
                Verdict::Holds
            } else {
                Verdict::Violated
            },
            lhs: Some(format_ratio(&lhs)),
            rhs: Some(rhs.to_string()),
            witness: None,
            ctx,
        }
    }

    fn relabel(mut self, note: &str) -> Self {
        self.ctx.detail.insert("sides".into(), note.into());
        self
    }

    fn finish(self, claim: ClaimId) -> ClaimReport {
        ClaimReport {
            claim,
            verdict: self.verdict,
            lhs: self.lhs,
            rhs: self.rhs,
            witness: self.witness,
            context: self.ctx,
        }
    }
}

fn int_q(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Checks one claim on `g`.
pub fn check_claim(g: &GeometricGraph, claim: ClaimId) -> ClaimReport {
    Instance::new(g).check(claim)
}

/// Checks every claim, in registry order.
pub fn check_all(g: &GeometricGraph) -> Vec<ClaimReport> {
    Instance::new(g).check_all()
}

/// Checks a chosen subset, in the order given.
pub fn check_claims(g: &GeometricGraph, claims: &[ClaimId]) -> Vec<ClaimReport> {
    let inst = Instance::new(g);
    claims.iter().map(|&c| inst.check(c)).collect()
}
