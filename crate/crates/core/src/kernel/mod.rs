//! The Turing kernels: decompose each piece of the input, answer yes on a
//! wide bag, otherwise shrink it bottom-up with oracle-guided reductions and
//! ask the oracle about what is left.

mod cycle;
mod path;
pub mod threshold;

use serde::Serialize;

use crate::class::GraphClass;
use crate::graph::Vertex;
use crate::oracle::{OracleSession, QueryStats, SolverConfig};

pub use cycle::{kernelize_cycle, reduce_c, turing_kernel_cycle, CycleKernelConfig, KernelizeOutcome, ReduceCOutcome};
pub use path::{compute_witnesses, kernelize_path, reduce_p, turing_kernel_path, PathKernelConfig, ReducePOutcome, WitnessSet};
pub use threshold::{circumference_lower_bound, planar_cycle_budget, poly_budget, width_threshold};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    Path,
    Cycle,
}

impl std::fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProblemKind::Path => "path",
            ProblemKind::Cycle => "cycle",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum YesReason {
    Width,
    OracleASide,
    LongXyPath,
    FinalQuery,
    /// Decided before any decomposition (degenerate parameter).
    Trivial,
}

/// Where a yes answer came from, in the ids of the input graph. Enough to
/// reconstruct a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YesEvidence {
    /// A bag of the decomposition of `component` reached the threshold.
    Width { component: Vec<Vertex>, bag: Vec<Vertex> },
    /// The oracle found a solution inside `G[side]`.
    OracleASide { side: Vec<Vertex> },
    /// `G[side]` has a long xy-path and `{x, y}` is a minimal separator of
    /// `G[component]`.
    LongXyPath {
        side: Vec<Vertex>,
        x: Vertex,
        y: Vertex,
        component: Vec<Vertex>,
    },
    /// The fully reduced graph `G[remaining]` has a solution.
    FinalQuery { remaining: Vec<Vertex> },
    Trivial,
}

impl YesEvidence {
    pub fn reason(&self) -> YesReason {
        match self {
            YesEvidence::Width { .. } => YesReason::Width,
            YesEvidence::OracleASide { .. } => YesReason::OracleASide,
            YesEvidence::LongXyPath { .. } => YesReason::LongXyPath,
            YesEvidence::FinalQuery { .. } => YesReason::FinalQuery,
            YesEvidence::Trivial => YesReason::Trivial,
        }
    }
}

/// Deliberate faults for negative-control tests of the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Reductions delete the whole A-side instead of keeping the witnesses.
    SkipWitnessRetention,
}

/// Settings shared by both kernels.
#[derive(Clone, Debug)]
pub struct KernelOptions {
    pub solver: SolverConfig,
    /// Check the per-node size bounds and reduction postconditions.
    pub audit: bool,
    /// Keep the per-query log in the session (aggregates are always kept).
    pub keep_log: bool,
    pub mutation: Option<Mutation>,
}

impl Default for KernelOptions {
    fn default() -> Self {
        KernelOptions {
            solver: SolverConfig::default(),
            audit: true,
            keep_log: true,
            mutation: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelReport {
    pub problem: ProblemKind,
    pub answer: bool,
    pub class: String,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub width_threshold: usize,
    pub max_bag: usize,
    pub num_queries: u64,
    pub max_query_n: usize,
    pub max_query_k: usize,
    pub bound_max_query_n: usize,
    pub yes_reason: Option<YesReason>,
    pub wall_ms: u64,
    pub audit_failures: usize,
    pub off_class_queries: u64,
}

#[derive(Clone, Debug)]
pub struct KernelOutcome {
    pub answer: bool,
    pub evidence: Option<YesEvidence>,
    pub report: KernelReport,
    /// Postcondition or bound violations seen while auditing; empty on a
    /// correct run.
    pub audit_failures: Vec<String>,
    /// Query statistics of this run alone.
    pub stats: QueryStats,
}

pub(crate) fn open_session(budget_vertices: usize, budget_param: usize, class: GraphClass, opts: &KernelOptions) -> OracleSession {
    let mut s = OracleSession::new(budget_vertices, budget_param).with_solver(opts.solver.clone());
    if opts.audit {
        s = s.with_audit(class);
    }
    if !opts.keep_log {
        s = s.without_log();
    }
    s
}

/// Per-run bookkeeping common to both kernels.
pub(crate) struct RunMeta {
    pub problem: ProblemKind,
    pub class: GraphClass,
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub width_threshold: usize,
    pub max_bag: usize,
    pub audit_failures: Vec<String>,
    pub start: std::time::Instant,
    pub outer_stats: QueryStats,
}

impl RunMeta {
    /// Folds this run's statistics back into the session after an error.
    pub fn abort(self, session: &mut OracleSession) {
        let stats = session.swap_stats(QueryStats::default());
        let mut total = self.outer_stats;
        total.merge(&stats);
        session.swap_stats(total);
    }

    pub fn finish(self, session: &mut OracleSession, evidence: Option<YesEvidence>) -> KernelOutcome {
        let stats = session.swap_stats(QueryStats::default());
        let mut total = self.outer_stats;
        total.merge(&stats);
        session.swap_stats(total);
        let answer = evidence.is_some();
        KernelOutcome {
            answer,
            report: KernelReport {
                problem: self.problem,
                answer,
                class: self.class.to_string(),
                k: self.k,
                n: self.n,
                m: self.m,
                width_threshold: self.width_threshold,
                max_bag: self.max_bag,
                num_queries: stats.count,
                max_query_n: stats.max_order,
                max_query_k: stats.max_param,
                bound_max_query_n: session.budget_vertices(),
                yes_reason: evidence.as_ref().map(YesEvidence::reason),
                wall_ms: self.start.elapsed().as_millis() as u64,
                audit_failures: self.audit_failures.len(),
                off_class_queries: stats.off_class,
            },
            evidence,
            audit_failures: self.audit_failures,
            stats,
        }
    }
}
