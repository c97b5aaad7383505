//! The budgeted oracle: every query is checked against a vertex and
//! parameter budget, answered exactly and logged.

mod exact;
mod selfreduce;
mod stable;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::class::{class_membership, GraphClass};
use crate::graph::{Graph, Vertex};

pub use exact::{dp_k_cycle, dp_k_path, exact_k_cycle, exact_k_path, find_k_cycle, find_k_path, SolveError, SolverConfig};
pub use selfreduce::{selfreduce_edges, selfreduce_longest_xy_path, selfreduce_max_stable_set, SelfReduceOutcome};
pub use stable::{StableEdgeProperty, ALL_PROPERTIES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(
        "query of order {order} with parameter {param} exceeds the budget \
         ({budget_vertices} vertices, parameter {budget_param})"
    )]
    BudgetExceeded {
        order: usize,
        param: usize,
        budget_vertices: usize,
        budget_param: usize,
    },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("invalid query: {0}")]
    InvalidInput(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    Path,
    Cycle,
    /// "Is there a satisfying edge set of at least the given size?"
    Stable {
        property: StableEdgeProperty,
        x: Vertex,
        y: Vertex,
    },
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Path => "path",
            Problem::Cycle => "cycle",
            Problem::Stable { property, .. } => property.name(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QueryRecord {
    pub seq: u64,
    pub purpose: &'static str,
    pub problem: &'static str,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub answer: bool,
    pub micros: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_class: Option<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TagStats {
    pub count: u64,
    pub max_order: usize,
    pub max_param: usize,
}

/// Aggregates kept for every query, whether or not the full log is kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QueryStats {
    pub count: u64,
    pub max_order: usize,
    pub max_param: usize,
    pub min_param: Option<usize>,
    /// Queries whose graph was checked and found outside the audit class.
    pub off_class: u64,
    pub by_purpose: BTreeMap<&'static str, TagStats>,
}

impl QueryStats {
    fn record(&mut self, purpose: &'static str, order: usize, param: usize, off_class: bool) {
        self.count += 1;
        self.max_order = self.max_order.max(order);
        self.max_param = self.max_param.max(param);
        self.min_param = Some(self.min_param.map_or(param, |p| p.min(param)));
        self.off_class += off_class as u64;
        let t = self.by_purpose.entry(purpose).or_default();
        t.count += 1;
        t.max_order = t.max_order.max(order);
        t.max_param = t.max_param.max(param);
    }

    pub fn merge(&mut self, other: &QueryStats) {
        self.count += other.count;
        self.max_order = self.max_order.max(other.max_order);
        self.max_param = self.max_param.max(other.max_param);
        self.min_param = match (self.min_param, other.min_param) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.off_class += other.off_class;
        for (tag, t) in &other.by_purpose {
            let e = self.by_purpose.entry(tag).or_default();
            e.count += t.count;
            e.max_order = e.max_order.max(t.max_order);
            e.max_param = e.max_param.max(t.max_param);
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleSession {
    budget_vertices: usize,
    budget_param: usize,
    solver: SolverConfig,
    audit: Option<GraphClass>,
    keep_log: bool,
    log: Vec<QueryRecord>,
    stats: QueryStats,
    seq: u64,
}

impl OracleSession {
    /// Both bounds are inclusive. For stable-property queries the size
    /// parameter is an edge count of the queried graph and is checked
    /// against the vertex budget instead.
    pub fn new(budget_vertices: usize, budget_param: usize) -> Self {
        OracleSession {
            budget_vertices,
            budget_param,
            solver: SolverConfig::default(),
            audit: None,
            keep_log: true,
            log: Vec::new(),
            stats: QueryStats::default(),
            seq: 0,
        }
    }

    pub fn with_solver(mut self, solver: SolverConfig) -> Self {
        self.solver = solver;
        self
    }

    /// Checks every queried graph for membership in `class`.
    pub fn with_audit(mut self, class: GraphClass) -> Self {
        self.audit = Some(class);
        self
    }

    /// Keep only aggregate statistics.
    pub fn without_log(mut self) -> Self {
        self.keep_log = false;
        self
    }

    pub fn budget_vertices(&self) -> usize {
        self.budget_vertices
    }

    pub fn budget_param(&self) -> usize {
        self.budget_param
    }

    pub fn solver(&self) -> &SolverConfig {
        &self.solver
    }

    pub fn log(&self) -> &[QueryRecord] {
        &self.log
    }

    pub fn stats(&self) -> &QueryStats {
        &self.stats
    }

    /// Replaces the running statistics, returning the old ones. Used to
    /// measure a sub-computation in isolation.
    pub fn swap_stats(&mut self, stats: QueryStats) -> QueryStats {
        std::mem::replace(&mut self.stats, stats)
    }

    pub fn query(&mut self, problem: Problem, g: &Graph, param: usize, purpose: &'static str) -> Result<bool, OracleError> {
        let order = g.order();
        let param_budget = match problem {
            Problem::Stable { .. } => self.budget_vertices,
            _ => self.budget_param,
        };
        if order > self.budget_vertices || param > param_budget {
            return Err(OracleError::BudgetExceeded {
                order,
                param,
                budget_vertices: self.budget_vertices,
                budget_param: self.budget_param,
            });
        }
        let start = Instant::now();
        let answer = match problem {
            Problem::Path => find_k_path(g, param, &self.solver)?.is_some(),
            Problem::Cycle => find_k_cycle(g, param, &self.solver)?.is_some(),
            Problem::Stable { property, x, y } => property.decide(g, x, y, param, &self.solver)?,
        };
        let micros = start.elapsed().as_micros() as u64;
        let in_class = self.audit.and_then(|c| class_membership(g, c));
        self.stats.record(purpose, order, param, in_class == Some(false));
        if self.keep_log {
            self.log.push(QueryRecord {
                seq: self.seq,
                purpose,
                problem: problem.name(),
                n: order,
                m: g.size(),
                k: param,
                answer,
                micros,
                in_class,
            });
        }
        self.seq += 1;
        Ok(answer)
    }
}
