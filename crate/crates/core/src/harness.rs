//! Randomized cross-validation of the kernels against the exact solver.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::class::GraphClass;
use crate::construct::{construct_cycle, construct_path, CertKind};
use crate::generate::{gen_instance, rng, sparsify, Family};
use crate::graph::Graph;
use crate::io::write_graph;
use crate::kernel::{turing_kernel_cycle, turing_kernel_path, CycleKernelConfig, KernelOptions, KernelOutcome, PathKernelConfig, ProblemKind, YesReason};
use crate::oracle::{find_k_cycle, find_k_path, OracleError, QueryRecord, SolverConfig};

/// One row of the matrix: `reps` instances, with `k` and `n` drawn
/// uniformly from `k_min..=k_max` and `n_min..=n_max`.
///
/// For [`Family::PlantedCycle`] the planted length alternates between `k`
/// and `k - 1`, which gives a mix of yes and no instances.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    #[serde(serialize_with = "display")]
    pub family: Family,
    pub class: GraphClass,
    pub problem: ProblemKind,
    pub n_min: usize,
    pub n_max: usize,
    pub k_min: usize,
    pub k_max: usize,
    pub reps: usize,
    /// Keep each generated edge with this probability.
    pub keep: Option<f64>,
}

fn display<S: serde::Serializer>(f: &Family, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(f)
}

impl Cell {
    pub fn new(family: Family, problem: ProblemKind, n: (usize, usize), k: (usize, usize), reps: usize) -> Self {
        Cell {
            family,
            class: family.class(),
            problem,
            n_min: n.0,
            n_max: n.1,
            k_min: k.0,
            k_max: k.1,
            reps,
            keep: None,
        }
    }

    pub fn keep(mut self, p: f64) -> Self {
        self.keep = Some(p);
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct HarnessOptions {
    pub kernel: KernelOptions,
    /// Also build and check a certificate for every instance.
    pub construct: bool,
    /// Stop a cell at its first disagreement.
    pub fail_fast: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CellSummary {
    pub cell: String,
    pub problem: String,
    pub runs: usize,
    pub agree: usize,
    pub yes: usize,
    pub max_query_n: usize,
    pub bound_query_n: usize,
    pub max_query_k: usize,
    /// Queries whose order or parameter exceeded the budget.
    pub bound_violations: usize,
    pub audit_failures: usize,
    pub off_class_queries: u64,
    pub certificates_ok: usize,
    pub certificate_fallbacks: usize,
    pub reasons: BTreeMap<String, usize>,
    pub max_n: usize,
    pub wall_ms: u64,
}

/// Everything needed to replay a failing instance.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub cell: String,
    pub seed: u64,
    pub k: usize,
    pub problem: String,
    pub what: String,
    pub graph: String,
    pub log: Vec<QueryRecord>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub cells: Vec<CellSummary>,
    pub failures: Vec<Failure>,
}

impl Summary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "{:<50} {:>5} {:>6} {:>5} {:>8} {:>8} {:>6} {:>6} {:>8}  reasons\n",
            "cell", "runs", "agree", "yes", "max_qn", "bound", "audit", "certs", "ms"
        );
        for c in &self.cells {
            writeln!(
                out,
                "{:<50} {:>5} {:>6} {:>5} {:>8} {:>8} {:>6} {:>6} {:>8}  {}",
                format!("{} {}", c.problem, c.cell),
                c.runs,
                c.agree,
                c.yes,
                c.max_query_n,
                c.bound_query_n,
                c.audit_failures,
                c.certificates_ok,
                c.wall_ms,
                c.reasons.iter().map(|(r, n)| format!("{r}:{n}")).collect::<Vec<_>>().join(" ")
            )
            .unwrap();
        }
        out
    }
}

/// SplitMix64 step; derives independent instance seeds.
pub fn mix_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ b.wrapping_mul(0xD1B5_4A32_D192_ED03);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The instance of `cell` for an instance seed: graph, parameter and the
/// seed handed to the generator.
pub fn instance(cell: &Cell, seed: u64) -> (Graph, usize, u64) {
    let mut r = rng(seed);
    let n = r.gen_range(cell.n_min..=cell.n_max);
    let k = r.gen_range(cell.k_min..=cell.k_max);
    let family = match cell.family {
        Family::PlantedCycle(_) => Family::PlantedCycle((k - (seed % 2) as usize).clamp(3, n)),
        f => f,
    };
    let gseed = r.gen();
    let mut g = gen_instance(family, n, gseed).expect("cell parameters are feasible");
    if let Some(p) = cell.keep {
        g = sparsify(&g, p, &mut r);
    }
    (g, k, gseed)
}

fn kernel(cell: &Cell, g: &Graph, k: usize, opts: &KernelOptions) -> (Result<KernelOutcome, OracleError>, Vec<QueryRecord>) {
    match cell.problem {
        ProblemKind::Cycle => {
            let cfg = CycleKernelConfig::new(cell.class, k).with_options(opts.clone());
            let mut s = cfg.session();
            (turing_kernel_cycle(g, &cfg, &mut s), s.log().to_vec())
        }
        ProblemKind::Path => {
            let cfg = PathKernelConfig::new(cell.class, k).with_options(opts.clone());
            let mut s = cfg.session();
            (turing_kernel_path(g, &cfg, &mut s), s.log().to_vec())
        }
    }
}

fn reason_name(r: Option<YesReason>) -> String {
    match r {
        None => "no".into(),
        Some(r) => serde_json::to_value(r).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
    }
}

/// Runs every cell. Instance seeds depend only on `seed`, the cell index
/// and the repetition.
pub fn cross_validate(cells: &[Cell], seed: u64, opts: &HarnessOptions) -> Summary {
    let mut summary = Summary::default();
    for (ci, cell) in cells.iter().enumerate() {
        let start = Instant::now();
        let name = format!("{} n{}-{} k{}-{}", cell.family, cell.n_min, cell.n_max, cell.k_min, cell.k_max);
        let problem = cell.problem.to_string();
        let mut cs = CellSummary {
            cell: name.clone(),
            problem: problem.clone(),
            ..Default::default()
        };
        for rep in 0..cell.reps {
            let iseed = mix_seed(seed, ci as u64, rep as u64);
            let (g, k, _) = instance(cell, iseed);
            cs.runs += 1;
            cs.max_n = cs.max_n.max(g.order());
            let fail = |what: String, log: Vec<QueryRecord>| Failure {
                cell: name.clone(),
                seed: iseed,
                k,
                problem: problem.clone(),
                what,
                graph: write_graph(&g),
                log,
            };
            let exact = match cell.problem {
                ProblemKind::Cycle => find_k_cycle(&g, k, &SolverConfig::default()),
                ProblemKind::Path => find_k_path(&g, k, &SolverConfig::default()),
            };
            let exact = match exact {
                Ok(e) => e.is_some(),
                Err(e) => {
                    summary.failures.push(fail(format!("exact solver: {e}"), Vec::new()));
                    continue;
                }
            };
            let (res, log) = kernel(cell, &g, k, &opts.kernel);
            let out = match res {
                Ok(out) => out,
                Err(e) => {
                    if matches!(e, OracleError::BudgetExceeded { .. }) {
                        cs.bound_violations += 1;
                    }
                    summary.failures.push(fail(format!("kernel: {e}"), log));
                    continue;
                }
            };
            cs.yes += out.answer as usize;
            cs.max_query_n = cs.max_query_n.max(out.report.max_query_n);
            cs.bound_query_n = cs.bound_query_n.max(out.report.bound_max_query_n);
            cs.max_query_k = cs.max_query_k.max(out.report.max_query_k);
            cs.audit_failures += out.audit_failures.len();
            cs.off_class_queries += out.report.off_class_queries;
            *cs.reasons.entry(reason_name(out.report.yes_reason)).or_default() += 1;
            let mut bad = Vec::new();
            if out.answer == exact {
                cs.agree += 1;
            } else {
                bad.push(format!("kernel says {}, exact solver says {exact}", out.answer));
            }
            if !out.audit_failures.is_empty() {
                bad.push(format!("audit: {}", out.audit_failures.join("; ")));
            }
            if opts.construct {
                match certify(cell, &g, k, &opts.kernel) {
                    Ok((kind, fallback)) => {
                        cs.certificate_fallbacks += fallback as usize;
                        if (kind != CertKind::None) == exact {
                            cs.certificates_ok += 1;
                        } else {
                            bad.push(format!("certificate {kind:?} on a {exact} instance"));
                        }
                    }
                    Err(e) => bad.push(format!("construct: {e}")),
                }
            }
            if !bad.is_empty() {
                summary.failures.push(fail(bad.join(" | "), log));
                if opts.fail_fast {
                    break;
                }
            }
        }
        cs.wall_ms = start.elapsed().as_millis() as u64;
        summary.cells.push(cs);
    }
    summary
}

/// Builds and validates a certificate; returns its kind and whether the
/// torso fallback was used.
fn certify(cell: &Cell, g: &Graph, k: usize, opts: &KernelOptions) -> Result<(CertKind, bool), String> {
    let out = match cell.problem {
        ProblemKind::Cycle => {
            let cfg = CycleKernelConfig::new(cell.class, k).with_options(KernelOptions { keep_log: false, ..opts.clone() });
            construct_cycle(g, &cfg, &mut cfg.session())
        }
        ProblemKind::Path => {
            let cfg = PathKernelConfig::new(cell.class, k).with_options(KernelOptions { keep_log: false, ..opts.clone() });
            construct_path(g, &cfg, &mut cfg.session())
        }
    }
    .map_err(|e| e.to_string())?;
    // construct validates internally; checked again against the input here
    out.certificate.validate(g, k)?;
    Ok((out.certificate.kind, out.fallback))
}

/// A fast matrix over every family, for smoke runs.
pub fn quick_matrix() -> Vec<Cell> {
    use ProblemKind::*;
    vec![
        Cell::new(Family::PlanarTriangulationSubgraph, Cycle, (10, 60), (3, 8), 20),
        Cell::new(Family::PlantedCycle(0), Cycle, (10, 60), (3, 8), 20),
        Cell::new(Family::Subcubic, Cycle, (10, 60), (3, 7), 10),
        Cell::new(Family::LineGraph, Cycle, (10, 60), (3, 7), 10),
        Cell::new(Family::PlanarTriangulationSubgraph, Path, (10, 60), (3, 7), 10).keep(0.5),
        Cell::new(Family::Subcubic, Path, (10, 60), (3, 7), 10),
        Cell::new(Family::LineGraph, Path, (10, 60), (3, 7), 10),
        Cell::new(Family::Grid, Path, (10, 60), (3, 7), 10).keep(0.5),
    ]
}

/// Planar k-Cycle: 500 instances, `n ≤ 250`, `k ∈ 3..=8`.
pub fn planar_cycle_matrix() -> Vec<Cell> {
    use ProblemKind::*;
    vec![
        Cell::new(Family::PlanarTriangulationSubgraph, Cycle, (10, 250), (3, 8), 250).keep(0.55),
        Cell::new(Family::PlantedCycle(0), Cycle, (10, 250), (3, 8), 250),
    ]
}

/// k-Path: 300 instances for each of the four classes, `n ≤ 200`,
/// `k ∈ 3..=7`. Grids stand in for K3,3-minor-free graphs.
pub fn path_matrix() -> Vec<Cell> {
    use ProblemKind::*;
    vec![
        Cell::new(Family::PlanarTriangulationSubgraph, Path, (5, 200), (3, 7), 100).keep(0.35),
        Cell::new(Family::PlanarTriangulationSubgraph, Path, (5, 200), (3, 7), 100).keep(0.15),
        Cell::new(Family::PlantedCycle(0), Path, (5, 200), (3, 7), 100),
        Cell::new(Family::Subcubic, Path, (5, 200), (3, 7), 150),
        Cell::new(Family::Subcubic, Path, (5, 200), (3, 7), 150).keep(0.45),
        Cell::new(Family::LineGraph, Path, (5, 200), (3, 7), 150),
        Cell::new(Family::LineGraph, Path, (5, 200), (3, 7), 150).keep(0.15),
        Cell::new(Family::Grid, Path, (9, 200), (3, 7), 150).keep(0.45),
        Cell::new(Family::Grid, Path, (9, 200), (3, 7), 150).keep(0.3),
    ]
}

/// Both of the above.
pub fn acceptance_matrix() -> Vec<Cell> {
    let mut cells = planar_cycle_matrix();
    cells.extend(path_matrix());
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Mutation;

    #[test]
    fn empty_matrix() {
        let s = cross_validate(&[], 1, &HarnessOptions::default());
        assert!(s.ok() && s.cells.is_empty());
        assert_eq!(s.table().lines().count(), 1);
    }

    #[test]
    fn quick_matrix_agrees() {
        let s = cross_validate(&quick_matrix()[..2], 3, &HarnessOptions::default());
        assert!(s.ok(), "{:?}", s.failures.first().map(|f| &f.what));
        assert_eq!(s.cells[0].runs, 20);
    }

    #[test]
    fn mutation_is_reported() {
        let cells = [Cell::new(Family::PlantedCycle(0), ProblemKind::Cycle, (30, 60), (5, 8), 30)];
        let opts = HarnessOptions {
            kernel: KernelOptions {
                mutation: Some(Mutation::SkipWitnessRetention),
                ..Default::default()
            },
            ..Default::default()
        };
        let s = cross_validate(&cells, 11, &opts);
        assert!(s.failures.iter().any(|f| f.what.contains("exact solver says")));
    }
}
