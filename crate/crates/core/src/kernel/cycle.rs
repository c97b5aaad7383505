//! The k-Cycle Turing kernel.

use std::collections::BTreeSet;
use std::time::Instant;

use super::threshold::{planar_cycle_budget, poly_budget, poly_c_from_env, width_threshold, DEFAULT_POLY_C};
use super::{open_session, KernelOptions, KernelOutcome, Mutation, ProblemKind, RunMeta, YesEvidence};
use crate::class::GraphClass;
use crate::decomposition::{biconnected_components, tutte_decompose, TutteDec, WorkingDec};
use crate::graph::{Graph, Vertex};
use crate::oracle::{selfreduce_longest_xy_path, OracleError, OracleSession, Problem, SelfReduceOutcome, SolverConfig};

#[derive(Clone, Debug)]
pub struct CycleKernelConfig {
    pub class: GraphClass,
    /// Already normalized to at least 3.
    pub k: usize,
    pub width_threshold: usize,
    pub query_budget: usize,
    pub options: KernelOptions,
}

impl CycleKernelConfig {
    pub fn new(class: GraphClass, k: usize) -> Self {
        let k = k.max(3);
        let query_budget = match class {
            GraphClass::Planar => planar_cycle_budget(k),
            _ => poly_budget(k, DEFAULT_POLY_C),
        };
        CycleKernelConfig {
            class,
            k,
            width_threshold: width_threshold(class, k),
            query_budget,
            options: KernelOptions::default(),
        }
    }

    /// Applies `TK_TIME_LIMIT_MS` and, outside the planar class,
    /// `TK_BUDGET_POLY_C`.
    pub fn with_env(mut self) -> Self {
        self.options.solver = SolverConfig::from_env();
        if self.class != GraphClass::Planar {
            self.query_budget = poly_budget(self.k, poly_c_from_env());
        }
        self
    }

    pub fn with_options(mut self, options: KernelOptions) -> Self {
        self.options = options;
        self
    }

    /// A session with this kernel's budget: `query_budget` vertices and
    /// parameter `k`.
    pub fn session(&self) -> OracleSession {
        open_session(self.query_budget, self.k, self.class, &self.options)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReduceCOutcome {
    /// `G'[A]` itself has a k-cycle.
    CycleInSide,
    /// `G'[A]` has an xy-path of length at least `k - 1`.
    LongXyPath,
    /// The vertices of `A` outside a maximum xy-path and `{x, y}` were
    /// deleted from `G'`.
    Reduced { kept: BTreeSet<Vertex>, removed: Vec<Vertex> },
}

/// One reduction step on the separation with A-side `side` and separator
/// `{x, y}` of the working graph `gp`. `{x, y}` must be a minimal separator
/// of the graph `gp` was cut from.
pub fn reduce_c(
    session: &mut OracleSession,
    gp: &mut Graph,
    side: &[Vertex],
    x: Vertex,
    y: Vertex,
    k: usize,
    purpose: &'static str,
) -> Result<ReduceCOutcome, OracleError> {
    reduce_c_with(session, gp, side, x, y, k, purpose, None)
}

#[allow(clippy::too_many_arguments)]
fn reduce_c_with(
    session: &mut OracleSession,
    gp: &mut Graph,
    side: &[Vertex],
    x: Vertex,
    y: Vertex,
    k: usize,
    purpose: &'static str,
    mutation: Option<Mutation>,
) -> Result<ReduceCOutcome, OracleError> {
    let ga = gp.induced(side);
    // the lemma's first query is exactly the direct k-cycle query on G'[A]
    let s = match selfreduce_longest_xy_path(session, &ga, k, x, y, purpose)? {
        SelfReduceOutcome::KCycleFound => return Ok(ReduceCOutcome::CycleInSide),
        SelfReduceOutcome::LongXYPathFound => return Ok(ReduceCOutcome::LongXyPath),
        SelfReduceOutcome::MaxPathVertices(s) => s,
    };
    let mut kept = match mutation {
        Some(Mutation::SkipWitnessRetention) => BTreeSet::new(),
        None => s,
    };
    kept.insert(x);
    kept.insert(y);
    let removed: Vec<Vertex> = side.iter().copied().filter(|v| !kept.contains(v)).collect();
    gp.remove_vertices(removed.iter().copied());
    Ok(ReduceCOutcome::Reduced { kept, removed })
}

/// Result of the bottom-up reduction of one decomposed block.
#[derive(Clone, Debug)]
pub enum KernelizeOutcome {
    Reported(YesEvidence),
    Done { graph: Graph, dec: WorkingDec },
}

struct Run<'a> {
    k: usize,
    td: &'a TutteDec,
    gp: Graph,
    wd: WorkingDec,
    session: &'a mut OracleSession,
    opts: &'a KernelOptions,
    audit: &'a mut Vec<String>,
}

impl Run<'_> {
    fn reduce(&mut self, roots: &[usize], x: Vertex, y: Vertex, purpose: &'static str) -> Result<Option<YesEvidence>, OracleError> {
        let mut side: Vec<Vertex> = roots.iter().flat_map(|&j| self.wd.subtree_vertices(j)).collect();
        side.sort_unstable();
        side.dedup();
        match reduce_c_with(self.session, &mut self.gp, &side, x, y, self.k, purpose, self.opts.mutation)? {
            ReduceCOutcome::CycleInSide => Ok(Some(YesEvidence::OracleASide { side })),
            ReduceCOutcome::LongXyPath => Ok(Some(YesEvidence::LongXyPath {
                side,
                x,
                y,
                component: self.td.graph().vertex_list(),
            })),
            ReduceCOutcome::Reduced { kept, removed } => {
                self.wd.remove_vertices(roots, &removed);
                if self.opts.audit {
                    let rest: Vec<Vertex> = kept.iter().copied().filter(|&v| v != x && v != y).collect();
                    if rest.len() >= self.k {
                        self.audit.push(format!("{purpose}: kept {} vertices of A\\B, k = {}", rest.len(), self.k));
                    }
                    let comps = self.gp.induced(&rest).components().len();
                    if comps > 1 {
                        self.audit.push(format!("{purpose}: G'[A] - {{x,y}} has {comps} components"));
                    }
                }
                Ok(None)
            }
        }
    }

    fn pair_of(&self, j: usize) -> Option<(Vertex, Vertex)> {
        match self.wd.adhesion_to_parent(j)[..] {
            [x, y] => Some((x, y)),
            _ => None,
        }
    }

    fn node(&mut self, i: usize) -> Result<Option<YesEvidence>, OracleError> {
        for j in self.wd.children(i).to_vec() {
            if !self.wd.is_alive(j) {
                continue;
            }
            if let Some(ev) = self.node(j)? {
                return Ok(Some(ev));
            }
            if !self.wd.is_alive(j) {
                continue;
            }
            let Some((x, y)) = self.pair_of(j) else {
                self.audit.push(format!("child {j} of {i} has adhesion {:?}", self.wd.adhesion_to_parent(j)));
                continue;
            };
            if let Some(ev) = self.reduce(&[j], x, y, "reduce-c:child")? {
                return Ok(Some(ev));
            }
        }
        let mut stuck: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        loop {
            let mut groups: Vec<((Vertex, Vertex), usize)> = self
                .wd
                .children(i)
                .iter()
                .filter_map(|&j| self.pair_of(j).map(|p| (p, j)))
                .filter(|(p, _)| !stuck.contains(p))
                .collect();
            groups.sort_unstable();
            let Some(w) = groups.windows(2).find(|w| w[0].0 == w[1].0) else {
                break;
            };
            let (pair, j1, j2) = (w[0].0, w[0].1, w[1].1);
            let before = groups.iter().filter(|g| g.0 == pair).count();
            if let Some(ev) = self.reduce(&[j1, j2], pair.0, pair.1, "reduce-c:siblings")? {
                return Ok(Some(ev));
            }
            let after = self.wd.children(i).iter().filter(|&&j| self.pair_of(j) == Some(pair)).count();
            if after >= before {
                self.audit.push(format!("node {i}: sibling reduction at {pair:?} removed no subtree"));
                stuck.insert(pair);
            }
        }
        if self.opts.audit {
            let have = self.wd.subtree_vertices(i).len();
            let bound = self.k * self.td.torso(i).size() + self.td.tree().bag(i).len();
            if have > bound {
                self.audit.push(format!("node {i}: subtree keeps {have} vertices, bound {bound}"));
            }
        }
        Ok(None)
    }
}

/// Runs the reduction on a biconnected graph `g` with Tutte decomposition
/// `td`, rooted at node 0. Evidence is in the ids of `g`.
pub fn kernelize_cycle(
    g: &Graph,
    td: &TutteDec,
    k: usize,
    session: &mut OracleSession,
    opts: &KernelOptions,
    audit: &mut Vec<String>,
) -> Result<KernelizeOutcome, OracleError> {
    let mut run = Run {
        k: k.max(3),
        td,
        gp: g.clone(),
        wd: WorkingDec::from_tree(td.tree(), 0),
        session,
        opts,
        audit,
    };
    let root = run.wd.root();
    Ok(match run.node(root)? {
        Some(ev) => KernelizeOutcome::Reported(ev),
        None => KernelizeOutcome::Done {
            graph: run.gp,
            dec: run.wd,
        },
    })
}

fn relabel(ids: &[Vertex], labels: &[Vertex]) -> Vec<Vertex> {
    ids.iter().map(|&v| labels[v]).collect()
}

pub(super) fn relabel_evidence(ev: YesEvidence, labels: &[Vertex]) -> YesEvidence {
    match ev {
        YesEvidence::Width { component, bag } => YesEvidence::Width {
            component: relabel(&component, labels),
            bag: relabel(&bag, labels),
        },
        YesEvidence::OracleASide { side } => YesEvidence::OracleASide {
            side: relabel(&side, labels),
        },
        YesEvidence::LongXyPath { side, x, y, component } => YesEvidence::LongXyPath {
            side: relabel(&side, labels),
            x: labels[x],
            y: labels[y],
            component: relabel(&component, labels),
        },
        YesEvidence::FinalQuery { remaining } => YesEvidence::FinalQuery {
            remaining: relabel(&remaining, labels),
        },
        YesEvidence::Trivial => YesEvidence::Trivial,
    }
}

/// Decides whether `g` has a cycle of length at least `cfg.k`, querying the
/// oracle only through `session`.
pub fn turing_kernel_cycle(g: &Graph, cfg: &CycleKernelConfig, session: &mut OracleSession) -> Result<KernelOutcome, OracleError> {
    let k = cfg.k.max(3);
    let mut meta = RunMeta {
        problem: ProblemKind::Cycle,
        class: cfg.class,
        k,
        n: g.order(),
        m: g.size(),
        width_threshold: cfg.width_threshold,
        max_bag: 0,
        audit_failures: Vec::new(),
        start: Instant::now(),
        outer_stats: session.swap_stats(Default::default()),
    };
    match run_blocks(g, cfg, k, session, &mut meta) {
        Ok(ev) => Ok(meta.finish(session, ev)),
        Err(e) => {
            meta.abort(session);
            Err(e)
        }
    }
}

fn run_blocks(g: &Graph, cfg: &CycleKernelConfig, k: usize, session: &mut OracleSession, meta: &mut RunMeta) -> Result<Option<YesEvidence>, OracleError> {
    // a cycle lives inside one block, and blocks on two vertices are bridges
    for block in biconnected_components(g).blocks.into_iter().filter(|b| b.vertices.len() >= 3) {
        let (h, labels) = g.induced_compact(&block.vertices);
        let td = tutte_decompose(&h);
        meta.max_bag = meta.max_bag.max(td.max_bag_size());
        if let Some(i) = (0..td.tree().num_nodes()).find(|&i| td.tree().bag(i).len() >= cfg.width_threshold) {
            return Ok(Some(relabel_evidence(
                YesEvidence::Width {
                    component: h.vertex_list(),
                    bag: td.tree().bag(i).to_vec(),
                },
                &labels,
            )));
        }
        match kernelize_cycle(&h, &td, k, session, &cfg.options, &mut meta.audit_failures)? {
            KernelizeOutcome::Reported(ev) => return Ok(Some(relabel_evidence(ev, &labels))),
            KernelizeOutcome::Done { graph, .. } => {
                if session.query(Problem::Cycle, &graph, k, "final")? {
                    return Ok(Some(relabel_evidence(
                        YesEvidence::FinalQuery {
                            remaining: graph.vertex_list(),
                        },
                        &labels,
                    )));
                }
            }
        }
    }
    Ok(None)
}
