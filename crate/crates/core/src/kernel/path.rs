//! The k-Path Turing kernel.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use super::cycle::relabel_evidence;
use super::threshold::{poly_budget, poly_c_from_env, width_threshold, DEFAULT_POLY_C};
use super::{open_session, KernelOptions, KernelOutcome, Mutation, ProblemKind, RunMeta, YesEvidence};
use crate::class::GraphClass;
use crate::decomposition::{tutte_decompose, TutteDec, WorkingDec};
use crate::graph::{Edge, Graph, Vertex};
use crate::oracle::{selfreduce_max_stable_set, OracleError, OracleSession, Problem, SolverConfig, StableEdgeProperty};

#[derive(Clone, Debug)]
pub struct PathKernelConfig {
    pub class: GraphClass,
    pub k: usize,
    /// Computed at `k + 1`: a (k+1)-cycle contains a k-path.
    pub width_threshold: usize,
    pub query_budget: usize,
    pub options: KernelOptions,
}

impl PathKernelConfig {
    pub fn new(class: GraphClass, k: usize) -> Self {
        // no closed-form bound exists for paths, planar included
        let query_budget = poly_budget(k, DEFAULT_POLY_C);
        PathKernelConfig {
            class,
            k,
            width_threshold: width_threshold(class, k + 1),
            query_budget,
            options: KernelOptions::default(),
        }
    }

    pub fn with_env(mut self) -> Self {
        self.options.solver = SolverConfig::from_env();
        self.query_budget = poly_budget(self.k, poly_c_from_env());
        self
    }

    pub fn with_options(mut self, options: KernelOptions) -> Self {
        self.options = options;
        self
    }

    pub fn session(&self) -> OracleSession {
        open_session(self.query_budget, self.k, self.class, &self.options)
    }
}

/// Vertex sets of the six maximum witness structures for a separation with
/// separator `{x, y}`:
/// `p1` x-path avoiding y, `p2` y-path avoiding x, `p3` x-path, `p4` y-path,
/// `p5` xy-path, `p6` disjoint x-path and y-path of maximum total length.
/// A witness with no edges is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessSet {
    pub p1: BTreeSet<Vertex>,
    pub p2: BTreeSet<Vertex>,
    pub p3: BTreeSet<Vertex>,
    pub p4: BTreeSet<Vertex>,
    pub p5: BTreeSet<Vertex>,
    pub p6: BTreeSet<Vertex>,
    /// Edge count of `p6`.
    pub p6_edges: usize,
}

impl WitnessSet {
    pub fn all(&self) -> [&BTreeSet<Vertex>; 6] {
        [&self.p1, &self.p2, &self.p3, &self.p4, &self.p5, &self.p6]
    }

    pub fn union(&self) -> BTreeSet<Vertex> {
        self.all().into_iter().flatten().copied().collect()
    }
}

fn endpoints(edges: &[Edge]) -> BTreeSet<Vertex> {
    edges.iter().flat_map(|&(u, v)| [u, v]).collect()
}

/// The six witnesses in `G[side]`, each found by the stable-property
/// self-reduction.
pub fn compute_witnesses(
    session: &mut OracleSession,
    g: &Graph,
    side: &[Vertex],
    x: Vertex,
    y: Vertex,
    purpose: &'static str,
) -> Result<WitnessSet, OracleError> {
    if x == y {
        return Err(OracleError::InvalidInput(format!("terminals must differ, got {x} twice")));
    }
    let ga = g.induced(side);
    let mut without_y = ga.clone();
    without_y.remove_vertex(y);
    let mut without_x = ga.clone();
    without_x.remove_vertex(x);
    let mut find = |h: &Graph, a: Vertex, b: Vertex, p: StableEdgeProperty| -> Result<Vec<Edge>, OracleError> {
        Ok(selfreduce_max_stable_set(session, h, a, b, p, purpose)?.unwrap_or_default())
    };
    use StableEdgeProperty::*;
    let p1 = find(&without_y, x, x, XPath)?;
    let p2 = find(&without_x, y, y, XPath)?;
    let p3 = find(&ga, x, x, XPath)?;
    let p4 = find(&ga, y, y, XPath)?;
    let p5 = find(&ga, x, y, XYPath)?;
    let p6 = find(&ga, x, y, TwoDisjointXYEndPaths)?;
    Ok(WitnessSet {
        p1: endpoints(&p1),
        p2: endpoints(&p2),
        p3: endpoints(&p3),
        p4: endpoints(&p4),
        p5: endpoints(&p5),
        p6_edges: p6.len(),
        p6: endpoints(&p6),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducePOutcome {
    /// `G'[A]` has a k-path.
    PathInSide,
    /// Vertices of `A ∖ B` outside the witnesses were deleted.
    Reduced { kept: BTreeSet<Vertex>, removed: Vec<Vertex> },
}

/// One reduction step on the separation with A-side `side` and separator
/// `sep` (one or two vertices) of the working graph `gp`.
pub fn reduce_p(
    session: &mut OracleSession,
    gp: &mut Graph,
    side: &[Vertex],
    sep: &[Vertex],
    k: usize,
    purpose: &'static str,
) -> Result<ReducePOutcome, OracleError> {
    reduce_p_with(session, gp, side, sep, k, purpose, None)
}

fn reduce_p_with(
    session: &mut OracleSession,
    gp: &mut Graph,
    side: &[Vertex],
    sep: &[Vertex],
    k: usize,
    purpose: &'static str,
    mutation: Option<Mutation>,
) -> Result<ReducePOutcome, OracleError> {
    let ga = gp.induced(side);
    if session.query(Problem::Path, &ga, k, purpose)? {
        return Ok(ReducePOutcome::PathInSide);
    }
    let mut kept = match *sep {
        [x, y] => compute_witnesses(session, gp, side, x, y, purpose)?.union(),
        [x] => endpoints(&selfreduce_max_stable_set(session, &ga, x, x, StableEdgeProperty::XPath, purpose)?.unwrap_or_default()),
        _ => return Err(OracleError::InvalidInput(format!("separator of order {} is not 1 or 2", sep.len()))),
    };
    if mutation == Some(Mutation::SkipWitnessRetention) {
        kept.clear();
    }
    kept.extend(sep.iter().copied());
    let removed: Vec<Vertex> = side.iter().copied().filter(|v| !kept.contains(v)).collect();
    gp.remove_vertices(removed.iter().copied());
    Ok(ReducePOutcome::Reduced { kept, removed })
}

use super::cycle::KernelizeOutcome;

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
    fn reduce(&mut self, roots: &[usize], sep: &[Vertex], purpose: &'static str) -> Result<Option<YesEvidence>, OracleError> {
        let mut side: Vec<Vertex> = roots.iter().flat_map(|&j| self.wd.subtree_vertices(j)).collect();
        side.sort_unstable();
        side.dedup();
        match reduce_p_with(self.session, &mut self.gp, &side, sep, self.k, purpose, self.opts.mutation)? {
            ReducePOutcome::PathInSide => Ok(Some(YesEvidence::OracleASide { side })),
            ReducePOutcome::Reduced { kept, removed } => {
                self.wd.remove_vertices(roots, &removed);
                if self.opts.audit {
                    let (max_kept, max_comps) = if sep.len() == 2 { (7 * self.k + 2, 12) } else { (self.k + 1, 1) };
                    if kept.len() > max_kept {
                        self.audit.push(format!("{purpose}: kept {} vertices of A, limit {max_kept}", kept.len()));
                    }
                    let rest: Vec<Vertex> = kept.iter().copied().filter(|v| !sep.contains(v)).collect();
                    let comps = self.gp.induced(&rest).components().len();
                    if comps > max_comps {
                        self.audit.push(format!("{purpose}: G'[A] - Z has {comps} components, limit {max_comps}"));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Repeatedly reduces groups of `batch` children sharing an adhesion of
    /// order `order`, smallest adhesion first and smallest ids within it.
    fn merge_siblings(&mut self, i: usize, order: usize, batch: usize, purpose: &'static str) -> Result<Option<YesEvidence>, OracleError> {
        let mut stuck: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        loop {
            let mut groups: BTreeMap<Vec<Vertex>, Vec<usize>> = BTreeMap::new();
            for &j in self.wd.children(i) {
                let z = self.wd.adhesion_to_parent(j);
                if z.len() == order && !stuck.contains(&z) {
                    groups.entry(z).or_default().push(j);
                }
            }
            let Some((z, js)) = groups.into_iter().find(|(_, js)| js.len() >= batch) else {
                return Ok(None);
            };
            let before = js.len();
            if let Some(ev) = self.reduce(&js[..batch], &z, purpose)? {
                return Ok(Some(ev));
            }
            let after = self.wd.children(i).iter().filter(|&&j| self.wd.adhesion_to_parent(j) == z).count();
            if after >= before {
                self.audit.push(format!("node {i}: {purpose} at {z:?} removed no subtree"));
                stuck.insert(z);
            }
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
            let z = self.wd.adhesion_to_parent(j);
            if z.is_empty() || z.len() > 2 {
                self.audit.push(format!("child {j} of {i} has adhesion {z:?}"));
                continue;
            }
            if let Some(ev) = self.reduce(&[j], &z, "reduce-p:child")? {
                return Ok(Some(ev));
            }
        }
        if let Some(ev) = self.merge_siblings(i, 1, 2, "reduce-p:cut-siblings")? {
            return Ok(Some(ev));
        }
        if let Some(ev) = self.merge_siblings(i, 2, 13, "reduce-p:pair-batch")? {
            return Ok(Some(ev));
        }
        if self.opts.audit {
            let have = self.wd.subtree_vertices(i).len();
            let bag = self.td.tree().bag(i).len();
            let bound = (7 * self.k + 2) * (12 * self.td.torso(i).size() + bag) + bag;
            if have > bound {
                self.audit.push(format!("node {i}: subtree keeps {have} vertices, bound {bound}"));
            }
        }
        Ok(None)
    }
}

/// Runs the reduction on a connected graph `g` with Tutte decomposition
/// `td`, rooted at node 0. Evidence is in the ids of `g`.
pub fn kernelize_path(
    g: &Graph,
    td: &TutteDec,
    k: usize,
    session: &mut OracleSession,
    opts: &KernelOptions,
    audit: &mut Vec<String>,
) -> Result<KernelizeOutcome, OracleError> {
    let mut run = Run {
        k,
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

/// Decides whether `g` has a path with at least `cfg.k` edges, querying the
/// oracle only through `session`.
pub fn turing_kernel_path(g: &Graph, cfg: &PathKernelConfig, session: &mut OracleSession) -> Result<KernelOutcome, OracleError> {
    let mut meta = RunMeta {
        problem: ProblemKind::Path,
        class: cfg.class,
        k: cfg.k,
        n: g.order(),
        m: g.size(),
        width_threshold: cfg.width_threshold,
        max_bag: 0,
        audit_failures: Vec::new(),
        start: Instant::now(),
        outer_stats: session.swap_stats(Default::default()),
    };
    match run_components(g, cfg, session, &mut meta) {
        Ok(ev) => Ok(meta.finish(session, ev)),
        Err(e) => {
            meta.abort(session);
            Err(e)
        }
    }
}

fn run_components(g: &Graph, cfg: &PathKernelConfig, session: &mut OracleSession, meta: &mut RunMeta) -> Result<Option<YesEvidence>, OracleError> {
    let k = cfg.k;
    match k {
        0 => return Ok((g.order() > 0).then_some(YesEvidence::Trivial)),
        1 => return Ok((g.size() > 0).then_some(YesEvidence::Trivial)),
        _ => {}
    }
    // a k-path needs k + 1 vertices of one component
    for comp in g.components().into_iter().filter(|c| c.len() > k) {
        let (h, labels) = g.induced_compact(&comp);
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
        match kernelize_path(&h, &td, k, session, &cfg.options, &mut meta.audit_failures)? {
            KernelizeOutcome::Reported(ev) => return Ok(Some(relabel_evidence(ev, &labels))),
            KernelizeOutcome::Done { graph, .. } => {
                if session.query(Problem::Path, &graph, k, "final")? {
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
