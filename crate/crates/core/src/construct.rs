//! Turning yes answers into explicit paths and cycles.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::class::GraphClass;
use crate::decomposition::torso;
use crate::graph::{is_minimal_separator, Edge, Graph, Vertex};
use crate::kernel::{turing_kernel_cycle, turing_kernel_path, CycleKernelConfig, KernelOutcome, KernelReport, PathKernelConfig, YesEvidence};
use crate::oracle::{find_k_cycle, find_k_path, selfreduce_edges, selfreduce_max_stable_set, OracleError, OracleSession, Problem, SolveError, StableEdgeProperty};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("edge set does not decode: {0}")]
    Decode(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertKind {
    Path,
    Cycle,
    None,
}

/// A path (vertex sequence) or a cycle (sequence without the repeated first
/// vertex), or the claim that none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertKind,
    pub vertices: Vec<Vertex>,
}

impl Certificate {
    pub fn none() -> Self {
        Certificate {
            kind: CertKind::None,
            vertices: Vec::new(),
        }
    }

    pub fn path(vertices: Vec<Vertex>) -> Self {
        Certificate { kind: CertKind::Path, vertices }
    }

    pub fn cycle(vertices: Vec<Vertex>) -> Self {
        Certificate { kind: CertKind::Cycle, vertices }
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        match self.kind {
            CertKind::Path => self.vertices.len().saturating_sub(1),
            CertKind::Cycle => self.vertices.len(),
            CertKind::None => 0,
        }
    }

    /// Checks adjacency, distinctness and length at least `k`. A `None`
    /// certificate is not checked against anything.
    pub fn validate(&self, g: &Graph, k: usize) -> Result<(), String> {
        let vs = &self.vertices;
        match self.kind {
            CertKind::None => return Ok(()),
            CertKind::Path if vs.is_empty() => return Err("empty path".into()),
            CertKind::Cycle if vs.len() < 3 => return Err(format!("cycle on {} vertices", vs.len())),
            _ => {}
        }
        if let Some(v) = vs.iter().find(|&&v| !g.contains(v)) {
            return Err(format!("vertex {v} is not in the graph"));
        }
        let mut seen = vs.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err("repeated vertex".into());
        }
        let closing = (self.kind == CertKind::Cycle).then(|| (vs[vs.len() - 1], vs[0]));
        if let Some((u, v)) = vs.windows(2).map(|w| (w[0], w[1])).chain(closing).find(|&(u, v)| !g.has_edge(u, v)) {
            return Err(format!("{u} and {v} are not adjacent"));
        }
        if self.length() < k {
            return Err(format!("length {} is below {k}", self.length()));
        }
        Ok(())
    }
}

/// `path: v1 v2 ...`, `cycle: v1 ...` or `none`, with 1-based ids.
impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            CertKind::Path => "path:",
            CertKind::Cycle => "cycle:",
            CertKind::None => return f.write_str("none"),
        };
        f.write_str(tag)?;
        for v in &self.vertices {
            write!(f, " {}", v + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct ConstructOutcome {
    pub certificate: Certificate,
    /// Report of the first kernel run, which decides the instance.
    pub decision: KernelReport,
    pub kernel_calls: usize,
    /// The certificate came from a direct search of a torso rather than from
    /// oracle queries.
    pub fallback: bool,
}

#[derive(Clone, Copy)]
enum Target<'a> {
    Path(&'a PathKernelConfig),
    Cycle(&'a CycleKernelConfig),
}

impl Target<'_> {
    fn problem(&self) -> Problem {
        match self {
            Target::Path(_) => Problem::Path,
            Target::Cycle(_) => Problem::Cycle,
        }
    }

    fn k(&self) -> usize {
        match self {
            Target::Path(c) => c.k,
            Target::Cycle(c) => c.k,
        }
    }

    fn class(&self) -> GraphClass {
        match self {
            Target::Path(c) => c.class,
            Target::Cycle(c) => c.class,
        }
    }

    fn kernel(&self, g: &Graph, session: &mut OracleSession) -> Result<KernelOutcome, OracleError> {
        match self {
            Target::Path(c) => turing_kernel_path(g, c, session),
            Target::Cycle(c) => turing_kernel_cycle(g, c, session),
        }
    }

    fn certificate(&self, vertices: Vec<Vertex>) -> Certificate {
        match self {
            Target::Path(_) => Certificate::path(vertices),
            Target::Cycle(_) => Certificate::cycle(vertices),
        }
    }
}

/// A path with at least `cfg.k` edges, found with the path kernel as the
/// decision procedure.
pub fn construct_path(g: &Graph, cfg: &PathKernelConfig, session: &mut OracleSession) -> Result<ConstructOutcome, ConstructError> {
    construct(g, Target::Path(cfg), session)
}

/// A cycle with at least `cfg.k` edges, found with the cycle kernel as the
/// decision procedure.
pub fn construct_cycle(g: &Graph, cfg: &CycleKernelConfig, session: &mut OracleSession) -> Result<ConstructOutcome, ConstructError> {
    construct(g, Target::Cycle(cfg), session)
}

struct Builder<'a> {
    target: Target<'a>,
    kernel_calls: usize,
    fallback: bool,
}

fn construct(g: &Graph, target: Target<'_>, session: &mut OracleSession) -> Result<ConstructOutcome, ConstructError> {
    let first = target.kernel(g, session)?;
    let mut b = Builder {
        target,
        kernel_calls: 1,
        fallback: false,
    };
    let certificate = match first.evidence {
        None => Certificate::none(),
        Some(ev) => b.certify(g, ev, session)?,
    };
    if let Err(e) = certificate.validate(g, target.k()) {
        return Err(ConstructError::Decode(e));
    }
    Ok(ConstructOutcome {
        certificate,
        decision: first.report,
        kernel_calls: b.kernel_calls,
        fallback: b.fallback,
    })
}

impl Builder<'_> {
    fn certify(&mut self, g: &Graph, ev: YesEvidence, session: &mut OracleSession) -> Result<Certificate, ConstructError> {
        let k = self.target.k();
        match ev {
            YesEvidence::Trivial => {
                let v = g.vertices().next().ok_or_else(|| ConstructError::Decode("empty graph".into()))?;
                Ok(match (k, g.edges().next()) {
                    (0, _) => Certificate::path(vec![v]),
                    (_, Some((u, w))) => Certificate::path(vec![u, w]),
                    (_, None) => return Err(ConstructError::Decode("no edge for a trivial yes".into())),
                })
            }
            YesEvidence::OracleASide { side: vs } | YesEvidence::FinalQuery { remaining: vs } => {
                let h = g.induced(&vs);
                let edges = selfreduce_edges(session, self.target.problem(), &h, k, "construct")?
                    .ok_or_else(|| ConstructError::Decode("oracle no longer finds a solution".into()))?;
                self.decode(&edges)
            }
            YesEvidence::LongXyPath { side, x, y, component } => {
                let edges = selfreduce_max_stable_set(session, &g.induced(&side), x, y, StableEdgeProperty::XYPath, "construct")?
                    .ok_or_else(|| ConstructError::Decode("no xy-path in the side".into()))?;
                let path = walk_from(&edges, x)?;
                complete_xy_path_to_cycle(&g.induced(&component), x, y, &path)
            }
            YesEvidence::Width { component, bag } => match self.target.class() {
                GraphClass::Planar | GraphClass::K3tMinorFree(_) => self.delete_edges(g.induced(&component), session),
                GraphClass::MaxDegree(_) | GraphClass::ClawFree => {
                    self.fallback = true;
                    self.torso_search(&g.induced(&component), &bag, session)
                }
            },
        }
    }

    /// Deletes edges in ascending order as long as the kernel still says yes,
    /// switching to the oracle route as soon as the yes no longer comes from
    /// a wide bag.
    fn delete_edges(&mut self, mut h: Graph, session: &mut OracleSession) -> Result<Certificate, ConstructError> {
        for (u, v) in h.edge_list() {
            h.remove_edge(u, v);
            self.kernel_calls += 1;
            match self.target.kernel(&h, session)?.evidence {
                None => {
                    h.insert_edge(u, v);
                }
                Some(YesEvidence::Width { .. }) => {}
                Some(ev) => return self.certify(&h, ev, session),
            }
        }
        self.decode(&h.edge_list())
    }

    /// Exact search on the torso of `bag`, then each shortcut edge of the
    /// solution is replaced by a path through the component behind it.
    fn torso_search(&mut self, h: &Graph, bag: &[Vertex], session: &OracleSession) -> Result<Certificate, ConstructError> {
        let k = self.target.k();
        let mut cfg = session.solver().clone();
        cfg.time_limit = cfg.time_limit.map(|d| d * 10);
        let t = torso(h, bag);
        let found = match self.target {
            Target::Path(_) => find_k_path(&t, k, &cfg)?,
            Target::Cycle(_) => find_k_cycle(&t, k, &cfg)?,
        };
        let Some(seq) = found else {
            // the torso should always suffice; search the whole piece if not
            let seq = match self.target {
                Target::Path(_) => find_k_path(h, k, &cfg)?,
                Target::Cycle(_) => find_k_cycle(h, k, &cfg)?,
            };
            return seq.map(|s| self.target.certificate(s)).ok_or_else(|| ConstructError::Decode("no solution in the wide piece".into()));
        };
        let behind = h.components_avoiding(bag);
        let n = seq.len();
        let closing = matches!(self.target, Target::Cycle(_));
        let steps = if closing { n } else { n - 1 };
        let mut out = Vec::new();
        for i in 0..steps {
            let (u, v) = (seq[i], seq[(i + 1) % n]);
            out.push(u);
            if !h.has_edge(u, v) {
                let comp = behind
                    .iter()
                    .find(|c| c.iter().any(|&w| h.has_edge(u, w)) && c.iter().any(|&w| h.has_edge(v, w)))
                    .ok_or_else(|| ConstructError::Decode(format!("shortcut {u}-{v} has no component")))?;
                let mut inner = comp.clone();
                inner.extend([u, v]);
                let p = shortest_path(&h.induced(&inner), u, v).expect("component touches both ends");
                out.extend_from_slice(&p[1..p.len() - 1]);
            }
        }
        if !closing {
            out.push(seq[n - 1]);
        }
        Ok(self.target.certificate(out))
    }

    fn decode(&self, edges: &[Edge]) -> Result<Certificate, ConstructError> {
        match self.target {
            Target::Path(_) => {
                let deg = degrees(edges);
                let start = deg.iter().find(|(_, d)| **d == 1).map(|(&v, _)| v).ok_or_else(|| ConstructError::Decode("no path end".into()))?;
                Ok(Certificate::path(walk_from(edges, start)?))
            }
            Target::Cycle(_) => {
                let deg = degrees(edges);
                if deg.values().any(|&d| d != 2) {
                    return Err(ConstructError::Decode("not a single cycle".into()));
                }
                let start = *deg.keys().next().ok_or_else(|| ConstructError::Decode("no edges".into()))?;
                let mut seq = walk_from(edges, start)?;
                if seq.len() != deg.len() + 1 {
                    return Err(ConstructError::Decode("not a single cycle".into()));
                }
                seq.pop();
                Ok(Certificate::cycle(seq))
            }
        }
    }
}

fn degrees(edges: &[Edge]) -> BTreeMap<Vertex, usize> {
    let mut deg = BTreeMap::new();
    for &(u, v) in edges {
        *deg.entry(u).or_insert(0) += 1;
        *deg.entry(v).or_insert(0) += 1;
    }
    deg
}

/// Follows the edges from `start` while there is an unused one. Every edge
/// must be used; a cycle walk ends back at `start`.
fn walk_from(edges: &[Edge], start: Vertex) -> Result<Vec<Vertex>, ConstructError> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    if adj.values().any(|ns| ns.len() > 2) {
        return Err(ConstructError::Decode("a vertex has degree above 2".into()));
    }
    let mut seq = vec![start];
    let mut prev = None;
    let mut cur = start;
    for _ in 0..edges.len() {
        let next = adj
            .get(&cur)
            .and_then(|ns| ns.iter().copied().find(|&w| Some(w) != prev))
            .ok_or_else(|| ConstructError::Decode(format!("walk stops at {cur}")))?;
        seq.push(next);
        prev = Some(cur);
        cur = next;
    }
    Ok(seq)
}

/// Vertex sequence of a shortest `u`-`v` path.
fn shortest_path(g: &Graph, u: Vertex, v: Vertex) -> Option<Vec<Vertex>> {
    let mut parent = vec![usize::MAX; g.capacity()];
    parent[u] = u;
    let mut queue = VecDeque::from([u]);
    while let Some(a) = queue.pop_front() {
        if a == v {
            let mut p = vec![v];
            while *p.last().unwrap() != u {
                p.push(parent[*p.last().unwrap()]);
            }
            p.reverse();
            return Some(p);
        }
        for &b in g.neighbors(a) {
            if parent[b] == usize::MAX {
                parent[b] = a;
                queue.push_back(b);
            }
        }
    }
    None
}

/// Closes an xy-path (listed from `x` to `y`) into a cycle, through the edge
/// `xy` if present and otherwise through another component of
/// `G - {x, y}`.
pub fn complete_xy_path_to_cycle(g: &Graph, x: Vertex, y: Vertex, path: &[Vertex]) -> Result<Certificate, ConstructError> {
    if path.len() < 3 || path[0] != x || path[path.len() - 1] != y {
        return Err(ConstructError::Precondition("need an xy-path with at least 2 edges from x to y".into()));
    }
    if let Err(e) = Certificate::path(path.to_vec()).validate(g, 2) {
        return Err(ConstructError::Precondition(e));
    }
    if g.has_edge(x, y) {
        return Ok(Certificate::cycle(path.to_vec()));
    }
    if !is_minimal_separator(g, &[x, y]) {
        return Err(ConstructError::Precondition(format!("{{{x}, {y}}} is not a minimal separator")));
    }
    let used = path[1];
    let other = g
        .components_avoiding(&[x, y])
        .into_iter()
        .find(|c| c.binary_search(&used).is_err() && c.iter().any(|&w| g.has_edge(x, w)) && c.iter().any(|&w| g.has_edge(y, w)))
        .ok_or_else(|| ConstructError::Precondition("no second full component".into()))?;
    let mut keep = other;
    keep.extend([x, y]);
    let back = shortest_path(&g.induced(&keep), y, x).expect("full component connects x and y");
    let mut cycle = path.to_vec();
    cycle.extend_from_slice(&back[1..back.len() - 1]);
    Ok(Certificate::cycle(cycle))
}
