//! Simple undirected graphs with stable vertex ids.
//!
//! Vertices are `0..capacity()`. Removing a vertex leaves a tombstone so ids
//! held elsewhere (decomposition bags, query maps) stay meaningful.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

pub type Vertex = usize;
pub type Edge = (Vertex, Vertex);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} is out of range or removed")]
    NoSuchVertex(Vertex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("terminals must be distinct, got {0} twice")]
    SameTerminals(Vertex),
    #[error("extension length must be at least 1")]
    ZeroLength,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    present: Vec<bool>,
    order: usize,
    size: usize,
}

/// Normalizes an edge so the smaller endpoint comes first.
pub fn norm(u: Vertex, v: Vertex) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            present: vec![true; n],
            order: n,
            size: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            if !g.add_edge(u, v)? {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(g)
    }

    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.present.len() && self.present[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.adj.len()).filter(move |&v| self.present[v])
    }

    pub fn vertex_list(&self) -> Vec<Vertex> {
        self.vertices().collect()
    }

    /// Sorted neighbour list. Empty for removed vertices.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<Edge> {
        self.edges().collect()
    }

    pub fn add_vertex(&mut self) -> Vertex {
        self.adj.push(Vec::new());
        self.present.push(true);
        self.order += 1;
        self.adj.len() - 1
    }

    /// Adds `uv`. Returns `Ok(false)` if the edge already exists.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<bool, GraphError> {
        if !self.contains(u) {
            return Err(GraphError::NoSuchVertex(u));
        }
        if !self.contains(v) {
            return Err(GraphError::NoSuchVertex(v));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.size += 1;
                Ok(true)
            }
        }
    }

    /// Panicking variant of [`Graph::add_edge`] for internal construction.
    pub fn insert_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        self.add_edge(u, v).expect("invalid edge")
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u >= self.adj.len() || v >= self.adj.len() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).unwrap();
                self.adj[v].remove(pos);
                self.size -= 1;
                true
            }
            Err(_) => false,
        }
    }

    /// Removes `v` and returns its former neighbours so the caller can undo
    /// the removal with [`Graph::restore_vertex`].
    pub fn remove_vertex(&mut self, v: Vertex) -> Vec<Vertex> {
        if !self.contains(v) {
            return Vec::new();
        }
        let ns = std::mem::take(&mut self.adj[v]);
        for &u in &ns {
            let pos = self.adj[u].binary_search(&v).unwrap();
            self.adj[u].remove(pos);
        }
        self.size -= ns.len();
        self.present[v] = false;
        self.order -= 1;
        ns
    }

    pub fn restore_vertex(&mut self, v: Vertex, neighbors: &[Vertex]) {
        assert!(!self.present[v], "vertex {v} is present");
        self.present[v] = true;
        self.order += 1;
        for &u in neighbors {
            self.insert_edge(u, v);
        }
    }

    pub fn remove_vertices<I: IntoIterator<Item = Vertex>>(&mut self, vs: I) {
        for v in vs {
            self.remove_vertex(v);
        }
    }

    /// Induced subgraph on `keep`, preserving ids (and capacity).
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut mask = vec![false; self.capacity()];
        for &v in keep {
            if self.contains(v) {
                mask[v] = true;
            }
        }
        let mut h = Graph {
            adj: vec![Vec::new(); self.capacity()],
            present: mask.clone(),
            order: 0,
            size: 0,
        };
        for v in 0..self.capacity() {
            if mask[v] {
                h.order += 1;
                h.adj[v] = self.adj[v].iter().copied().filter(|&u| mask[u]).collect();
                h.size += h.adj[v].len();
            }
        }
        h.size /= 2;
        h
    }

    /// Induced subgraph on `keep`, relabelled to `0..keep.len()` in ascending
    /// id order. Returns the graph and the local-to-original map.
    pub fn induced_compact(&self, keep: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut labels: Vec<Vertex> = keep.iter().copied().filter(|&v| self.contains(v)).collect();
        labels.sort_unstable();
        labels.dedup();
        let mut local = vec![usize::MAX; self.capacity()];
        for (i, &v) in labels.iter().enumerate() {
            local[v] = i;
        }
        let mut h = Graph::new(labels.len());
        for (i, &v) in labels.iter().enumerate() {
            h.adj[i] = self.adj[v]
                .iter()
                .filter_map(|&u| (local[u] != usize::MAX).then_some(local[u]))
                .collect();
            h.size += h.adj[i].len();
        }
        h.size /= 2;
        (h, labels)
    }

    /// Relabels the present vertices to `0..order()`.
    pub fn compact(&self) -> (Graph, Vec<Vertex>) {
        let vs = self.vertex_list();
        self.induced_compact(&vs)
    }

    fn bfs_mark(&self, start: Vertex, blocked: &[bool], seen: &mut [bool], out: &mut Vec<Vertex>) {
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for &u in &self.adj[v] {
                if !seen[u] && !blocked[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_avoiding(&[])
    }

    /// Components of the graph with `removed` deleted.
    pub fn components_avoiding(&self, removed: &[Vertex]) -> Vec<Vec<Vertex>> {
        let mut blocked = vec![false; self.capacity()];
        for &v in removed {
            if v < blocked.len() {
                blocked[v] = true;
            }
        }
        let mut seen = vec![false; self.capacity()];
        let mut comps = Vec::new();
        for v in self.vertices() {
            if !seen[v] && !blocked[v] {
                let mut comp = Vec::new();
                self.bfs_mark(v, &blocked, &mut seen, &mut comp);
                comp.sort_unstable();
                comps.push(comp);
            }
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices reachable from `v`, sorted.
    pub fn component_of(&self, v: Vertex) -> Vec<Vertex> {
        let blocked = vec![false; self.capacity()];
        let mut seen = vec![false; self.capacity()];
        let mut comp = Vec::new();
        self.bfs_mark(v, &blocked, &mut seen, &mut comp);
        comp.sort_unstable();
        comp
    }

    /// Vertices outside `set` adjacent to some vertex of `set`.
    pub fn neighborhood(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut inside = vec![false; self.capacity()];
        for &v in set {
            inside[v] = true;
        }
        let mut out: Vec<Vertex> = set
            .iter()
            .flat_map(|&v| self.adj[v].iter().copied())
            .filter(|&u| !inside[u])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Whether `s` is a minimal separator of `g`. For a disconnected graph this
/// holds when `s` is a minimal separator of one of its components.
pub fn is_minimal_separator(g: &Graph, s: &[Vertex]) -> bool {
    if s.is_empty() || s.iter().any(|&v| !g.contains(v)) {
        return false;
    }
    let comp = g.component_of(s[0]);
    if s.iter().any(|v| comp.binary_search(v).is_err()) {
        return false;
    }
    let h = g.induced(&comp);
    if h.components_avoiding(s).len() < 2 {
        return false;
    }
    // every proper subset must leave the component connected
    let n = s.len();
    (1u32..(1 << n) - 1).all(|mask| {
        let sub: Vec<Vertex> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        h.components_avoiding(&sub).len() <= 1
    })
}

/// A separation `(A, B)`: `A ∪ B = V(G)` and no edge joins `A∖B` to `B∖A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub side_a: BTreeSet<Vertex>,
    pub side_b: BTreeSet<Vertex>,
    pub separator: BTreeSet<Vertex>,
}

impl Separation {
    pub fn new(side_a: BTreeSet<Vertex>, side_b: BTreeSet<Vertex>) -> Self {
        let separator = side_a.intersection(&side_b).copied().collect();
        Separation {
            side_a,
            side_b,
            separator,
        }
    }

    pub fn order(&self) -> usize {
        self.separator.len()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let covers = g.vertices().all(|v| self.side_a.contains(&v) || self.side_b.contains(&v));
        let inside = self.side_a.iter().chain(&self.side_b).all(|&v| g.contains(v));
        let crossing = g.edges().any(|(u, v)| {
            let ua = !self.side_b.contains(&u);
            let ub = !self.side_a.contains(&u);
            let va = !self.side_b.contains(&v);
            let vb = !self.side_a.contains(&v);
            (ua && vb) || (ub && va)
        });
        covers && inside && !crossing
    }
}

/// `G` plus a fresh path of `len` edges from `x` to `y`. The new internal
/// vertices get ids `capacity()..`. For `len == 1` this adds the edge `xy`.
pub fn xy_extension(g: &Graph, x: Vertex, y: Vertex, len: usize) -> Result<Graph, GraphError> {
    if !g.contains(x) {
        return Err(GraphError::NoSuchVertex(x));
    }
    if !g.contains(y) {
        return Err(GraphError::NoSuchVertex(y));
    }
    if x == y {
        return Err(GraphError::SameTerminals(x));
    }
    if len == 0 {
        return Err(GraphError::ZeroLength);
    }
    let mut h = g.clone();
    let mut prev = x;
    for _ in 1..len {
        let v = h.add_vertex();
        h.insert_edge(prev, v);
        prev = v;
    }
    h.add_edge(prev, y)?;
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<Edge> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert_eq!(Graph::from_edges(2, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        assert!(matches!(Graph::from_edges(2, &[(0, 2)]), Err(GraphError::NoSuchVertex(2))));
    }

    #[test]
    fn remove_and_restore() {
        let mut g = cycle(5);
        let ns = g.remove_vertex(2);
        assert_eq!(ns, vec![1, 3]);
        assert_eq!((g.order(), g.size()), (4, 3));
        assert!(g.is_connected());
        g.remove_vertex(4);
        assert_eq!(g.components(), vec![vec![0, 1], vec![3]]);
        g.restore_vertex(4, &[0, 3]);
        g.restore_vertex(2, &ns);
        assert_eq!(g, cycle(5));
    }

    #[test]
    fn compact_preserves_order() {
        let g = cycle(6);
        let (h, labels) = g.induced_compact(&[5, 0, 1, 3]);
        assert_eq!(labels, vec![0, 1, 3, 5]);
        assert_eq!(h.edge_list(), vec![(0, 1), (0, 3)]);
    }

    #[test]
    fn minimal_separators() {
        let g = cycle(6);
        assert!(is_minimal_separator(&g, &[0, 3]));
        assert!(is_minimal_separator(&g, &[0, 2]));
        assert!(!is_minimal_separator(&g, &[0, 1]));
        assert!(!is_minimal_separator(&g, &[0]));
        // path 0-1-2: {1} is minimal, {0,1} is not
        let p = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(is_minimal_separator(&p, &[1]));
        assert!(!is_minimal_separator(&p, &[0, 1]));
    }

    #[test]
    fn separation_validity() {
        let g = cycle(4);
        let s = Separation::new([0, 1, 2].into(), [2, 3, 0].into());
        assert!(s.is_valid_in(&g));
        assert_eq!(s.order(), 2);
        let bad = Separation::new([0, 1].into(), [2, 3].into());
        assert!(!bad.is_valid_in(&g));
    }

    #[test]
    fn extension() {
        let g = Graph::new(2);
        let h = xy_extension(&g, 0, 1, 3).unwrap();
        assert_eq!((h.order(), h.size()), (4, 3));
        assert_eq!(xy_extension(&g, 0, 0, 2), Err(GraphError::SameTerminals(0)));
        assert_eq!(xy_extension(&g, 0, 1, 0), Err(GraphError::ZeroLength));
        assert_eq!(xy_extension(&g, 0, 1, 1).unwrap().size(), 1);
    }
}
