//! Tree decompositions, torsos and the Tutte decomposition.

mod biconnected;
mod tutte;
mod working;

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::graph::{Graph, Separation, Vertex};

pub use biconnected::{articulation_mask, biconnected_components, Biconnected, Block};
pub use tutte::{is_triconnected, tutte_decompose};
pub use working::WorkingDec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("nodes {0} and {1} are not adjacent in the decomposition tree")]
    NotATreeEdge(usize, usize),
    #[error("node {0} does not exist")]
    NoSuchNode(usize),
    #[error("children of node {node} have different adhesions")]
    UnequalAdhesions { node: usize },
    #[error("invalid tree decomposition: {0}")]
    Invalid(String),
}

/// A tree decomposition: bags indexed by node id, and tree edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDec {
    bags: Vec<Vec<Vertex>>,
    edges: Vec<(usize, usize)>,
    nbrs: Vec<Vec<usize>>,
    root: Option<usize>,
}

fn intersect(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

impl TreeDec {
    /// Bags are sorted on construction.
    pub fn new(mut bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>, root: Option<usize>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        let mut nbrs = vec![Vec::new(); bags.len()];
        for &(i, j) in &edges {
            nbrs[i].push(j);
            nbrs[j].push(i);
        }
        for ns in &mut nbrs {
            ns.sort_unstable();
        }
        TreeDec {
            bags,
            edges,
            nbrs,
            root,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, i: usize) -> &[Vertex] {
        &self.bags[i]
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.nbrs[i]
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn adhesion(&self, i: usize, j: usize) -> Vec<Vertex> {
        intersect(&self.bags[i], &self.bags[j])
    }

    pub fn adhesion_width(&self) -> usize {
        self.edges
            .iter()
            .map(|&(i, j)| self.adhesion(i, j).len())
            .max()
            .unwrap_or(0)
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks the three tree-decomposition axioms and that the node graph is
    /// a tree.
    pub fn validate(&self, g: &Graph) -> Result<(), DecompositionError> {
        let n = self.num_nodes();
        let bad = |m: String| Err(DecompositionError::Invalid(m));
        if n == 0 {
            return bad("no nodes".into());
        }
        if self.edges.len() != n - 1 {
            return bad(format!("{} nodes but {} tree edges", n, self.edges.len()));
        }
        if !self.nodes_connected(|_| true) {
            return bad("node graph is disconnected".into());
        }
        let mut covered = vec![false; g.capacity()];
        for b in &self.bags {
            for &v in b {
                if !g.contains(v) {
                    return bad(format!("bag vertex {v} not in graph"));
                }
                covered[v] = true;
            }
        }
        if let Some(v) = g.vertices().find(|&v| !covered[v]) {
            return bad(format!("vertex {v} is in no bag"));
        }
        for (u, v) in g.edges() {
            if !self.bags.iter().any(|b| b.binary_search(&u).is_ok() && b.binary_search(&v).is_ok()) {
                return bad(format!("edge {{{u}, {v}}} is in no bag"));
            }
        }
        for v in g.vertices() {
            if !self.nodes_connected(|i| self.bags[i].binary_search(&v).is_ok()) {
                return bad(format!("bags containing {v} are not connected"));
            }
        }
        Ok(())
    }

    fn nodes_connected(&self, keep: impl Fn(usize) -> bool) -> bool {
        let nodes: Vec<usize> = (0..self.num_nodes()).filter(|&i| keep(i)).collect();
        let Some(&start) = nodes.first() else {
            return true;
        };
        let mut seen = vec![false; self.num_nodes()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut count = 0;
        while let Some(i) = queue.pop_front() {
            count += 1;
            for &j in &self.nbrs[i] {
                if !seen[j] && keep(j) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        count == nodes.len()
    }

    /// Nodes on `j`'s side after deleting the tree edge `ij`.
    fn side_nodes(&self, i: usize, j: usize) -> Vec<usize> {
        let mut seen = vec![false; self.num_nodes()];
        seen[i] = true;
        seen[j] = true;
        let mut out = vec![j];
        let mut queue = VecDeque::from([j]);
        while let Some(a) = queue.pop_front() {
            for &b in &self.nbrs[a] {
                if !seen[b] {
                    seen[b] = true;
                    out.push(b);
                    queue.push_back(b);
                }
            }
        }
        out
    }

    fn union_bags(&self, nodes: &[usize]) -> BTreeSet<Vertex> {
        nodes.iter().flat_map(|&i| self.bags[i].iter().copied()).collect()
    }

    fn check_node(&self, i: usize) -> Result<(), DecompositionError> {
        if i < self.num_nodes() {
            Ok(())
        } else {
            Err(DecompositionError::NoSuchNode(i))
        }
    }

    /// The separation `(⋃ bags on i's side, ⋃ bags on j's side)`.
    pub fn separation_from_tree_edge(&self, i: usize, j: usize) -> Result<Separation, DecompositionError> {
        self.check_node(i)?;
        self.check_node(j)?;
        if self.nbrs[i].binary_search(&j).is_err() {
            return Err(DecompositionError::NotATreeEdge(i, j));
        }
        let a = self.union_bags(&self.side_nodes(j, i));
        let b = self.union_bags(&self.side_nodes(i, j));
        Ok(Separation::new(a, b))
    }

    /// For children `js` of `i` (relative to the root) that share one
    /// adhesion, the separation with `B` the union of their subtrees.
    pub fn separation_from_children(&self, i: usize, js: &[usize]) -> Result<Separation, DecompositionError> {
        self.check_node(i)?;
        let root = self.root.unwrap_or(0);
        let mut adhesion = None;
        let mut b_nodes = Vec::new();
        for &j in js {
            self.check_node(j)?;
            if self.nbrs[i].binary_search(&j).is_err() {
                return Err(DecompositionError::NotATreeEdge(i, j));
            }
            let side = self.side_nodes(i, j);
            if side.contains(&root) {
                return Err(DecompositionError::Invalid(format!("{j} is the parent of {i}")));
            }
            let adh = self.adhesion(i, j);
            match &adhesion {
                None => adhesion = Some(adh),
                Some(a) if *a != adh => return Err(DecompositionError::UnequalAdhesions { node: i }),
                _ => {}
            }
            b_nodes.extend(side);
        }
        let b = self.union_bags(&b_nodes);
        let mut in_b = vec![false; self.num_nodes()];
        for &x in &b_nodes {
            in_b[x] = true;
        }
        let a_nodes: Vec<usize> = (0..self.num_nodes()).filter(|&x| !in_b[x]).collect();
        Ok(Separation::new(self.union_bags(&a_nodes), b))
    }
}

/// `G[bag]` plus an edge between any two bag vertices that share the
/// neighbourhood of a component of `G - bag`. Ids are preserved.
pub fn torso(g: &Graph, bag: &[Vertex]) -> Graph {
    let mut t = g.induced(bag);
    for comp in g.components_avoiding(bag) {
        let nb = g.neighborhood(&comp);
        for (a, &u) in nb.iter().enumerate() {
            for &v in &nb[a + 1..] {
                t.insert_edge(u, v);
            }
        }
    }
    t
}

/// A Tutte decomposition of a graph, with lazily computed torsos.
#[derive(Debug)]
pub struct TutteDec {
    base: TreeDec,
    graph: Graph,
    torso_cache: Vec<OnceLock<Graph>>,
}

impl TutteDec {
    pub(crate) fn new(base: TreeDec, graph: Graph) -> Self {
        let torso_cache = (0..base.num_nodes()).map(|_| OnceLock::new()).collect();
        TutteDec {
            base,
            graph,
            torso_cache,
        }
    }

    pub fn tree(&self) -> &TreeDec {
        &self.base
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn torso(&self, i: usize) -> &Graph {
        self.torso_cache[i].get_or_init(|| torso(&self.graph, self.base.bag(i)))
    }

    pub fn max_bag_size(&self) -> usize {
        self.base.max_bag_size()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torso_of_cycle_bag() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let t = torso(&g, &[0, 2, 4]);
        assert_eq!(t.edge_list(), vec![(0, 2), (0, 4), (2, 4)]);
    }

    #[test]
    fn separations() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let td = TreeDec::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]], vec![(0, 1), (1, 2)], Some(0));
        td.validate(&g).unwrap();
        let s = td.separation_from_tree_edge(0, 1).unwrap();
        assert_eq!(s.separator, [1].into());
        assert!(s.is_valid_in(&g));
        assert_eq!(td.separation_from_tree_edge(0, 2), Err(DecompositionError::NotATreeEdge(0, 2)));
        let s = td.separation_from_children(1, &[2]).unwrap();
        assert_eq!(s.side_b, [2, 3].into());
        assert!(td.separation_from_children(1, &[0]).is_err());
    }

    #[test]
    fn unequal_adhesions() {
        let td = TreeDec::new(vec![vec![0, 1, 2], vec![0, 1], vec![1, 2]], vec![(0, 1), (0, 2)], Some(0));
        assert_eq!(
            td.separation_from_children(0, &[1, 2]),
            Err(DecompositionError::UnequalAdhesions { node: 0 })
        );
    }
}
