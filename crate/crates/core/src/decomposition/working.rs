//! A rooted, shrinking copy of a decomposition used during reduction.
//!
//! Removed vertices disappear from every bag, and a leaf whose bag is
//! contained in its parent's bag is dropped.

use std::collections::VecDeque;

use super::TreeDec;
use crate::graph::Vertex;

#[derive(Clone, Debug)]
pub struct WorkingDec {
    bags: Vec<Vec<Vertex>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    alive: Vec<bool>,
    root: usize,
}

impl WorkingDec {
    pub fn from_tree(td: &TreeDec, root: usize) -> Self {
        let n = td.num_nodes();
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            for &j in td.neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some(i);
                    children[i].push(j);
                    queue.push_back(j);
                }
            }
        }
        WorkingDec {
            bags: td.bags().to_vec(),
            parent,
            children,
            alive: vec![true; n],
            root,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive[i]
    }

    pub fn bag(&self, i: usize) -> &[Vertex] {
        &self.bags[i]
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        self.parent[i]
    }

    /// Live children in ascending id order.
    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    pub fn live_nodes(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// `bag(j) ∩ bag(parent(j))`.
    pub fn adhesion_to_parent(&self, j: usize) -> Vec<Vertex> {
        match self.parent[j] {
            Some(p) => self.bags[j]
                .iter()
                .copied()
                .filter(|v| self.bags[p].binary_search(v).is_ok())
                .collect(),
            None => Vec::new(),
        }
    }

    fn subtree_nodes(&self, j: usize) -> Vec<usize> {
        let mut out = vec![j];
        let mut idx = 0;
        while idx < out.len() {
            out.extend_from_slice(&self.children[out[idx]]);
            idx += 1;
        }
        out
    }

    /// Union of the bags in the subtree rooted at `j`, sorted.
    pub fn subtree_vertices(&self, j: usize) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self
            .subtree_nodes(j)
            .into_iter()
            .flat_map(|i| self.bags[i].iter().copied())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Removes `removed` from the bags of the subtrees rooted at `roots`,
    /// which must contain every occurrence of those vertices, then absorbs
    /// leaves.
    pub fn remove_vertices(&mut self, roots: &[usize], removed: &[Vertex]) {
        if removed.is_empty() {
            return;
        }
        let mut sorted = removed.to_vec();
        sorted.sort_unstable();
        let mut touched = Vec::new();
        for &r in roots {
            for i in self.subtree_nodes(r) {
                self.bags[i].retain(|v| sorted.binary_search(v).is_err());
                touched.push(i);
            }
        }
        self.absorb(touched);
    }

    fn absorb(&mut self, mut work: Vec<usize>) {
        while let Some(i) = work.pop() {
            if !self.alive[i] || !self.children[i].is_empty() {
                continue;
            }
            let Some(p) = self.parent[i] else {
                continue;
            };
            if self.bags[i].iter().all(|v| self.bags[p].binary_search(v).is_ok()) {
                self.alive[i] = false;
                self.children[p].retain(|&c| c != i);
                work.push(p);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn absorbs_emptied_leaves() {
        let td = TreeDec::new(
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![1, 4]],
            vec![(0, 1), (1, 2), (0, 3)],
            Some(0),
        );
        let mut w = WorkingDec::from_tree(&td, 0);
        assert_eq!(w.children(0), &[1, 3]);
        assert_eq!(w.subtree_vertices(1), vec![1, 2, 3]);
        w.remove_vertices(&[1], &[2, 3]);
        assert!(!w.is_alive(1) && !w.is_alive(2));
        assert_eq!(w.children(0), &[3]);
        assert_eq!(w.live_nodes(), 2);
        assert_eq!(w.adhesion_to_parent(3), vec![1]);
    }
}
