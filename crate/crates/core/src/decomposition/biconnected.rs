//! Lowpoint DFS: articulation points and blocks.

use crate::graph::{norm, Edge, Graph, Vertex};

const UNSEEN: usize = usize::MAX;

/// A biconnected component, given by its vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biconnected {
    /// Ordered by smallest vertex.
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
}

/// Blocks of `g` (edge-disjoint; isolated vertices belong to none) and the
/// cut vertices, which are the vertices lying in more than one block.
pub fn biconnected_components(g: &Graph) -> Biconnected {
    let n = g.capacity();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<Edge> = Vec::new();
    let mut blocks = Vec::new();
    // frame: (vertex, parent, next neighbour index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in g.vertices() {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        stack.push((root, UNSEEN, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent, idx) = *frame;
            if idx < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[idx];
                if w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        let mut edges = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            edges.push(norm(e.0, e.1));
                            if e == (parent, v) {
                                break;
                            }
                        }
                        let mut vertices: Vec<Vertex> =
                            edges.iter().flat_map(|&(a, b)| [a, b]).collect();
                        vertices.sort_unstable();
                        vertices.dedup();
                        edges.sort_unstable();
                        blocks.push(Block { vertices, edges });
                    }
                }
            }
        }
    }
    blocks.sort_by_key(|b: &Block| b.vertices[0]);
    let mut count = vec![0usize; n];
    for b in &blocks {
        for &v in &b.vertices {
            count[v] += 1;
        }
    }
    let cut_vertices = (0..n).filter(|&v| count[v] > 1).collect();
    Biconnected {
        blocks,
        cut_vertices,
    }
}

/// Articulation points of `g - skip` as a mask over ids.
pub fn articulation_mask(g: &Graph, skip: Option<Vertex>) -> Vec<bool> {
    let n = g.capacity();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut art = vec![false; n];
    let mut time = 0;
    if let Some(s) = skip {
        disc[s] = 0;
    }
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();
    for root in g.vertices() {
        if disc[root] != UNSEEN {
            continue;
        }
        time += 1;
        disc[root] = time;
        low[root] = time;
        let mut root_children = 0;
        stack.push((root, UNSEEN, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent, idx) = *frame;
            if idx < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[idx];
                if w == parent || Some(w) == skip {
                    continue;
                }
                if disc[w] == UNSEEN {
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        art[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            art[root] = true;
        }
    }
    art
}
