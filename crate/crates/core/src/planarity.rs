//! Planarity testing by the Demoucron–Malgrange–Pertuiset path-embedding
//! method, run separately on every block.

use std::collections::VecDeque;

use crate::decomposition::biconnected_components;
use crate::graph::{Edge, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Planarity {
    Planar,
    /// An edge-minimal non-planar subgraph, i.e. a Kuratowski subdivision.
    NonPlanar { witness: Vec<Edge> },
}

/// Verdict only; skips witness extraction.
pub fn is_planar(g: &Graph) -> bool {
    if g.order() <= 4 {
        return true;
    }
    biconnected_components(g).blocks.iter().all(|b| {
        if b.vertices.len() <= 4 {
            return true;
        }
        let (h, _) = block_graph(g.capacity(), &b.vertices, &b.edges);
        block_is_planar(&h)
    })
}

pub fn planarity_test(g: &Graph) -> Planarity {
    if is_planar(g) {
        return Planarity::Planar;
    }
    // shrink to one non-planar block first, then delete edges greedily
    let bc = biconnected_components(g);
    let block = bc
        .blocks
        .iter()
        .find(|b| {
            b.vertices.len() > 4 && !block_is_planar(&block_graph(g.capacity(), &b.vertices, &b.edges).0)
        })
        .expect("a non-planar graph has a non-planar block");
    let mut h = Graph::new(g.capacity());
    for &(u, v) in &block.edges {
        h.insert_edge(u, v);
    }
    for &(u, v) in &block.edges {
        h.remove_edge(u, v);
        if is_planar(&h) {
            h.insert_edge(u, v);
        }
    }
    Planarity::NonPlanar {
        witness: h.edge_list(),
    }
}

fn block_graph(cap: usize, vertices: &[usize], edges: &[Edge]) -> (Graph, Vec<usize>) {
    let mut local = vec![usize::MAX; cap];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let mut h = Graph::new(vertices.len());
    for &(u, v) in edges {
        h.insert_edge(local[u], local[v]);
    }
    (h, vertices.to_vec())
}

/// DMP on a compact biconnected graph.
fn block_is_planar(h: &Graph) -> bool {
    let n = h.order();
    let m = h.size();
    // K3,3 has 9 edges and K5 has 10
    if n <= 4 || m < 9 {
        return true;
    }
    if m > 3 * n - 6 {
        return false;
    }
    // edge ids parallel to adjacency lists
    let mut eid: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut next = 0;
    let mut first_id = vec![Vec::new(); n];
    for u in 0..n {
        let mut ids = Vec::with_capacity(h.degree(u));
        for &v in h.neighbors(u) {
            if u < v {
                ids.push(next);
                next += 1;
            } else {
                let pos = h.neighbors(v).binary_search(&u).unwrap();
                ids.push(first_id[v][pos]);
            }
        }
        first_id[u] = ids.clone();
        eid.push(ids);
    }
    let edge_id = |u: usize, v: usize| eid[u][h.neighbors(u).binary_search(&v).unwrap()];

    let mut in_h = vec![false; n];
    let mut embedded = vec![false; m];
    let cycle = find_cycle(h);
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        embedded[edge_id(a, b)] = true;
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    let mut comp = vec![usize::MAX; n];

    loop {
        // fragments: each is (contacts, kind) where kind is a chord or a
        // component of G - H
        let mut fragments: Vec<(Vec<usize>, Fragment)> = Vec::new();
        for u in 0..n {
            if !in_h[u] {
                continue;
            }
            for (idx, &v) in h.neighbors(u).iter().enumerate() {
                if u < v && in_h[v] && !embedded[eid[u][idx]] {
                    fragments.push((vec![u, v], Fragment::Chord));
                }
            }
        }
        comp.iter_mut().for_each(|c| *c = usize::MAX);
        let mut ncomp = 0;
        for s in 0..n {
            if in_h[s] || comp[s] != usize::MAX {
                continue;
            }
            let mut contacts = Vec::new();
            comp[s] = ncomp;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in h.neighbors(v) {
                    if in_h[w] {
                        contacts.push(w);
                    } else if comp[w] == usize::MAX {
                        comp[w] = ncomp;
                        queue.push_back(w);
                    }
                }
            }
            contacts.sort_unstable();
            contacts.dedup();
            fragments.push((contacts, Fragment::Component(ncomp)));
            ncomp += 1;
        }
        if fragments.is_empty() {
            return true;
        }

        let mut vertex_faces: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (fi, f) in faces.iter().enumerate() {
            for &v in f {
                vertex_faces[v].push(fi);
            }
        }
        let mut choice: Option<(usize, usize)> = None;
        for (idx, (contacts, _)) in fragments.iter().enumerate() {
            let pivot = *contacts.iter().min_by_key(|&&c| vertex_faces[c].len()).unwrap();
            let admissible: Vec<usize> = vertex_faces[pivot]
                .iter()
                .copied()
                .filter(|&fi| contacts.iter().all(|&c| vertex_faces[c].contains(&fi)))
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((idx, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((idx, admissible[0]));
                    }
                }
            }
        }
        let (fidx, face_idx) = choice.unwrap();
        let (contacts, kind) = &fragments[fidx];
        let path = match kind {
            Fragment::Chord => contacts.clone(),
            Fragment::Component(c) => fragment_path(h, &comp, *c, contacts[0], contacts[1]),
        };
        for w in path.windows(2) {
            in_h[w[0]] = true;
            in_h[w[1]] = true;
            embedded[edge_id(w[0], w[1])] = true;
        }
        let face = std::mem::take(&mut faces[face_idx]);
        let (f1, f2) = split_face(&face, &path);
        faces[face_idx] = f1;
        faces.push(f2);
    }
}

enum Fragment {
    Chord,
    Component(usize),
}

/// Path from contact `a` through component `c` to contact `b`.
fn fragment_path(h: &Graph, comp: &[usize], c: usize, a: usize, b: usize) -> Vec<usize> {
    let n = h.order();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &w in h.neighbors(a) {
        if comp[w] == c {
            parent[w] = a;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        if h.has_edge(v, b) {
            let mut path = vec![b, v];
            let mut cur = v;
            while parent[cur] != a {
                cur = parent[cur];
                path.push(cur);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &w in h.neighbors(v) {
            if comp[w] == c && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment touches both contacts")
}

/// Splits cyclic `face` along `path` (which joins two face vertices).
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let len = face.len();
    let ia = face.iter().position(|&v| v == a).unwrap();
    let ib = face.iter().position(|&v| v == b).unwrap();
    let interior = &path[1..path.len() - 1];
    let walk = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(face[i]);
            if i == to {
                break;
            }
            i = (i + 1) % len;
        }
        out
    };
    let mut f1 = walk(ia, ib);
    f1.extend(interior.iter().rev());
    let mut f2 = walk(ib, ia);
    f2.extend(interior.iter());
    (f1, f2)
}

/// A cycle through vertex 0: its first neighbour, then a shortest way back
/// that avoids the edge between them.
fn find_cycle(h: &Graph) -> Vec<usize> {
    let n = h.order();
    let a = h.neighbors(0)[0];
    let mut parent = vec![usize::MAX; n];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for &w in h.neighbors(v) {
            if w == 0 && v != a {
                let mut cyc = vec![0, v];
                let mut cur = v;
                while cur != a {
                    cur = parent[cur];
                    cyc.push(cur);
                }
                return cyc;
            }
            if w != 0 && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("biconnected block with at least 3 vertices has a cycle")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let e: Vec<Edge> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    fn k33() -> Graph {
        let e: Vec<Edge> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
        Graph::from_edges(6, &e).unwrap()
    }

    #[test]
    fn kuratowski_graphs() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&k33()));
        match planarity_test(&complete(5)) {
            Planarity::NonPlanar { witness } => assert_eq!(witness.len(), 10),
            Planarity::Planar => panic!(),
        }
        let mut g = k33();
        g.remove_edge(0, 3);
        assert!(is_planar(&g));
    }

    #[test]
    fn grid_is_planar() {
        let mut g = Graph::new(36);
        // 6x6 grid
        for r in 0..6 {
            for c in 0..6 {
                if c + 1 < 6 {
                    g.insert_edge(r * 6 + c, r * 6 + c + 1);
                }
                if r + 1 < 6 {
                    g.insert_edge(r * 6 + c, r * 6 + c + 6);
                }
            }
        }
        assert!(is_planar(&g));
    }
}
