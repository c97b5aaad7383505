//! Exhaustive reference implementations for small graphs. Nothing here calls
//! the library's solvers or decomposition code.

#![allow(dead_code)]

use rand::Rng;
use tkernel::graph::{Edge, Graph, Vertex};

/// Calls `f` on every simple path starting at `start` (including the single
/// vertex), never entering a blocked vertex. Stops as soon as `f` returns
/// true, and reports whether it did.
pub fn search_paths(g: &Graph, start: Vertex, blocked: &[bool], f: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
    fn go(g: &Graph, path: &mut Vec<Vertex>, on: &mut [bool], blocked: &[bool], f: &mut dyn FnMut(&[Vertex]) -> bool) -> bool {
        if f(path) {
            return true;
        }
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if !on[w] && !blocked[w] {
                on[w] = true;
                path.push(w);
                let stop = go(g, path, on, blocked, f);
                path.pop();
                on[w] = false;
                if stop {
                    return true;
                }
            }
        }
        false
    }
    if !g.contains(start) || blocked[start] {
        return false;
    }
    let mut on = vec![false; g.capacity()];
    on[start] = true;
    go(g, &mut vec![start], &mut on, blocked, f)
}

pub fn blocked(g: &Graph, vs: &[Vertex]) -> Vec<bool> {
    let mut b = vec![false; g.capacity()];
    vs.iter().for_each(|&v| b[v] = true);
    b
}

/// Longest path from `start` avoiding `avoid` and accepted by `accept`.
pub fn best_path_from(g: &Graph, start: Vertex, avoid: &[Vertex], accept: &dyn Fn(&[Vertex]) -> bool) -> Option<Vec<Vertex>> {
    let mut best: Option<Vec<Vertex>> = None;
    search_paths(g, start, &blocked(g, avoid), &mut |p| {
        if accept(p) && best.as_ref().map_or(true, |b| p.len() > b.len()) {
            best = Some(p.to_vec());
        }
        false
    });
    best
}

/// A longest xy-path as a vertex sequence.
pub fn max_xy_path(g: &Graph, x: Vertex, y: Vertex) -> Option<Vec<Vertex>> {
    best_path_from(g, x, &[], &|p| *p.last().unwrap() == y)
}

/// Edge count of a longest xy-path, `None` if `x` and `y` are not connected.
pub fn longest_xy_path(g: &Graph, x: Vertex, y: Vertex) -> Option<usize> {
    max_xy_path(g, x, y).map(|p| p.len() - 1)
}

/// Every longest xy-path.
pub fn all_max_xy_paths(g: &Graph, x: Vertex, y: Vertex) -> Vec<Vec<Vertex>> {
    let mut out: Vec<Vec<Vertex>> = Vec::new();
    search_paths(g, x, &blocked(g, &[]), &mut |p| {
        if *p.last().unwrap() == y {
            match out.first().map(Vec::len) {
                Some(l) if l > p.len() => {}
                Some(l) if l == p.len() => out.push(p.to_vec()),
                _ => out = vec![p.to_vec()],
            }
        }
        false
    });
    out
}

/// A longest path with end `x` avoiding `avoid`; `None` if `x` is avoided
/// or absent.
pub fn max_path_from(g: &Graph, x: Vertex, avoid: &[Vertex]) -> Option<Vec<Vertex>> {
    best_path_from(g, x, avoid, &|_| true)
}

pub fn longest_path_from(g: &Graph, x: Vertex, avoid: &[Vertex]) -> usize {
    max_path_from(g, x, avoid).map_or(0, |p| p.len() - 1)
}

/// Vertex-disjoint paths with ends `x` and `y` of largest total edge count.
pub fn max_two_end_paths(g: &Graph, x: Vertex, y: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut xs: Vec<Vec<Vertex>> = Vec::new();
    search_paths(g, x, &blocked(g, &[y]), &mut |p| {
        xs.push(p.to_vec());
        false
    });
    let mut best = (vec![x], vec![y]);
    for p in xs {
        if let Some(q) = max_path_from(g, y, &p) {
            if p.len() + q.len() > best.0.len() + best.1.len() {
                best = (p, q);
            }
        }
    }
    best
}

pub fn two_disjoint_end_paths(g: &Graph, x: Vertex, y: Vertex) -> usize {
    let (p, q) = max_two_end_paths(g, x, y);
    p.len() + q.len() - 2
}

/// Some simple path has at least `k` edges.
pub fn has_k_path(g: &Graph, k: usize) -> bool {
    let none = blocked(g, &[]);
    g.vertices().any(|s| search_paths(g, s, &none, &mut |p| p.len() > k))
}

/// Every cycle is found from its smallest vertex.
pub fn has_cycle_at_least(g: &Graph, len: usize) -> bool {
    let len = len.max(3);
    g.vertices().any(|s| {
        let below: Vec<Vertex> = (0..s).collect();
        search_paths(g, s, &blocked(g, &below), &mut |p| p.len() >= len && g.has_edge(*p.last().unwrap(), s))
    })
}

pub fn count_components_without(g: &Graph, removed: &[Vertex]) -> usize {
    let mut seen = blocked(g, removed);
    let mut count = 0;
    for s in g.vertices() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

pub fn connected_without(g: &Graph, removed: &[Vertex]) -> bool {
    count_components_without(g, removed) <= 1
}

/// No set of fewer than three vertices disconnects `g`; graphs on at most
/// three vertices only need to be connected.
pub fn triconnected(g: &Graph) -> bool {
    let vs = g.vertex_list();
    if !connected_without(g, &[]) {
        return false;
    }
    if vs.len() <= 3 {
        return true;
    }
    vs.iter().enumerate().all(|(i, &a)| connected_without(g, &[a]) && vs[i + 1..].iter().all(|&b| connected_without(g, &[a, b])))
}

/// `s` raises the number of components and no nonempty proper subset does.
pub fn minimal_separator(g: &Graph, s: &[Vertex]) -> bool {
    let base = count_components_without(g, &[]);
    if count_components_without(g, s) <= base {
        return false;
    }
    let n = s.len();
    (1u32..(1 << n) - 1).all(|mask| {
        let sub: Vec<Vertex> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        count_components_without(g, &sub) <= base
    })
}

/// Random connected graph: a random tree plus each other pair with
/// probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.insert_edge(u, v);
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert_edge(u, v);
            }
        }
    }
    g
}

/// Two random graphs glued on `{0, 1}`. Returns the graph and both sides,
/// each containing 0 and 1.
pub fn glued_separation<R: Rng>(na: usize, nb: usize, p: f64, rng: &mut R) -> (Graph, Vec<Vertex>, Vec<Vertex>) {
    let n = 2 + na + nb;
    let a: Vec<Vertex> = [0, 1].into_iter().chain(2..2 + na).collect();
    let b: Vec<Vertex> = [0, 1].into_iter().chain(2 + na..n).collect();
    let mut g = Graph::new(n);
    for side in [&a, &b] {
        for (i, &u) in side.iter().enumerate() {
            for &v in &side[i + 1..] {
                if !g.has_edge(u, v) && rng.gen_bool(p) {
                    g.insert_edge(u, v);
                }
            }
        }
    }
    (g, a, b)
}

/// Follows the edges from `start` as long as the way is unique. Returns the
/// visited vertices, or `None` at a branch or on revisiting a vertex.
fn trail(edges: &[Edge], start: Vertex, used: &mut [bool]) -> Option<Vec<Vertex>> {
    let mut cur = start;
    let mut seen = vec![start];
    loop {
        let next: Vec<usize> = (0..edges.len()).filter(|&i| !used[i] && (edges[i].0 == cur || edges[i].1 == cur)).collect();
        match next.as_slice() {
            [] => return Some(seen),
            [i] => {
                used[*i] = true;
                let (u, v) = edges[*i];
                cur = if u == cur { v } else { u };
                if seen.contains(&cur) {
                    return None;
                }
                seen.push(cur);
            }
            _ => return None,
        }
    }
}

/// The edges form one simple path with end `x` (and other end `y` if
/// given). The empty set counts only without `y`.
pub fn is_end_path(edges: &[Edge], x: Vertex, y: Option<Vertex>) -> bool {
    let mut used = vec![false; edges.len()];
    match trail(edges, x, &mut used) {
        Some(p) => used.iter().all(|&u| u) && y.map_or(true, |y| p.len() > 1 && *p.last().unwrap() == y),
        None => false,
    }
}

/// The edges form two vertex-disjoint paths, one with end `x` and one with
/// end `y`.
pub fn is_two_end_paths(edges: &[Edge], x: Vertex, y: Vertex) -> bool {
    let mut used = vec![false; edges.len()];
    let (Some(p), Some(q)) = (trail(edges, x, &mut used), trail(edges, y, &mut used)) else {
        return false;
    };
    used.iter().all(|&u| u) && p.iter().all(|v| !q.contains(v))
}

/// Components of `g - s` adjacent to every vertex of `s`. Two of them make
/// `s` a minimal separator between a vertex of one and a vertex of the other.
pub fn full_components(g: &Graph, s: &[Vertex]) -> usize {
    g.components_avoiding(s)
        .iter()
        .filter(|comp| s.iter().all(|&a| g.neighbors(a).iter().any(|w| comp.contains(w))))
        .count()
}
