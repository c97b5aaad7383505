//! Seeded random instance families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::class::GraphClass;
use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family} needs {what}")]
    Infeasible { family: &'static str, what: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Random stacked triangulation with a random fraction of edges kept.
    PlanarTriangulationSubgraph,
    /// Stacked triangulation; triconnected for `n ≥ 4`.
    TriconnectedPlanar,
    Subcubic,
    /// Line graph of a random sparse graph; the order is the edge count of
    /// the base graph.
    LineGraph,
    /// `⌊√n⌋ × ⌊n / ⌊√n⌋⌋` grid.
    Grid,
    /// A cycle of length `k` with random trees and planar chords hung on it.
    PlantedCycle(usize),
}

impl Family {
    pub const NAMES: [&'static str; 6] = [
        "planar-triangulation-subgraph",
        "triconnected-planar",
        "subcubic",
        "line-graph",
        "grid",
        "planted-cycle",
    ];

    /// The class every output of the family belongs to.
    pub fn class(&self) -> GraphClass {
        match self {
            Family::PlanarTriangulationSubgraph | Family::TriconnectedPlanar | Family::PlantedCycle(_) => GraphClass::Planar,
            Family::Subcubic => GraphClass::MaxDegree(3),
            Family::LineGraph => GraphClass::ClawFree,
            // K3,3-minor-free is declared, not certified
            Family::Grid => GraphClass::K3tMinorFree(3),
        }
    }

    /// Parses a family name; `planted-cycle` takes its length from `k`.
    pub fn parse(name: &str, k: Option<usize>) -> Result<Self, GenError> {
        Ok(match name {
            "planar-triangulation-subgraph" | "planar" => Family::PlanarTriangulationSubgraph,
            "triconnected-planar" => Family::TriconnectedPlanar,
            "subcubic" => Family::Subcubic,
            "line-graph" => Family::LineGraph,
            "grid" => Family::Grid,
            "planted-cycle" => Family::PlantedCycle(k.ok_or(GenError::Infeasible {
                family: "planted-cycle",
                what: "a cycle length k".into(),
            })?),
            _ => return Err(GenError::UnknownFamily(name.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::PlanarTriangulationSubgraph => f.write_str(Self::NAMES[0]),
            Family::TriconnectedPlanar => f.write_str(Self::NAMES[1]),
            Family::Subcubic => f.write_str(Self::NAMES[2]),
            Family::LineGraph => f.write_str(Self::NAMES[3]),
            Family::Grid => f.write_str(Self::NAMES[4]),
            Family::PlantedCycle(k) => write!(f, "planted-cycle({k})"),
        }
    }
}

impl FromStr for Family {
    type Err = GenError;

    /// Accepts the names of [`Family::NAMES`], with `planted-cycle(k)`.
    fn from_str(s: &str) -> Result<Self, GenError> {
        if let Some(k) = s.strip_prefix("planted-cycle(").and_then(|r| r.strip_suffix(')')) {
            let k = k.parse().map_err(|_| GenError::UnknownFamily(s.to_string()))?;
            return Ok(Family::PlantedCycle(k));
        }
        Family::parse(s, None)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A graph of the family on (about) `n` vertices; the same `seed` gives the
/// same graph.
pub fn gen_instance(family: Family, n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::Infeasible {
            family: "every family",
            what: format!("n >= 3, got {n}"),
        });
    }
    let mut rng = rng(seed);
    let g = match family {
        Family::PlanarTriangulationSubgraph => {
            let t = stacked_triangulation(n, &mut rng);
            let keep = rng.gen_range(0.45..0.9);
            sparsify(&t, keep, &mut rng)
        }
        Family::TriconnectedPlanar => stacked_triangulation(n, &mut rng),
        Family::Subcubic => subcubic(n, &mut rng),
        Family::LineGraph => line_graph_of_random(n, &mut rng),
        Family::Grid => {
            let rows = n.isqrt();
            return Ok(grid(rows, n / rows));
        }
        Family::PlantedCycle(k) => {
            if k < 3 || k > n {
                return Err(GenError::Infeasible {
                    family: "planted-cycle",
                    what: format!("3 <= k <= n, got k = {k}, n = {n}"),
                });
            }
            planted_cycle(n, k, &mut rng)
        }
    };
    Ok(shuffle_ids(&g, &mut rng))
}

/// Each edge kept independently with probability `keep`.
pub fn sparsify<R: Rng>(g: &Graph, keep: f64, rng: &mut R) -> Graph {
    let mut h = g.clone();
    for (u, v) in g.edge_list() {
        if !rng.gen_bool(keep) {
            h.remove_edge(u, v);
        }
    }
    h
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.insert_edge(v, v + 1);
            }
            if r + 1 < rows {
                g.insert_edge(v, v + cols);
            }
        }
    }
    g
}

/// Repeatedly splits a random face of a triangle into three.
pub fn stacked_triangulation<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    g.insert_edge(0, 1);
    g.insert_edge(1, 2);
    g.insert_edge(0, 2);
    // both sides of the starting triangle are faces
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(f);
        for u in [a, b, c] {
            g.insert_edge(u, v);
        }
        faces.extend([[a, b, v], [b, c, v], [a, c, v]]);
    }
    g
}

fn subcubic<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    let density = rng.gen_range(0.6..1.0);
    let attempts = (3 * n) as f64 * density;
    for _ in 0..attempts as usize {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && g.degree(u) < 3 && g.degree(v) < 3 {
            g.insert_edge(u, v);
        }
    }
    g
}

/// Line graph of a random graph with `m` edges on about `2m/3` vertices.
fn line_graph_of_random<R: Rng>(m: usize, rng: &mut R) -> Graph {
    let b = (2 * m / 3).max(4);
    let mut base: Vec<Edge> = Vec::with_capacity(m);
    let mut seen = std::collections::BTreeSet::new();
    let mut guard = 0;
    while base.len() < m && guard < 100 * m {
        guard += 1;
        let u = rng.gen_range(0..b);
        let v = rng.gen_range(0..b);
        if u != v && seen.insert((u.min(v), u.max(v))) {
            base.push((u.min(v), u.max(v)));
        }
    }
    line_graph(b, &base)
}

/// Vertex `i` is `edges[i]`; two vertices are adjacent when the edges share
/// an endpoint.
pub fn line_graph(n: usize, edges: &[Edge]) -> Graph {
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v)) in edges.iter().enumerate() {
        at[u].push(i);
        at[v].push(i);
    }
    let mut g = Graph::new(edges.len());
    for list in &at {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                g.insert_edge(i, j);
            }
        }
    }
    g
}

/// Cycle `0..k` with chords drawn inside it as a random outerplanar
/// triangulation subgraph, and the other vertices hung as a random forest.
fn planted_cycle<R: Rng>(n: usize, k: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for i in 0..k {
        g.insert_edge(i, (i + 1) % k);
    }
    // non-crossing chords: recursively split the polygon
    let mut polys = vec![(0..k).collect::<Vec<_>>()];
    while let Some(p) = polys.pop() {
        if p.len() < 4 {
            continue;
        }
        let a = rng.gen_range(0..p.len());
        let b = (a + rng.gen_range(2..p.len() - 1)) % p.len();
        let (a, b) = (a.min(b), a.max(b));
        if rng.gen_bool(0.5) {
            g.insert_edge(p[a], p[b]);
        }
        polys.push(p[a..=b].to_vec());
        polys.push(p[b..].iter().chain(&p[..=a]).copied().collect());
    }
    for v in k..n {
        let u = rng.gen_range(0..v);
        g.insert_edge(u, v);
    }
    g
}

fn shuffle_ids<R: Rng>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<Vertex> = (0..g.capacity()).collect();
    perm.shuffle(rng);
    let edges: Vec<Edge> = g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.capacity(), &edges).expect("relabelled simple graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::validate_class;
    use crate::oracle::exact_k_cycle;

    #[test]
    fn grid_counts() {
        let g = gen_instance(Family::Grid, 25, 0).unwrap();
        assert_eq!((g.order(), g.size()), (25, 40));
    }

    #[test]
    fn deterministic() {
        for f in [Family::Subcubic, Family::PlanarTriangulationSubgraph, Family::LineGraph] {
            assert_eq!(gen_instance(f, 60, 7).unwrap(), gen_instance(f, 60, 7).unwrap());
        }
    }

    #[test]
    fn classes_hold() {
        for seed in 0..5 {
            for f in [Family::PlanarTriangulationSubgraph, Family::TriconnectedPlanar, Family::Subcubic, Family::LineGraph, Family::PlantedCycle(6)] {
                let g = gen_instance(f, 40, seed).unwrap();
                assert!(!validate_class(&g, f.class()).is_violated(), "{f} seed {seed}");
            }
        }
    }

    #[test]
    fn planted_cycle_is_there() {
        let g = gen_instance(Family::PlantedCycle(6), 50, 3).unwrap();
        assert!(exact_k_cycle(&g, 6).unwrap());
    }

    #[test]
    fn parse_names() {
        assert_eq!("planted-cycle(5)".parse::<Family>().unwrap(), Family::PlantedCycle(5));
        for name in &Family::NAMES[..5] {
            assert_eq!(name.parse::<Family>().unwrap().to_string(), *name);
        }
        assert!("lattice".parse::<Family>().is_err());
    }
}
