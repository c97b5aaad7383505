//! Exact set cover (parameter: universe size) to multicolored path on
//! graphs of maximum degree three.
//!
//! The output is a chain of complete binary trees `O_1, I_2, O_2, …, I_n`.
//! A path enters `O_i` at its root, walks down to leaf `j`, crosses to leaf
//! `j` of `I_{i+1}` either through the gadget of set `j` or, for the last
//! leaf, through a bare skip edge, and climbs back up to the root.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Largest universe the subset DP accepts.
pub const MAX_DP_UNIVERSE: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("element {element} is outside the universe 0..{universe}")]
    ElementOutOfRange { element: usize, universe: usize },
    #[error("universe of size {0} is too large for the subset DP (max {MAX_DP_UNIVERSE})")]
    UniverseTooLarge(usize),
    #[error("{0} colors do not fit the search bitmask")]
    TooManyColors(usize),
    #[error("coloring has {colors} entries for {vertices} vertex slots")]
    ColoringMismatch { colors: usize, vertices: usize },
}

/// Elements are `0..universe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetCoverInstance {
    pub universe: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetCoverInstance {
    pub fn new(universe: usize, sets: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        let mut clean = Vec::with_capacity(sets.len());
        for mut s in sets {
            if let Some(&e) = s.iter().find(|&&e| e >= universe) {
                return Err(ReductionError::ElementOutOfRange { element: e, universe });
            }
            s.sort_unstable();
            s.dedup();
            clean.push(s);
        }
        Ok(SetCoverInstance { universe, sets: clean })
    }

    fn mask(set: &[usize]) -> u32 {
        set.iter().fold(0, |m, &e| m | 1 << e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraphInstance {
    pub graph: Graph,
    /// Color of each vertex, in `0..num_colors`.
    pub colors: Vec<usize>,
    pub num_colors: usize,
    pub k_prime: usize,
    /// Each tree has `2^r` leaves.
    pub r: usize,
    /// Sets encoded after stripping, fixing and padding.
    pub sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    Instance(ColoredGraphInstance),
    /// Small or dense inputs are answered by the DP instead.
    SolvedDirectly(bool),
}

/// Whether some subfamily covers every element exactly once.
pub fn exact_set_cover_dp(sc: &SetCoverInstance) -> Result<bool, ReductionError> {
    let n = sc.universe;
    if n > MAX_DP_UNIVERSE {
        return Err(ReductionError::UniverseTooLarge(n));
    }
    let full = (1u32 << n) - 1;
    let masks: Vec<u32> = sc.sets.iter().map(|s| SetCoverInstance::mask(s)).filter(|&m| m != 0).collect();
    // reach[mask]: mask is a disjoint union of sets; grown by always covering
    // the lowest missing element, so each cover is built in one order only
    let mut reach = vec![false; 1 << n];
    reach[0] = true;
    for cur in 0..full {
        if !reach[cur as usize] {
            continue;
        }
        let low = (!cur).trailing_zeros();
        for &m in &masks {
            if m & (1 << low) != 0 && m & cur == 0 {
                reach[(cur | m) as usize] = true;
            }
        }
    }
    Ok(reach[full as usize])
}

/// Vertices per tree with `2^r` leaves.
fn tree_size(r: usize) -> usize {
    (1 << (r + 1)) - 1
}

/// Builds the multicolored-path instance equivalent to `sc`.
pub fn reduce_setcover_to_multicolored_path(sc: &SetCoverInstance) -> Result<Reduction, ReductionError> {
    let n = sc.universe;
    let mut sets: Vec<Vec<usize>> = sc.sets.iter().filter(|s| !s.is_empty()).cloned().collect();
    if n < 2 || sets.is_empty() || (n < usize::BITS as usize && sets.len() >= 1 << n) {
        return exact_set_cover_dp(&SetCoverInstance { universe: n, sets }).map(Reduction::SolvedDirectly);
    }
    // the chain has n - 1 set slots, so the all-singletons cover does not fit;
    // the whole universe is an equivalent one-set cover
    let mut singletons = vec![false; n];
    for s in sets.iter().filter(|s| s.len() == 1) {
        singletons[s[0]] = true;
    }
    if singletons.iter().all(|&b| b) && !sets.iter().any(|s| s.len() == n) {
        sets.push((0..n).collect());
    }
    let mut r = 1;
    while (1 << r) - 1 < sets.len() {
        r += 1;
    }
    let last = sets.last().cloned().expect("nonempty family");
    sets.resize((1 << r) - 1, last);

    let trees = 2 * (n - 1);
    let ts = tree_size(r);
    let tree_colors = trees * (r + 1);
    let k_prime = n + tree_colors - 1;
    let num_colors = k_prime + 1;
    let gadget_vertices: usize = (n - 1) * sets.iter().map(Vec::len).sum::<usize>();
    let mut g = Graph::new(trees * ts + gadget_vertices);
    let mut colors = vec![0; g.capacity()];

    // heap layout: node h in 1..=ts, children 2h and 2h + 1
    let node = |t: usize, h: usize| t * ts + h - 1;
    let leaf = |t: usize, j: usize| node(t, (1 << r) + j - 1);
    for t in 0..trees {
        for h in 1..=ts {
            colors[node(t, h)] = t * (r + 1) + h.ilog2() as usize;
            if h > 1 {
                g.insert_edge(node(t, h), node(t, h / 2));
            }
        }
    }
    let out_tree = |i: usize| 2 * (i - 1);
    let in_tree = |i: usize| 2 * i - 3;
    for i in 2..n {
        g.insert_edge(node(in_tree(i), 1), node(out_tree(i), 1));
    }
    let mut next = trees * ts;
    for i in 1..n {
        let (o, inn) = (out_tree(i), in_tree(i + 1));
        for (j, set) in sets.iter().enumerate() {
            let first = next;
            for (a, &e) in set.iter().enumerate() {
                colors[next] = tree_colors + e;
                if a > 0 {
                    g.insert_edge(next - 1, next);
                }
                next += 1;
            }
            g.insert_edge(first, leaf(o, j + 1));
            g.insert_edge(next - 1, leaf(inn, j + 1));
        }
        g.insert_edge(leaf(o, 1 << r), leaf(inn, 1 << r));
    }
    debug_assert_eq!(next, g.capacity());
    Ok(Reduction::Instance(ColoredGraphInstance {
        graph: g,
        colors,
        num_colors,
        k_prime,
        r,
        sets,
    }))
}

/// Whether the instance has a path on `k′ + 1` vertices using every color
/// exactly once. Exhaustive; meant for small instances.
pub fn multicolored_path_exact(ci: &ColoredGraphInstance) -> Result<bool, ReductionError> {
    let g = &ci.graph;
    if ci.colors.len() != g.capacity() {
        return Err(ReductionError::ColoringMismatch {
            colors: ci.colors.len(),
            vertices: g.capacity(),
        });
    }
    if ci.num_colors > 64 || ci.colors.iter().any(|&c| c >= 64) {
        return Err(ReductionError::TooManyColors(ci.num_colors.max(ci.colors.iter().max().map_or(0, |c| c + 1))));
    }
    let need = ci.k_prime + 1;
    if need > ci.num_colors {
        return Ok(false);
    }
    let mut dead: HashSet<(Vertex, u64)> = HashSet::new();
    fn go(g: &Graph, colors: &[usize], v: Vertex, mask: u64, len: usize, need: usize, dead: &mut HashSet<(Vertex, u64)>) -> bool {
        if len == need {
            return true;
        }
        if dead.contains(&(v, mask)) {
            return false;
        }
        for &w in g.neighbors(v) {
            let bit = 1u64 << colors[w];
            if mask & bit == 0 && go(g, colors, w, mask | bit, len + 1, need, dead) {
                return true;
            }
        }
        dead.insert((v, mask));
        false
    }
    // distinct colors force distinct vertices, so the state is (end, colors)
    Ok(g.vertices().any(|v| go(g, &ci.colors, v, 1u64 << ci.colors[v], 1, need, &mut dead)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: usize, sets: &[&[usize]]) -> SetCoverInstance {
        SetCoverInstance::new(n, sets.iter().map(|s| s.to_vec()).collect()).unwrap()
    }

    #[test]
    fn dp_examples() {
        assert!(exact_set_cover_dp(&sc(3, &[&[0, 1], &[2]])).unwrap());
        assert!(exact_set_cover_dp(&sc(2, &[&[0, 1], &[0]])).unwrap());
        assert!(!exact_set_cover_dp(&sc(3, &[&[0, 1], &[1, 2]])).unwrap());
        assert!(exact_set_cover_dp(&sc(0, &[])).unwrap());
    }

    #[test]
    fn two_element_examples() {
        let Reduction::Instance(ci) = reduce_setcover_to_multicolored_path(&sc(2, &[&[0], &[1], &[0, 1]])).unwrap() else {
            panic!("expected an instance");
        };
        assert_eq!((ci.r, ci.k_prime, ci.num_colors), (2, 7, 8));
        assert!(ci.graph.max_degree() <= 3);
        assert!(multicolored_path_exact(&ci).unwrap());

        let Reduction::Instance(ci) = reduce_setcover_to_multicolored_path(&sc(2, &[&[0]])).unwrap() else {
            panic!("expected an instance");
        };
        assert!(!multicolored_path_exact(&ci).unwrap());
    }

    #[test]
    fn dense_family_is_solved_directly() {
        let r = reduce_setcover_to_multicolored_path(&sc(2, &[&[0], &[1], &[0, 1], &[0, 1]])).unwrap();
        assert_eq!(r, Reduction::SolvedDirectly(true));
    }

    #[test]
    fn out_of_range() {
        assert!(SetCoverInstance::new(2, vec![vec![2]]).is_err());
    }
}
