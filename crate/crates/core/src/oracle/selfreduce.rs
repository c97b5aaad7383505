//! Search from decision: recovering witnesses with oracle queries only.

use std::collections::BTreeSet;

use super::{OracleError, OracleSession, Problem, StableEdgeProperty};
use crate::graph::{xy_extension, Edge, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelfReduceOutcome {
    /// `G` itself has a k-cycle.
    KCycleFound,
    /// `G` has an xy-path with at least `k - 1` edges.
    LongXYPathFound,
    /// Vertex set of a maximum xy-path, empty when `x` and `y` are not
    /// connected.
    MaxPathVertices(BTreeSet<Vertex>),
}

/// Longest xy-path via k-cycle queries on xy-extensions of `g`.
///
/// After ruling out the first two outcomes, finds the smallest `l` such that
/// adding an `l`-vertex xy-path creates a k-cycle, then deletes vertices of
/// that graph one by one (ascending id) as long as a k-cycle survives. What
/// remains of `g` is a maximum xy-path.
pub fn selfreduce_longest_xy_path(
    session: &mut OracleSession,
    g: &Graph,
    k: usize,
    x: Vertex,
    y: Vertex,
    purpose: &'static str,
) -> Result<SelfReduceOutcome, OracleError> {
    if x == y {
        return Err(OracleError::InvalidInput(format!("terminals must differ, got {x} twice")));
    }
    if !g.contains(x) || !g.contains(y) {
        return Err(OracleError::InvalidInput("terminal not in graph".into()));
    }
    if k < 3 {
        return Err(OracleError::InvalidInput(format!("cycle parameter must be at least 3, got {k}")));
    }
    if session.query(Problem::Cycle, g, k, purpose)? {
        return Ok(SelfReduceOutcome::KCycleFound);
    }
    if g.component_of(x).binary_search(&y).is_err() {
        return Ok(SelfReduceOutcome::MaxPathVertices(BTreeSet::new()));
    }
    let g0 = xy_extension(g, x, y, 1).expect("terminals checked");
    if session.query(Problem::Cycle, &g0, k, purpose)? {
        return Ok(SelfReduceOutcome::LongXYPathFound);
    }
    let mut found = None;
    for l in 1..=k - 2 {
        let gl = xy_extension(g, x, y, l + 1).expect("terminals checked");
        if session.query(Problem::Cycle, &gl, k, purpose)? {
            found = Some(gl);
            break;
        }
    }
    // an arbitrary xy-path plus k - 2 new vertices already closes a k-cycle
    let mut h = found.ok_or_else(|| OracleError::InvalidInput("no extension has a k-cycle".into()))?;
    for u in 0..h.capacity() {
        if !h.contains(u) {
            continue;
        }
        let ns = h.remove_vertex(u);
        if !session.query(Problem::Cycle, &h, k, purpose)? {
            h.restore_vertex(u, &ns);
        }
    }
    let original = g.capacity();
    Ok(SelfReduceOutcome::MaxPathVertices(h.vertices().filter(|&v| v < original).collect()))
}

/// A maximum-cardinality edge set satisfying `prop`, or `None` when no
/// nonempty set does. Binary search on the size, then edge deletion in
/// ascending order while the optimum survives.
pub fn selfreduce_max_stable_set(
    session: &mut OracleSession,
    g: &Graph,
    x: Vertex,
    y: Vertex,
    prop: StableEdgeProperty,
    purpose: &'static str,
) -> Result<Option<Vec<Edge>>, OracleError> {
    let problem = Problem::Stable {
        property: prop,
        x,
        y,
    };
    let mut hi = prop.max_cardinality(g);
    if hi == 0 || !session.query(problem, g, 1, purpose)? {
        return Ok(None);
    }
    let mut lo = 1;
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if session.query(problem, g, mid, purpose)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let best = lo;
    let mut h = g.clone();
    for (u, v) in g.edge_list() {
        h.remove_edge(u, v);
        if !session.query(problem, &h, best, purpose)? {
            h.insert_edge(u, v);
        }
    }
    Ok(Some(h.edge_list()))
}

/// Edge-deletion self-reduction for k-Path or k-Cycle: the surviving edges
/// are exactly those of one solution. `None` if `g` has no solution.
pub fn selfreduce_edges(
    session: &mut OracleSession,
    problem: Problem,
    g: &Graph,
    k: usize,
    purpose: &'static str,
) -> Result<Option<Vec<Edge>>, OracleError> {
    if !session.query(problem, g, k, purpose)? {
        return Ok(None);
    }
    let mut h = g.clone();
    for (u, v) in g.edge_list() {
        h.remove_edge(u, v);
        if !session.query(problem, &h, k, purpose)? {
            h.insert_edge(u, v);
        }
    }
    Ok(Some(h.edge_list()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session() -> OracleSession {
        OracleSession::new(1000, 1000)
    }

    #[test]
    fn k4_has_cycle() {
        let e: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let g = Graph::from_edges(4, &e).unwrap();
        let out = selfreduce_longest_xy_path(&mut session(), &g, 3, 0, 1, "t").unwrap();
        assert_eq!(out, SelfReduceOutcome::KCycleFound);
    }

    #[test]
    fn disconnected_terminals() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let out = selfreduce_longest_xy_path(&mut session(), &g, 5, 0, 3, "t").unwrap();
        assert_eq!(out, SelfReduceOutcome::MaxPathVertices(BTreeSet::new()));
    }

    #[test]
    fn c4_antipodal() {
        // u=0, a=1, v=2, b=3
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let out = selfreduce_longest_xy_path(&mut session(), &g, 10, 0, 2, "t").unwrap();
        // deleting a first leaves u-b-v
        assert_eq!(out, SelfReduceOutcome::MaxPathVertices([0, 2, 3].into()));
        assert_eq!(
            selfreduce_longest_xy_path(&mut session(), &g, 3, 0, 0, "t"),
            Err(OracleError::InvalidInput("terminals must differ, got 0 twice".into()))
        );
    }

    #[test]
    fn stable_examples() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let y = selfreduce_max_stable_set(&mut session(), &tri, 0, 1, StableEdgeProperty::XYPath, "t").unwrap();
        assert_eq!(y, Some(vec![(0, 2), (1, 2)]));
        let empty = Graph::new(3);
        for p in super::super::ALL_PROPERTIES {
            assert_eq!(selfreduce_max_stable_set(&mut session(), &empty, 0, 1, p, "t").unwrap(), None);
        }
    }

    #[test]
    fn edges_of_a_path() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (0, 4)]).unwrap();
        let mut s = session();
        let es = selfreduce_edges(&mut s, Problem::Path, &g, 4, "t").unwrap().unwrap();
        assert_eq!(es.len(), 4);
        assert_eq!(selfreduce_edges(&mut s, Problem::Cycle, &g, 4, "t").unwrap(), None);
    }
}
