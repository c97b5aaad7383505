//! Exact searches for long paths and cycles.
//!
//! Small components go to a subset dynamic program; larger ones to a
//! depth-first search that prunes a branch as soon as the vertices still
//! reachable from its end cannot complete the target length.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::decomposition::biconnected_components;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("solver time limit of {0} ms exceeded")]
    Timeout(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    pub time_limit: Option<Duration>,
    /// Components up to this order are solved by the subset DP.
    pub dp_max_order: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            time_limit: Some(Duration::from_secs(60)),
            dp_max_order: 12,
        }
    }
}

impl SolverConfig {
    pub fn unlimited() -> Self {
        SolverConfig {
            time_limit: None,
            ..Default::default()
        }
    }

    /// Default configuration with `TK_TIME_LIMIT_MS` applied when set.
    pub fn from_env() -> Self {
        let mut cfg = SolverConfig::default();
        if let Some(ms) = std::env::var("TK_TIME_LIMIT_MS").ok().and_then(|s| s.parse::<u64>().ok()) {
            cfg.time_limit = Some(Duration::from_millis(ms));
        }
        cfg
    }

    /// Forces the depth-first search everywhere.
    pub fn dfs_only(mut self) -> Self {
        self.dp_max_order = 0;
        self
    }

    pub(crate) fn clock(&self) -> Clock {
        Clock {
            end: self.time_limit.map(|d| Instant::now() + d),
            limit_ms: self.time_limit.map_or(0, |d| d.as_millis() as u64),
            ticks: 0,
        }
    }
}

pub(crate) struct Clock {
    end: Option<Instant>,
    limit_ms: u64,
    ticks: u32,
}

impl Clock {
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<(), SolveError> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks & 1023 == 0 {
            if let Some(end) = self.end {
                if Instant::now() > end {
                    return Err(SolveError::Timeout(self.limit_ms));
                }
            }
        }
        Ok(())
    }
}

/// Simple-path search with a reusable visited mask and BFS scratch space.
/// Works on compact graphs.
pub(crate) struct Search<'a> {
    pub h: &'a Graph,
    pub visited: Vec<bool>,
    pub path: Vec<usize>,
    stamp: Vec<u32>,
    epoch: u32,
    queue: Vec<usize>,
    pub clock: Clock,
}

impl<'a> Search<'a> {
    pub fn new(h: &'a Graph, clock: Clock) -> Self {
        let n = h.capacity();
        Search {
            h,
            visited: vec![false; n],
            path: Vec::new(),
            stamp: vec![0; n],
            epoch: 0,
            queue: Vec::new(),
            clock,
        }
    }

    /// Unvisited vertices reachable from `from` through unvisited vertices
    /// satisfying `allowed`; `stop` vertices are counted but not expanded.
    /// Returns the count and whether `hit` returned true on any of them.
    fn reach(&mut self, from: usize, allowed: impl Fn(usize) -> bool, stop: Option<usize>, hit: impl Fn(usize) -> bool) -> (usize, bool) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
        let ep = self.epoch;
        self.queue.clear();
        self.queue.push(from);
        self.stamp[from] = ep;
        let mut count = 0;
        let mut touched = false;
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            if v != from && Some(v) == stop {
                continue;
            }
            for &w in self.h.neighbors(v) {
                if self.stamp[w] != ep && !self.visited[w] && allowed(w) {
                    self.stamp[w] = ep;
                    count += 1;
                    touched |= hit(w);
                    self.queue.push(w);
                }
            }
        }
        (count, touched)
    }

    /// Extends the current path (ending at its last vertex) to at least
    /// `target` edges. `allowed` restricts the vertices used.
    pub fn extend_path(&mut self, target: usize, allowed: &dyn Fn(usize) -> bool) -> Result<bool, SolveError> {
        let len = self.path.len() - 1;
        if len >= target {
            return Ok(true);
        }
        self.clock.tick()?;
        let v = *self.path.last().unwrap();
        let remaining = target - len;
        if remaining >= 2 && self.reach(v, allowed, None, |_| false).0 < remaining {
            return Ok(false);
        }
        for idx in 0..self.h.degree(v) {
            let w = self.h.neighbors(v)[idx];
            if !self.visited[w] && allowed(w) {
                self.visited[w] = true;
                self.path.push(w);
                if self.extend_path(target, allowed)? {
                    return Ok(true);
                }
                self.path.pop();
                self.visited[w] = false;
            }
        }
        Ok(false)
    }

    /// Extends the current path to end at `y` with at least `target` edges
    /// in total; `y` is only ever the final vertex.
    pub fn extend_to(&mut self, y: usize, target: usize) -> Result<bool, SolveError> {
        let v = *self.path.last().unwrap();
        let len = self.path.len() - 1;
        if v == y {
            return Ok(len >= target);
        }
        self.clock.tick()?;
        let (count, sees_y) = self.reach(v, |_| true, Some(y), |w| w == y);
        if !sees_y || len + count < target {
            return Ok(false);
        }
        for idx in 0..self.h.degree(v) {
            let w = self.h.neighbors(v)[idx];
            if !self.visited[w] {
                self.visited[w] = true;
                self.path.push(w);
                if self.extend_to(y, target)? {
                    return Ok(true);
                }
                self.path.pop();
                self.visited[w] = false;
            }
        }
        Ok(false)
    }

    /// Closes the current path (starting at `path[0] = s`, using only
    /// vertices `> s`) into a cycle with at least `target` edges.
    fn extend_cycle(&mut self, target: usize, s_nbr: &[bool]) -> Result<bool, SolveError> {
        let v = *self.path.last().unwrap();
        let len = self.path.len() - 1;
        if len + 1 >= target && len >= 2 && s_nbr[v] {
            return Ok(true);
        }
        self.clock.tick()?;
        let s = self.path[0];
        if len >= 1 {
            let (count, touches) = self.reach(v, |w| w > s, None, |w| s_nbr[w]);
            if !(touches || s_nbr[v]) || len + count + 1 < target {
                return Ok(false);
            }
        }
        for idx in 0..self.h.degree(v) {
            let w = self.h.neighbors(v)[idx];
            if w > s && !self.visited[w] {
                self.visited[w] = true;
                self.path.push(w);
                if self.extend_cycle(target, s_nbr)? {
                    return Ok(true);
                }
                self.path.pop();
                self.visited[w] = false;
            }
        }
        Ok(false)
    }

    fn reset(&mut self) {
        for &v in &self.path {
            self.visited[v] = false;
        }
        self.path.clear();
    }
}

fn tree_diameter_path(h: &Graph, comp: &[usize]) -> Vec<usize> {
    let far = |start: usize| -> (usize, Vec<usize>) {
        let mut parent = vec![usize::MAX; h.capacity()];
        parent[start] = start;
        let mut order = vec![start];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in h.neighbors(v) {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    order.push(w);
                }
            }
        }
        (*order.last().unwrap(), parent)
    };
    let (a, _) = far(comp[0]);
    let (b, parent) = far(a);
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = parent[cur];
        path.push(cur);
    }
    path
}

/// Subset DP over a compact graph with at most 20 vertices: `reach[mask]`
/// holds the end vertices of paths covering exactly `mask`. For cycles
/// only paths starting at the lowest vertex of `mask` are tracked.
fn dp_path(h: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = h.order();
    let full = 1usize << n;
    let mut reach = vec![0u32; full];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1..full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        if mask.count_ones() as usize >= k + 1 {
            return Some(dp_unwind(h, &reach, mask, ends.trailing_zeros() as usize));
        }
        for v in 0..n {
            if ends >> v & 1 == 1 {
                for &w in h.neighbors(v) {
                    if mask >> w & 1 == 0 {
                        reach[mask | 1 << w] |= 1 << w;
                    }
                }
            }
        }
    }
    None
}

fn dp_cycle(h: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = h.order();
    let full = 1usize << n;
    let mut reach = vec![0u32; full];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1..full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        let s = mask.trailing_zeros() as usize;
        let size = mask.count_ones() as usize;
        if size >= k.max(3) {
            if let Some(v) = (0..n).find(|&v| ends >> v & 1 == 1 && h.has_edge(v, s)) {
                return Some(dp_unwind(h, &reach, mask, v));
            }
        }
        for v in 0..n {
            if ends >> v & 1 == 1 {
                for &w in h.neighbors(v) {
                    if w > s && mask >> w & 1 == 0 {
                        reach[mask | 1 << w] |= 1 << w;
                    }
                }
            }
        }
    }
    None
}

fn dp_unwind(h: &Graph, reach: &[u32], mut mask: usize, mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while mask.count_ones() > 1 {
        let prev = mask & !(1 << v);
        let u = (0..h.order())
            .find(|&u| reach[prev] >> u & 1 == 1 && h.has_edge(u, v))
            .expect("dp table is consistent");
        path.push(u);
        mask = prev;
        v = u;
    }
    path.reverse();
    path
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Route {
    Auto,
    DpOnly,
}

fn path_search(g: &Graph, k: usize, cfg: &SolverConfig, route: Route) -> Result<Option<Vec<Vertex>>, SolveError> {
    let (h, labels) = g.compact();
    if h.order() == 0 {
        return Ok(None);
    }
    if k == 0 {
        return Ok(Some(vec![labels[0]]));
    }
    let map = |p: Vec<usize>| p.into_iter().map(|v| labels[v]).collect::<Vec<_>>();
    let mut search = Search::new(&h, cfg.clock());
    for comp in h.components() {
        if comp.len() < k + 1 {
            continue;
        }
        let (c, cmap) = h.induced_compact(&comp);
        let local = |p: Vec<usize>| p.into_iter().map(|v| cmap[v]).collect::<Vec<_>>();
        if route == Route::DpOnly || (c.order() <= cfg.dp_max_order.min(20)) {
            if let Some(p) = dp_path(&c, k) {
                return Ok(Some(map(local(p))));
            }
            continue;
        }
        if c.size() + 1 == c.order() {
            let p = tree_diameter_path(&c, &(0..c.order()).collect::<Vec<_>>());
            if p.len() > k {
                return Ok(Some(map(local(p))));
            }
            continue;
        }
        let in_comp = {
            let mut mask = vec![false; h.capacity()];
            comp.iter().for_each(|&v| mask[v] = true);
            mask
        };
        let allowed = |w: usize| in_comp[w];
        for &s in &comp {
            search.reset();
            search.visited[s] = true;
            search.path.push(s);
            if search.extend_path(k, &allowed)? {
                return Ok(Some(map(search.path.clone())));
            }
        }
        search.reset();
    }
    Ok(None)
}

fn cycle_search(g: &Graph, k: usize, cfg: &SolverConfig, route: Route) -> Result<Option<Vec<Vertex>>, SolveError> {
    let k = k.max(3);
    let (h, labels) = g.compact();
    for block in biconnected_components(&h).blocks {
        if block.vertices.len() < k {
            continue;
        }
        let mut local = vec![usize::MAX; h.capacity()];
        for (i, &v) in block.vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut b = Graph::new(block.vertices.len());
        for &(u, v) in &block.edges {
            b.insert_edge(local[u], local[v]);
        }
        let map = |p: Vec<usize>| p.into_iter().map(|v| labels[block.vertices[v]]).collect::<Vec<_>>();
        if route == Route::DpOnly || b.order() <= cfg.dp_max_order.min(20) {
            if let Some(c) = dp_cycle(&b, k) {
                return Ok(Some(map(c)));
            }
            continue;
        }
        if b.size() == b.order() {
            // the block is a single cycle
            let mut cyc = vec![0, b.neighbors(0)[0]];
            while cyc.len() < b.order() {
                let v = *cyc.last().unwrap();
                let prev = cyc[cyc.len() - 2];
                let next = *b.neighbors(v).iter().find(|&&w| w != prev).unwrap();
                cyc.push(next);
            }
            return Ok(Some(map(cyc)));
        }
        let mut search = Search::new(&b, cfg.clock());
        let mut s_nbr = vec![false; b.order()];
        for s in 0..b.order() {
            if b.order() - s < k {
                break;
            }
            for &w in b.neighbors(s) {
                s_nbr[w] = true;
            }
            search.reset();
            search.visited[s] = true;
            search.path.push(s);
            let found = search.extend_cycle(k, &s_nbr)?;
            for &w in b.neighbors(s) {
                s_nbr[w] = false;
            }
            if found {
                return Ok(Some(map(search.path.clone())));
            }
        }
    }
    Ok(None)
}

/// A path with at least `k` edges, as a vertex sequence.
pub fn find_k_path(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<Option<Vec<Vertex>>, SolveError> {
    path_search(g, k, cfg, Route::Auto)
}

/// A cycle with at least `max(k, 3)` edges, as a vertex sequence without
/// repeating the first vertex.
pub fn find_k_cycle(g: &Graph, k: usize, cfg: &SolverConfig) -> Result<Option<Vec<Vertex>>, SolveError> {
    cycle_search(g, k, cfg, Route::Auto)
}

/// Whether `g` has a path with at least `k` edges.
pub fn exact_k_path(g: &Graph, k: usize) -> Result<bool, SolveError> {
    Ok(find_k_path(g, k, &SolverConfig::default())?.is_some())
}

/// Whether `g` has a cycle with at least `k` edges.
pub fn exact_k_cycle(g: &Graph, k: usize) -> Result<bool, SolveError> {
    Ok(find_k_cycle(g, k, &SolverConfig::default())?.is_some())
}

/// The subset DP alone; every component or block must have at most 20
/// vertices.
pub fn dp_k_path(g: &Graph, k: usize) -> bool {
    path_search(g, k, &SolverConfig::unlimited(), Route::DpOnly).unwrap().is_some()
}

pub fn dp_k_cycle(g: &Graph, k: usize) -> bool {
    cycle_search(g, k, &SolverConfig::unlimited(), Route::DpOnly).unwrap().is_some()
}
