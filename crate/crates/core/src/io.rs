//! Text formats. Vertex ids and set elements are 1-based on disk and
//! 0-based in memory.
//!
//! * graphs: `p edge <n> <m>`, then `e <u> <v>` lines; `c` lines are comments
//! * colored graphs: the same plus `n <v> <color>` lines (colors 0-based)
//! * set cover: `u <n>`, then one `s <e1> <e2> ...` line per set
//! * decompositions: `node <id> : <v>...` and `tedge <i> <j>` with 0-based
//!   node ids

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::TreeDec;
use crate::graph::{Graph, GraphError};
use crate::reductions::{ColoredGraphInstance, ReductionError, SetCoverInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}` header line")]
    MissingHeader(&'static str),
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error(transparent)]
    SetCover(#[from] ReductionError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>, ParseError> {
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| syntax(line, format!("expected a non-negative integer, got {f:?}"))))
        .collect()
}

fn vertex(line: usize, v: usize, n: usize) -> Result<usize, ParseError> {
    if v == 0 || v > n {
        return Err(syntax(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

struct Parsed {
    graph: Graph,
    colors: Vec<(usize, usize, usize)>,
}

fn parse_edge_format(text: &str, allow_colors: bool) -> Result<Parsed, ParseError> {
    let mut graph: Option<Graph> = None;
    let mut colors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] | ["c", ..] => {}
            ["p", _kind, rest @ ..] => {
                if graph.is_some() {
                    return Err(syntax(line, "second `p` line"));
                }
                let nums = numbers(line, rest)?;
                let Some(&n) = nums.first() else {
                    return Err(syntax(line, "`p` line needs a vertex count"));
                };
                graph = Some(Graph::new(n));
            }
            ["e", rest @ ..] => {
                let g = graph.as_mut().ok_or(ParseError::MissingHeader("p"))?;
                let [u, v] = numbers(line, rest)?[..] else {
                    return Err(syntax(line, "`e` needs two endpoints"));
                };
                let n = g.capacity();
                if u == v {
                    return Err(syntax(line, format!("self-loop at vertex {u}")));
                }
                let (u, v) = (vertex(line, u, n)?, vertex(line, v, n)?);
                // repeated edges are common in exported files; keep one copy
                g.add_edge(u, v).map_err(|source| ParseError::Graph { line, source })?;
            }
            ["n", rest @ ..] if allow_colors => {
                let g = graph.as_ref().ok_or(ParseError::MissingHeader("p"))?;
                let [v, c] = numbers(line, rest)?[..] else {
                    return Err(syntax(line, "`n` needs a vertex and a color"));
                };
                colors.push((line, vertex(line, v, g.capacity())?, c));
            }
            [tag, ..] => return Err(syntax(line, format!("unknown line type {tag:?}"))),
        }
    }
    let graph = graph.ok_or(ParseError::MissingHeader("p"))?;
    Ok(Parsed { graph, colors })
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    parse_edge_format(text, false).map(|p| p.graph)
}

/// Writes the graph with ids compacted to `1..=order`.
pub fn write_graph(g: &Graph) -> String {
    let (h, _) = g.compact();
    let mut out = format!("p edge {} {}\n", h.order(), h.size());
    for (u, v) in h.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

/// Reads a colored graph; `k′` defaults to `colors - 1`.
pub fn parse_colored(text: &str) -> Result<ColoredGraphInstance, ParseError> {
    let Parsed { graph, colors: entries } = parse_edge_format(text, true)?;
    let mut colors = vec![None; graph.capacity()];
    for (line, v, c) in entries {
        if colors[v].replace(c).is_some() {
            return Err(syntax(line, format!("vertex {} colored twice", v + 1)));
        }
    }
    let colors: Vec<usize> = match colors.iter().position(Option::is_none) {
        Some(v) => return Err(syntax(0, format!("vertex {} has no color", v + 1))),
        None => colors.into_iter().map(Option::unwrap).collect(),
    };
    let num_colors = colors.iter().max().map_or(0, |c| c + 1);
    Ok(ColoredGraphInstance {
        graph,
        colors,
        num_colors,
        k_prime: num_colors.saturating_sub(1),
        r: 0,
        sets: Vec::new(),
    })
}

pub fn write_colored(ci: &ColoredGraphInstance) -> String {
    let mut out = format!("c k' {} colors {}\n", ci.k_prime, ci.num_colors);
    out.push_str(&write_graph(&ci.graph));
    for (v, c) in ci.colors.iter().enumerate() {
        writeln!(out, "n {} {c}", v + 1).unwrap();
    }
    out
}

pub fn parse_setcover(text: &str) -> Result<SetCoverInstance, ParseError> {
    let mut universe = None;
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] | ["c", ..] => {}
            ["u", n] => {
                if universe.is_some() {
                    return Err(syntax(line, "second `u` line"));
                }
                universe = Some(numbers(line, &[n])?[0]);
            }
            ["s", rest @ ..] => {
                let n = universe.ok_or(ParseError::MissingHeader("u"))?;
                let set = numbers(line, rest)?
                    .into_iter()
                    .map(|e| vertex(line, e, n))
                    .collect::<Result<Vec<_>, _>>()?;
                sets.push(set);
            }
            [tag, ..] => return Err(syntax(line, format!("unknown line type {tag:?}"))),
        }
    }
    let universe = universe.ok_or(ParseError::MissingHeader("u"))?;
    Ok(SetCoverInstance::new(universe, sets)?)
}

pub fn write_setcover(sc: &SetCoverInstance) -> String {
    let mut out = format!("u {}\n", sc.universe);
    for s in &sc.sets {
        out.push('s');
        for e in s {
            write!(out, " {}", e + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn write_decomposition(td: &TreeDec) -> String {
    let mut out = String::new();
    for (i, bag) in td.bags().iter().enumerate() {
        write!(out, "node {i} :").unwrap();
        for v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for &(i, j) in td.tree_edges() {
        writeln!(out, "tedge {i} {j}").unwrap();
    }
    out
}

/// Line-delimited JSON: a `{"schema":1}` header, then one record per line.
pub fn json_lines<T: Serialize>(records: &[T]) -> String {
    let mut out = String::from("{\"schema\":1}\n");
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("serializable record"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let text = "c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\ne 3 1\n";
        let g = parse_graph(text).unwrap();
        assert_eq!((g.order(), g.size()), (3, 3));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_lines() {
        assert_eq!(
            parse_graph("p edge 2 1\ne 1 3\n"),
            Err(ParseError::Syntax {
                line: 2,
                msg: "vertex 3 outside 1..=2".into()
            })
        );
        assert!(matches!(parse_graph("e 1 2\n"), Err(ParseError::MissingHeader("p"))));
        assert!(matches!(parse_graph("p edge 2 1\ne 2 2\n"), Err(ParseError::Syntax { line: 2, msg }) if msg.ends_with("vertex 2")));
        assert!(parse_graph("p edge 2 1\nx\n").is_err());
    }

    #[test]
    fn setcover_and_colors() {
        let sc = parse_setcover("u 3\ns 1 2\ns 3\n").unwrap();
        assert_eq!(sc.sets, vec![vec![0, 1], vec![2]]);
        assert_eq!(parse_setcover(&write_setcover(&sc)).unwrap(), sc);
        let ci = parse_colored("p edge 2 1\ne 1 2\nn 1 0\nn 2 1\n").unwrap();
        assert_eq!((ci.colors.clone(), ci.k_prime), (vec![0, 1], 1));
        assert!(parse_colored("p edge 2 1\ne 1 2\nn 1 0\n").is_err());
    }
}
