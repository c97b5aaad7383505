//! Graph classes the kernels are defined on, and cheap membership checks.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::planarity::{planarity_test, Planarity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "t")]
pub enum GraphClass {
    Planar,
    MaxDegree(usize),
    ClawFree,
    K3tMinorFree(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("class parameter t must be at least 3, got {0}")]
    ParameterTooSmall(usize),
    #[error("unknown graph class '{0}'")]
    Unknown(String),
}

impl GraphClass {
    pub fn max_degree(t: usize) -> Result<Self, ClassError> {
        if t < 3 {
            return Err(ClassError::ParameterTooSmall(t));
        }
        Ok(GraphClass::MaxDegree(t))
    }

    pub fn k3t_minor_free(t: usize) -> Result<Self, ClassError> {
        if t < 3 {
            return Err(ClassError::ParameterTooSmall(t));
        }
        Ok(GraphClass::K3tMinorFree(t))
    }

    /// Parses `planar`, `claw-free`, `max-degree` and `k3t-minor-free`; the
    /// last two take `t`.
    pub fn parse(name: &str, t: Option<usize>) -> Result<Self, ClassError> {
        match name {
            "planar" => Ok(GraphClass::Planar),
            "claw-free" => Ok(GraphClass::ClawFree),
            "max-degree" => Self::max_degree(t.unwrap_or(3)),
            "k3t-minor-free" => Self::k3t_minor_free(t.unwrap_or(3)),
            other => Err(ClassError::Unknown(other.to_string())),
        }
    }

    /// Whether deleting edges keeps a graph inside the class.
    pub fn closed_under_edge_deletion(&self) -> bool {
        !matches!(self, GraphClass::ClawFree)
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::Planar => write!(f, "planar"),
            GraphClass::MaxDegree(t) => write!(f, "max-degree({t})"),
            GraphClass::ClawFree => write!(f, "claw-free"),
            GraphClass::K3tMinorFree(t) => write!(f, "k3t-minor-free({t})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    HighDegree { vertex: Vertex, degree: usize },
    Claw { center: Vertex, leaves: [Vertex; 3] },
    NonPlanar { witness: Vec<Edge> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationReport {
    Certified,
    /// Membership is trusted, not checked.
    DeclaredOnly,
    Violated(Violation),
}

impl ValidationReport {
    pub fn is_violated(&self) -> bool {
        matches!(self, ValidationReport::Violated(_))
    }
}

/// An induced claw: a centre with three pairwise non-adjacent neighbours.
pub fn find_claw(g: &Graph) -> Option<(Vertex, [Vertex; 3])> {
    for v in g.vertices() {
        let ns = g.neighbors(v);
        for (a, &p) in ns.iter().enumerate() {
            for (b, &q) in ns.iter().enumerate().skip(a + 1) {
                if g.has_edge(p, q) {
                    continue;
                }
                for &r in &ns[b + 1..] {
                    if !g.has_edge(p, r) && !g.has_edge(q, r) {
                        return Some((v, [p, q, r]));
                    }
                }
            }
        }
    }
    None
}

pub fn validate_class(g: &Graph, class: GraphClass) -> ValidationReport {
    match class {
        GraphClass::MaxDegree(t) => match g.vertices().find(|&v| g.degree(v) > t) {
            Some(vertex) => ValidationReport::Violated(Violation::HighDegree {
                vertex,
                degree: g.degree(vertex),
            }),
            None => ValidationReport::Certified,
        },
        GraphClass::ClawFree => match find_claw(g) {
            Some((center, leaves)) => ValidationReport::Violated(Violation::Claw { center, leaves }),
            None => ValidationReport::Certified,
        },
        GraphClass::Planar => match planarity_test(g) {
            Planarity::Planar => ValidationReport::Certified,
            Planarity::NonPlanar { witness } => ValidationReport::Violated(Violation::NonPlanar { witness }),
        },
        GraphClass::K3tMinorFree(_) => ValidationReport::DeclaredOnly,
    }
}

/// Membership as a yes/no, `None` where it cannot be checked.
pub fn class_membership(g: &Graph, class: GraphClass) -> Option<bool> {
    match class {
        GraphClass::MaxDegree(t) => Some(g.max_degree() <= t),
        GraphClass::ClawFree => Some(find_claw(g).is_none()),
        GraphClass::Planar => Some(crate::planarity::is_planar(g)),
        GraphClass::K3tMinorFree(_) => None,
    }
}
