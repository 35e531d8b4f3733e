//! The fault-tolerant (FTMD) and local (LMD) 0/1 programs: builders, a
//! built-in branch-and-bound solver, and LP-format export.

mod lp;
mod model;
mod solver;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::VertexSet;

pub use lp::{export_lp, parse_lp, LpError};
pub use model::{
    build_ftmd_model, build_lmd_model, FtmdCoefficientMatrix, LmdCoefficientMatrix,
};
pub use solver::{solve_binary_program, solve_with_observer, IlpSolution, SolveError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    Ftmd,
    Lmd,
    /// A program read from LP text without a model header.
    Custom,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Ftmd => "ftmd",
            ModelKind::Lmd => "lmd",
            ModelKind::Custom => "custom",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ftmd" | "fault-tolerant" => Ok(ModelKind::Ftmd),
            "lmd" | "local" => Ok(ModelKind::Lmd),
            "custom" => Ok(ModelKind::Custom),
            other => Err(format!("unknown model kind {other:?} (expected ftmd or lmd)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    /// Sparse `(variable index, coefficient)` terms in variable order.
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl Constraint {
    pub fn holds(&self, assignment: &[bool]) -> bool {
        let lhs: i64 = self
            .terms
            .iter()
            .filter(|&&(v, _)| assignment[v])
            .map(|&(_, a)| a)
            .sum();
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
        }
    }
}

/// A minimization 0/1 program with integer data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryProgram {
    pub kind: ModelKind,
    pub graph_id: String,
    pub vars: Vec<String>,
    /// Objective coefficient of each variable.
    pub objective: Vec<i64>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("the model needs a graph with at least two vertices")]
    TrivialGraph,
}

impl BinaryProgram {
    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn is_feasible(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.vars.len() && self.constraints.iter().all(|c| c.holds(assignment))
    }

    pub fn objective_value(&self, assignment: &[bool]) -> i64 {
        self.objective
            .iter()
            .zip(assignment)
            .filter(|(_, &on)| on)
            .map(|(c, _)| c)
            .sum()
    }

    /// The vertices whose `x_i` variable is set.
    pub fn selected_vertices(&self, assignment: &[bool]) -> VertexSet {
        self.vars
            .iter()
            .zip(assignment)
            .filter(|(_, &on)| on)
            .filter_map(|(name, _)| name.strip_prefix("x_")?.parse().ok())
            .collect()
    }
}
