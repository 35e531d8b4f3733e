//! Serializable reports and their plain-text rendering.

use std::fmt::Write as _;

use metdim::exact::SearchStats;
use metdim::families::{TableConflict, TableDeviation, TheoremReport, TheoremStatus};
use metdim::{Graph, VertexSet};
use serde::Serialize;

pub fn labels(g: &Graph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|v| g.display_name(v)).collect()
}

fn fmt_labels(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

#[derive(Debug, Serialize)]
pub struct DimReport {
    pub graph: String,
    pub n: usize,
    pub m: usize,
    pub variant: String,
    /// `optimal` or `budget-exhausted`.
    pub status: &'static str,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ilp_value: Option<usize>,
    pub witness: VertexSet,
    pub witness_labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ilp_nodes: Option<u64>,
    pub elapsed_ms: u64,
}

impl DimReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k:<14}{v}").unwrap();
        line("graph", format!("{} (n = {}, m = {})", self.graph, self.n, self.m));
        line("variant", self.variant.clone());
        line("status", self.status.to_owned());
        line("method", self.method.to_owned());
        if let Some(v) = self.value {
            line("value", v.to_string());
        }
        if let Some(v) = self.exact_value {
            line("exact value", v.to_string());
        }
        if let Some(v) = self.ilp_value {
            line("ilp value", v.to_string());
        }
        if let Some(v) = self.lower_bound {
            line("lower bound", v.to_string());
        }
        if let Some(v) = self.upper_bound {
            line("upper bound", v.to_string());
        }
        if !self.witness.is_empty() {
            line("witness", fmt_labels(&self.witness_labels));
        }
        line("elapsed", format!("{} ms", self.elapsed_ms));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SolveReport {
    pub graph: String,
    pub model: String,
    pub variables: usize,
    pub constraints: usize,
    pub value: usize,
    pub set: VertexSet,
    pub set_labels: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<usize>,
    pub ilp_nodes: u64,
    pub elapsed_ms: u64,
}

impl SolveReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k:<14}{v}").unwrap();
        line("graph", self.graph.clone());
        line("model", format!("{} ({} variables, {} rows)", self.model, self.variables, self.constraints));
        line("value", self.value.to_string());
        line("set", fmt_labels(&self.set_labels));
        if let Some(v) = self.exact_value {
            line("exact value", v.to_string());
        }
        line("elapsed", format!("{} ms", self.elapsed_ms));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ClosedForm {
    pub formula: usize,
    pub witness: VertexSet,
    pub witness_labels: Vec<String>,
    pub witness_valid: bool,
}

#[derive(Debug, Serialize)]
pub struct TableCheck {
    /// Why no table applies, when none does.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unavailable: Option<String>,
    pub literal_deviations: Vec<TableDeviation>,
    pub corrected_deviations: Vec<TableDeviation>,
    pub conflicts: Vec<TableConflict>,
}

#[derive(Debug, Serialize)]
pub struct FamilyReport {
    pub graph: String,
    pub vertices: usize,
    pub edges: usize,
    pub diameter: u32,
    pub bipartite: bool,
    pub local: ClosedForm,
    pub strong: ClosedForm,
    pub strong_lower_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tables: Option<TableCheck>,
}

impl FamilyReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| writeln!(out, "{k:<22}{v}").unwrap();
        line("graph", self.graph.clone());
        line("vertices", self.vertices.to_string());
        line("edges", self.edges.to_string());
        line("diameter", self.diameter.to_string());
        line("bipartite", self.bipartite.to_string());
        for (name, cf) in [("local", &self.local), ("strong", &self.strong)] {
            line(&format!("{name} formula"), cf.formula.to_string());
            line(
                &format!("{name} witness"),
                format!("{} ({})", fmt_labels(&cf.witness_labels), if cf.witness_valid { "valid" } else { "INVALID" }),
            );
        }
        line("strong lower bound", self.strong_lower_bound.to_string());
        if let Some(t) = &self.tables {
            match &t.unavailable {
                Some(why) => line("distance tables", why.clone()),
                None => {
                    line("literal deviations", t.literal_deviations.len().to_string());
                    line("corrected deviations", t.corrected_deviations.len().to_string());
                    line("row conflicts", t.conflicts.len().to_string());
                }
            }
            for d in &t.literal_deviations {
                writeln!(
                    out,
                    "  d({}, {}): table {} vs bfs {} [{}]",
                    d.vertex, d.anchor, d.table, d.bfs, d.rule
                )
                .unwrap();
            }
            for c in &t.conflicts {
                writeln!(out, "  {} vs {}: \"{}\" and \"{}\"", c.vertex, c.anchor, c.first_rule, c.second_rule).unwrap();
            }
        }
        out
    }
}

pub fn theorem_table(report: &TheoremReport, g_labels: &dyn Fn(usize, &VertexSet) -> String) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>4} {:>8} {:>8} {:>6} {:<20} {:>8}  {}",
        "n", "formula", "witness", "lower", "method", "optimum", "status"
    )
    .unwrap();
    for row in &report.rows {
        let status = match row.status {
            TheoremStatus::Certified => "certified",
            TheoremStatus::UpperOnly => "upper-only",
            TheoremStatus::Failed => "FAILED",
        };
        let method = serde_json::to_value(row.lower_method)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        writeln!(
            out,
            "{:>4} {:>8} {:>8} {:>6} {:<20} {:>8}  {}",
            row.n,
            row.formula,
            if row.witness_valid { row.witness.len().to_string() } else { "invalid".into() },
            row.lower_bound,
            method,
            row.optimum.map_or("?".into(), |v| v.to_string()),
            status
        )
        .unwrap();
        if let Some(c) = &row.counterexample {
            writeln!(out, "       smaller set: {}", g_labels(row.n, c)).unwrap();
        }
        if let Some(note) = &row.note {
            writeln!(out, "       note: {note}").unwrap();
        }
    }
    out
}
