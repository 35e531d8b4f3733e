//! Plain-text edge-list files.
//!
//! Grammar, one record per line:
//!
//! ```text
//! file    := { comment | blank } header { comment | blank | edge | label }
//! comment := '#' <anything>
//! header  := INT WS INT             (n m)
//! edge    := INT WS INT             (u v, exactly m of them)
//! label   := "label" WS INT WS NAME (NAME has no whitespace)
//! ```
//!
//! `WS` is any run of spaces or tabs; leading and trailing whitespace is
//! ignored. Comments are only recognised when `#` is the first non-blank
//! character of a line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("header declares {expected} edges but {found} were listed")]
    EdgeCount { expected: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> EdgeListError {
    EdgeListError::Syntax {
        line,
        message: message.into(),
    }
}

fn parse_int(token: &str, line: usize, what: &str) -> Result<usize, EdgeListError> {
    token
        .parse::<usize>()
        .map_err(|_| syntax(line, format!("expected {what}, found {token:?}")))
}

/// Parses the edge-list format into a [`Graph`].
pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut labels = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                if tokens.len() != 2 {
                    return Err(syntax(line_no, "header must be \"n m\""));
                }
                let n = parse_int(tokens[0], line_no, "vertex count")?;
                let m = parse_int(tokens[1], line_no, "edge count")?;
                header = Some((n, m));
            }
            Some(_) if tokens[0] == "label" => {
                if tokens.len() != 3 {
                    return Err(syntax(line_no, "label line must be \"label u name\""));
                }
                let v = parse_int(tokens[1], line_no, "vertex")?;
                labels.push((v, tokens[2].to_owned()));
            }
            Some(_) => {
                if tokens.len() != 2 {
                    return Err(syntax(line_no, "edge line must be \"u v\""));
                }
                let u = parse_int(tokens[0], line_no, "vertex")?;
                let v = parse_int(tokens[1], line_no, "vertex")?;
                edges.push((u, v));
            }
        }
    }

    let (n, m) = header.ok_or(EdgeListError::MissingHeader)?;
    if edges.len() != m {
        return Err(EdgeListError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    let graph = Graph::from_edge_list(n, &edges)?.with_labels(labels)?;
    Ok(graph)
}

/// Writes `g` in the edge-list format. Output is byte-stable: edges are
/// emitted as `u v` with `u < v` in lexicographic order, then labels by
/// vertex id.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", g.name());
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    for v in g.vertices() {
        if let Some(label) = g.label(v) {
            let _ = writeln!(out, "label {v} {label}");
        }
    }
    out
}
