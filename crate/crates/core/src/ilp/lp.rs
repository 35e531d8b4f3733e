//! LP text format.
//!
//! ```text
//! \ model: lmd
//! \ graph: P4
//! Minimize
//!  obj: x_1 + x_2 + x_3 + x_4
//! Subject To
//!  edge_1_2: x_1 + x_2 + x_3 + x_4 >= 1
//! Binary
//!  x_1 x_2 x_3 x_4
//! End
//! ```
//!
//! Rows longer than [`TERMS_PER_LINE`] terms continue on indented lines.
//! The `Binary` section lists every variable in model order.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{BinaryProgram, Constraint, ModelKind, Relation};

const TERMS_PER_LINE: usize = 12;
const NAMES_PER_LINE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing section {0}")]
    MissingSection(&'static str),
    #[error("variable {0} is not declared binary")]
    UndeclaredVariable(String),
}

fn push_terms(out: &mut String, terms: impl Iterator<Item = (String, i64)>) {
    for (k, (name, a)) in terms.enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if a < 0 { "-" } else { "+" };
        match (k, a.abs()) {
            (0, 1) if a > 0 => write!(out, " {name}"),
            (0, m) if a > 0 => write!(out, " {m} {name}"),
            (_, 1) => write!(out, " {sign} {name}"),
            (_, m) => write!(out, " {sign} {m} {name}"),
        }
        .expect("writing to a String");
    }
}

/// Renders `bp`; the output is a pure function of the program.
pub fn export_lp(bp: &BinaryProgram) -> String {
    let mut out = String::new();
    writeln!(out, "\\ model: {}", bp.kind).unwrap();
    writeln!(out, "\\ graph: {}", bp.graph_id).unwrap();
    out.push_str("Minimize\n obj:");
    push_terms(
        &mut out,
        bp.objective
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| (bp.vars[v].clone(), c)),
    );
    out.push_str("\nSubject To\n");
    for c in &bp.constraints {
        write!(out, " {}:", c.name).unwrap();
        push_terms(&mut out, c.terms.iter().map(|&(v, a)| (bp.vars[v].clone(), a)));
        writeln!(out, " {} {}", c.relation.symbol(), c.rhs).unwrap();
    }
    out.push_str("Binary\n");
    for chunk in bp.vars.chunks(NAMES_PER_LINE) {
        writeln!(out, " {}", chunk.join(" ")).unwrap();
    }
    out.push_str("End\n");
    out
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Header,
    Objective,
    Constraints,
    Binary,
    Done,
}

fn parse_terms(tokens: &[&str], line: usize) -> Result<Vec<(String, i64)>, LpError> {
    let err = |message: String| LpError::Syntax { line, message };
    let mut out = Vec::new();
    let mut sign = 1;
    let mut coef: Option<i64> = None;
    for &tok in tokens {
        match tok {
            "+" => sign = 1,
            "-" => sign = -1,
            t if t.parse::<i64>().is_ok() => coef = Some(t.parse().unwrap()),
            t if t.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') => {
                out.push((t.to_owned(), sign * coef.take().unwrap_or(1)));
                sign = 1;
            }
            t => return Err(err(format!("unexpected token {t:?}"))),
        }
    }
    if coef.is_some() {
        return Err(err("dangling coefficient".into()));
    }
    Ok(out)
}

/// Parses LP text written by [`export_lp`].
pub fn parse_lp(text: &str) -> Result<BinaryProgram, LpError> {
    let mut kind = ModelKind::Custom;
    let mut graph_id = String::new();
    let mut section = Section::Header;
    // (name, tokens, first line); continuation lines append tokens.
    let mut rows: Vec<(String, Vec<String>, usize)> = Vec::new();
    let mut vars: Vec<String> = Vec::new();
    let mut obj_tokens: Vec<String> = Vec::new();
    let mut obj_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('\\') {
            if let Some((key, value)) = comment.split_once(':') {
                match key.trim() {
                    "model" => {
                        kind = value
                            .trim()
                            .parse()
                            .map_err(|message| LpError::Syntax { line, message })?
                    }
                    "graph" => graph_id = value.trim().to_owned(),
                    _ => {}
                }
            }
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        match trimmed.to_ascii_lowercase().as_str() {
            "minimize" => {
                section = Section::Objective;
                obj_line = line;
                continue;
            }
            "subject to" => {
                section = Section::Constraints;
                continue;
            }
            "binary" | "binaries" => {
                section = Section::Binary;
                continue;
            }
            "end" => {
                section = Section::Done;
                continue;
            }
            _ => {}
        }
        let syntax = |message: &str| LpError::Syntax {
            line,
            message: message.to_owned(),
        };
        match section {
            Section::Header | Section::Done => return Err(syntax("text outside any section")),
            Section::Objective => {
                let body = match trimmed.split_once(':') {
                    Some((_, rest)) if obj_tokens.is_empty() => rest,
                    _ => trimmed,
                };
                obj_tokens.extend(body.split_whitespace().map(str::to_owned));
            }
            Section::Constraints => match trimmed.split_once(':') {
                Some((name, rest)) => rows.push((
                    name.trim().to_owned(),
                    rest.split_whitespace().map(str::to_owned).collect(),
                    line,
                )),
                None => match rows.last_mut() {
                    Some(row) => row.1.extend(trimmed.split_whitespace().map(str::to_owned)),
                    None => return Err(syntax("continuation line before any row")),
                },
            },
            Section::Binary => vars.extend(trimmed.split_whitespace().map(str::to_owned)),
        }
    }
    if section != Section::Done {
        return Err(LpError::MissingSection("End"));
    }
    if obj_line == 0 {
        return Err(LpError::MissingSection("Minimize"));
    }
    let tokens: Vec<&str> = obj_tokens.iter().map(String::as_str).collect();
    let objective = parse_terms(&tokens, obj_line)?;

    let positions: HashMap<&str, usize> = vars.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let index = |name: &str| {
        positions
            .get(name)
            .copied()
            .ok_or_else(|| LpError::UndeclaredVariable(name.to_owned()))
    };
    let mut obj = vec![0; vars.len()];
    for (name, c) in objective {
        obj[index(&name)?] += c;
    }

    let mut constraints = Vec::with_capacity(rows.len());
    for (name, tokens, line) in rows {
        let syntax = |message: &str| LpError::Syntax {
            line,
            message: message.to_owned(),
        };
        let pos = tokens
            .iter()
            .position(|t| matches!(t.as_str(), ">=" | "<=" | "=>" | "=<"))
            .ok_or_else(|| syntax("row has no relation"))?;
        let relation = match tokens[pos].as_str() {
            ">=" | "=>" => Relation::Ge,
            _ => Relation::Le,
        };
        let rhs = match &tokens[pos + 1..] {
            [r] => r.parse().map_err(|_| syntax("right-hand side is not an integer"))?,
            _ => return Err(syntax("expected one right-hand side value")),
        };
        let lhs: Vec<&str> = tokens[..pos].iter().map(String::as_str).collect();
        let mut terms = Vec::new();
        for (var, a) in parse_terms(&lhs, line)? {
            terms.push((index(&var)?, a));
        }
        constraints.push(Constraint {
            name,
            terms,
            relation,
            rhs,
        });
    }
    Ok(BinaryProgram {
        kind,
        graph_id,
        vars,
        objective: obj,
        constraints,
    })
}
