//! Exact dimension solvers producing `Optimal` certificates.
//!
//! The search ascends the cardinality from a lower bound and, at the first
//! feasible size, extracts the lexicographically least valid set. Each
//! optimum is re-checked against the resolvers before it is returned.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::coverage::{Meter, Requirements, SearchBudget};
use crate::graph::{Graph, VertexSet};
use crate::resolvers::{self, forced_pairs, strong_lower_bound, Certificate, ResolveError, VariantKind, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("search budget exhausted; dimension lies in [{lower}, {}]", upper.map_or("?".to_string(), |u| u.to_string()))]
    BudgetExhausted { lower: usize, upper: Option<usize> },
    #[error("seed set is not a valid {kind} set (fails on pair {pair:?})")]
    InvalidSeed {
        kind: VariantKind,
        pair: Option<(usize, usize)>,
    },
    #[error("fault-tolerant dimension needs at least two vertices")]
    TrivialGraph,
    #[error(transparent)]
    Resolve(#[from] ResolveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// First cardinality the ascending search tried.
    pub start: usize,
    /// Nodes spent refuting sizes below the optimum.
    pub refutation_nodes: u64,
    /// Nodes spent locating the lexicographically least optimum.
    pub extraction_nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactSolution {
    pub certificate: Certificate,
    pub stats: SearchStats,
}

impl ExactSolution {
    pub fn value(&self) -> usize {
        self.certificate.set.len()
    }
}

/// Lower end of the ascending search for `kind`.
pub fn search_start(g: &Graph, kind: VariantKind) -> usize {
    match kind {
        VariantKind::Metric | VariantKind::Local => 1,
        VariantKind::FaultTolerant => 2,
        VariantKind::Strong => strong_lower_bound(&forced_pairs(g.distances(), g)).max(1),
    }
}

/// Computes the exact `kind` dimension of `g`.
pub fn exact_dimension(
    g: &Graph,
    kind: VariantKind,
    budget: &SearchBudget,
) -> Result<ExactSolution, ExactError> {
    if kind == VariantKind::FaultTolerant && g.n() < 2 {
        return Err(ExactError::TrivialGraph);
    }
    let req = Requirements::for_kind(g, kind);
    let upper = req.greedy().len().max(1);
    let start = search_start(g, kind);
    ascend(g, kind, &req, start, upper, budget)
}

/// Proves `|upper_witness|` optimal, or finds a strictly smaller optimum.
///
/// For `Strong`, sizes below the forced-pair matching bound are skipped
/// without search.
pub fn exact_dimension_with_seed(
    g: &Graph,
    kind: VariantKind,
    upper_witness: &VertexSet,
    budget: &SearchBudget,
) -> Result<ExactSolution, ExactError> {
    if kind == VariantKind::FaultTolerant && g.n() < 2 {
        return Err(ExactError::TrivialGraph);
    }
    let seed = resolvers::verify(g, kind, upper_witness)?;
    if !seed.is_valid() {
        return Err(ExactError::InvalidSeed {
            kind,
            pair: seed.failing_pair(),
        });
    }
    let req = Requirements::for_kind(g, kind);
    let start = search_start(g, kind).min(upper_witness.len());
    ascend(g, kind, &req, start, upper_witness.len(), budget)
}

fn ascend(
    g: &Graph,
    kind: VariantKind,
    req: &Requirements,
    start: usize,
    upper: usize,
    budget: &SearchBudget,
) -> Result<ExactSolution, ExactError> {
    let mut meter = Meter::new(budget);
    let mut size = start;
    // Sizes below `upper` need a refutation; `upper` itself is known feasible.
    while size < upper {
        match req.find(size, &[], &[], &mut meter) {
            Ok(Some(_)) => break,
            Ok(None) => size += 1,
            Err(_) => {
                return Err(ExactError::BudgetExhausted {
                    lower: size,
                    upper: Some(upper),
                })
            }
        }
    }
    let refutation_nodes = meter.nodes;
    let witness = match req.lex_least(size, &mut meter) {
        Ok(Some(set)) => set,
        Ok(None) => unreachable!("a valid set of size {size} exists"),
        Err(_) => {
            return Err(ExactError::BudgetExhausted {
                lower: size,
                upper: Some(size),
            })
        }
    };
    let check = resolvers::verify(g, kind, &witness)?;
    assert!(
        check.is_valid(),
        "search returned an invalid {kind} set {witness}: fails on {:?}",
        check.failing_pair()
    );
    Ok(ExactSolution {
        certificate: Certificate {
            kind,
            set: witness,
            verdict: Verdict::Optimal { value: size },
        },
        stats: SearchStats {
            start,
            refutation_nodes,
            extraction_nodes: meter.nodes - refutation_nodes,
        },
    })
}

/// Plain enumeration of all subsets in lexicographic order by ascending
/// size, checked with the resolvers predicates. No pruning; used to cross
/// check the branch-and-bound search.
pub fn enumerate_dimension(
    g: &Graph,
    kind: VariantKind,
    budget: &SearchBudget,
) -> Result<Certificate, ExactError> {
    if kind == VariantKind::FaultTolerant && g.n() < 2 {
        return Err(ExactError::TrivialGraph);
    }
    let mut meter = Meter::new(budget);
    let first = if kind == VariantKind::FaultTolerant { 2 } else { 1 };
    for size in first..=g.n() {
        for combo in g.vertices().combinations(size) {
            if meter.tick().is_err() {
                return Err(ExactError::BudgetExhausted {
                    lower: size,
                    upper: None,
                });
            }
            let set = VertexSet::new(combo);
            if resolvers::verify(g, kind, &set)?.is_valid() {
                return Ok(Certificate {
                    kind,
                    set,
                    verdict: Verdict::Optimal { value: size },
                });
            }
        }
    }
    unreachable!("the full vertex set is valid for every variant")
}
