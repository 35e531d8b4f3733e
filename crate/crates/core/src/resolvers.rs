//! Resolvability predicates for the four dimension variants.
//!
//! These are direct transcriptions of the definitions and act as the oracle
//! layer: the exact solvers and the ILP models are checked against them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::DistanceMatrix;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::matching::maximum_matching;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VariantKind {
    /// Classic resolving sets, `beta(G)`.
    Metric,
    /// Resolving sets that survive the loss of any one element, `beta'(G)`.
    FaultTolerant,
    /// Sets resolving every pair of adjacent vertices, `lmd(G)`.
    Local,
    /// Strong resolving sets, `sdim(G)`.
    Strong,
}

impl VariantKind {
    pub const ALL: [VariantKind; 4] = [
        VariantKind::Metric,
        VariantKind::FaultTolerant,
        VariantKind::Local,
        VariantKind::Strong,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VariantKind::Metric => "metric",
            VariantKind::FaultTolerant => "fault-tolerant",
            VariantKind::Local => "local",
            VariantKind::Strong => "strong",
        }
    }
}

impl fmt::Display for VariantKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VariantKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "metric" | "classic" => Ok(VariantKind::Metric),
            "fault-tolerant" | "fault_tolerant" | "ft" | "ftmd" => Ok(VariantKind::FaultTolerant),
            "local" | "lmd" => Ok(VariantKind::Local),
            "strong" | "sdim" => Ok(VariantKind::Strong),
            other => Err(format!("unknown variant {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    ValidWitness,
    /// Valid, and no smaller valid set exists.
    Optimal { value: usize },
    /// The first pair (lexicographically) the set fails on.
    Invalid { pair: (Vertex, Vertex) },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: VariantKind,
    pub set: VertexSet,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        !matches!(self.verdict, Verdict::Invalid { .. })
    }

    pub fn failing_pair(&self) -> Option<(Vertex, Vertex)> {
        match self.verdict {
            Verdict::Invalid { pair } => Some(pair),
            _ => None,
        }
    }

    fn from_scan(kind: VariantKind, set: &VertexSet, failure: Option<(Vertex, Vertex)>) -> Self {
        Self {
            kind,
            set: set.clone(),
            verdict: match failure {
                None => Verdict::ValidWitness,
                Some(pair) => Verdict::Invalid { pair },
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error("candidate set is empty")]
    EmptySet,
    #[error("fault-tolerant resolving sets have at least two elements, got {0}")]
    SetTooSmall(usize),
    #[error("vertex {0} is outside 1..={1}")]
    VertexOutOfRange(Vertex, usize),
}

fn check_members(dm: &DistanceMatrix, set: &VertexSet) -> Result<(), ResolveError> {
    if set.is_empty() {
        return Err(ResolveError::EmptySet);
    }
    match set.iter().find(|&v| v == 0 || v > dm.n()) {
        Some(v) => Err(ResolveError::VertexOutOfRange(v, dm.n())),
        None => Ok(()),
    }
}

/// `w` resolves `u` and `v` when `d(u, w) != d(v, w)`.
#[inline]
pub fn resolves(dm: &DistanceMatrix, w: Vertex, u: Vertex, v: Vertex) -> bool {
    dm.get(u, w) != dm.get(v, w)
}

/// `w` strongly resolves `u` and `v` when `u` lies on a shortest `v`-`w`
/// path or `v` lies on a shortest `u`-`w` path.
#[inline]
pub fn strongly_resolves(dm: &DistanceMatrix, w: Vertex, u: Vertex, v: Vertex) -> bool {
    let duv = dm.get(u, v);
    dm.get(v, w) == duv + dm.get(u, w) || dm.get(u, w) == duv + dm.get(v, w)
}

/// First unordered pair `u < v` (lexicographic) with neither endpoint in
/// `set` that fails `ok`.
fn first_failing_pair<F>(n: usize, set: &VertexSet, mut ok: F) -> Option<(Vertex, Vertex)>
where
    F: FnMut(Vertex, Vertex) -> bool,
{
    for u in 1..=n {
        if set.contains(u) {
            continue;
        }
        for v in u + 1..=n {
            if !set.contains(v) && !ok(u, v) {
                return Some((u, v));
            }
        }
    }
    None
}

pub fn is_resolving_set(dm: &DistanceMatrix, set: &VertexSet) -> Result<Certificate, ResolveError> {
    check_members(dm, set)?;
    let failure = first_failing_pair(dm.n(), set, |u, v| set.iter().any(|w| resolves(dm, w, u, v)));
    Ok(Certificate::from_scan(VariantKind::Metric, set, failure))
}

/// Every pair must be resolved by at least two distinct members.
///
/// Pairs with an endpoint in the set are not skipped here: the endpoint is
/// only one of the two required resolvers.
pub fn is_fault_tolerant_resolving_set(
    dm: &DistanceMatrix,
    set: &VertexSet,
) -> Result<Certificate, ResolveError> {
    check_members(dm, set)?;
    if set.len() < 2 {
        return Err(ResolveError::SetTooSmall(set.len()));
    }
    let n = dm.n();
    let mut failure = None;
    'outer: for u in 1..=n {
        for v in u + 1..=n {
            if set.iter().filter(|&w| resolves(dm, w, u, v)).take(2).count() < 2 {
                failure = Some((u, v));
                break 'outer;
            }
        }
    }
    Ok(Certificate::from_scan(VariantKind::FaultTolerant, set, failure))
}

/// Only adjacent pairs need resolving.
pub fn is_local_resolving_set(
    dm: &DistanceMatrix,
    g: &Graph,
    set: &VertexSet,
) -> Result<Certificate, ResolveError> {
    check_members(dm, set)?;
    let failure = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !set.contains(u) && !set.contains(v))
        .find(|&(u, v)| !set.iter().any(|w| resolves(dm, w, u, v)));
    Ok(Certificate::from_scan(VariantKind::Local, set, failure))
}

pub fn is_strong_resolving_set(
    dm: &DistanceMatrix,
    set: &VertexSet,
) -> Result<Certificate, ResolveError> {
    check_members(dm, set)?;
    let failure = first_failing_pair(dm.n(), set, |u, v| {
        set.iter().any(|w| strongly_resolves(dm, w, u, v))
    });
    Ok(Certificate::from_scan(VariantKind::Strong, set, failure))
}

/// Dispatches to the predicate for `kind`.
pub fn verify(g: &Graph, kind: VariantKind, set: &VertexSet) -> Result<Certificate, ResolveError> {
    let dm = g.distances();
    match kind {
        VariantKind::Metric => is_resolving_set(dm, set),
        VariantKind::FaultTolerant => is_fault_tolerant_resolving_set(dm, set),
        VariantKind::Local => is_local_resolving_set(dm, g, set),
        VariantKind::Strong => is_strong_resolving_set(dm, set),
    }
}

/// Pairs of which every strong resolving set must contain an endpoint:
/// diametral pairs, and pairs `(u, v)` where no neighbor of `u` is farther
/// from `v` and no neighbor of `v` is farther from `u`.
///
/// Returned as `(u, v)` with `u < v`, sorted.
pub fn forced_pairs(dm: &DistanceMatrix, g: &Graph) -> Vec<(Vertex, Vertex)> {
    let n = dm.n();
    let diam = dm.diameter();
    let mut pairs = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            let duv = dm.get(u, v);
            let diametral = duv == diam;
            let mutual = || {
                g.neighbors(u).iter().all(|&w| dm.get(w, v) <= duv)
                    && g.neighbors(v).iter().all(|&w| dm.get(u, w) <= duv)
            };
            if diametral || mutual() {
                pairs.push((u, v));
            }
        }
    }
    pairs
}

/// Size of a maximum matching of the forced-pair graph. Vertex-disjoint
/// forced pairs each need their own member, so this bounds `sdim` from
/// below.
pub fn strong_lower_bound(pairs: &[(Vertex, Vertex)]) -> usize {
    let n = pairs.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
    let zero_based: Vec<_> = pairs.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    maximum_matching(n, &zero_based).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    fn set<const N: usize>(v: [Vertex; N]) -> VertexSet {
        VertexSet::from(v)
    }

    #[test]
    fn resolves_examples() {
        let p4 = path(4);
        let dm = p4.distances();
        assert!(resolves(dm, 1, 2, 3));
        assert!(resolves(dm, 2, 2, 3));
        let c4 = cycle(4);
        assert!(!resolves(c4.distances(), 1, 2, 4));
    }

    #[test]
    fn resolving_set_examples() {
        let p4 = path(4);
        assert!(is_resolving_set(p4.distances(), &set([1])).unwrap().is_valid());
        let c4 = cycle(4);
        let cert = is_resolving_set(c4.distances(), &set([1])).unwrap();
        assert_eq!(cert.failing_pair(), Some((2, 4)));
        assert_eq!(
            is_resolving_set(p4.distances(), &VertexSet::default()),
            Err(ResolveError::EmptySet)
        );
        assert_eq!(
            is_resolving_set(p4.distances(), &set([5])),
            Err(ResolveError::VertexOutOfRange(5, 4))
        );
    }

    #[test]
    fn fault_tolerant_examples() {
        let p4 = path(4);
        let dm = p4.distances();
        assert!(is_fault_tolerant_resolving_set(dm, &set([1, 4])).unwrap().is_valid());
        // distances from 1: 0,1,2,3; from 2: 1,0,1,2. Vertex 2 cannot split (1, 3).
        let cert = is_fault_tolerant_resolving_set(dm, &set([1, 2])).unwrap();
        assert_eq!(cert.failing_pair(), Some((1, 3)));
        assert_eq!(
            is_fault_tolerant_resolving_set(dm, &set([1])),
            Err(ResolveError::SetTooSmall(1))
        );
        let all: VertexSet = p4.vertices().collect();
        assert!(is_fault_tolerant_resolving_set(dm, &all).unwrap().is_valid());
    }

    #[test]
    fn local_examples() {
        let p4 = path(4);
        assert!(is_local_resolving_set(p4.distances(), &p4, &set([1])).unwrap().is_valid());
        let c5 = cycle(5);
        let cert = is_local_resolving_set(c5.distances(), &c5, &set([1])).unwrap();
        assert_eq!(cert.failing_pair(), Some((3, 4)));
    }

    #[test]
    fn strongly_resolves_examples() {
        let p4 = path(4);
        assert!(strongly_resolves(p4.distances(), 4, 2, 1));
        let c4 = cycle(4);
        assert!(strongly_resolves(c4.distances(), 3, 1, 2));
        assert!(!strongly_resolves(c4.distances(), 2, 1, 3));
    }

    #[test]
    fn strong_set_examples() {
        let k3 = complete(3);
        let dm = k3.distances();
        assert!(is_strong_resolving_set(dm, &set([1, 2])).unwrap().is_valid());
        assert_eq!(
            is_strong_resolving_set(dm, &set([1])).unwrap().failing_pair(),
            Some((2, 3))
        );
    }

    #[test]
    fn path_forced_pairs() {
        let p5 = path(5);
        assert_eq!(forced_pairs(p5.distances(), &p5), vec![(1, 5)]);
        assert_eq!(strong_lower_bound(&[(1, 5)]), 1);
    }

    #[test]
    fn complete_graph_forces_every_pair() {
        let k4 = complete(4);
        let pairs = forced_pairs(k4.distances(), &k4);
        assert_eq!(pairs.len(), 6);
        assert_eq!(strong_lower_bound(&pairs), 2);
    }

    #[test]
    fn variant_names_round_trip() {
        for kind in VariantKind::ALL {
            assert_eq!(kind.as_str().parse::<VariantKind>(), Ok(kind));
        }
        assert!("bogus".parse::<VariantKind>().is_err());
    }

    #[test]
    fn certificate_json_shape() {
        let cert = Certificate {
            kind: VariantKind::Local,
            set: set([1, 3]),
            verdict: Verdict::Invalid { pair: (2, 4) },
        };
        let json = serde_json::to_string(&cert).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"local","set":[1,3],"verdict":{"status":"invalid","pair":[2,4]}}"#
        );
    }
}
