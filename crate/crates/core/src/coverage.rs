//! Every dimension variant is a multicover problem: each requirement (a
//! vertex pair) lists the vertices able to satisfy it and how many of them
//! the set must contain. This module builds those requirement systems and
//! searches them by branch-and-bound.

use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::resolvers::{resolves, strongly_resolves, VariantKind};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    /// Maximum number of search nodes (candidate subsets examined).
    pub max_subsets: Option<u64>,
    pub max_seconds: Option<f64>,
}

impl SearchBudget {
    pub const DEFAULT_SUBSETS: u64 = 100_000_000;
    pub const DEFAULT_SECONDS: f64 = 60.0;

    pub fn unlimited() -> Self {
        Self {
            max_subsets: None,
            max_seconds: None,
        }
    }

    pub fn with_seconds(mut self, secs: f64) -> Self {
        self.max_seconds = Some(secs);
        self
    }

    pub fn with_subsets(mut self, subsets: u64) -> Self {
        self.max_subsets = Some(subsets);
        self
    }
}

/// 10^8 search nodes, 60 seconds.
impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_subsets: Some(Self::DEFAULT_SUBSETS),
            max_seconds: Some(Self::DEFAULT_SECONDS),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

/// Counts search nodes against a budget.
#[derive(Debug)]
pub(crate) struct Meter {
    start: Instant,
    limit_nodes: Option<u64>,
    limit_time: Option<Duration>,
    pub nodes: u64,
}

impl Meter {
    pub fn new(budget: &SearchBudget) -> Self {
        Self {
            start: Instant::now(),
            limit_nodes: budget.max_subsets,
            limit_time: budget.max_seconds.map(Duration::from_secs_f64),
            nodes: 0,
        }
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.nodes += 1;
        if self.limit_nodes.is_some_and(|l| self.nodes > l) {
            return Err(Exhausted);
        }
        if self.nodes % 1024 == 1 && self.limit_time.is_some_and(|t| self.start.elapsed() > t) {
            return Err(Exhausted);
        }
        Ok(())
    }
}

/// A requirement system over vertices `1..=n` (bit `v - 1` stands for `v`).
#[derive(Debug, Clone)]
pub(crate) struct Requirements {
    n: usize,
    pairs: Vec<(Vertex, Vertex)>,
    candidates: Vec<FixedBitSet>,
    need: u32,
    containing: Vec<Vec<usize>>,
}

impl Requirements {
    pub fn for_kind(g: &Graph, kind: VariantKind) -> Self {
        let dm = g.distances();
        let n = g.n();
        let all_pairs = || (1..=n).flat_map(move |u| (u + 1..=n).map(move |v| (u, v)));
        let (pairs, need): (Vec<_>, u32) = match kind {
            VariantKind::Local => (g.edges().to_vec(), 1),
            VariantKind::FaultTolerant => (all_pairs().collect(), 2),
            VariantKind::Metric | VariantKind::Strong => (all_pairs().collect(), 1),
        };
        let candidates = pairs
            .iter()
            .map(|&(u, v)| {
                let mut bits = FixedBitSet::with_capacity(n);
                for w in 1..=n {
                    let hit = match kind {
                        VariantKind::Strong => strongly_resolves(dm, w, u, v),
                        _ => resolves(dm, w, u, v),
                    };
                    if hit {
                        bits.insert(w - 1);
                    }
                }
                bits
            })
            .collect();
        Self::from_parts(n, pairs, candidates, need)
    }

    /// Each pair must contain one of its own endpoints.
    pub fn endpoint_cover(n: usize, pairs: &[(Vertex, Vertex)]) -> Self {
        let candidates = pairs
            .iter()
            .map(|&(u, v)| {
                let mut bits = FixedBitSet::with_capacity(n);
                bits.insert(u - 1);
                bits.insert(v - 1);
                bits
            })
            .collect();
        Self::from_parts(n, pairs.to_vec(), candidates, 1)
    }

    fn from_parts(n: usize, pairs: Vec<(Vertex, Vertex)>, candidates: Vec<FixedBitSet>, need: u32) -> Self {
        let mut containing = vec![Vec::new(); n];
        for (r, bits) in candidates.iter().enumerate() {
            for w in bits.ones() {
                containing[w].push(r);
            }
        }
        Self {
            n,
            pairs,
            candidates,
            need,
            containing,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    /// Whether `set` meets every requirement.
    pub fn satisfied_by(&self, set: &VertexSet) -> bool {
        let mut bits = FixedBitSet::with_capacity(self.n);
        for v in set.iter() {
            bits.insert(v - 1);
        }
        self.candidates
            .iter()
            .all(|c| c.intersection_count(&bits) as u32 >= self.need)
    }

    /// Greedy multicover: repeatedly add the vertex meeting the most unmet
    /// demand, lowest id on ties.
    pub fn greedy(&self) -> VertexSet {
        let mut count = vec![0u32; self.len()];
        let mut chosen = FixedBitSet::with_capacity(self.n);
        loop {
            let mut best: Option<(usize, usize)> = None;
            for w in 0..self.n {
                if chosen.contains(w) {
                    continue;
                }
                let gain = self.containing[w]
                    .iter()
                    .filter(|&&r| count[r] < self.need)
                    .count();
                if gain > 0 && best.is_none_or(|(_, g)| gain > g) {
                    best = Some((w, gain));
                }
            }
            match best {
                Some((w, _)) => {
                    chosen.insert(w);
                    for &r in &self.containing[w] {
                        count[r] += 1;
                    }
                }
                None => break,
            }
        }
        chosen.ones().map(|w| w + 1).collect()
    }

    /// Searches for a valid set of size at most `limit` that contains
    /// `include` and avoids `exclude`.
    pub fn find(
        &self,
        limit: usize,
        include: &[Vertex],
        exclude: &[Vertex],
        meter: &mut Meter,
    ) -> Result<Option<VertexSet>, Exhausted> {
        let mut state = SearchState::new(self);
        for &v in exclude {
            state.excluded.insert(v - 1);
        }
        for &v in include {
            state.add(v - 1);
        }
        if include.len() > limit {
            return Ok(None);
        }
        if state.run(limit - include.len(), meter)? {
            Ok(Some(state.chosen.ones().map(|w| w + 1).collect()))
        } else {
            Ok(None)
        }
    }

    /// The lexicographically least valid set of exactly `size` vertices,
    /// given that no valid set is smaller.
    pub fn lex_least(&self, size: usize, meter: &mut Meter) -> Result<Option<VertexSet>, Exhausted> {
        let mut prefix: Vec<Vertex> = Vec::with_capacity(size);
        let mut exclude: Vec<Vertex> = Vec::new();
        let mut next = 1;
        while prefix.len() < size {
            let mut placed = false;
            for v in next..=self.n {
                prefix.push(v);
                if self.find(size, &prefix, &exclude, meter)?.is_some() {
                    next = v + 1;
                    placed = true;
                    break;
                }
                prefix.pop();
                exclude.push(v);
            }
            if !placed {
                return Ok(None);
            }
        }
        Ok(Some(VertexSet::new(prefix)))
    }
}

struct SearchState<'a> {
    req: &'a Requirements,
    count: Vec<u32>,
    chosen: FixedBitSet,
    excluded: FixedBitSet,
    scratch: FixedBitSet,
    used: FixedBitSet,
}

impl<'a> SearchState<'a> {
    fn new(req: &'a Requirements) -> Self {
        Self {
            req,
            count: vec![0; req.len()],
            chosen: FixedBitSet::with_capacity(req.n),
            excluded: FixedBitSet::with_capacity(req.n),
            scratch: FixedBitSet::with_capacity(req.n),
            used: FixedBitSet::with_capacity(req.n),
        }
    }

    fn add(&mut self, w: usize) {
        if !self.chosen.put(w) {
            for &r in &self.req.containing[w] {
                self.count[r] += 1;
            }
        }
    }

    fn remove(&mut self, w: usize) {
        if self.chosen.contains(w) {
            self.chosen.set(w, false);
            for &r in &self.req.containing[w] {
                self.count[r] -= 1;
            }
        }
    }

    /// Candidates of requirement `r` still open for selection, into `scratch`.
    fn available(&mut self, r: usize) -> usize {
        self.scratch.clone_from(&self.req.candidates[r]);
        self.scratch.difference_with(&self.chosen);
        self.scratch.difference_with(&self.excluded);
        self.scratch.count_ones(..)
    }

    fn run(&mut self, remaining: usize, meter: &mut Meter) -> Result<bool, Exhausted> {
        meter.tick()?;
        let need = self.req.need;

        // Branch on the unmet requirement with the fewest open candidates;
        // bound by packing unmet requirements with disjoint open candidates.
        let mut branch: Option<(usize, usize)> = None;
        let mut packed = 0usize;
        self.used.clear();
        for r in 0..self.req.len() {
            let deficit = need.saturating_sub(self.count[r]) as usize;
            if deficit == 0 {
                continue;
            }
            let open = self.available(r);
            if open < deficit || deficit > remaining {
                return Ok(false);
            }
            if branch.is_none_or(|(_, best)| open < best) {
                branch = Some((r, open));
            }
            if self.scratch.is_disjoint(&self.used) {
                packed += deficit;
                if packed > remaining {
                    return Ok(false);
                }
                self.used.union_with(&self.scratch);
            }
        }
        let Some((r, _)) = branch else {
            return Ok(true);
        };

        self.available(r);
        let options: Vec<usize> = self.scratch.ones().collect();
        let mut banned = Vec::with_capacity(options.len());
        let mut found = false;
        for w in options {
            self.add(w);
            if self.run(remaining - 1, meter)? {
                found = true;
                break;
            }
            self.remove(w);
            self.excluded.insert(w);
            banned.push(w);
        }
        for w in banned {
            self.excluded.set(w, false);
        }
        Ok(found)
    }
}
