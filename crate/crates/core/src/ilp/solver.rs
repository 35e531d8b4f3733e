//! Depth-first branch-and-bound for [`BinaryProgram`]s.
//!
//! Rows are normalized to `sum a_k z_k >= b` and propagated by activity
//! bounds. Variables defined as products (`y = x_i x_j` through the pair of
//! linking rows) are never branched on; propagation fixes them once their
//! factors are fixed. The bound adds, over a packing of unsatisfied cover
//! rows with disjoint supports, the cheapest way to satisfy each row.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use super::{BinaryProgram, Relation};
use crate::coverage::{Meter, SearchBudget};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IlpSolution {
    pub value: i64,
    /// The optimal assignment whose set of chosen base variables is
    /// lexicographically least.
    pub assignment: Vec<bool>,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("the program is infeasible")]
    Infeasible,
    #[error("search budget exhausted{}", incumbent.as_ref().map_or(String::new(), |s| format!("; incumbent value {}", s.value)))]
    BudgetExhausted { incumbent: Option<IlpSolution> },
    #[error("negative objective coefficient on {0}")]
    NegativeObjective(String),
}

/// Solves `bp` to optimality.
pub fn solve_binary_program(bp: &BinaryProgram, budget: &SearchBudget) -> Result<IlpSolution, SolveError> {
    solve_with_observer(bp, budget, |_| {})
}

/// Like [`solve_binary_program`], calling `observe` on every feasible
/// assignment the search records.
pub fn solve_with_observer<F: FnMut(&[bool])>(
    bp: &BinaryProgram,
    budget: &SearchBudget,
    observe: F,
) -> Result<IlpSolution, SolveError> {
    if let Some(v) = bp.objective.iter().position(|&c| c < 0) {
        return Err(SolveError::NegativeObjective(bp.vars[v].clone()));
    }
    let mut s = Solver::new(bp, budget, observe);
    let exhausted = |s: &Solver<F>| SolveError::BudgetExhausted {
        incumbent: s.best.as_ref().map(|(value, assignment)| IlpSolution {
            value: *value,
            assignment: assignment.clone(),
            nodes: s.meter.nodes,
        }),
    };
    if !s.propagate(0) {
        return Err(SolveError::Infeasible);
    }
    s.greedy();
    if s.search(i64::MAX, false).is_err() {
        return Err(exhausted(&s));
    }
    let value = match &s.best {
        Some((v, _)) => *v,
        None => return Err(SolveError::Infeasible),
    };

    // Fix base variables in order, preferring 1, keeping the optimum reachable.
    for idx in 0..s.base.len() {
        let v = s.base[idx];
        if s.val[v] != FREE {
            continue;
        }
        let mark = s.trail.len();
        s.fix(v, ONE);
        let found = if s.propagate(mark) {
            match s.search(value + 1, true) {
                Ok(found) => found,
                Err(_) => return Err(exhausted(&s)),
            }
        } else {
            false
        };
        if !found {
            s.undo(mark);
            s.fix(v, ZERO);
            let ok = s.propagate(mark);
            assert!(ok, "fixing {} to 0 must keep the optimum reachable", bp.vars[v]);
        }
    }
    let assignment: Vec<bool> = s.val.iter().map(|&x| x == ONE).collect();
    assert!(s.val.iter().all(|&x| x != FREE), "all variables are fixed after extraction");
    assert!(bp.is_feasible(&assignment));
    assert_eq!(bp.objective_value(&assignment), value);
    for (y, &(p, q)) in s.products.iter() {
        assert_eq!(
            assignment[*y],
            assignment[p] && assignment[q],
            "{} must equal {} * {}",
            bp.vars[*y],
            bp.vars[p],
            bp.vars[q]
        );
    }
    Ok(IlpSolution {
        value,
        assignment,
        nodes: s.meter.nodes,
    })
}

const FREE: i8 = -1;
const ZERO: i8 = 0;
const ONE: i8 = 1;

struct Row {
    terms: Vec<(usize, i64)>,
    rhs: i64,
    /// All coefficients positive and `rhs > 0`.
    cover: bool,
}

struct Solver<'a, F> {
    cost: &'a [i64],
    rows: Vec<Row>,
    var_rows: Vec<Vec<usize>>,
    products: HashMap<usize, (usize, usize)>,
    /// Variables that are not products, in index order.
    base: Vec<usize>,
    val: Vec<i8>,
    trail: Vec<usize>,
    meter: Meter,
    best: Option<(i64, Vec<bool>)>,
    observe: F,
}

impl<'a, F: FnMut(&[bool])> Solver<'a, F> {
    fn new(bp: &'a BinaryProgram, budget: &SearchBudget, observe: F) -> Self {
        let nv = bp.vars.len();
        let rows: Vec<Row> = bp
            .constraints
            .iter()
            .map(|c| {
                let sign = if c.relation == Relation::Ge { 1 } else { -1 };
                let terms: Vec<(usize, i64)> = c
                    .terms
                    .iter()
                    .filter(|&&(_, a)| a != 0)
                    .map(|&(v, a)| (v, sign * a))
                    .collect();
                let rhs = sign * c.rhs;
                let cover = rhs > 0 && terms.iter().all(|&(_, a)| a > 0);
                Row { terms, rhs, cover }
            })
            .collect();
        let mut var_rows = vec![Vec::new(); nv];
        for (r, row) in rows.iter().enumerate() {
            for &(v, _) in &row.terms {
                var_rows[v].push(r);
            }
        }
        let products = detect_products(&rows);
        let base = (0..nv).filter(|v| !products.contains_key(v)).collect();
        Self {
            cost: &bp.objective,
            rows,
            var_rows,
            products,
            base,
            val: vec![FREE; nv],
            trail: Vec::new(),
            meter: Meter::new(budget),
            best: None,
            observe,
        }
    }

    fn fix(&mut self, v: usize, b: i8) {
        self.val[v] = b;
        self.trail.push(v);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail above mark");
            self.val[v] = FREE;
        }
    }

    /// Propagates every row touched by the trail from `mark`; with an empty
    /// trail, every row.
    fn propagate(&mut self, mark: usize) -> bool {
        if self.trail.len() == mark && mark == 0 {
            for r in 0..self.rows.len() {
                if !self.propagate_row(r) {
                    return false;
                }
            }
        }
        let mut head = mark;
        while head < self.trail.len() {
            let v = self.trail[head];
            head += 1;
            for k in 0..self.var_rows[v].len() {
                let r = self.var_rows[v][k];
                if !self.propagate_row(r) {
                    return false;
                }
            }
        }
        true
    }

    fn propagate_row(&mut self, r: usize) -> bool {
        let row = &self.rows[r];
        let mut max_act = 0;
        for &(v, a) in &row.terms {
            max_act += match self.val[v] {
                FREE => a.max(0),
                ONE => a,
                _ => 0,
            };
        }
        if max_act < row.rhs {
            return false;
        }
        let mut forced = Vec::new();
        for &(v, a) in &row.terms {
            if self.val[v] == FREE && max_act - a.abs() < row.rhs {
                forced.push((v, if a > 0 { ONE } else { ZERO }));
            }
        }
        for (v, b) in forced {
            self.fix(v, b);
        }
        true
    }

    fn fixed_cost(&self) -> i64 {
        self.val
            .iter()
            .zip(self.cost)
            .filter(|(&x, _)| x == ONE)
            .map(|(_, &c)| c)
            .sum()
    }

    /// Free base variables a term would still need set.
    fn support(&self, v: usize, out: &mut Vec<usize>) {
        match self.products.get(&v) {
            Some(&(p, q)) => out.extend([p, q].into_iter().filter(|&x| self.val[x] == FREE)),
            None => out.push(v),
        }
    }

    /// Unsatisfied cover rows as `(min extra cost, support)`.
    fn open_rows(&self) -> Vec<(i64, Vec<usize>)> {
        let mut out = Vec::new();
        let mut buf = Vec::new();
        for row in self.rows.iter().filter(|r| r.cover) {
            let act: i64 = row.terms.iter().filter(|&&(v, _)| self.val[v] == ONE).map(|&(_, a)| a).sum();
            if act >= row.rhs {
                continue;
            }
            let mut min_cost = i64::MAX;
            let mut support = Vec::new();
            for &(v, _) in &row.terms {
                if self.val[v] != FREE {
                    continue;
                }
                buf.clear();
                self.support(v, &mut buf);
                let own = if self.products.contains_key(&v) { self.cost[v] } else { 0 };
                min_cost = min_cost.min(own + buf.iter().map(|&x| self.cost[x]).sum::<i64>());
                support.extend_from_slice(&buf);
            }
            support.sort_unstable();
            support.dedup();
            out.push((min_cost, support));
        }
        out
    }

    fn packing_bound(&self, open: &[(i64, Vec<usize>)]) -> i64 {
        let mut order: Vec<usize> = (0..open.len()).filter(|&i| open[i].0 > 0).collect();
        order.sort_by_key(|&i| (open[i].1.len(), i));
        let mut used = FixedBitSet::with_capacity(self.val.len());
        let mut bound = 0;
        for i in order {
            let (c, support) = &open[i];
            if support.iter().all(|&v| !used.contains(v)) {
                support.iter().for_each(|&v| used.insert(v));
                bound += c;
            }
        }
        bound
    }

    fn record(&mut self) {
        let assignment: Vec<bool> = self.val.iter().map(|&x| x == ONE).collect();
        let value = self.fixed_cost();
        (self.observe)(&assignment);
        if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
            self.best = Some((value, assignment));
        }
    }

    /// Sets every free variable to 0 in index order. Leaves the state
    /// extended on success; restores it on failure.
    fn complete_with_zeros(&mut self) -> bool {
        let mark = self.trail.len();
        for v in 0..self.val.len() {
            if self.val[v] == FREE {
                let m = self.trail.len();
                self.fix(v, ZERO);
                if !self.propagate(m) {
                    self.undo(mark);
                    return false;
                }
            }
        }
        true
    }

    fn greedy(&mut self) {
        let mark = self.trail.len();
        loop {
            let open = self.open_rows();
            if open.is_empty() {
                break;
            }
            let Some(v) = self.branch_var(&open) else { break };
            let m = self.trail.len();
            self.fix(v, ONE);
            if !self.propagate(m) {
                self.undo(mark);
                return;
            }
        }
        if self.complete_with_zeros() {
            self.record();
        }
        self.undo(mark);
    }

    /// Free base variable in the most open rows, lowest index on ties.
    fn branch_var(&self, open: &[(i64, Vec<usize>)]) -> Option<usize> {
        let mut count = vec![0u32; self.val.len()];
        for (_, support) in open {
            for &v in support {
                count[v] += 1;
            }
        }
        let mut best: Option<usize> = None;
        for &v in &self.base {
            if self.val[v] == FREE && count[v] > 0 && best.is_none_or(|b| count[v] > count[b]) {
                best = Some(v);
            }
        }
        best
    }

    /// Explores the subtree below the current state for assignments cheaper
    /// than both `cutoff` and the incumbent. With `first_only`, stops at the
    /// first one and reports whether it was found.
    fn search(&mut self, cutoff: i64, first_only: bool) -> Result<bool, ()> {
        self.meter.tick().map_err(|_| ())?;
        let limit = if first_only {
            cutoff
        } else {
            self.best.as_ref().map_or(cutoff, |(b, _)| (*b).min(cutoff))
        };
        let open = self.open_rows();
        if self.fixed_cost() + self.packing_bound(&open) >= limit {
            return Ok(false);
        }
        if open.is_empty() {
            let (mark, before) = (self.trail.len(), self.fixed_cost());
            if self.complete_with_zeros() {
                let cost = self.fixed_cost();
                if cost < limit {
                    self.record();
                }
                self.undo(mark);
                // Nothing was forced to 1, so no completion is cheaper.
                if cost == before {
                    return Ok(first_only);
                }
                if first_only && cost < limit {
                    return Ok(true);
                }
            }
        }
        let v = match self.branch_var(&open) {
            Some(v) => v,
            None => match self.base.iter().chain(self.products.keys()).copied().find(|&v| self.val[v] == FREE) {
                Some(v) => v,
                None => return Ok(false),
            },
        };
        for b in [ONE, ZERO] {
            let mark = self.trail.len();
            self.fix(v, b);
            if self.propagate(mark) && self.search(cutoff, first_only)? && first_only {
                self.undo(mark);
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

/// Finds variables `y` pinned to `x_i * x_j` by the row pair
/// `-2y + x_i + x_j >= 0` and `y - x_i - x_j >= -1`.
fn detect_products(rows: &[Row]) -> HashMap<usize, (usize, usize)> {
    let mut upper: HashMap<(usize, usize, usize), ()> = HashMap::new();
    let mut lower: Vec<(usize, usize, usize)> = Vec::new();
    for row in rows.iter().filter(|r| r.terms.len() == 3) {
        let mut t = row.terms.clone();
        t.sort_by_key(|&(v, a)| (a, v));
        match (t[0].1, t[1].1, t[2].1, row.rhs) {
            (-2, 1, 1, 0) => {
                let (p, q) = (t[1].0.min(t[2].0), t[1].0.max(t[2].0));
                upper.insert((t[0].0, p, q), ());
            }
            (-1, -1, 1, -1) => {
                let (p, q) = (t[0].0.min(t[1].0), t[0].0.max(t[1].0));
                lower.push((t[2].0, p, q));
            }
            _ => {}
        }
    }
    lower
        .into_iter()
        .filter(|key| upper.contains_key(key) && key.0 != key.1 && key.0 != key.2)
        .map(|(y, p, q)| (y, (p, q)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::exact_dimension;
    use crate::families::{generate, Family};
    use crate::generators::{complete, cycle, path};
    use crate::graph::{Graph, VertexSet};
    use crate::ilp::{build_ftmd_model, build_lmd_model, Constraint};
    use crate::resolvers::{self, VariantKind};

    fn unlimited() -> SearchBudget {
        SearchBudget::unlimited()
    }

    fn lmd(g: &Graph) -> IlpSolution {
        solve_binary_program(&build_lmd_model(g, g.distances()).unwrap(), &unlimited()).unwrap()
    }

    fn ftmd(g: &Graph) -> IlpSolution {
        solve_binary_program(&build_ftmd_model(g, g.distances()).unwrap(), &unlimited()).unwrap()
    }

    #[test]
    fn path_values() {
        let p4 = path(4);
        assert_eq!(lmd(&p4).value, 1);
        let ft = ftmd(&p4);
        let exact = exact_dimension(&p4, VariantKind::FaultTolerant, &unlimited()).unwrap();
        assert_eq!(ft.value, exact.value() as i64);
    }

    #[test]
    fn s4_local_is_three() {
        let s4 = generate(Family::S, 4).unwrap();
        assert_eq!(lmd(s4.graph()).value, 3);
    }

    #[test]
    fn sets_match_exact_solver() {
        for g in [path(5), cycle(5), cycle(6), complete(4)] {
            for (kind, sol, bp) in [
                (VariantKind::Local, lmd(&g), build_lmd_model(&g, g.distances()).unwrap()),
                (VariantKind::FaultTolerant, ftmd(&g), build_ftmd_model(&g, g.distances()).unwrap()),
            ] {
                let exact = exact_dimension(&g, kind, &unlimited()).unwrap();
                assert_eq!(bp.selected_vertices(&sol.assignment), exact.certificate.set, "{} {kind}", g.name());
            }
        }
    }

    #[test]
    fn products_are_detected() {
        let p4 = path(4);
        let bp = build_ftmd_model(&p4, p4.distances()).unwrap();
        let s = Solver::new(&bp, &unlimited(), |_: &[bool]| {});
        assert_eq!(s.products.len(), 6);
        assert_eq!(s.products[&bp.var_index("y_2_4").unwrap()], (1, 3));
        assert_eq!(s.base, [0, 1, 2, 3]);
    }

    #[test]
    fn every_recorded_assignment_is_fault_tolerant() {
        for g in [path(4), cycle(5), cycle(6), complete(4)] {
            let bp = build_ftmd_model(&g, g.distances()).unwrap();
            let mut seen = 0;
            solve_with_observer(&bp, &unlimited(), |a| {
                seen += 1;
                assert!(bp.is_feasible(a));
                let set = bp.selected_vertices(a);
                let cert = resolvers::verify(&g, VariantKind::FaultTolerant, &set).unwrap();
                assert!(cert.is_valid(), "{set}");
            })
            .unwrap();
            assert!(seen > 0);
        }
    }

    #[test]
    fn infeasible_program() {
        let bp = BinaryProgram {
            kind: crate::ilp::ModelKind::Custom,
            graph_id: String::new(),
            vars: vec!["a".into(), "b".into()],
            objective: vec![1, 1],
            constraints: vec![
                Constraint { name: "r1".into(), terms: vec![(0, 1), (1, 1)], relation: Relation::Ge, rhs: 2 },
                Constraint { name: "r2".into(), terms: vec![(0, 1)], relation: Relation::Le, rhs: 0 },
            ],
        };
        assert_eq!(solve_binary_program(&bp, &unlimited()), Err(SolveError::Infeasible));
    }

    #[test]
    fn negative_objective_rejected() {
        let p4 = path(4);
        let mut bp = build_lmd_model(&p4, p4.distances()).unwrap();
        bp.objective[2] = -1;
        assert_eq!(
            solve_binary_program(&bp, &unlimited()),
            Err(SolveError::NegativeObjective("x_3".into()))
        );
    }

    #[test]
    fn exhausted_budget_keeps_incumbent() {
        let s5 = generate(Family::S, 5).unwrap();
        let bp = build_ftmd_model(s5.graph(), s5.graph().distances()).unwrap();
        match solve_binary_program(&bp, &unlimited().with_subsets(1)) {
            Err(SolveError::BudgetExhausted { incumbent: Some(inc) }) => {
                assert!(bp.is_feasible(&inc.assignment));
                let set: VertexSet = bp.selected_vertices(&inc.assignment);
                assert!(resolvers::verify(s5.graph(), VariantKind::FaultTolerant, &set).unwrap().is_valid());
            }
            other => panic!("expected exhaustion with incumbent, got {other:?}"),
        }
    }
}
