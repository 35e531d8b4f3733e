//! Model builders and their coefficient matrices.

use fixedbitset::FixedBitSet;

use super::{BinaryProgram, Constraint, ModelError, ModelKind, Relation};
use crate::distance::DistanceMatrix;
use crate::graph::{Graph, Vertex};
use crate::resolvers::resolves;

/// Position of the pair `(i, j)`, `1 <= i < j <= n`, in lexicographic order.
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    let i0 = i - 1;
    i0 * (2 * n - i0 - 1) / 2 + (j - i - 1)
}

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

/// Rows are vertex pairs `(u, v)`, columns index pairs `(i, j)`; an entry
/// is 1 exactly when both `i` and `j` resolve `(u, v)`.
#[derive(Debug, Clone)]
pub struct FtmdCoefficientMatrix {
    n: usize,
    bits: FixedBitSet,
}

impl FtmdCoefficientMatrix {
    pub fn new(dm: &DistanceMatrix) -> Self {
        let n = dm.n();
        let p = n * n.saturating_sub(1) / 2;
        let mut bits = FixedBitSet::with_capacity(p * p);
        for (r, (u, v)) in all_pairs(n).enumerate() {
            let res: Vec<bool> = (1..=n).map(|w| resolves(dm, w, u, v)).collect();
            for (c, (i, j)) in all_pairs(n).enumerate() {
                if res[i - 1] && res[j - 1] {
                    bits.insert(r * p + c);
                }
            }
        }
        Self { n, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `A[(u,v),(i,j)]` with `u < v` and `i < j`.
    pub fn get(&self, (u, v): (Vertex, Vertex), (i, j): (Vertex, Vertex)) -> bool {
        let p = self.n * (self.n - 1) / 2;
        self.bits
            .contains(pair_index(self.n, u, v) * p + pair_index(self.n, i, j))
    }
}

/// Rows are edges `(u, v)`, `u < v`; columns are vertices.
#[derive(Debug, Clone)]
pub struct LmdCoefficientMatrix {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    bits: FixedBitSet,
}

impl LmdCoefficientMatrix {
    pub fn new(g: &Graph, dm: &DistanceMatrix) -> Self {
        let n = g.n();
        let edges = g.edges().to_vec();
        let mut bits = FixedBitSet::with_capacity(edges.len() * n);
        for (r, &(u, v)) in edges.iter().enumerate() {
            for i in 1..=n {
                if dm.get(u, i) != dm.get(v, i) {
                    bits.insert(r * n + i - 1);
                }
            }
        }
        Self { n, edges, bits }
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// `A[(u,v),i]`; `None` when `(u, v)` is not an edge.
    pub fn get(&self, edge: (Vertex, Vertex), i: Vertex) -> Option<bool> {
        let r = self.edges.binary_search(&edge).ok()?;
        Some(self.bits.contains(r * self.n + i - 1))
    }
}

/// Fault-tolerant model: variables `x_1..x_n` then `y_i_j` for `i < j`.
///
/// Rows, in order: one cover row per vertex pair, then `2 y_ij - x_i - x_j
/// <= 0` for every index pair, then `x_i + x_j - y_ij <= 1`.
pub fn build_ftmd_model(g: &Graph, dm: &DistanceMatrix) -> Result<BinaryProgram, ModelError> {
    let n = g.n();
    if n < 2 {
        return Err(ModelError::TrivialGraph);
    }
    let a = FtmdCoefficientMatrix::new(dm);
    let pairs: Vec<(usize, usize)> = all_pairs(n).collect();
    let y = |i: usize, j: usize| n + pair_index(n, i, j);

    let mut vars: Vec<String> = (1..=n).map(|i| format!("x_{i}")).collect();
    vars.extend(pairs.iter().map(|(i, j)| format!("y_{i}_{j}")));
    let mut objective = vec![1; n];
    objective.resize(vars.len(), 0);

    let mut constraints = Vec::with_capacity(3 * pairs.len());
    for &(u, v) in &pairs {
        let terms = pairs
            .iter()
            .filter(|&&(i, j)| a.get((u, v), (i, j)))
            .map(|&(i, j)| (y(i, j), 1))
            .collect();
        constraints.push(Constraint {
            name: format!("cover_{u}_{v}"),
            terms,
            relation: Relation::Ge,
            rhs: 1,
        });
    }
    for &(i, j) in &pairs {
        constraints.push(Constraint {
            name: format!("upper_{i}_{j}"),
            terms: vec![(i - 1, -1), (j - 1, -1), (y(i, j), 2)],
            relation: Relation::Le,
            rhs: 0,
        });
    }
    for &(i, j) in &pairs {
        constraints.push(Constraint {
            name: format!("lower_{i}_{j}"),
            terms: vec![(i - 1, 1), (j - 1, 1), (y(i, j), -1)],
            relation: Relation::Le,
            rhs: 1,
        });
    }
    Ok(BinaryProgram {
        kind: ModelKind::Ftmd,
        graph_id: g.name().to_owned(),
        vars,
        objective,
        constraints,
    })
}

/// Local model: variables `x_1..x_n`, one cover row per edge.
pub fn build_lmd_model(g: &Graph, dm: &DistanceMatrix) -> Result<BinaryProgram, ModelError> {
    let n = g.n();
    if n < 2 {
        return Err(ModelError::TrivialGraph);
    }
    let a = LmdCoefficientMatrix::new(g, dm);
    let constraints = a
        .edges()
        .iter()
        .enumerate()
        .map(|(r, &(u, v))| Constraint {
            name: format!("edge_{u}_{v}"),
            terms: (0..n).filter(|&i| a.bits.contains(r * n + i)).map(|i| (i, 1)).collect(),
            relation: Relation::Ge,
            rhs: 1,
        })
        .collect();
    Ok(BinaryProgram {
        kind: ModelKind::Lmd,
        graph_id: g.name().to_owned(),
        vars: (1..=n).map(|i| format!("x_{i}")).collect(),
        objective: vec![1; n],
        constraints,
    })
}
