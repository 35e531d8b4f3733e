use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

/// All-pairs hop distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

/// Runs one BFS per vertex.
pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    DistanceMatrix::from_graph(g)
}

impl DistanceMatrix {
    pub(crate) fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut dist = vec![u32::MAX; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for source in 1..=n {
            let row = &mut dist[(source - 1) * n..source * n];
            row[source - 1] = 0;
            queue.clear();
            queue.push_back(source);
            while let Some(u) = queue.pop_front() {
                let du = row[u - 1];
                for &w in g.neighbors(u) {
                    if row[w - 1] == u32::MAX {
                        row[w - 1] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        debug_assert!(dist.iter().all(|&d| d != u32::MAX));
        Self { n, dist }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `d(u, v)` for 1-based vertices.
    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[(u - 1) * self.n + (v - 1)]
    }

    /// Distances from `u` to every vertex, indexed by `v - 1`.
    #[inline]
    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.dist[(u - 1) * self.n..u * self.n]
    }

    pub fn eccentricity(&self, v: Vertex) -> u32 {
        self.row(v).iter().copied().max().unwrap_or(0)
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}
