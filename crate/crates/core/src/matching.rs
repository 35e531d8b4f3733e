//! Maximum cardinality matching in general graphs (Edmonds' blossom
//! algorithm, BFS formulation with base contraction).

const NONE: usize = usize::MAX;

/// Returns a maximum matching of the graph on vertices `0..n` as a list of
/// `(u, v)` pairs with `u < v`, sorted.
///
/// Parallel edges and self-loops in `edges` are ignored.
pub fn maximum_matching(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u != v {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }

    let mut blossom = Blossom::new(adj);
    for root in 0..n {
        if blossom.mate[root] == NONE {
            if let Some(end) = blossom.find_path(root) {
                blossom.augment(end);
            }
        }
    }

    let mut pairs: Vec<(usize, usize)> = blossom
        .mate
        .iter()
        .enumerate()
        .filter(|&(u, &v)| v != NONE && u < v)
        .map(|(u, &v)| (u, v))
        .collect();
    pairs.sort_unstable();
    pairs
}

struct Blossom {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: Vec<usize>,
}

impl Blossom {
    fn new(adj: Vec<Vec<usize>>) -> Self {
        let n = adj.len();
        Self {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: Vec::with_capacity(n),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Exhaustive maximum matching size over edge subsets.
    fn brute_force(n: usize, edges: &[(usize, usize)]) -> usize {
        fn go(i: usize, edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let skip = go(i + 1, edges, used);
            let (u, v) = edges[i];
            if u != v && !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                let take = 1 + go(i + 1, edges, used);
                used[u] = false;
                used[v] = false;
                skip.max(take)
            } else {
                skip
            }
        }
        go(0, edges, &mut vec![false; n])
    }

    fn is_matching(n: usize, edges: &[(usize, usize)], m: &[(usize, usize)]) -> bool {
        let mut used = vec![false; n];
        m.iter().all(|&(u, v)| {
            let ok = !used[u]
                && !used[v]
                && edges.iter().any(|&e| e == (u, v) || e == (v, u));
            used[u] = true;
            used[v] = true;
            ok
        })
    }

    #[test]
    fn odd_cycle_needs_blossom() {
        // 5-cycle with a pendant on vertex 0: greedy from 0 can get stuck.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)];
        assert_eq!(maximum_matching(6, &edges).len(), 3);
    }

    #[test]
    fn petersen_has_perfect_matching() {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        assert_eq!(maximum_matching(10, &edges).len(), 5);
    }

    #[test]
    fn empty_graph() {
        assert!(maximum_matching(4, &[]).is_empty());
    }

    proptest! {
        #[test]
        fn matches_brute_force(n in 1usize..9, raw in proptest::collection::vec((0usize..9, 0usize..9), 0..14)) {
            let edges: Vec<_> = raw.into_iter().filter(|&(u, v)| u < n && v < n).collect();
            let m = maximum_matching(n, &edges);
            prop_assert!(is_matching(n, &edges, &m));
            prop_assert_eq!(m.len(), brute_force(n, &edges));
        }
    }
}
