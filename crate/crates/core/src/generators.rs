//! Small standard graph families and random connected graphs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, Vertex};

/// The path `1 - 2 - ... - n`.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
    Graph::from_edge_list(n, &edges)
        .expect("path is connected")
        .with_name(format!("P{n}"))
}

/// The cycle `1 - 2 - ... - n - 1`, `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
    Graph::from_edge_list(n, &edges)
        .expect("cycle is connected")
        .with_name(format!("C{n}"))
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(n, &edges)
        .expect("complete graph is connected")
        .with_name(format!("K{n}"))
}

/// A random connected graph: a uniformly shuffled random spanning tree plus
/// every remaining pair independently with probability `density`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Graph {
    let mut order: Vec<Vertex> = (1..=n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.push(ordered(parent, order[i]));
    }
    let mut tree = edges.clone();
    tree.sort_unstable();
    for u in 1..=n {
        for v in u + 1..=n {
            if tree.binary_search(&(u, v)).is_err() && rng.random_bool(density.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges)
        .expect("spanning tree keeps the graph connected")
        .with_name(format!("rand-n{n}-p{density:.2}"))
}

fn ordered(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}
