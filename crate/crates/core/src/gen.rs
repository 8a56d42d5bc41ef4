//! Seeded graph generators; the same seed always yields the same graph.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{DuplicatePolicy, WeightedGraph};
use crate::{Error, Result};

fn weight(rng: &mut ChaCha8Rng, max_w: u64) -> u64 {
    if max_w <= 1 {
        1
    } else {
        rng.gen_range(1..=max_w)
    }
}

/// Cycle 0-1-...-(n-1)-0 with weights uniform in 1..=max_w.
pub fn cycle(n: usize, directed: bool, max_w: u64, seed: u64) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, weight(&mut rng, max_w))).collect();
    WeightedGraph::from_edges(n, directed, edges, DuplicatePolicy::Reject)
}

/// Axis-aligned grid of rows x cols vertices.
pub fn grid(rows: usize, cols: usize, max_w: u64, seed: u64) -> Result<WeightedGraph> {
    if rows < 1 || cols < 1 || rows * cols < 2 {
        return Err(Error::InvalidParameter("grid needs at least two vertices".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), weight(&mut rng, max_w)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), weight(&mut rng, max_w)));
            }
        }
    }
    WeightedGraph::from_edges(rows * cols, false, edges, DuplicatePolicy::Reject)
}

/// Erdos-Renyi G(n,p); each (ordered for directed, unordered otherwise) pair
/// is an edge independently with probability p.
pub fn gnp(n: usize, p: f64, directed: bool, max_w: u64, seed: u64) -> Result<WeightedGraph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter("p must be in [0,1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push((u, v, weight(&mut rng, max_w)));
            }
        }
    }
    WeightedGraph::from_edges(n, directed, edges, DuplicatePolicy::Reject)
}

/// Connected undirected graph: a uniform random spanning tree plus G(n,p)
/// extras.
pub fn gnp_connected(n: usize, p: f64, max_w: u64, seed: u64) -> Result<WeightedGraph> {
    if n < 1 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        present.insert((u, v));
        edges.push((u, v, weight(&mut rng, max_w)));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) && !present.contains(&(u, v)) {
                present.insert((u, v));
                edges.push((u, v, weight(&mut rng, max_w)));
            }
        }
    }
    WeightedGraph::from_edges(n, false, edges, DuplicatePolicy::Reject)
}

/// Strongly connected digraph: a directed Hamiltonian cycle plus random arcs.
pub fn digraph_strong(n: usize, p: f64, max_w: u64, seed: u64) -> Result<WeightedGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter("need n >= 3".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        present.insert((i, j));
        edges.push((i, j, weight(&mut rng, max_w)));
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) && !present.contains(&(u, v)) {
                present.insert((u, v));
                edges.push((u, v, weight(&mut rng, max_w)));
            }
        }
    }
    WeightedGraph::from_edges(n, true, edges, DuplicatePolicy::Reject)
}
