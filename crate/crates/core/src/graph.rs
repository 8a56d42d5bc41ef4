//! Weighted graphs, the text file format, and the exact distance oracles.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::path::Path;

use crate::hopset::Hopset;
use crate::matrix::{Dist, DistMatrix};
use crate::{Error, Result};

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: u64,
}

/// How loaders treat a repeated (u,v) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DuplicatePolicy {
    /// Reject the input.
    #[default]
    Reject,
    /// Keep the lighter of the duplicates.
    KeepMin,
}

/// Graph with positive integer weights, directed or undirected.
///
/// Vertex ids are dense 0-based integers. Undirected graphs store each edge
/// once with symmetric semantics; self-loops are rejected.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    directed: bool,
    edges: Vec<Edge>,
    adj: Vec<Vec<(VertexId, u64)>>,
    max_weight: u64,
}

impl WeightedGraph {
    pub fn from_edges(
        n: usize,
        directed: bool,
        raw: impl IntoIterator<Item = (VertexId, VertexId, u64)>,
        policy: DuplicatePolicy,
    ) -> Result<WeightedGraph> {
        let mut seen = std::collections::HashMap::new();
        let mut edges: Vec<Edge> = Vec::new();
        for (u, v, w) in raw {
            if u >= n {
                return Err(Error::InvalidVertex { id: u, n });
            }
            if v >= n {
                return Err(Error::InvalidVertex { id: v, n });
            }
            if u == v {
                return Err(Error::InvalidEdge { u, v, w, reason: "self-loop".into() });
            }
            if w < 1 {
                return Err(Error::InvalidEdge { u, v, w, reason: "weight must be positive".into() });
            }
            let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
            match seen.entry(key) {
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(edges.len());
                    edges.push(Edge { u, v, w });
                }
                std::collections::hash_map::Entry::Occupied(e) => match policy {
                    DuplicatePolicy::Reject => return Err(Error::DuplicateEdge { u, v }),
                    DuplicatePolicy::KeepMin => {
                        let idx = *e.get();
                        if w < edges[idx].w {
                            edges[idx].w = w;
                        }
                    }
                },
            }
        }
        let mut adj = vec![Vec::new(); n];
        for e in &edges {
            adj[e.u].push((e.v, e.w));
            if !directed {
                adj[e.v].push((e.u, e.w));
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let max_weight = edges.iter().map(|e| e.w).max().unwrap_or(1);
        Ok(WeightedGraph { n, directed, edges, adj, max_weight })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, u: VertexId) -> &[(VertexId, u64)] {
        &self.adj[u]
    }

    /// Maximum edge weight M (1 for edgeless graphs).
    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    /// Checks the polynomial weight-bound convention `M <= max(n,2)^c`.
    pub fn weights_poly_bounded(&self, c: u32) -> bool {
        let base = (self.n.max(2)) as u64;
        match base.checked_pow(c) {
            Some(limit) => self.max_weight <= limit,
            None => true,
        }
    }

    /// Parse the text format: first line `n m directed(0/1)`, then `m` lines
    /// `u v w`.
    pub fn parse(text: &str, policy: DuplicatePolicy) -> Result<WeightedGraph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::GraphFormat("empty graph file".into()))?;
        let mut it = header.split_whitespace();
        let n: usize = next_field(&mut it, "n")?;
        let m: usize = next_field(&mut it, "m")?;
        let dflag: u8 = next_field(&mut it, "directed")?;
        if dflag > 1 {
            return Err(Error::GraphFormat("directed flag must be 0 or 1".into()));
        }
        let mut raw = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines.next().ok_or_else(|| Error::GraphFormat("missing edge line".into()))?;
            let mut it = line.split_whitespace();
            let u: usize = next_field(&mut it, "u")?;
            let v: usize = next_field(&mut it, "v")?;
            let w: u64 = next_field(&mut it, "w")?;
            raw.push((u, v, w));
        }
        if lines.next().is_some() {
            return Err(Error::GraphFormat("trailing lines after edge list".into()));
        }
        WeightedGraph::from_edges(n, dflag == 1, raw, policy)
    }

    pub fn load(path: &Path, policy: DuplicatePolicy) -> Result<WeightedGraph> {
        WeightedGraph::parse(&std::fs::read_to_string(path)?, policy)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.n, self.edges.len(), u8::from(self.directed));
        for e in &self.edges {
            out.push_str(&format!("{} {} {}\n", e.u, e.v, e.w));
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn next_field<T: std::str::FromStr>(it: &mut std::str::SplitWhitespace<'_>, name: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let tok = it.next().ok_or_else(|| Error::GraphFormat(format!("missing field {name}")))?;
    tok.parse().map_err(|e| Error::GraphFormat(format!("bad field {name}={tok:?}: {e}")))
}

/// Shortest-path tree rooted at a source: exact distances plus parents.
#[derive(Clone, Debug)]
pub struct ShortestPathTree {
    pub src: VertexId,
    pub dist: Vec<Dist>,
    pub parent: Vec<Option<VertexId>>,
}

impl ShortestPathTree {
    /// Path from the root to `v` along tree parents.
    pub fn path_to(&self, v: VertexId) -> Option<Vec<VertexId>> {
        self.dist[v].val()?;
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        debug_assert_eq!(path[0], self.src);
        Some(path)
    }
}

/// Dijkstra from `src`; ties broken toward smaller vertex id so the tree is
/// deterministic.
pub fn dijkstra_tree(g: &WeightedGraph, src: VertexId) -> Result<ShortestPathTree> {
    if src >= g.n() {
        return Err(Error::InvalidVertex { id: src, n: g.n() });
    }
    let mut dist = vec![Dist::INF; g.n()];
    let mut parent = vec![None; g.n()];
    let mut heap = BinaryHeap::new();
    dist[src] = Dist::ZERO;
    heap.push(Reverse((Dist::ZERO, src)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in g.neighbors(u) {
            let nd = d + Dist::fin(w);
            if nd < dist[v] {
                dist[v] = nd;
                parent[v] = Some(u);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    Ok(ShortestPathTree { src, dist, parent })
}

/// Exact single-source distances as a 1xn matrix.
pub fn dijkstra(g: &WeightedGraph, src: VertexId) -> Result<DistMatrix> {
    let tree = dijkstra_tree(g, src)?;
    let mut m = DistMatrix::new(vec![src], (0..g.n()).collect());
    for (j, d) in tree.dist.iter().enumerate() {
        m.set(0, j, *d);
    }
    Ok(m)
}

/// All-pairs exact distances via one Dijkstra per source.
pub fn all_pairs(g: &WeightedGraph) -> Result<Vec<Vec<Dist>>> {
    (0..g.n()).map(|s| Ok(dijkstra_tree(g, s)?.dist)).collect()
}

/// Adjacency matrix of `G ∪ H` with zero diagonal; parallel edges collapse to
/// the minimum weight.
pub fn adjacency_matrix(g: &WeightedGraph, extra: Option<&Hopset>) -> Result<DistMatrix> {
    let n = g.n();
    let mut a = DistMatrix::identity(n);
    let mut relax = |u: usize, v: usize, w: u64| {
        let d = Dist::fin(w);
        if d < a.get(u, v) {
            a.set(u, v, d);
        }
    };
    for e in g.edges() {
        relax(e.u, e.v, e.w);
        if !g.directed() {
            relax(e.v, e.u, e.w);
        }
    }
    if let Some(h) = extra {
        for e in h.edges() {
            if e.u >= n {
                return Err(Error::InvalidVertex { id: e.u, n });
            }
            if e.v >= n {
                return Err(Error::InvalidVertex { id: e.v, n });
            }
            relax(e.u, e.v, e.w);
            relax(e.v, e.u, e.w);
        }
    }
    Ok(a)
}

/// Directed arc list of `G ∪ H` (undirected edges expand to both arcs).
pub fn union_arcs(g: &WeightedGraph, extra: Option<&Hopset>) -> Vec<Edge> {
    let mut arcs = Vec::with_capacity(g.edges().len() * 2);
    for e in g.edges() {
        arcs.push(*e);
        if !g.directed() {
            arcs.push(Edge { u: e.v, v: e.u, w: e.w });
        }
    }
    if let Some(h) = extra {
        for e in h.edges() {
            arcs.push(Edge { u: e.u, v: e.v, w: e.w });
            arcs.push(Edge { u: e.v, v: e.u, w: e.w });
        }
    }
    arcs
}

/// Hop-bounded distances d^(beta)(src, ·) over a directed arc list: the
/// length of the shortest path using at most `beta` edges.
pub fn bounded_bellman_ford(n: usize, arcs: &[Edge], src: VertexId, beta: u32) -> Vec<Dist> {
    let mut dist = vec![Dist::INF; n];
    dist[src] = Dist::ZERO;
    let mut next = dist.clone();
    for _ in 0..beta {
        let mut changed = false;
        for e in arcs {
            if let Some(du) = dist[e.u].val() {
                let cand = Dist::fin(du) + Dist::fin(e.w);
                if cand < next[e.v] {
                    next[e.v] = cand;
                    changed = true;
                }
            }
        }
        dist.copy_from_slice(&next);
        if !changed {
            break;
        }
    }
    dist
}

/// Convenience wrapper producing the 1xn matrix form.
pub fn bounded_bellman_ford_row(
    g: &WeightedGraph,
    extra: Option<&Hopset>,
    src: VertexId,
    beta: u32,
) -> Result<DistMatrix> {
    if src >= g.n() {
        return Err(Error::InvalidVertex { id: src, n: g.n() });
    }
    let arcs = union_arcs(g, extra);
    let dist = bounded_bellman_ford(g.n(), &arcs, src, beta);
    let mut m = DistMatrix::new(vec![src], (0..g.n()).collect());
    for (j, d) in dist.iter().enumerate() {
        m.set(0, j, *d);
    }
    Ok(m)
}

/// A walk in the base graph together with its total weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathResult {
    pub vertices: Vec<VertexId>,
    pub length: u64,
}

impl PathResult {
    /// Validate against `g`: consecutive vertices joined by an edge whose
    /// weights sum to `length`.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::GraphFormat("empty path".into()));
        }
        let mut total = 0u64;
        for win in self.vertices.windows(2) {
            let (u, v) = (win[0], win[1]);
            let w = g
                .neighbors(u)
                .iter()
                .filter(|(x, _)| *x == v)
                .map(|(_, w)| *w)
                .min()
                .ok_or(Error::NoPath { u, v })?;
            total += w;
        }
        if total != self.length {
            return Err(Error::GraphFormat(format!(
                "path length {} does not match edge sum {total}",
                self.length
            )));
        }
        Ok(())
    }

    /// Remove cycles from the walk, recomputing the length; never lengthens.
    pub fn simplify(mut self, g: &WeightedGraph) -> PathResult {
        loop {
            let mut first_seen = std::collections::HashMap::new();
            let mut cut = None;
            for (idx, &v) in self.vertices.iter().enumerate() {
                if let Some(&prev) = first_seen.get(&v) {
                    cut = Some((prev, idx));
                    break;
                }
                first_seen.insert(v, idx);
            }
            match cut {
                Some((a, b)) => {
                    self.vertices.drain(a..b);
                }
                None => break,
            }
        }
        let mut total = 0u64;
        for win in self.vertices.windows(2) {
            let (u, v) = (win[0], win[1]);
            let w = g
                .neighbors(u)
                .iter()
                .filter(|(x, _)| *x == v)
                .map(|(_, w)| *w)
                .min()
                .expect("simplify on invalid walk");
            total += w;
        }
        self.length = total;
        self
    }
}
