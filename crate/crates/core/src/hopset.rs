//! Hopsets: weighted shortcut edges that make every distance reachable with
//! few hops.
//!
//! An (eps, beta)-hopset H for G guarantees, for every pair u,v,
//!
//! ```text
//! d_G(u,v) <= d_{G∪H}^{(beta)}(u,v) <= (1+eps) * d_G(u,v)
//! ```
//!
//! where the middle term is the beta-hop-bounded distance. Construction uses
//! a Thorup-Zwick sampling hierarchy with exact distances: levels
//! V = A_0 ⊇ A_1 ⊇ ... ⊇ A_kappa = ∅ sampled with per-level probability
//! n^(-1/kappa); every vertex gains edges to its per-level pivots and to all
//! bunch members, weighted by exact distance and carrying the realizing
//! shortest path. The hop bound is not taken from a formula: the smallest
//! beta that verifies is found by doubling search and recorded on the hopset.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{self, ShortestPathTree, VertexId, WeightedGraph};
use crate::matrix::Dist;
use crate::{Error, Ratio, Result};

/// A shortcut edge with its realizing path in the base graph. The weight is
/// the exact base-graph distance and equals the stored path's length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopsetEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: u64,
    /// Shortest u-v path in the base graph, endpoints included.
    pub path: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct Hopset {
    edges: Vec<HopsetEdge>,
    kappa: u32,
    beta_bound: u32,
}

impl Hopset {
    pub fn from_parts(edges: Vec<HopsetEdge>, kappa: u32, beta_bound: u32) -> Hopset {
        assert!(beta_bound >= 1);
        Hopset { edges, kappa, beta_bound }
    }

    pub fn edges(&self) -> &[HopsetEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// Verified hop bound for the epsilon the hopset was built with.
    pub fn beta_bound(&self) -> u32 {
        self.beta_bound
    }

    /// Realizing path for edge (u,v), oriented u -> v.
    pub fn path_for(&self, u: VertexId, v: VertexId) -> Option<Vec<VertexId>> {
        for e in &self.edges {
            if e.u == u && e.v == v {
                return Some(e.path.clone());
            }
            if e.u == v && e.v == u {
                let mut p = e.path.clone();
                p.reverse();
                return Some(p);
            }
        }
        None
    }

    /// Serialize to the edge-list format extended with a path column:
    /// `u v w p0>p1>...>pk`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.edges.len());
        for e in &self.edges {
            let path: Vec<String> = e.path.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("{} {} {} {}\n", e.u, e.v, e.w, path.join(">")));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Hopset> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let count: usize = lines
            .next()
            .ok_or_else(|| Error::GraphFormat("empty hopset file".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::GraphFormat(format!("bad edge count: {e}")))?;
        let mut edges = Vec::with_capacity(count);
        for _ in 0..count {
            let line = lines.next().ok_or_else(|| Error::GraphFormat("missing hopset edge".into()))?;
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<u64> {
                tok.ok_or_else(|| Error::GraphFormat("short hopset line".into()))?
                    .parse()
                    .map_err(|e| Error::GraphFormat(format!("bad hopset field: {e}")))
            };
            let u = parse(it.next())? as usize;
            let v = parse(it.next())? as usize;
            let w = parse(it.next())?;
            let path = it
                .next()
                .ok_or_else(|| Error::GraphFormat("missing path column".into()))?
                .split('>')
                .map(|s| s.parse::<usize>().map_err(|e| Error::GraphFormat(format!("bad path vertex: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            edges.push(HopsetEdge { u, v, w, path });
        }
        Ok(Hopset { edges, kappa: 0, beta_bound: 1 })
    }
}

/// Verification outcome over all (or sampled) pairs.
#[derive(Clone, Debug)]
pub struct HopsetReport {
    /// max over checked pairs of d^(beta)/d_G - 1; infinite if some pair in
    /// the same component cannot be reached within beta hops.
    pub eps_measured: f64,
    pub size: usize,
    pub beta_used: u32,
    /// Pairs exceeding the exact (1+eps) bound, including unreachable ones.
    pub stretch_violations: usize,
    /// Pairs where the hop-bounded distance dips below the true distance;
    /// must always be zero since shortcuts never undercut true distances.
    pub lower_bound_violations: usize,
}

impl HopsetReport {
    pub fn passes(&self) -> bool {
        self.stretch_violations == 0 && self.lower_bound_violations == 0
    }
}

/// Construction parameters.
#[derive(Clone, Copy, Debug)]
pub struct HopsetConfig {
    pub kappa: u32,
    pub eps: Ratio,
    pub seed: u64,
    /// Constant C of the size bound C * n^(1+1/kappa) * log2 n.
    pub size_constant: f64,
    /// Construction retries (advancing the seed) before giving up.
    pub max_attempts: u32,
}

impl HopsetConfig {
    pub fn new(kappa: u32, eps: Ratio, seed: u64) -> HopsetConfig {
        HopsetConfig { kappa, eps, seed, size_constant: SIZE_CONSTANT, max_attempts: 16 }
    }
}

/// Documented constant of the size bound; see the repo readme.
pub const SIZE_CONSTANT: f64 = 2.0;

/// Size bound C * n^(1+1/kappa) * log2 n (at least n so tiny graphs are not
/// rejected spuriously).
pub fn size_bound(n: usize, kappa: u32, c: f64) -> f64 {
    let nf = n as f64;
    (c * nf.powf(1.0 + 1.0 / kappa as f64) * nf.log2().max(1.0)).max(nf)
}

/// Hop-bound cap (2*ceil(kappa/eps) + 1)^kappa used as the construction
/// acceptance ceiling.
pub fn beta_cap(kappa: u32, eps: Ratio) -> u64 {
    let ratio = (u128::from(kappa) * u128::from(*eps.denom())).div_ceil(u128::from(*eps.numer()));
    let base = 2u128 * ratio + 1;
    let mut cap = 1u128;
    for _ in 0..kappa {
        cap = cap.saturating_mul(base);
        if cap > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    cap as u64
}

fn validate_eps(eps: Ratio) -> Result<()> {
    if *eps.numer() == 0 || eps >= Ratio::new(1, 1) {
        return Err(Error::InvalidParameter(format!("eps must be in (0,1), got {eps}")));
    }
    Ok(())
}

/// Build an (eps, beta)-hopset; beta comes out in `beta_bound`, verified
/// against the exact oracle during construction.
pub fn build_hopset(g: &WeightedGraph, config: &HopsetConfig) -> Result<Hopset> {
    if g.directed() {
        return Err(Error::DirectedUnsupported);
    }
    if config.kappa < 1 {
        return Err(Error::InvalidParameter("kappa must be >= 1".into()));
    }
    validate_eps(config.eps)?;

    let trees: Vec<ShortestPathTree> =
        (0..g.n()).map(|s| graph::dijkstra_tree(g, s)).collect::<Result<Vec<_>>>()?;
    let bound = size_bound(g.n(), config.kappa, config.size_constant);
    let cap = beta_cap(config.kappa, config.eps);

    let mut last_reason = String::new();
    for attempt in 0..config.max_attempts {
        let edges = sample_hierarchy_edges(g, &trees, config.kappa, config.seed.wrapping_add(attempt as u64));
        if (edges.len() as f64) > bound {
            last_reason = format!("size {} exceeds bound {bound:.1}", edges.len());
            continue;
        }
        let mut h = Hopset { edges, kappa: config.kappa, beta_bound: 1 };
        let beta = smallest_verified_beta(g, &h, config.eps, &trees);
        if u64::from(beta) > cap {
            last_reason = format!("verified beta {beta} exceeds cap {cap}");
            continue;
        }
        h.beta_bound = beta;
        return Ok(h);
    }
    Err(Error::HopsetConstruction { attempts: config.max_attempts, reason: last_reason })
}

/// TZ-style sampling hierarchy: pivot and bunch edges with exact distances.
fn sample_hierarchy_edges(
    g: &WeightedGraph,
    trees: &[ShortestPathTree],
    kappa: u32,
    seed: u64,
) -> Vec<HopsetEdge> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = (n.max(2) as f64).powf(-1.0 / kappa as f64);

    // levels[i][v] = v in A_i; A_0 = V, A_kappa = empty (implicit)
    let mut levels: Vec<Vec<bool>> = vec![vec![true; n]];
    for _ in 1..kappa {
        let prev = levels.last().unwrap();
        let next: Vec<bool> = prev.iter().map(|&in_prev| in_prev && rng.gen_bool(p)).collect();
        levels.push(next);
    }

    let mut pairs = std::collections::BTreeSet::new();
    for u in 0..n {
        let dist_u = &trees[u].dist;
        // d(u, A_i) and the lexicographically smallest realizing pivot
        let mut pivot_dist = vec![Dist::INF; kappa as usize + 1];
        let mut pivot = vec![None; kappa as usize + 1];
        for i in 0..kappa as usize {
            for v in 0..n {
                if levels[i][v] && dist_u[v] < pivot_dist[i] {
                    pivot_dist[i] = dist_u[v];
                    pivot[i] = Some(v);
                }
            }
        }
        for i in 1..kappa as usize {
            if let Some(pv) = pivot[i] {
                if pv != u {
                    pairs.insert((u.min(pv), u.max(pv)));
                }
            }
        }
        // bunch: v in A_i \ A_{i+1} with d(u,v) strictly below d(u, A_{i+1})
        for i in 0..kappa as usize {
            for v in 0..n {
                if v == u || !levels[i][v] {
                    continue;
                }
                let promoted = i + 1 < kappa as usize && levels[i + 1][v];
                if promoted {
                    continue;
                }
                if dist_u[v] < pivot_dist[i + 1] {
                    pairs.insert((u.min(v), u.max(v)));
                }
            }
        }
    }

    pairs
        .into_iter()
        .map(|(a, b)| {
            let path = trees[a].path_to(b).expect("bunch member must be reachable");
            HopsetEdge { u: a, v: b, w: trees[a].dist[b].unwrap(), path }
        })
        .collect()
}

/// Smallest beta for which the hopset verifies at eps, by doubling then
/// binary refinement; always terminates because beta = n-1 verifies exactly.
fn smallest_verified_beta(g: &WeightedGraph, h: &Hopset, eps: Ratio, trees: &[ShortestPathTree]) -> u32 {
    let n = g.n();
    let max_beta = (n.saturating_sub(1)).max(1) as u32;
    let passes = |beta: u32| verify_against_trees(g, h, eps, beta, trees).passes();

    let mut beta = 1u32;
    while beta < max_beta && !passes(beta) {
        beta = (beta * 2).min(max_beta);
    }
    let mut lo = (beta / 2).max(1);
    let mut hi = beta;
    // invariant: hi passes (or is max_beta, which always passes), lo/2 range unknown
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if passes(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    hi
}

fn verify_against_trees(
    g: &WeightedGraph,
    h: &Hopset,
    eps: Ratio,
    beta: u32,
    trees: &[ShortestPathTree],
) -> HopsetReport {
    let n = g.n();
    let arcs = graph::union_arcs(g, Some(h));
    let mut report = HopsetReport {
        eps_measured: 0.0,
        size: h.len(),
        beta_used: beta,
        stretch_violations: 0,
        lower_bound_violations: 0,
    };
    let (num, den) = (*eps.numer(), *eps.denom());
    let sources: Vec<usize> = if n <= 512 {
        (0..n).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..512).map(|_| rng.gen_range(0..n)).collect()
    };
    for &src in &sources {
        let bounded = graph::bounded_bellman_ford(n, &arcs, src, beta);
        let exact = &trees[src].dist;
        for v in 0..n {
            match (exact[v].val(), bounded[v].val()) {
                (None, None) => {}
                (None, Some(_)) => report.lower_bound_violations += 1,
                (Some(d), None) => {
                    debug_assert!(d > 0 || v == src);
                    report.eps_measured = f64::INFINITY;
                    report.stretch_violations += 1;
                }
                (Some(d), Some(b)) => {
                    if b < d {
                        report.lower_bound_violations += 1;
                    }
                    if d > 0 {
                        report.eps_measured = report.eps_measured.max(b as f64 / d as f64 - 1.0);
                        // exact check of b <= (1+eps) d, i.e. b*den <= d*(den+num)
                        if u128::from(b) * u128::from(den) > u128::from(d) * u128::from(den + num) {
                            report.stretch_violations += 1;
                        }
                    }
                }
            }
        }
    }
    report
}

/// Check Eq-style hopset property at the given eps and beta over all pairs
/// (sampled above 512 vertices).
pub fn verify_hopset(g: &WeightedGraph, h: &Hopset, eps: Ratio, beta: u32) -> Result<HopsetReport> {
    if beta < 1 {
        return Err(Error::InvalidParameter("beta must be >= 1".into()));
    }
    validate_eps(eps)?;
    let trees: Vec<ShortestPathTree> =
        (0..g.n()).map(|s| graph::dijkstra_tree(g, s)).collect::<Result<Vec<_>>>()?;
    Ok(verify_against_trees(g, h, eps, beta, &trees))
}

/// Smallest verified hop bound of an existing hopset for a queried eps.
pub fn beta_for(g: &WeightedGraph, h: &Hopset, eps: Ratio) -> Result<u32> {
    validate_eps(eps)?;
    let trees: Vec<ShortestPathTree> =
        (0..g.n()).map(|s| graph::dijkstra_tree(g, s)).collect::<Result<Vec<_>>>()?;
    Ok(smallest_verified_beta(g, h, eps, &trees))
}

/// The all-pairs exact-distance hopset: a (0,1)-hopset used as the pipeline
/// fixture.
pub fn oracle_hopset(g: &WeightedGraph) -> Result<Hopset> {
    if g.directed() {
        return Err(Error::DirectedUnsupported);
    }
    let mut edges = Vec::new();
    for u in 0..g.n() {
        let tree = graph::dijkstra_tree(g, u)?;
        for v in (u + 1)..g.n() {
            if let Some(d) = tree.dist[v].val() {
                let path = tree.path_to(v).expect("finite distance has a tree path");
                edges.push(HopsetEdge { u, v, w: d, path });
            }
        }
    }
    Ok(Hopset { edges, kappa: 1, beta_bound: 1 })
}
