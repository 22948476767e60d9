//! Seeded random-graph models: Erdős–Rényi, preferential attachment,
//! small-world rewiring, and a degree-sequence configuration model.
//!
//! All four produce simple undirected graphs — whatever self-loops or
//! parallel edges a model's raw process creates are dropped by the shared
//! graph constructor. Every generator is a pure function of its parameters
//! and the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Erdős–Rényi `G(n, p)`: each of the `n (n - 1) / 2` vertex pairs becomes
/// an edge independently with probability `p`.
///
/// Sparse graphs are generated with geometric jumps over the pair sequence
/// instead of one coin flip per pair, so the cost is `O(n + m)`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must be in [0, 1], got {p}"
        )));
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if p >= 1.0 {
        for v in 1..n {
            for u in 0..v {
                edges.push((u, v));
            }
        }
        return Graph::from_edges(false, n, edges);
    }
    if p > 0.0 {
        // Skip-ahead sampling: the gap to the next edge in the flattened
        // pair sequence is geometric with parameter p.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (1.0 - p).ln();
        let mut v: usize = 1;
        let mut w: i64 = -1;
        while v < n {
            let r: f64 = rng.gen();
            let gap = ((1.0 - r).ln() / log_q).floor() as i64;
            w += 1 + gap;
            while v < n && w >= v as i64 {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((w as usize, v));
            }
        }
    }
    Graph::from_edges(false, n, edges)
}

/// Preferential attachment: the graph grows from a single vertex, and each
/// newcomer attaches to `l` distinct existing vertices chosen with
/// probability proportional to their current degree.
///
/// The second vertex necessarily attaches uniformly (every degree is still
/// zero), and early arrivals attach to all existing vertices when fewer
/// than `l` are available.
pub fn barabasi_albert(n: usize, l: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if l == 0 {
        return Err(Error::InvalidParameter(
            "attachment count must be at least 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n.saturating_mul(l.min(n)));
    // One entry per edge endpoint: sampling an index uniformly is sampling
    // a vertex proportionally to its degree.
    let mut endpoints: Vec<usize> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    for t in 1..n {
        let k = l.min(t);
        chosen.clear();
        while chosen.len() < k {
            let candidate = if endpoints.is_empty() {
                rng.gen_range(0..t)
            } else {
                endpoints[rng.gen_range(0..endpoints.len())]
            };
            if !chosen.contains(&candidate) {
                chosen.push(candidate);
            }
        }
        for &target in &chosen {
            edges.push((t, target));
        }
        // Update degrees only after all k draws: attachments of one arrival
        // are decided against the same degree snapshot.
        for &target in &chosen {
            endpoints.push(target);
            endpoints.push(t);
        }
    }
    Graph::from_edges(false, n, edges)
}

/// Small-world model: a ring lattice where every vertex is joined to its `k`
/// nearest neighbors on each side, then each endpoint of each edge is
/// independently rewired to a uniformly random vertex with probability
/// `p_rew`. A fraction of roughly `1 - (1 - p_rew)^2` of the edges is
/// therefore displaced. Rewiring may produce loops or duplicate edges;
/// those are dropped, so `m <= n * k`.
pub fn watts_strogatz(n: usize, k: usize, p_rew: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if k == 0 || 2 * k >= n {
        return Err(Error::InvalidParameter(format!(
            "neighbor radius must satisfy 1 <= k < n/2, got k={k}, n={n}"
        )));
    }
    if !(0.0..=1.0).contains(&p_rew) {
        return Err(Error::InvalidParameter(format!(
            "rewiring probability must be in [0, 1], got {p_rew}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * k);
    for j in 1..=k {
        for i in 0..n {
            let mut u = i;
            let mut v = (i + j) % n;
            if rng.gen::<f64>() < p_rew {
                u = rng.gen_range(0..n);
            }
            if rng.gen::<f64>() < p_rew {
                v = rng.gen_range(0..n);
            }
            edges.push((u, v));
        }
    }
    Graph::from_edges(false, n, edges)
}

/// Configuration model: a uniform random matching of degree stubs. Vertex
/// `i` contributes `degrees[i]` stubs; the shuffled stub list is paired off
/// two at a time. Loops and multi-edges from the matching are dropped, so
/// the realized degrees can fall slightly short of the requested ones.
pub fn configuration_model(degrees: &[usize], seed: u64) -> Result<Graph> {
    if degrees.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let total: usize = degrees.iter().sum();
    if total % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "degree sequence must have an even sum, got {total}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = Vec::with_capacity(total);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat(v).take(d));
    }
    stubs.shuffle(&mut rng);
    let edges = stubs.chunks_exact(2).map(|pair| (pair[0], pair[1]));
    Graph::from_edges(false, degrees.len(), edges)
}
