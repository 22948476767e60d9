//! Independent oracles and helpers shared by the integration suites. The
//! oracles trade speed for obviousness: plain sequential BFS over an
//! explicit distance matrix, direct path enumeration for betweenness.

#![allow(dead_code)]

use std::collections::VecDeque;
use std::path::PathBuf;

use netsens::generators::{barabasi_albert, erdos_renyi, watts_strogatz};
use netsens::graph::Graph;

/// All-pairs shortest-path distances by one BFS per source; `None` for
/// unreachable pairs. Distances follow arc direction on directed graphs.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.vertex_count();
    let mut rows = Vec::with_capacity(n);
    for source in 0..n {
        let mut dist = vec![None; n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in g.out_neighbors(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        rows.push(dist);
    }
    rows
}

/// Neighborhood function from the distance matrix: position t counts the
/// ordered pairs (self-pairs included) at distance at most t.
pub fn oracle_neighborhood_function(g: &Graph) -> Vec<f64> {
    let matrix = distance_matrix(g);
    let max_d = matrix
        .iter()
        .flatten()
        .filter_map(|d| *d)
        .max()
        .unwrap_or(0);
    let mut counts = vec![0u64; max_d + 1];
    for row in &matrix {
        for d in row.iter().flatten() {
            counts[*d] += 1;
        }
    }
    let mut cumulative = 0u64;
    counts
        .iter()
        .map(|&c| {
            cumulative += c;
            cumulative as f64
        })
        .collect()
}

/// Harmonic diameter straight from the definition: n(n-1) over the sum of
/// reciprocal pairwise distances (unreachable pairs contribute nothing).
pub fn oracle_harmonic_diameter(g: &Graph) -> f64 {
    let n = g.vertex_count();
    let mut reciprocal_sum = 0.0;
    for (u, row) in distance_matrix(g).iter().enumerate() {
        for (v, d) in row.iter().enumerate() {
            if u != v {
                if let Some(d) = d {
                    reciprocal_sum += 1.0 / *d as f64;
                }
            }
        }
    }
    if reciprocal_sum == 0.0 {
        f64::INFINITY
    } else {
        (n * (n - 1)) as f64 / reciprocal_sum
    }
}

/// Betweenness by direct enumeration: count geodesics with two BFS-based
/// path-count tables and sum pair dependencies vertex by vertex. Unordered
/// pair convention on undirected graphs (each pair counted once).
pub fn oracle_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let dist = distance_matrix(g);
    // sigma[s][v]: number of shortest s→v paths.
    let mut sigma = vec![vec![0.0f64; n]; n];
    for s in 0..n {
        sigma[s][s] = 1.0;
        // Process vertices by increasing distance from s.
        let mut order: Vec<usize> = (0..n).filter(|&v| dist[s][v].is_some()).collect();
        order.sort_by_key(|&v| dist[s][v].unwrap());
        for &v in &order {
            if v == s {
                continue;
            }
            let dv = dist[s][v].unwrap();
            let mut paths = 0.0;
            for &u in g.in_neighbors(v) {
                if dist[s][u] == Some(dv - 1) {
                    paths += sigma[s][u];
                }
            }
            sigma[s][v] = paths;
        }
    }
    let mut score = vec![0.0f64; n];
    for s in 0..n {
        for t in 0..n {
            if s == t || dist[s][t].is_none() {
                continue;
            }
            let dst = dist[s][t].unwrap();
            for (v, item) in score.iter_mut().enumerate() {
                if v == s || v == t {
                    continue;
                }
                if let (Some(dsv), Some(dvt)) = (dist[s][v], dist[v][t]) {
                    if dsv + dvt == dst {
                        *item += sigma[s][v] * sigma[v][t] / sigma[s][t];
                    }
                }
            }
        }
    }
    if !g.is_directed() {
        for item in &mut score {
            *item /= 2.0;
        }
    }
    score
}

/// A deterministic zoo of small graphs cycling through the three dissimilar
/// generator families with varying size and density.
pub fn random_test_graph(i: u64) -> Graph {
    let n = 20 + (i as usize * 17) % 181; // 20..=200
    match i % 3 {
        0 => {
            let p = 0.02 + 0.01 * (i % 9) as f64;
            erdos_renyi(n, p, 1000 + i).unwrap()
        }
        1 => {
            let l = 1 + (i as usize % 4);
            barabasi_albert(n, l, 1000 + i).unwrap()
        }
        _ => {
            let k = 1 + (i as usize % 3);
            let p_rew = 0.05 * (i % 5) as f64;
            watts_strogatz(n, k, p_rew, 1000 + i).unwrap()
        }
    }
}

/// Real-network edge list used by the data-dependent checks: looked up in
/// `NETSENS_DATA_DIR`, then in `data/` at the workspace root.
pub fn hamsterster_path() -> Option<PathBuf> {
    let mut candidates = Vec::new();
    if let Ok(dir) = std::env::var("NETSENS_DATA_DIR") {
        candidates.push(PathBuf::from(dir).join("hamsterster.txt"));
    }
    candidates.push(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/hamsterster.txt"),
    );
    candidates.into_iter().find(|p| p.exists())
}

/// Relative gap |a-b| / max(1, |b|); sound for values near zero too.
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
