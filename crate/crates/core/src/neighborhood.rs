//! The neighborhood function and the distance statistics derived from it.
//!
//! `N(t)` counts ordered vertex pairs `(u, v)` with `dist(u, v) <= t`,
//! including the `n` zero-distance self-pairs. That single convention is
//! used everywhere — also for undirected graphs, where each edge therefore
//! contributes two pairs. Ratios of distance statistics (the quantities this
//! library ultimately reports) are unaffected by the factor two, and one
//! convention means exact BFS counts and probabilistic counter estimates are
//! directly comparable.
//!
//! Everything downstream — harmonic diameter, average distance, fraction of
//! reachable pairs, shortest-path-length distributions — is computed from a
//! [`NeighborhoodFunction`], so a single BFS sweep (or counter run) per graph
//! serves all metrics.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hll;
use crate::seeds::{child_seed, mix64};

/// `N(0), N(1), ..., N(T)` for a graph with `n` vertices, where `T` is the
/// largest finite distance (the function is constant beyond `T`).
///
/// Exact values are integer pair counts stored as `f64`; approximate values
/// carry the per-`t` sample standard deviation across runs.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborhoodFunction {
    n: usize,
    values: Vec<f64>,
    approx: Option<ApproxInfo>,
}

/// Provenance of an approximated neighborhood function.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxInfo {
    pub register_exponent: u32,
    pub runs: u32,
    /// Sample standard deviation of `N(t)` across runs; zero when `runs == 1`.
    pub stddev: Vec<f64>,
}

impl NeighborhoodFunction {
    /// Vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest distance at which the function still grows.
    pub fn max_distance(&self) -> usize {
        self.values.len() - 1
    }

    /// `N(t)`, extended by its final value beyond `T`.
    pub fn value_at(&self, t: usize) -> f64 {
        let t = t.min(self.values.len() - 1);
        self.values[t]
    }

    /// `N(T)`: the number of ordered pairs at finite distance.
    pub fn final_value(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn is_exact(&self) -> bool {
        self.approx.is_none()
    }

    pub fn approx_info(&self) -> Option<&ApproxInfo> {
        self.approx.as_ref()
    }
}

/// Computes `N(t)` exactly with one BFS per source vertex.
///
/// Runtime `O(n (n + m))`; sources are swept in parallel and the per-distance
/// pair counts are summed as integers, so the result does not depend on the
/// worker count.
pub fn exact_neighborhood_function(g: &Graph) -> NeighborhoodFunction {
    let n = g.vertex_count();
    let counts = (0..n)
        .into_par_iter()
        .fold(
            || (Vec::<u64>::new(), vec![u32::MAX; n], VecDeque::new()),
            |(mut counts, mut dist, mut queue), source| {
                dist.iter_mut().for_each(|d| *d = u32::MAX);
                queue.clear();
                dist[source] = 0;
                queue.push_back(source);
                bump(&mut counts, 0);
                while let Some(u) = queue.pop_front() {
                    let du = dist[u];
                    for &v in g.out_neighbors(u) {
                        if dist[v] == u32::MAX {
                            dist[v] = du + 1;
                            bump(&mut counts, (du + 1) as usize);
                            queue.push_back(v);
                        }
                    }
                }
                (counts, dist, queue)
            },
        )
        .map(|(counts, _, _)| counts)
        .reduce(Vec::new, |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    let mut values = Vec::with_capacity(counts.len());
    let mut acc = 0u64;
    for c in counts {
        acc += c;
        values.push(acc as f64);
    }
    NeighborhoodFunction {
        n,
        values,
        approx: None,
    }
}

fn bump(counts: &mut Vec<u64>, level: usize) {
    if counts.len() <= level {
        counts.resize(level + 1, 0);
    }
    counts[level] += 1;
}

/// Estimates `N(t)` with per-vertex HyperLogLog counters.
///
/// Every vertex starts with a counter holding just itself; each iteration
/// merges the previous iteration's counters of its out-neighbors, so after
/// `t` rounds the counter for `v` describes the ball of radius `t` around
/// `v`. Iteration stops once no register changes. The reported value is the
/// mean over `runs` independently hashed runs, with the cross-run sample
/// standard deviation kept alongside.
///
/// `register_exponent` is the base-2 log of the register count per counter
/// (4..=16). Memory is `n * 2^register_exponent` bytes per concurrent run.
pub fn hyperanf(
    g: &Graph,
    register_exponent: u32,
    runs: u32,
    seed: u64,
) -> Result<NeighborhoodFunction> {
    hll::validate_register_exponent(register_exponent)?;
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be at least 1".into()));
    }
    let per_run: Vec<Vec<f64>> = (0..runs)
        .into_par_iter()
        .map(|run| hyperanf_run(g, register_exponent, child_seed(seed, &[run as u64])))
        .collect();
    let t_max = per_run.iter().map(|v| v.len() - 1).max().unwrap();
    let n_runs = runs as f64;
    let mut values = Vec::with_capacity(t_max + 1);
    let mut stddev = Vec::with_capacity(t_max + 1);
    for t in 0..=t_max {
        // Runs that stabilized early stay at their final value.
        let at = |r: &Vec<f64>| r[t.min(r.len() - 1)];
        let mean = per_run.iter().map(at).sum::<f64>() / n_runs;
        let sd = if runs > 1 {
            let ss = per_run.iter().map(|r| (at(r) - mean).powi(2)).sum::<f64>();
            (ss / (n_runs - 1.0)).sqrt()
        } else {
            0.0
        };
        values.push(mean);
        stddev.push(sd);
    }
    Ok(NeighborhoodFunction {
        n: g.vertex_count(),
        values,
        approx: Some(ApproxInfo {
            register_exponent,
            runs,
            stddev,
        }),
    })
}

fn hyperanf_run(g: &Graph, register_exponent: u32, salt: u64) -> Vec<f64> {
    let n = g.vertex_count();
    let m = 1usize << register_exponent;
    let mut prev = vec![0u8; n * m];
    for (v, row) in prev.chunks_mut(m).enumerate() {
        hll::add_hash(row, mix64(salt ^ v as u64));
    }
    let mut cur = prev.clone();
    let mut values = vec![sum_estimates(&prev, m)];
    loop {
        cur.par_chunks_mut(m).enumerate().for_each(|(v, row)| {
            row.copy_from_slice(&prev[v * m..(v + 1) * m]);
            for &w in g.out_neighbors(v) {
                hll::merge_max(row, &prev[w * m..(w + 1) * m]);
            }
        });
        if cur == prev {
            break;
        }
        values.push(sum_estimates(&cur, m));
        std::mem::swap(&mut prev, &mut cur);
    }
    values
}

fn sum_estimates(data: &[u8], m: usize) -> f64 {
    // Summed in vertex order to keep results independent of threading.
    data.chunks(m).map(hll::estimate).sum()
}

/// Harmonic diameter: `n (n - 1)` divided by the sum of reciprocal pairwise
/// distances. Unreachable pairs contribute nothing, so fragmented graphs get
/// *larger* values, and a graph with no connected pair at all gets `+inf`.
pub fn harmonic_diameter(nf: &NeighborhoodFunction) -> Result<f64> {
    let n = nf.n();
    if n < 2 {
        return Err(Error::TooFewVertices);
    }
    let mut inv_sum = 0.0;
    for t in 1..=nf.max_distance() {
        let pairs = (nf.values()[t] - nf.values()[t - 1]).max(0.0);
        inv_sum += pairs / t as f64;
    }
    if inv_sum <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((n * (n - 1)) as f64 / inv_sum)
}

/// Mean shortest-path length over ordered pairs at finite positive distance.
pub fn average_distance(nf: &NeighborhoodFunction) -> Result<f64> {
    let mut pairs_sum = 0.0;
    let mut weighted = 0.0;
    for t in 1..=nf.max_distance() {
        let pairs = (nf.values()[t] - nf.values()[t - 1]).max(0.0);
        pairs_sum += pairs;
        weighted += pairs * t as f64;
    }
    if pairs_sum <= 0.0 {
        return Err(Error::NoReachablePairs);
    }
    Ok(weighted / pairs_sum)
}

/// Fraction of the `n^2` ordered pairs at finite distance (self-pairs
/// included); 1.0 exactly when the graph is (strongly) connected.
pub fn reachable_pairs(nf: &NeighborhoodFunction) -> f64 {
    nf.final_value() / (nf.n() as f64 * nf.n() as f64)
}

/// Distribution of shortest-path lengths, i.e. the per-`t` increments of the
/// neighborhood function normalized to a probability mass function.
///
/// The support starts at `t = 1` unless `include_zero` pulls in the
/// self-pairs at distance zero. Stored densely from `t_start`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpDistribution {
    t_start: usize,
    masses: Vec<f64>,
}

impl SpDistribution {
    pub fn t_start(&self) -> usize {
        self.t_start
    }

    /// Largest distance carrying mass.
    pub fn t_end(&self) -> usize {
        self.t_start + self.masses.len() - 1
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Mass at distance `t`; zero outside the stored support.
    pub fn mass_at(&self, t: usize) -> f64 {
        if t < self.t_start {
            return 0.0;
        }
        self.masses.get(t - self.t_start).copied().unwrap_or(0.0)
    }

    /// Builds a distribution directly from per-`t` masses (used by tests and
    /// by distribution arithmetic); normalizes to sum 1.
    pub fn from_masses(t_start: usize, masses: Vec<f64>) -> Result<SpDistribution> {
        if masses.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "distribution masses must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = masses.iter().sum();
        if total <= 0.0 {
            return Err(Error::DegenerateDistribution);
        }
        Ok(SpDistribution {
            t_start,
            masses: masses.into_iter().map(|x| x / total).collect(),
        })
    }
}

/// Derives the shortest-path-length PMF from a neighborhood function.
///
/// Negative increments (possible for approximate inputs) are clamped to
/// zero. A graph with no mass on the requested support — for example, no
/// edges at all with `include_zero = false` — is degenerate.
pub fn sp_distribution(nf: &NeighborhoodFunction, include_zero: bool) -> Result<SpDistribution> {
    let t_start = usize::from(!include_zero);
    let mut masses = Vec::new();
    if include_zero {
        masses.push(nf.values()[0]);
    }
    for t in 1..=nf.max_distance() {
        masses.push((nf.values()[t] - nf.values()[t - 1]).max(0.0));
    }
    if masses.is_empty() {
        return Err(Error::DegenerateDistribution);
    }
    SpDistribution::from_masses(t_start, masses)
}
