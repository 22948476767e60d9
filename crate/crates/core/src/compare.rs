//! Comparing an intact graph against its vertex-removed counterpart.
//!
//! Three families of comparisons, all computed from quantities the other
//! modules already produce:
//!
//! * relative changes of scalar distance statistics (harmonic diameter,
//!   average distance, fraction of reachable pairs) — `delta_*`;
//! * divergences between the two shortest-path-length distributions
//!   (Kullback-Leibler, Jensen-Shannon distance, Hellinger distance);
//! * Spearman rank correlation between centrality scores on the intact
//!   graph and on the damaged one, aligned on the surviving vertices.
//!
//! Degenerate situations use explicit sentinels rather than silent zeros: a
//! damaged graph whose harmonic diameter diverges yields `+inf`, an
//! undefined rank correlation is an error the caller typically records as
//! missing.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::centrality::Measure;
use crate::error::{Error, Result};
use crate::neighborhood::{
    average_distance, harmonic_diameter, reachable_pairs, NeighborhoodFunction, SpDistribution,
};
use crate::removal::Strategy;

/// Relative change of the harmonic diameter: `hd(mod) / hd(base) - 1`.
///
/// Positive values mean the damaged graph's distance structure got worse
/// (longer or more fragmented). If only the damaged graph diverges the
/// result is `+inf`; a diverging *baseline* cannot be compared against and
/// is an error.
pub fn delta_harmonic(base: &NeighborhoodFunction, modified: &NeighborhoodFunction) -> Result<f64> {
    let hd_base = harmonic_diameter(base)?;
    if !hd_base.is_finite() {
        return Err(Error::InfiniteBaseline);
    }
    let hd_mod = harmonic_diameter(modified)?;
    if !hd_mod.is_finite() {
        return Ok(f64::INFINITY);
    }
    Ok(hd_mod / hd_base - 1.0)
}

/// Relative change of the mean shortest-path length over connected pairs.
/// `+inf` when the damaged graph has no connected pair left at all.
pub fn delta_avg_distance(
    base: &NeighborhoodFunction,
    modified: &NeighborhoodFunction,
) -> Result<f64> {
    let avg_base = average_distance(base)?;
    match average_distance(modified) {
        Ok(avg_mod) => Ok(avg_mod / avg_base - 1.0),
        Err(Error::NoReachablePairs) => Ok(f64::INFINITY),
        Err(e) => Err(e),
    }
}

/// Relative change of the fraction of ordered pairs at finite distance.
/// Always finite (self-pairs keep both fractions positive) and at least -1.
pub fn delta_reachable(base: &NeighborhoodFunction, modified: &NeighborhoodFunction) -> f64 {
    reachable_pairs(modified) / reachable_pairs(base) - 1.0
}

fn support_union(p: &SpDistribution, q: &SpDistribution) -> std::ops::RangeInclusive<usize> {
    p.t_start().min(q.t_start())..=p.t_end().max(q.t_end())
}

/// Kullback-Leibler divergence `KL(p || q)` in bits. `0 log(0/q) = 0`; any
/// distance where `p` has mass but `q` has none makes the divergence `+inf`.
/// Not symmetric, not a metric.
pub fn kl_divergence(p: &SpDistribution, q: &SpDistribution) -> f64 {
    let mut sum = 0.0;
    for t in support_union(p, q) {
        let pt = p.mass_at(t);
        if pt <= 0.0 {
            continue;
        }
        let qt = q.mass_at(t);
        if qt <= 0.0 {
            return f64::INFINITY;
        }
        sum += pt * (pt / qt).log2();
    }
    sum.max(0.0)
}

/// Jensen-Shannon distance: square root of the Jensen-Shannon divergence in
/// bits. Symmetric, always finite, bounded by `[0, 1]`; a metric.
pub fn jensen_shannon_distance(p: &SpDistribution, q: &SpDistribution) -> f64 {
    let mut js = 0.0;
    for t in support_union(p, q) {
        let pt = p.mass_at(t);
        let qt = q.mass_at(t);
        let mt = 0.5 * (pt + qt);
        if pt > 0.0 {
            js += 0.5 * pt * (pt / mt).log2();
        }
        if qt > 0.0 {
            js += 0.5 * qt * (qt / mt).log2();
        }
    }
    js.clamp(0.0, 1.0).sqrt()
}

/// Hellinger distance, bounded by `[0, 1]`; a metric. 1 exactly on
/// disjoint supports.
///
/// Computed as the scaled Euclidean distance between the square-root mass
/// vectors rather than via `sqrt(1 - sum(sqrt(p q)))`: the difference form
/// is exactly zero for identical distributions, where the complement form
/// would amplify rounding in the overlap sum through the outer square root.
pub fn hellinger_distance(p: &SpDistribution, q: &SpDistribution) -> f64 {
    let mut sq = 0.0;
    for t in support_union(p, q) {
        let d = p.mass_at(t).sqrt() - q.mass_at(t).sqrt();
        sq += d * d;
    }
    (0.5 * sq).sqrt().min(1.0)
}

/// Spearman rank correlation with fractional (midrank) handling of ties.
///
/// Errors when the vectors differ in length or either one is constant — a
/// correlation against a constant is undefined and should be recorded as
/// missing, not coerced to zero.
pub fn spearman_rho(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let rx = fractional_ranks(x);
    let ry = fractional_ranks(y);
    pearson(&rx, &ry)
}

/// Average rank for ties: values tied across positions `i..j` (1-based ranks)
/// all receive the mean of those ranks.
fn fractional_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[idx[j + 1]] == values[idx[i]] {
            j += 1;
        }
        // Positions i..=j (0-based) share ranks i+1..=j+1.
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = x.len() as f64;
    if x.is_empty() {
        return Err(Error::ConstantVector);
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if vx <= 0.0 || vy <= 0.0 {
        return Err(Error::ConstantVector);
    }
    Ok(cov / (vx * vy).sqrt())
}

/// Which comparison a [`SensitivityRecord`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Comparison {
    /// Relative harmonic-diameter change.
    Delta,
    DeltaAvgDist,
    DeltaReachable,
    Kl,
    Jsd,
    Hd,
    /// Spearman correlation of the given centrality across the removal.
    Rho(Measure),
}

impl Comparison {
    /// The comparisons reported by default: the scalar deltas, the three
    /// distribution divergences, and the rank correlations of the measures
    /// that are cheap on any graph. Betweenness and closeness correlations
    /// exist but must be requested explicitly.
    pub fn default_set() -> Vec<Comparison> {
        vec![
            Comparison::Delta,
            Comparison::DeltaAvgDist,
            Comparison::DeltaReachable,
            Comparison::Kl,
            Comparison::Jsd,
            Comparison::Hd,
            Comparison::Rho(Measure::Dc),
            Comparison::Rho(Measure::Ec),
            Comparison::Rho(Measure::Pr),
        ]
    }

    /// True for the rank correlations whose underlying measure needs an
    /// all-pairs computation (expensive on large damaged graphs).
    pub fn is_expensive_rank(&self) -> bool {
        matches!(
            self,
            Comparison::Rho(Measure::Bc)
                | Comparison::Rho(Measure::Cc)
                | Comparison::Rho(Measure::CcIn)
                | Comparison::Rho(Measure::CcOut)
        )
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Delta => f.write_str("delta"),
            Comparison::DeltaAvgDist => f.write_str("delta_avgdist"),
            Comparison::DeltaReachable => f.write_str("delta_reachable"),
            Comparison::Kl => f.write_str("kl"),
            Comparison::Jsd => f.write_str("jsd"),
            Comparison::Hd => f.write_str("hd"),
            Comparison::Rho(m) => write!(f, "rho_{m}"),
        }
    }
}

impl FromStr for Comparison {
    type Err = Error;

    fn from_str(s: &str) -> Result<Comparison> {
        match s {
            "delta" => Ok(Comparison::Delta),
            "delta_avgdist" => Ok(Comparison::DeltaAvgDist),
            "delta_reachable" => Ok(Comparison::DeltaReachable),
            "kl" => Ok(Comparison::Kl),
            "jsd" => Ok(Comparison::Jsd),
            "hd" => Ok(Comparison::Hd),
            other => match other.strip_prefix("rho_") {
                Some(m) => Ok(Comparison::Rho(m.parse()?)),
                None => Err(Error::InvalidParameter(format!(
                    "unknown comparison {s:?}"
                ))),
            },
        }
    }
}

impl TryFrom<String> for Comparison {
    type Error = Error;

    fn try_from(s: String) -> Result<Comparison> {
        s.parse()
    }
}

impl From<Comparison> for String {
    fn from(c: Comparison) -> String {
        c.to_string()
    }
}

/// One measured data point of an experiment: for this graph, removal
/// strategy, and modification level, the comparison came out to `value`.
/// `value` may be `+inf` (divergence sentinel) or NaN (undefined, e.g. a
/// rank correlation against a constant vector).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityRecord {
    pub graph: String,
    pub model_params: String,
    pub strategy: Strategy,
    pub theta: f64,
    pub seed: u64,
    pub comparison: Comparison,
    pub value: f64,
}
