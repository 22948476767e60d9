//! Systematic vertex removal.
//!
//! A removal *strategy* turns a graph into a full priority order over its
//! vertices (a [`RemovalPlan`]). Applying a plan at modification level
//! `theta` deletes vertices from the front of that order until the first
//! moment at least `ceil(theta * m)` edges are gone. Keying the level to
//! *edges* rather than vertices makes damage comparable across strategies:
//! removing a few hubs may cost as many edges as removing half the
//! periphery.
//!
//! Plans are static: priorities are computed once on the intact graph and
//! never re-evaluated while vertices disappear.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::{centrality, Measure, PowerParams};
use crate::error::{Error, Result};
use crate::graph::{Graph, IdMap, VertexSet};

/// How to rank vertices for removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Strategy {
    /// Highest centrality first.
    Centrality(Measure),
    /// Community-aware order derived from label propagation.
    Lp,
    /// Seeded uniform permutation.
    Random,
}

impl Strategy {
    pub fn is_stochastic(&self) -> bool {
        matches!(self, Strategy::Lp | Strategy::Random)
    }

    /// All strategies applicable to a graph of the given directedness.
    pub fn all_for(directed: bool) -> Vec<Strategy> {
        let mut out: Vec<Strategy> = Measure::ALL
            .iter()
            .filter(|m| m.valid_for(directed))
            .map(|&m| Strategy::Centrality(m))
            .collect();
        out.push(Strategy::Lp);
        out.push(Strategy::Random);
        out
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Centrality(m) => f.write_str(m.as_str()),
            Strategy::Lp => f.write_str("lp"),
            Strategy::Random => f.write_str("random"),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "lp" => Ok(Strategy::Lp),
            "random" => Ok(Strategy::Random),
            other => other
                .parse::<Measure>()
                .map(Strategy::Centrality)
                .map_err(|_| Error::InvalidParameter(format!("unknown removal strategy {s:?}"))),
        }
    }
}

impl TryFrom<String> for Strategy {
    type Error = Error;

    fn try_from(s: String) -> Result<Strategy> {
        s.parse()
    }
}

impl From<Strategy> for String {
    fn from(s: Strategy) -> String {
        s.to_string()
    }
}

/// Fraction of edges to destroy, in `[0, 1)`. Zero removes nothing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModificationLevel(f64);

impl ModificationLevel {
    pub fn new(theta: f64) -> Result<ModificationLevel> {
        if (0.0..1.0).contains(&theta) {
            Ok(ModificationLevel(theta))
        } else {
            Err(Error::InvalidParameter(format!(
                "modification level must be in [0, 1), got {theta}"
            )))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// A complete removal order plus enough bookkeeping to apply it cheaply at
/// any modification level: `cumulative_edges[i]` is the number of edges gone
/// after deleting `order[0..=i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RemovalPlan {
    strategy: Strategy,
    seed: Option<u64>,
    order: Vec<usize>,
    /// Score that put each `order[i]` where it is; `None` for random plans.
    priorities: Option<Vec<f64>>,
    cumulative_edges: Vec<usize>,
    graph_n: usize,
    graph_m: usize,
    graph_directed: bool,
}

impl RemovalPlan {
    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Vertices in removal order (highest priority first).
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn priorities(&self) -> Option<&[f64]> {
        self.priorities.as_deref()
    }

    pub fn cumulative_edges(&self) -> &[usize] {
        &self.cumulative_edges
    }

    fn assemble(
        g: &Graph,
        strategy: Strategy,
        seed: Option<u64>,
        order: Vec<usize>,
        priorities: Option<Vec<f64>>,
    ) -> RemovalPlan {
        debug_assert_eq!(order.len(), g.vertex_count());
        let mut removed = vec![false; g.vertex_count()];
        let mut cumulative_edges = Vec::with_capacity(order.len());
        let mut total = 0usize;
        for &v in &order {
            let mut lost = g
                .out_neighbors(v)
                .iter()
                .filter(|&&w| !removed[w])
                .count();
            if g.is_directed() {
                lost += g.in_neighbors(v).iter().filter(|&&w| !removed[w]).count();
            }
            removed[v] = true;
            total += lost;
            cumulative_edges.push(total);
        }
        debug_assert_eq!(total, g.edge_count());
        RemovalPlan {
            strategy,
            seed,
            order,
            priorities,
            cumulative_edges,
            graph_n: g.vertex_count(),
            graph_m: g.edge_count(),
            graph_directed: g.is_directed(),
        }
    }
}

/// Ranks vertices by a centrality measure, highest first; equal scores fall
/// back to ascending vertex id, which makes the order fully reproducible.
pub fn centrality_removal_order(
    g: &Graph,
    measure: Measure,
    params: &PowerParams,
) -> Result<RemovalPlan> {
    let cv = centrality(g, measure, params)?;
    let scores = cv.scores();
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    let priorities = order.iter().map(|&v| scores[v]).collect();
    Ok(RemovalPlan::assemble(
        g,
        Strategy::Centrality(measure),
        None,
        order,
        Some(priorities),
    ))
}

/// Seeded uniform random permutation of the vertices.
pub fn random_removal_order(g: &Graph, seed: u64) -> RemovalPlan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..g.vertex_count()).collect();
    order.shuffle(&mut rng);
    RemovalPlan::assemble(g, Strategy::Random, Some(seed), order, None)
}

/// Default cap on label-propagation sweeps; the process almost always
/// settles in far fewer.
pub const DEFAULT_LP_MAX_ROUNDS: usize = 100;

/// Community labels produced by [`label_propagation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    pub labels: Vec<usize>,
    /// False when the sweep cap was hit before the labels settled.
    pub converged: bool,
    pub rounds: usize,
    pub seed: u64,
}

impl Labeling {
    /// Number of distinct labels.
    pub fn community_count(&self) -> usize {
        let mut seen = vec![false; self.labels.len()];
        let mut count = 0;
        for &l in &self.labels {
            if !seen[l] {
                seen[l] = true;
                count += 1;
            }
        }
        count
    }
}

/// Asynchronous label propagation.
///
/// Every vertex starts with its own label. Rounds sweep the vertices in a
/// fresh random order; each vertex adopts the label that is most frequent
/// among its neighbors, keeping its current label when that is already one
/// of the most frequent and breaking remaining ties uniformly at random.
/// The process stops after a full sweep without changes — at that point
/// every vertex's label is maximal in its neighborhood — or after
/// `max_rounds` sweeps. Arc direction is ignored; vertices without
/// neighbors keep their initial singleton label.
pub fn label_propagation(g: &Graph, seed: u64, max_rounds: usize) -> Labeling {
    let view = g.undirected_view();
    let n = view.vertex_count();
    let mut labels: Vec<usize> = (0..n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sweep: Vec<usize> = (0..n).collect();
    let mut counts = vec![0usize; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    let mut converged = false;
    let mut rounds = 0;
    while rounds < max_rounds {
        rounds += 1;
        sweep.shuffle(&mut rng);
        let mut changed = false;
        for &v in &sweep {
            let neighbors = view.out_neighbors(v);
            if neighbors.is_empty() {
                continue;
            }
            touched.clear();
            let mut max_count = 0;
            for &w in neighbors {
                let l = labels[w];
                if counts[l] == 0 {
                    touched.push(l);
                }
                counts[l] += 1;
                max_count = max_count.max(counts[l]);
            }
            if counts[labels[v]] != max_count {
                best.clear();
                best.extend(touched.iter().copied().filter(|&l| counts[l] == max_count));
                best.sort_unstable(); // insertion order depends on neighbor lists; fix it
                labels[v] = best[rng.gen_range(0..best.len())];
                changed = true;
            }
            for &l in &touched {
                counts[l] = 0;
            }
        }
        if !changed {
            converged = true;
            break;
        }
    }
    Labeling {
        labels,
        converged,
        rounds,
        seed,
    }
}

/// Turns a community labeling into a removal order that spreads damage
/// across communities.
///
/// Communities are visited round-robin, largest first (ties: smallest member
/// id). Within each community, vertices leave in order of how many
/// neighbors they have *outside* their own community — the community's
/// ambassadors go first. Remaining ties break by ascending id.
pub fn lp_removal_order(g: &Graph, labeling: &Labeling) -> Result<RemovalPlan> {
    let n = g.vertex_count();
    if labeling.labels.len() != n {
        return Err(Error::LengthMismatch {
            left: labeling.labels.len(),
            right: n,
        });
    }
    let view = g.undirected_view();
    let external = |v: usize| {
        view.out_neighbors(v)
            .iter()
            .filter(|&&w| labeling.labels[w] != labeling.labels[v])
            .count()
    };
    // Label values are arbitrary; bucket them densely. Iterating vertices in
    // ascending id keeps every bucket sorted by id.
    let mut bucket_of: HashMap<usize, usize> = HashMap::new();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for (v, &l) in labeling.labels.iter().enumerate() {
        let next = clusters.len();
        let b = *bucket_of.entry(l).or_insert(next);
        if b == next {
            clusters.push(Vec::new());
        }
        clusters[b].push(v);
    }
    for cluster in &mut clusters {
        let scores: Vec<usize> = cluster.iter().map(|&v| external(v)).collect();
        let mut ranked: Vec<usize> = (0..cluster.len()).collect();
        ranked.sort_by(|&a, &b| scores[b].cmp(&scores[a]).then(cluster[a].cmp(&cluster[b])));
        *cluster = ranked.iter().map(|&i| cluster[i]).collect();
    }
    clusters.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    let mut order = Vec::with_capacity(n);
    let mut rank = 0;
    while order.len() < n {
        for cluster in &clusters {
            if let Some(&v) = cluster.get(rank) {
                order.push(v);
            }
        }
        rank += 1;
    }
    let priorities = order.iter().map(|&v| external(v) as f64).collect();
    Ok(RemovalPlan::assemble(
        g,
        Strategy::Lp,
        Some(labeling.seed),
        order,
        Some(priorities),
    ))
}

/// Builds the plan for any strategy with one call; `seed` feeds the
/// stochastic strategies and is ignored by the centrality ones.
pub fn removal_order(
    g: &Graph,
    strategy: Strategy,
    params: &PowerParams,
    seed: u64,
    lp_max_rounds: usize,
) -> Result<RemovalPlan> {
    match strategy {
        Strategy::Centrality(m) => centrality_removal_order(g, m, params),
        Strategy::Random => Ok(random_removal_order(g, seed)),
        Strategy::Lp => {
            let labeling = label_propagation(g, seed, lp_max_rounds);
            lp_removal_order(g, &labeling)
        }
    }
}

/// What [`apply_removal`] leaves behind.
#[derive(Debug)]
pub struct RemovalOutcome {
    pub graph: Graph,
    pub id_map: IdMap,
    /// Plan prefix length that was deleted.
    pub removed_vertices: usize,
    /// Edges destroyed; always `>= ceil(theta * m)` unless `theta == 0`.
    pub removed_edges: usize,
}

/// Deletes the shortest plan prefix whose removal destroys at least
/// `ceil(theta * m)` edges of the intact graph, then returns the induced
/// subgraph on the survivors. `theta == 0` removes nothing (the result is a
/// re-indexed copy). The plan must have been built for exactly this graph.
pub fn apply_removal(
    g: &Graph,
    plan: &RemovalPlan,
    level: ModificationLevel,
) -> Result<RemovalOutcome> {
    if plan.graph_n != g.vertex_count()
        || plan.graph_m != g.edge_count()
        || plan.graph_directed != g.is_directed()
    {
        return Err(Error::PlanMismatch);
    }
    let threshold = edge_threshold(level.value(), g.edge_count());
    let mut victims = VertexSet::new(g.vertex_count());
    let mut removed_edges = 0usize;
    if threshold > 0 {
        for (i, &v) in plan.order.iter().enumerate() {
            victims.insert(v)?;
            if plan.cumulative_edges[i] >= threshold {
                removed_edges = plan.cumulative_edges[i];
                break;
            }
        }
    }
    let removed_vertices = victims.len();
    let (graph, id_map) = g.remove_vertices(&victims)?;
    Ok(RemovalOutcome {
        graph,
        id_map,
        removed_vertices,
        removed_edges,
    })
}

/// Smallest edge count that satisfies modification level `theta` on a graph
/// with `m` edges. The tiny slack absorbs floating-point noise in
/// `theta * m` when the product is meant to be an exact integer.
fn edge_threshold(theta: f64, m: usize) -> usize {
    ((theta * m as f64) - 1e-9).ceil().max(0.0) as usize
}
