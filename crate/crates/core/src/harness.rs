//! Batch experiments: take graphs (files or generator specs), damage each
//! one with every configured strategy at every modification level, compare
//! against the intact graph, and emit one flat record per measurement.
//!
//! Reproducibility contract: a config with a fixed `base_seed` produces
//! byte-identical record CSVs on every run, independent of the worker
//! count. All randomness is derived through [`crate::seeds::child_seed`]
//! from the base seed and the coordinates (graph index, repetition,
//! strategy), so re-running a subset of the work regenerates exactly the
//! records that subset produced before.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::{centrality, CentralityVector, Measure, PowerParams};
use crate::compare::{
    delta_avg_distance, delta_harmonic, delta_reachable, hellinger_distance,
    jensen_shannon_distance, kl_divergence, spearman_rho, Comparison, SensitivityRecord,
};
use crate::error::{Error, Result};
use crate::generators::{barabasi_albert, configuration_model, erdos_renyi, watts_strogatz};
use crate::graph::{load_edge_list, Graph, IdMap};
use crate::neighborhood::{
    exact_neighborhood_function, hyperanf, sp_distribution, NeighborhoodFunction, SpDistribution,
};
use crate::removal::{
    removal_order, ModificationLevel, RemovalPlan, Strategy, DEFAULT_LP_MAX_ROUNDS,
};
use crate::seeds::{child_seed, stream_id};

/// Defaults for the probabilistic neighborhood-function estimator: 1024
/// registers per counter, averaged over 10 runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperAnfParams {
    pub register_exponent: u32,
    pub runs: u32,
}

impl Default for HyperAnfParams {
    fn default() -> Self {
        HyperAnfParams {
            register_exponent: 10,
            runs: 10,
        }
    }
}

/// A generated-graph description: which model and which parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelConfig {
    Er {
        n: usize,
        p: f64,
    },
    Ba {
        n: usize,
        l: usize,
    },
    Ws {
        n: usize,
        k: usize,
        p_rew: f64,
    },
    /// Configuration model on the degree sequence of an existing edge list.
    Cf {
        degrees_from: PathBuf,
        #[serde(default)]
        directed_source: bool,
    },
}

impl ModelConfig {
    fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        match *self {
            ModelConfig::Er { n, p } => {
                if n == 0 {
                    return fail("er: n must be positive".into());
                }
                if !(0.0..=1.0).contains(&p) {
                    return fail(format!("er: p must be in [0, 1], got {p}"));
                }
            }
            ModelConfig::Ba { n, l } => {
                if n == 0 {
                    return fail("ba: n must be positive".into());
                }
                if l == 0 || l >= n {
                    return fail(format!("ba: need 1 <= l < n, got l={l}, n={n}"));
                }
            }
            ModelConfig::Ws { n, k, p_rew } => {
                if n == 0 {
                    return fail("ws: n must be positive".into());
                }
                if k == 0 || 2 * k >= n {
                    return fail(format!("ws: need 1 <= k < n/2, got k={k}, n={n}"));
                }
                if !(0.0..=1.0).contains(&p_rew) {
                    return fail(format!("ws: p_rew must be in [0, 1], got {p_rew}"));
                }
            }
            ModelConfig::Cf { .. } => {}
        }
        Ok(())
    }

    fn id(&self) -> &'static str {
        match self {
            ModelConfig::Er { .. } => "er",
            ModelConfig::Ba { .. } => "ba",
            ModelConfig::Ws { .. } => "ws",
            ModelConfig::Cf { .. } => "cf",
        }
    }

    fn params_string(&self) -> String {
        match self {
            ModelConfig::Er { n, p } => format!("n={n},p={p}"),
            ModelConfig::Ba { n, l } => format!("n={n},l={l}"),
            ModelConfig::Ws { n, k, p_rew } => format!("n={n},k={k},p_rew={p_rew}"),
            ModelConfig::Cf { degrees_from, .. } => {
                format!("degrees_from={}", file_stem(degrees_from))
            }
        }
    }
}

/// One graph entry of an experiment: either a fixed edge-list file or a
/// model regenerated fresh for every repetition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GraphSpec {
    EdgeList {
        path: PathBuf,
        #[serde(default)]
        directed: bool,
        /// Forget arc directions after loading (only valid when `directed`).
        #[serde(default)]
        symmetrize: bool,
    },
    Model {
        #[serde(flatten)]
        model: ModelConfig,
    },
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.to_string_lossy().into_owned())
}

pub const DEFAULT_THETAS: [f64; 6] = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30];

/// Graphs with at most this many vertices get the exact BFS neighborhood
/// function; larger ones fall back to the probabilistic estimator.
pub const DEFAULT_EXACTNESS_THRESHOLD: usize = 20_000;

fn default_thetas() -> Vec<f64> {
    DEFAULT_THETAS.to_vec()
}

fn default_repetitions() -> u32 {
    1
}

fn default_exactness_threshold() -> usize {
    DEFAULT_EXACTNESS_THRESHOLD
}

fn default_lp_max_rounds() -> usize {
    DEFAULT_LP_MAX_ROUNDS
}

/// Full description of an experiment. Everything except the graph list and
/// the strategy list has a sensible default, so a minimal JSON config is
/// just `{"graphs": [...], "strategies": [...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub graphs: Vec<GraphSpec>,
    pub strategies: Vec<Strategy>,
    #[serde(default = "default_thetas")]
    pub thetas: Vec<f64>,
    #[serde(default = "Comparison::default_set")]
    pub comparisons: Vec<Comparison>,
    #[serde(default = "default_repetitions")]
    pub repetitions: u32,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_exactness_threshold")]
    pub exactness_threshold: usize,
    #[serde(default)]
    pub hyperanf: HyperAnfParams,
    /// Let the shortest-path distributions carry the distance-0 self-pairs.
    #[serde(default)]
    pub include_zero_distance: bool,
    /// Unlock `rho_bc`/`rho_cc`-style comparisons, which recompute an
    /// all-pairs measure on every damaged graph.
    #[serde(default)]
    pub allow_expensive_rank_comparisons: bool,
    #[serde(default = "default_lp_max_rounds")]
    pub lp_max_rounds: usize,
    #[serde(default)]
    pub power: PowerParams,
}

impl ExperimentConfig {
    /// A config with defaults everywhere, ready to be adjusted.
    pub fn new(graphs: Vec<GraphSpec>, strategies: Vec<Strategy>) -> ExperimentConfig {
        ExperimentConfig {
            graphs,
            strategies,
            thetas: default_thetas(),
            comparisons: Comparison::default_set(),
            repetitions: 1,
            base_seed: 0,
            exactness_threshold: DEFAULT_EXACTNESS_THRESHOLD,
            hyperanf: HyperAnfParams::default(),
            include_zero_distance: false,
            allow_expensive_rank_comparisons: false,
            lp_max_rounds: DEFAULT_LP_MAX_ROUNDS,
            power: PowerParams::default(),
        }
    }

    pub fn from_json(reader: impl Read) -> Result<ExperimentConfig> {
        Ok(serde_json::from_reader(reader)?)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::Config(msg.into()));
        if self.graphs.is_empty() {
            return fail("at least one graph is required");
        }
        if self.strategies.is_empty() {
            return fail("at least one strategy is required");
        }
        if self.comparisons.is_empty() {
            return fail("at least one comparison is required");
        }
        if self.thetas.is_empty() {
            return fail("at least one modification level is required");
        }
        if !self
            .thetas
            .windows(2)
            .all(|w| w[0] < w[1])
        {
            return fail("modification levels must be strictly increasing");
        }
        for &t in &self.thetas {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::Config(format!(
                    "modification levels must lie strictly between 0 and 1, got {t}"
                )));
            }
        }
        for (i, s) in self.strategies.iter().enumerate() {
            if self.strategies[..i].contains(s) {
                return Err(Error::Config(format!("duplicate strategy {s}")));
            }
        }
        for (i, c) in self.comparisons.iter().enumerate() {
            if self.comparisons[..i].contains(c) {
                return Err(Error::Config(format!("duplicate comparison {c}")));
            }
            if c.is_expensive_rank() && !self.allow_expensive_rank_comparisons {
                return Err(Error::Config(format!(
                    "comparison {c} recomputes an all-pairs measure per damaged graph; \
                     set allow_expensive_rank_comparisons to use it"
                )));
            }
        }
        if self.repetitions == 0 {
            return fail("repetitions must be at least 1");
        }
        if self.lp_max_rounds == 0 {
            return fail("lp_max_rounds must be at least 1");
        }
        crate::hll::validate_register_exponent(self.hyperanf.register_exponent)?;
        if self.hyperanf.runs == 0 {
            return fail("hyperanf.runs must be at least 1");
        }
        self.power.validate()?;
        for spec in &self.graphs {
            match spec {
                GraphSpec::Model { model } => model.validate()?,
                GraphSpec::EdgeList {
                    directed,
                    symmetrize,
                    ..
                } => {
                    if *symmetrize && !directed {
                        return fail("symmetrize only applies to directed edge lists");
                    }
                }
            }
        }
        Ok(())
    }
}

/// Material resolved from a [`GraphSpec`]: file graphs are loaded once,
/// degree sequences for the configuration model are extracted once.
struct GraphSource {
    id: String,
    params: String,
    kind: SourceKind,
}

enum SourceKind {
    Fixed(Graph),
    Er { n: usize, p: f64 },
    Ba { n: usize, l: usize },
    Ws { n: usize, k: usize, p_rew: f64 },
    Cf { degrees: Vec<usize> },
}

fn resolve_spec(spec: &GraphSpec) -> Result<GraphSource> {
    match spec {
        GraphSpec::EdgeList {
            path,
            directed,
            symmetrize,
        } => {
            let file = std::fs::File::open(path)?;
            let loaded = load_edge_list(std::io::BufReader::new(file), *directed)?;
            let (graph, params) = if *symmetrize {
                (loaded.graph.symmetrize()?, "symmetrized".to_string())
            } else {
                (loaded.graph, String::new())
            };
            Ok(GraphSource {
                id: file_stem(path),
                params,
                kind: SourceKind::Fixed(graph),
            })
        }
        GraphSpec::Model { model } => {
            let kind = match model {
                ModelConfig::Er { n, p } => SourceKind::Er { n: *n, p: *p },
                ModelConfig::Ba { n, l } => SourceKind::Ba { n: *n, l: *l },
                ModelConfig::Ws { n, k, p_rew } => SourceKind::Ws {
                    n: *n,
                    k: *k,
                    p_rew: *p_rew,
                },
                ModelConfig::Cf {
                    degrees_from,
                    directed_source,
                } => {
                    let file = std::fs::File::open(degrees_from)?;
                    let loaded =
                        load_edge_list(std::io::BufReader::new(file), *directed_source)?;
                    SourceKind::Cf {
                        degrees: loaded.graph.degree_sequence(),
                    }
                }
            };
            Ok(GraphSource {
                id: model.id().to_string(),
                params: model.params_string(),
                kind,
            })
        }
    }
}

/// Runs the whole experiment and returns the records in a deterministic
/// order: graph specs in config order, then repetitions, strategies,
/// modification levels, comparisons.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<SensitivityRecord>> {
    cfg.validate()?;
    let sources: Vec<GraphSource> = cfg.graphs.iter().map(resolve_spec).collect::<Result<_>>()?;
    let instances: Vec<(usize, u32)> = (0..sources.len())
        .flat_map(|g| (0..cfg.repetitions).map(move |r| (g, r)))
        .collect();
    let nested: Vec<Vec<SensitivityRecord>> = instances
        .par_iter()
        .map(|&(gidx, rep)| run_instance(cfg, &sources[gidx], gidx, rep))
        .collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

fn instance_graph(cfg: &ExperimentConfig, source: &GraphSource, gidx: usize, rep: u32) -> Result<Graph> {
    let seed = child_seed(
        cfg.base_seed,
        &[stream_id("graph-instance"), gidx as u64, rep as u64],
    );
    match &source.kind {
        SourceKind::Fixed(g) => Ok(g.clone()),
        SourceKind::Er { n, p } => erdos_renyi(*n, *p, seed),
        SourceKind::Ba { n, l } => barabasi_albert(*n, *l, seed),
        SourceKind::Ws { n, k, p_rew } => watts_strogatz(*n, *k, *p_rew, seed),
        SourceKind::Cf { degrees } => configuration_model(degrees, seed),
    }
}

fn measure_nf(cfg: &ExperimentConfig, g: &Graph, seed: u64) -> Result<NeighborhoodFunction> {
    if g.vertex_count() <= cfg.exactness_threshold {
        Ok(exact_neighborhood_function(g))
    } else {
        hyperanf(g, cfg.hyperanf.register_exponent, cfg.hyperanf.runs, seed)
    }
}

fn run_instance(
    cfg: &ExperimentConfig,
    source: &GraphSource,
    gidx: usize,
    rep: u32,
) -> Result<Vec<SensitivityRecord>> {
    let g = instance_graph(cfg, source, gidx, rep)?;
    for strategy in &cfg.strategies {
        if let Strategy::Centrality(m) = strategy {
            if !m.valid_for(g.is_directed()) {
                return Err(Error::Config(format!(
                    "strategy {m} needs a directed graph, but {} is undirected",
                    source.id
                )));
            }
        }
    }
    for c in &cfg.comparisons {
        if let Comparison::Rho(m) = c {
            if !m.valid_for(g.is_directed()) {
                return Err(Error::Config(format!(
                    "comparison rho_{m} needs a directed graph, but {} is undirected",
                    source.id
                )));
            }
        }
    }
    let nf_seed = child_seed(cfg.base_seed, &[stream_id("nf"), gidx as u64, rep as u64]);
    let nf_base = measure_nf(cfg, &g, nf_seed)?;
    let needs_sp = cfg
        .comparisons
        .iter()
        .any(|c| matches!(c, Comparison::Kl | Comparison::Jsd | Comparison::Hd));
    let sp_base = if needs_sp {
        Some(sp_distribution(&nf_base, cfg.include_zero_distance)?)
    } else {
        None
    };
    // Baseline centralities for the rank comparisons, computed once per
    // instance and reused across strategies and levels.
    let mut base_rho: Vec<(Measure, CentralityVector)> = Vec::new();
    for c in &cfg.comparisons {
        if let Comparison::Rho(m) = c {
            if !base_rho.iter().any(|(bm, _)| bm == m) {
                base_rho.push((*m, centrality(&g, *m, &cfg.power)?));
            }
        }
    }
    let mut records = Vec::with_capacity(
        cfg.strategies.len() * cfg.thetas.len() * cfg.comparisons.len(),
    );
    for strategy in &cfg.strategies {
        let strat_seed = child_seed(
            cfg.base_seed,
            &[
                stream_id("strategy"),
                gidx as u64,
                rep as u64,
                stream_id(&strategy.to_string()),
            ],
        );
        let plan = removal_order(&g, *strategy, &cfg.power, strat_seed, cfg.lp_max_rounds)?;
        for (tidx, &theta) in cfg.thetas.iter().enumerate() {
            let level = ModificationLevel::new(theta)
                .map_err(|e| Error::Config(e.to_string()))?;
            let outcome = crate::removal::apply_removal(&g, &plan, level)?;
            let nf_mod_seed = child_seed(
                cfg.base_seed,
                &[
                    stream_id("nf-mod"),
                    gidx as u64,
                    rep as u64,
                    stream_id(&strategy.to_string()),
                    tidx as u64,
                ],
            );
            let nf_mod = measure_nf(cfg, &outcome.graph, nf_mod_seed)?;
            let sp_mod = if needs_sp {
                Some(sp_distribution(&nf_mod, cfg.include_zero_distance))
            } else {
                None
            };
            for comparison in &cfg.comparisons {
                let value = evaluate_comparison(
                    cfg,
                    *comparison,
                    &nf_base,
                    sp_base.as_ref(),
                    &base_rho,
                    &outcome.graph,
                    &outcome.id_map,
                    &nf_mod,
                    sp_mod.as_ref(),
                )?;
                records.push(SensitivityRecord {
                    graph: source.id.clone(),
                    model_params: source.params.clone(),
                    strategy: *strategy,
                    theta,
                    seed: strat_seed,
                    comparison: *comparison,
                    value,
                });
            }
        }
    }
    Ok(records)
}

#[allow(clippy::too_many_arguments)]
fn evaluate_comparison(
    cfg: &ExperimentConfig,
    comparison: Comparison,
    nf_base: &NeighborhoodFunction,
    sp_base: Option<&SpDistribution>,
    base_rho: &[(Measure, CentralityVector)],
    modified: &Graph,
    id_map: &IdMap,
    nf_mod: &NeighborhoodFunction,
    sp_mod: Option<&Result<SpDistribution>>,
) -> Result<f64> {
    match comparison {
        Comparison::Delta => delta_harmonic(nf_base, nf_mod),
        Comparison::DeltaAvgDist => delta_avg_distance(nf_base, nf_mod),
        Comparison::DeltaReachable => Ok(delta_reachable(nf_base, nf_mod)),
        Comparison::Kl | Comparison::Jsd | Comparison::Hd => {
            let p = sp_base.expect("baseline distribution prepared when needed");
            match sp_mod.expect("modified distribution prepared when needed") {
                Ok(q) => Ok(match comparison {
                    Comparison::Kl => kl_divergence(p, q),
                    Comparison::Jsd => jensen_shannon_distance(p, q),
                    _ => hellinger_distance(p, q),
                }),
                // The damaged graph has no distances left to compare: the
                // unbounded divergence takes its sentinel, the bounded
                // metrics are undefined and recorded as missing.
                Err(Error::DegenerateDistribution) => Ok(match comparison {
                    Comparison::Kl => f64::INFINITY,
                    _ => f64::NAN,
                }),
                Err(e) => Err(Error::Config(e.to_string())),
            }
        }
        Comparison::Rho(m) => {
            let (_, base_cv) = base_rho
                .iter()
                .find(|(bm, _)| *bm == m)
                .expect("baseline centrality prepared when needed");
            let survivors_base: Vec<f64> = (0..id_map.len())
                .map(|new_id| base_cv.scores()[id_map.original(new_id)])
                .collect();
            match centrality(modified, m, &cfg.power) {
                Ok(mod_cv) => match spearman_rho(&survivors_base, mod_cv.scores()) {
                    Ok(rho) => Ok(rho),
                    Err(Error::ConstantVector) => Ok(f64::NAN),
                    Err(e) => Err(e),
                },
                // A damaged graph without edges has no defined eigenvector
                // ranking; record the correlation as missing.
                Err(Error::NoEdges) => Ok(f64::NAN),
                Err(e) => Err(e),
            }
        }
    }
}

/// Summary statistics of all records sharing (graph, params, strategy,
/// theta, comparison). Infinite sentinels and missing values are excluded
/// from the moments but reported in their own columns, so they are never
/// silently lost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub graph: String,
    pub model_params: String,
    pub strategy: Strategy,
    pub theta: f64,
    pub comparison: Comparison,
    pub count: usize,
    pub mean: f64,
    pub sd: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub inf_count: usize,
    pub nan_count: usize,
}

/// Aggregates records group-wise; groups appear in first-encounter order.
pub fn summarize(records: &[SensitivityRecord]) -> Vec<SummaryRow> {
    struct Group {
        key: (String, String, Strategy, u64, Comparison),
        theta: f64,
        finite: Vec<f64>,
        inf_count: usize,
        nan_count: usize,
    }
    let mut groups: Vec<Group> = Vec::new();
    for r in records {
        let key = (
            r.graph.clone(),
            r.model_params.clone(),
            r.strategy,
            r.theta.to_bits(),
            r.comparison,
        );
        let group = match groups.iter_mut().find(|g| g.key == key) {
            Some(g) => g,
            None => {
                groups.push(Group {
                    key,
                    theta: r.theta,
                    finite: Vec::new(),
                    inf_count: 0,
                    nan_count: 0,
                });
                groups.last_mut().unwrap()
            }
        };
        if r.value.is_nan() {
            group.nan_count += 1;
        } else if r.value.is_infinite() {
            group.inf_count += 1;
        } else {
            group.finite.push(r.value);
        }
    }
    groups
        .into_iter()
        .map(|mut g| {
            g.finite.sort_by(f64::total_cmp);
            let count = g.finite.len();
            let (mean, sd) = if count == 0 {
                (f64::NAN, f64::NAN)
            } else {
                let mean = g.finite.iter().sum::<f64>() / count as f64;
                let sd = if count < 2 {
                    0.0
                } else {
                    let ss: f64 = g.finite.iter().map(|v| (v - mean).powi(2)).sum();
                    (ss / (count as f64 - 1.0)).sqrt()
                };
                (mean, sd)
            };
            let q = |p: f64| quantile(&g.finite, p);
            SummaryRow {
                graph: g.key.0,
                model_params: g.key.1,
                strategy: g.key.2,
                theta: g.theta,
                comparison: g.key.4,
                count,
                mean,
                sd,
                min: q(0.0),
                q1: q(0.25),
                median: q(0.5),
                q3: q(0.75),
                max: q(1.0),
                inf_count: g.inf_count,
                nan_count: g.nan_count,
            }
        })
        .collect()
}

/// Linear-interpolation quantile of an ascending slice; NaN when empty.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (h - lo as f64)
}

pub fn write_records_csv(records: &[SensitivityRecord], writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records_csv(reader: impl Read) -> Result<Vec<SensitivityRecord>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for record in r.deserialize() {
        out.push(record?);
    }
    Ok(out)
}

pub fn write_summary_csv(rows: &[SummaryRow], writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// `t,N,sd` rows; the deviation column is 0 for exact functions.
pub fn write_nf_csv(nf: &NeighborhoodFunction, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["t", "N", "sd"])?;
    for (t, &value) in nf.values().iter().enumerate() {
        let sd = nf
            .approx_info()
            .map(|info| info.stddev[t])
            .unwrap_or(0.0);
        w.write_record(&[t.to_string(), value.to_string(), sd.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_centrality_csv(
    g: &Graph,
    cv: &CentralityVector,
    writer: impl Write,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["vertex_label", "score"])?;
    for (v, score) in cv.scores().iter().enumerate() {
        w.write_record(&[g.label(v), score.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// One row per vertex in removal order: 1-based rank, label, the priority
/// score that earned the rank (empty for random plans), and the running
/// count of destroyed edges.
pub fn write_plan_csv(g: &Graph, plan: &RemovalPlan, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["rank", "vertex_label", "priority", "cumulative_edges_removed"])?;
    for (i, &v) in plan.order().iter().enumerate() {
        let priority = plan
            .priorities()
            .map(|p| p[i].to_string())
            .unwrap_or_default();
        w.write_record(&[
            (i + 1).to_string(),
            g.label(v),
            priority,
            plan.cumulative_edges()[i].to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Survivor table of a removal: new dense id alongside the label the vertex
/// had in the original graph.
pub fn write_id_map_csv(original: &Graph, map: &IdMap, writer: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["survivor_id", "original_label"])?;
    for new_id in 0..map.len() {
        w.write_record(&[new_id.to_string(), original.label(map.original(new_id))])?;
    }
    w.flush()?;
    Ok(())
}

/// Caps the global worker pool from the `NETSENS_THREADS` environment
/// variable. Call once at startup; does nothing if the variable is unset,
/// unparsable, or a pool already exists.
pub fn init_threads_from_env() {
    if let Ok(value) = std::env::var("NETSENS_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}
