//! Vertex centrality measures: degree, closeness, betweenness, eigenvector,
//! PageRank. Directed graphs additionally get `_in`/`_out` variants of the
//! degree and closeness measures; the unsuffixed variants ignore direction
//! for those two (in + out degree, distances over the undirected shadow),
//! matching how the common network-analysis packages define their "all" mode.
//!
//! Scores are reported raw, not normalized: everything downstream is either
//! an ordering (removal priorities) or a rank correlation, and both are
//! invariant under monotone rescaling.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The nine centrality tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Bc,
    Cc,
    CcIn,
    CcOut,
    Dc,
    DcIn,
    DcOut,
    Ec,
    Pr,
}

impl Measure {
    pub const ALL: [Measure; 9] = [
        Measure::Bc,
        Measure::Cc,
        Measure::CcIn,
        Measure::CcOut,
        Measure::Dc,
        Measure::DcIn,
        Measure::DcOut,
        Measure::Ec,
        Measure::Pr,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Measure::Bc => "bc",
            Measure::Cc => "cc",
            Measure::CcIn => "cc_in",
            Measure::CcOut => "cc_out",
            Measure::Dc => "dc",
            Measure::DcIn => "dc_in",
            Measure::DcOut => "dc_out",
            Measure::Ec => "ec",
            Measure::Pr => "pr",
        }
    }

    /// `_in`/`_out` variants only make sense on directed graphs.
    pub fn valid_for(&self, directed: bool) -> bool {
        match self {
            Measure::CcIn | Measure::CcOut | Measure::DcIn | Measure::DcOut => directed,
            _ => true,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Measure> {
        Measure::ALL
            .iter()
            .copied()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown centrality measure {s:?}")))
    }
}

/// Which arc direction a degree/closeness computation follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Ignore direction (the only valid mode for undirected graphs).
    Total,
    In,
    Out,
}

/// Per-vertex scores for one measure. `converged` is only meaningful for the
/// iterative measures (eigenvector, PageRank); it stays `true` for the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityVector {
    measure: Measure,
    scores: Vec<f64>,
    converged: bool,
}

impl CentralityVector {
    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn scores(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn converged(&self) -> bool {
        self.converged
    }
}

/// Parameters for the iterative solvers. `damping` only affects PageRank.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerParams {
    pub damping: f64,
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for PowerParams {
    fn default() -> Self {
        PowerParams {
            damping: 0.85,
            tolerance: 1e-9,
            max_iterations: 200,
        }
    }
}

impl PowerParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.damping) {
            return Err(Error::InvalidParameter(format!(
                "damping must be in [0, 1), got {}",
                self.damping
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Computes any of the nine measures with one entry point.
pub fn centrality(g: &Graph, measure: Measure, params: &PowerParams) -> Result<CentralityVector> {
    match measure {
        Measure::Bc => Ok(betweenness_centrality(g)),
        Measure::Cc => closeness_centrality(g, Mode::Total),
        Measure::CcIn => closeness_centrality(g, Mode::In),
        Measure::CcOut => closeness_centrality(g, Mode::Out),
        Measure::Dc => degree_centrality(g, Mode::Total),
        Measure::DcIn => degree_centrality(g, Mode::In),
        Measure::DcOut => degree_centrality(g, Mode::Out),
        Measure::Ec => eigenvector_centrality(g, params.tolerance, params.max_iterations),
        Measure::Pr => pagerank(g, params.damping, params.tolerance, params.max_iterations),
    }
}

fn require_directed(g: &Graph, measure: Measure) -> Result<()> {
    if g.is_directed() {
        Ok(())
    } else {
        Err(Error::DirectedOnly {
            measure: measure.to_string(),
        })
    }
}

/// Raw degrees. `Total` on a directed graph is in-degree plus out-degree.
pub fn degree_centrality(g: &Graph, mode: Mode) -> Result<CentralityVector> {
    let n = g.vertex_count();
    let (measure, scores): (Measure, Vec<f64>) = match mode {
        Mode::Total => (
            Measure::Dc,
            (0..n).map(|v| g.total_degree(v) as f64).collect(),
        ),
        Mode::In => {
            require_directed(g, Measure::DcIn)?;
            (Measure::DcIn, (0..n).map(|v| g.in_degree(v) as f64).collect())
        }
        Mode::Out => {
            require_directed(g, Measure::DcOut)?;
            (
                Measure::DcOut,
                (0..n).map(|v| g.out_degree(v) as f64).collect(),
            )
        }
    };
    Ok(CentralityVector {
        measure,
        scores,
        converged: true,
    })
}

/// Closeness over reachable vertices only: `(r - 1) / sum_of_distances`,
/// where `r` counts the vertices reachable from `v` (itself included).
/// A vertex that reaches nothing scores 0. `Out` follows arcs, `In` walks
/// them backwards, `Total` ignores direction.
pub fn closeness_centrality(g: &Graph, mode: Mode) -> Result<CentralityVector> {
    let measure = match mode {
        Mode::Total => Measure::Cc,
        Mode::In => {
            require_directed(g, Measure::CcIn)?;
            Measure::CcIn
        }
        Mode::Out => {
            require_directed(g, Measure::CcOut)?;
            Measure::CcOut
        }
    };
    // For Total on a directed graph distances run over the undirected shadow.
    let shadow;
    let traversal: &Graph = if g.is_directed() && mode == Mode::Total {
        shadow = g.undirected_view();
        &shadow
    } else {
        g
    };
    let n = traversal.vertex_count();
    let scores: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|source| {
            let mut dist = vec![u32::MAX; n];
            let mut queue = VecDeque::new();
            dist[source] = 0;
            queue.push_back(source);
            let mut reached = 0u64;
            let mut total = 0u64;
            while let Some(u) = queue.pop_front() {
                reached += 1;
                total += dist[u] as u64;
                let neighbors = match mode {
                    Mode::In => traversal.in_neighbors(u),
                    _ => traversal.out_neighbors(u),
                };
                for &v in neighbors {
                    if dist[v] == u32::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            if total == 0 {
                0.0
            } else {
                (reached - 1) as f64 / total as f64
            }
        })
        .collect();
    Ok(CentralityVector {
        measure,
        scores,
        converged: true,
    })
}

/// Shortest-path betweenness, unnormalized.
///
/// Directed graphs sum over ordered source/target pairs, undirected ones over
/// unordered pairs (the directed sweep counts each pair twice, so the total
/// is halved). Sources are processed in fixed-size chunks and the partial
/// score vectors added in chunk order, which keeps the floating-point result
/// independent of the number of worker threads.
pub fn betweenness_centrality(g: &Graph) -> CentralityVector {
    let n = g.vertex_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(64)
        .map(|chunk| {
            let mut partial = vec![0.0f64; n];
            let mut sigma = vec![0.0f64; n];
            let mut dist = vec![u32::MAX; n];
            let mut delta = vec![0.0f64; n];
            let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
            let mut order = Vec::with_capacity(n);
            let mut queue = VecDeque::new();
            for &s in chunk {
                for v in 0..n {
                    sigma[v] = 0.0;
                    dist[v] = u32::MAX;
                    delta[v] = 0.0;
                    preds[v].clear();
                }
                order.clear();
                queue.clear();
                sigma[s] = 1.0;
                dist[s] = 0;
                queue.push_back(s);
                while let Some(u) = queue.pop_front() {
                    order.push(u);
                    for &v in g.out_neighbors(u) {
                        if dist[v] == u32::MAX {
                            dist[v] = dist[u] + 1;
                            queue.push_back(v);
                        }
                        if dist[v] == dist[u] + 1 {
                            sigma[v] += sigma[u];
                            preds[v].push(u);
                        }
                    }
                }
                for &w in order.iter().rev() {
                    for &v in &preds[w] {
                        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                    }
                    if w != s {
                        partial[w] += delta[w];
                    }
                }
            }
            partial
        })
        .collect();
    let mut scores = vec![0.0f64; n];
    for partial in partials {
        for (s, p) in scores.iter_mut().zip(partial) {
            *s += p;
        }
    }
    if !g.is_directed() {
        for s in &mut scores {
            *s *= 0.5;
        }
    }
    CentralityVector {
        measure: Measure::Bc,
        scores,
        converged: true,
    }
}

/// Eigenvector centrality by power iteration, max-normalized so the top
/// vertex scores 1.
///
/// The iteration actually runs on `A + I` (scores additionally keep their own
/// previous value): that shift leaves the eigenvectors untouched but breaks
/// the sign oscillation power iteration suffers on bipartite graphs. On
/// directed graphs score flows along arcs, i.e. a vertex accumulates from its
/// in-neighbors. If the tolerance isn't reached within `max_iterations` the
/// last iterate is returned with `converged == false`.
pub fn eigenvector_centrality(g: &Graph, tolerance: f64, max_iterations: usize) -> Result<CentralityVector> {
    if g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    PowerParams {
        tolerance,
        max_iterations,
        ..PowerParams::default()
    }
    .validate()?;
    let n = g.vertex_count();
    let mut x = vec![1.0f64; n];
    let mut converged = false;
    for _ in 0..max_iterations {
        let mut y = x.clone();
        for (v, yv) in y.iter_mut().enumerate() {
            for &u in g.in_neighbors(v) {
                *yv += x[u];
            }
        }
        let max = y.iter().cloned().fold(0.0f64, f64::max);
        for yv in &mut y {
            *yv /= max;
        }
        let diff = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        x = y;
        if diff < tolerance {
            converged = true;
            break;
        }
    }
    Ok(CentralityVector {
        measure: Measure::Ec,
        scores: x,
        converged,
    })
}

/// PageRank with uniform teleport.
///
/// Dangling mass (vertices without out-arcs) is redistributed uniformly every
/// step, so the scores always sum to 1. Convergence is measured in L1 between
/// successive iterates. Undirected graphs treat every edge as a reciprocal
/// arc pair.
pub fn pagerank(
    g: &Graph,
    damping: f64,
    tolerance: f64,
    max_iterations: usize,
) -> Result<CentralityVector> {
    PowerParams {
        damping,
        tolerance,
        max_iterations,
    }
    .validate()?;
    let n = g.vertex_count();
    let nf = n as f64;
    let out_degree: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let mut pr = vec![1.0 / nf; n];
    let mut converged = false;
    for _ in 0..max_iterations {
        let dangling: f64 = pr
            .iter()
            .zip(&out_degree)
            .filter(|(_, &d)| d == 0)
            .map(|(p, _)| p)
            .sum();
        let base = (1.0 - damping) / nf + damping * dangling / nf;
        let mut next = vec![base; n];
        for (v, nv) in next.iter_mut().enumerate() {
            for &u in g.in_neighbors(v) {
                *nv += damping * pr[u] / out_degree[u] as f64;
            }
        }
        let l1: f64 = pr.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        pr = next;
        if l1 < tolerance {
            converged = true;
            break;
        }
    }
    Ok(CentralityVector {
        measure: Measure::Pr,
        scores: pr,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> Graph {
        // Vertex 0 is the hub.
        Graph::from_edges(false, 4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(false, 3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn measure_round_trips_through_strings() {
        for m in Measure::ALL {
            assert_eq!(m.as_str().parse::<Measure>().unwrap(), m);
        }
        assert!("xx".parse::<Measure>().is_err());
    }

    #[test]
    fn degree_modes() {
        let g = Graph::from_edges(true, 3, [(0, 1), (2, 1)]).unwrap();
        assert_eq!(
            degree_centrality(&g, Mode::Total).unwrap().scores(),
            &[1.0, 2.0, 1.0]
        );
        assert_eq!(
            degree_centrality(&g, Mode::In).unwrap().scores(),
            &[0.0, 2.0, 0.0]
        );
        assert_eq!(
            degree_centrality(&g, Mode::Out).unwrap().scores(),
            &[1.0, 0.0, 1.0]
        );
    }

    #[test]
    fn directional_modes_need_directed_graphs() {
        let g = path3();
        assert!(matches!(
            degree_centrality(&g, Mode::In),
            Err(Error::DirectedOnly { .. })
        ));
        assert!(matches!(
            closeness_centrality(&g, Mode::Out),
            Err(Error::DirectedOnly { .. })
        ));
    }

    #[test]
    fn closeness_on_path() {
        let cc = closeness_centrality(&path3(), Mode::Total).unwrap();
        let expect = [2.0 / 3.0, 1.0, 2.0 / 3.0];
        for (got, want) in cc.scores().iter().zip(expect) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn closeness_ignores_unreachable_vertices() {
        // Path plus an isolated vertex: the path scores are unchanged and the
        // isolated vertex scores 0.
        let g = Graph::from_edges(false, 4, [(0, 1), (1, 2)]).unwrap();
        let cc = closeness_centrality(&g, Mode::Total).unwrap();
        assert!((cc.scores()[1] - 1.0).abs() < 1e-12);
        assert_eq!(cc.scores()[3], 0.0);
    }

    #[test]
    fn closeness_directed_modes() {
        let g = Graph::from_edges(true, 3, [(0, 1), (1, 2)]).unwrap();
        let out = closeness_centrality(&g, Mode::Out).unwrap();
        assert!((out.scores()[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((out.scores()[1] - 1.0).abs() < 1e-12);
        assert_eq!(out.scores()[2], 0.0);
        let inn = closeness_centrality(&g, Mode::In).unwrap();
        assert_eq!(inn.scores()[0], 0.0);
        assert!((inn.scores()[2] - 2.0 / 3.0).abs() < 1e-12);
        // Total mode sees the undirected path.
        let total = closeness_centrality(&g, Mode::Total).unwrap();
        assert!((total.scores()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn betweenness_on_paths_and_stars() {
        assert_eq!(
            betweenness_centrality(&path3()).scores(),
            &[0.0, 1.0, 0.0]
        );
        assert_eq!(
            betweenness_centrality(&star()).scores(),
            &[3.0, 0.0, 0.0, 0.0]
        );
        let directed = Graph::from_edges(true, 3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            betweenness_centrality(&directed).scores(),
            &[0.0, 1.0, 0.0]
        );
    }

    #[test]
    fn betweenness_splits_over_equal_paths() {
        let c4 = Graph::from_edges(false, 4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        for &s in betweenness_centrality(&c4).scores() {
            assert!((s - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn eigenvector_on_star_matches_closed_form() {
        let ec = eigenvector_centrality(&star(), 1e-12, 500).unwrap();
        assert!(ec.converged());
        assert!((ec.scores()[0] - 1.0).abs() < 1e-9);
        for leaf in 1..4 {
            assert!((ec.scores()[leaf] - 1.0 / 3f64.sqrt()).abs() < 1e-6);
        }
    }

    #[test]
    fn eigenvector_needs_edges() {
        let g = Graph::from_edges(false, 2, []).unwrap();
        assert!(matches!(
            eigenvector_centrality(&g, 1e-9, 100),
            Err(Error::NoEdges)
        ));
    }

    #[test]
    fn eigenvector_flags_nonconvergence() {
        let ec = eigenvector_centrality(&star(), 1e-15, 2).unwrap();
        assert!(!ec.converged());
        assert_eq!(ec.len(), 4);
    }

    #[test]
    fn pagerank_favors_the_sink() {
        let g = Graph::from_edges(true, 3, [(0, 1), (2, 1)]).unwrap();
        let pr = pagerank(&g, 0.85, 1e-12, 500).unwrap();
        assert!(pr.converged());
        let s = pr.scores();
        assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert!((s[0] - s[2]).abs() < 1e-12);
        assert!(s[1] > s[0]);
    }

    #[test]
    fn pagerank_uniform_on_regular_graphs() {
        let c4 = Graph::from_edges(false, 4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pr = pagerank(&c4, 0.85, 1e-12, 500).unwrap();
        for &s in pr.scores() {
            assert!((s - 0.25).abs() < 1e-9);
        }
    }

    #[test]
    fn pagerank_single_vertex() {
        let g = Graph::from_edges(false, 1, []).unwrap();
        assert_eq!(pagerank(&g, 0.85, 1e-9, 50).unwrap().scores(), &[1.0]);
    }

    #[test]
    fn pagerank_validates_damping() {
        let g = path3();
        assert!(pagerank(&g, 1.0, 1e-9, 50).is_err());
        assert!(pagerank(&g, -0.1, 1e-9, 50).is_err());
    }

    #[test]
    fn dispatcher_covers_all_measures() {
        let g = Graph::from_edges(true, 4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        for m in Measure::ALL {
            let cv = centrality(&g, m, &PowerParams::default()).unwrap();
            assert_eq!(cv.measure(), m);
            assert_eq!(cv.len(), 4);
        }
    }
}
