//! End-to-end checks of the experiment harness: record grids, deterministic
//! ordering, worker-count independence, file-backed graph sources, directed
//! variants, sentinel handling, and the CSV round trips a batch run relies on.

use std::fs;
use std::path::PathBuf;

use netsens::centrality::Measure;
use netsens::compare::{Comparison, SensitivityRecord};
use netsens::harness::{
    read_records_csv, run_experiment, summarize, write_records_csv, write_summary_csv,
    ExperimentConfig, GraphSpec, HyperAnfParams, ModelConfig, DEFAULT_THETAS,
};
use netsens::removal::Strategy;
use tempfile::TempDir;

fn write_graph_file(dir: &TempDir, name: &str, lines: &[String]) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    path
}

/// A wheel: a 29-cycle of `r00..r28` plus a hub joined to every ring vertex.
/// Degree-based removal picks the hub first, which makes the file-backed
/// records in these tests fully deterministic.
fn wheel_lines() -> Vec<String> {
    let mut lines = Vec::new();
    for i in 0..29 {
        lines.push(format!("r{i:02} r{:02}", (i + 1) % 29));
        lines.push(format!("hub r{i:02}"));
    }
    lines
}

fn records_csv(records: &[SensitivityRecord]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_records_csv(records, &mut buf).unwrap();
    buf
}

#[test]
fn record_grid_is_complete_and_deterministically_ordered() {
    let cfg = ExperimentConfig {
        thetas: vec![0.1, 0.2],
        comparisons: vec![Comparison::Delta, Comparison::Rho(Measure::Dc)],
        repetitions: 3,
        base_seed: 42,
        ..ExperimentConfig::new(
            vec![GraphSpec::Model {
                model: ModelConfig::Er { n: 100, p: 0.05 },
            }],
            vec![Strategy::Random, Strategy::Centrality(Measure::Dc)],
        )
    };
    let records = run_experiment(&cfg).unwrap();
    assert_eq!(records.len(), 3 * 2 * 2 * 2);

    // Row order is the documented nesting: repetition, strategy, level,
    // comparison (one graph spec here).
    let mut expected = Vec::new();
    for _rep in 0..cfg.repetitions {
        for &strategy in &cfg.strategies {
            for &theta in &cfg.thetas {
                for &comparison in &cfg.comparisons {
                    expected.push((strategy, theta, comparison));
                }
            }
        }
    }
    let got: Vec<_> = records
        .iter()
        .map(|r| (r.strategy, r.theta, r.comparison))
        .collect();
    assert_eq!(got, expected);

    for r in &records {
        assert_eq!(r.graph, "er");
        assert_eq!(r.model_params, "n=100,p=0.05");
        assert!(r.value.is_finite(), "unexpected sentinel: {r:?}");
        match r.comparison {
            Comparison::Delta => assert!(r.value >= -1.0),
            Comparison::Rho(_) => assert!((-1.0..=1.0).contains(&r.value)),
            _ => unreachable!(),
        }
    }

    // Each (repetition, strategy) block of four rows carries one seed; the
    // seeds of different blocks never collide.
    let mut block_seeds = Vec::new();
    for block in records.chunks(4) {
        let seed = block[0].seed;
        assert!(block.iter().all(|r| r.seed == seed));
        assert!(!block_seeds.contains(&seed), "seed reused across blocks");
        block_seeds.push(seed);
    }
}

#[test]
fn worker_count_does_not_change_the_records() {
    let cfg = ExperimentConfig {
        thetas: vec![0.15, 0.3],
        comparisons: vec![Comparison::Delta, Comparison::Kl],
        repetitions: 2,
        base_seed: 7,
        ..ExperimentConfig::new(
            vec![GraphSpec::Model {
                model: ModelConfig::Er { n: 60, p: 0.08 },
            }],
            vec![Strategy::Random, Strategy::Centrality(Measure::Pr)],
        )
    };
    let run_with = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| run_experiment(&cfg)).unwrap()
    };
    let serial = records_csv(&run_with(1));
    let parallel = records_csv(&run_with(3));
    let global = records_csv(&run_experiment(&cfg).unwrap());
    assert_eq!(serial, parallel);
    assert_eq!(serial, global);
}

#[test]
fn edge_list_and_degree_sequence_sources_flow_end_to_end() {
    let dir = TempDir::new().unwrap();
    let path = write_graph_file(&dir, "wheel.txt", &wheel_lines());
    let cfg = ExperimentConfig {
        thetas: vec![0.2],
        comparisons: vec![Comparison::Delta],
        repetitions: 2,
        base_seed: 11,
        ..ExperimentConfig::new(
            vec![
                GraphSpec::EdgeList {
                    path: path.clone(),
                    directed: false,
                    symmetrize: false,
                },
                GraphSpec::Model {
                    model: ModelConfig::Cf {
                        degrees_from: path,
                        directed_source: false,
                    },
                },
            ],
            vec![Strategy::Centrality(Measure::Dc)],
        )
    };
    let records = run_experiment(&cfg).unwrap();
    assert_eq!(records.len(), 4);

    let wheel: Vec<_> = records.iter().filter(|r| r.graph == "wheel").collect();
    let cf: Vec<_> = records.iter().filter(|r| r.graph == "cf").collect();
    assert_eq!(wheel.len(), 2);
    assert_eq!(cf.len(), 2);
    assert!(wheel.iter().all(|r| r.model_params.is_empty()));
    assert!(cf.iter().all(|r| r.model_params == "degrees_from=wheel"));
    assert!(records.iter().all(|r| r.value.is_finite()));

    // The file graph is fixed and the strategy deterministic, so both
    // repetitions must agree to the last bit. Dropping the hub turns the
    // wheel into a plain 29-cycle, whose harmonic diameter is much larger.
    assert_eq!(wheel[0].value.to_bits(), wheel[1].value.to_bits());
    assert!(wheel[0].value > 1.0, "wheel -> cycle delta: {}", wheel[0].value);
}

#[test]
fn directed_edge_lists_support_in_out_variants_and_symmetrize() {
    let dir = TempDir::new().unwrap();
    let mut lines: Vec<String> = (0..12).map(|i| format!("a{i} a{}", (i + 1) % 12)).collect();
    for i in [0, 3, 6, 9] {
        lines.push(format!("a{i} a{}", (i + 4) % 12));
    }
    let path = write_graph_file(&dir, "dicycle.txt", &lines);

    let directed = ExperimentConfig {
        thetas: vec![0.2],
        comparisons: vec![Comparison::Delta, Comparison::Rho(Measure::DcOut)],
        base_seed: 3,
        ..ExperimentConfig::new(
            vec![GraphSpec::EdgeList {
                path: path.clone(),
                directed: true,
                symmetrize: false,
            }],
            vec![Strategy::Centrality(Measure::DcIn), Strategy::Random],
        )
    };
    let records = run_experiment(&directed).unwrap();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r.graph == "dicycle"));

    // Forgetting directions makes the in-degree strategy invalid.
    let symmetrized_bad = ExperimentConfig {
        thetas: vec![0.2],
        comparisons: vec![Comparison::Delta],
        ..ExperimentConfig::new(
            vec![GraphSpec::EdgeList {
                path: path.clone(),
                directed: true,
                symmetrize: true,
            }],
            vec![Strategy::Centrality(Measure::DcIn)],
        )
    };
    let err = run_experiment(&symmetrized_bad).unwrap_err().to_string();
    assert!(err.contains("directed"), "unexpected error: {err}");

    // With an undirected measure the symmetrized view runs and labels
    // itself in the params column.
    let symmetrized = ExperimentConfig {
        thetas: vec![0.2],
        comparisons: vec![Comparison::Delta],
        ..ExperimentConfig::new(
            vec![GraphSpec::EdgeList {
                path,
                directed: true,
                symmetrize: true,
            }],
            vec![Strategy::Centrality(Measure::Dc)],
        )
    };
    let records = run_experiment(&symmetrized).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].model_params, "symmetrized");
    assert!(records[0].value.is_finite());
}

#[test]
fn sentinel_values_round_trip_and_are_tallied() {
    let dir = TempDir::new().unwrap();
    let star = write_graph_file(
        &dir,
        "star.txt",
        &["hub a".into(), "hub b".into(), "hub c".into()],
    );
    // Degree removal decapitates the star at the first vertex: the damaged
    // graph keeps no edges, so every distance-based comparison degenerates.
    let json = format!(
        r#"{{
            "graphs": [{{"kind": "edge_list", "path": {path:?}}}],
            "strategies": ["dc"],
            "thetas": [0.3],
            "comparisons": ["delta", "kl", "jsd", "hd", "rho_dc"],
            "repetitions": 2,
            "base_seed": 5
        }}"#,
        path = star
    );
    let cfg = ExperimentConfig::from_json(json.as_bytes()).unwrap();
    let records = run_experiment(&cfg).unwrap();
    assert_eq!(records.len(), 10);
    for r in &records {
        match r.comparison {
            Comparison::Delta | Comparison::Kl => {
                assert_eq!(r.value, f64::INFINITY, "{:?}", r.comparison)
            }
            Comparison::Jsd | Comparison::Hd | Comparison::Rho(_) => {
                assert!(r.value.is_nan(), "{:?}: {}", r.comparison, r.value)
            }
            _ => unreachable!(),
        }
    }

    // Sentinels must survive the records CSV unchanged.
    let bytes = records_csv(&records);
    let reread = read_records_csv(bytes.as_slice()).unwrap();
    assert_eq!(reread.len(), records.len());
    for (a, b) in records.iter().zip(&reread) {
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.strategy, b.strategy);
        assert_eq!(a.theta, b.theta);
        assert_eq!(a.seed, b.seed);
        assert_eq!(a.comparison, b.comparison);
        assert_eq!(
            a.value.to_bits(),
            b.value.to_bits(),
            "{:?} -> {} vs {}",
            a.comparison,
            a.value,
            b.value
        );
    }

    // The summary reports them in their own tallies instead of folding them
    // into the moments.
    let rows = summarize(&reread);
    assert_eq!(rows.len(), 5);
    let row = |c: Comparison| rows.iter().find(|r| r.comparison == c).unwrap();
    for c in [Comparison::Delta, Comparison::Kl] {
        let r = row(c);
        assert_eq!((r.count, r.inf_count, r.nan_count), (0, 2, 0));
        assert!(r.mean.is_nan() && r.min.is_nan());
    }
    for c in [Comparison::Jsd, Comparison::Hd, Comparison::Rho(Measure::Dc)] {
        let r = row(c);
        assert_eq!((r.count, r.inf_count, r.nan_count), (0, 0, 2));
    }
    let mut summary = Vec::new();
    write_summary_csv(&rows, &mut summary).unwrap();
    let text = String::from_utf8(summary).unwrap();
    assert!(text.lines().next().unwrap().contains("inf_count"));
    assert!(text.contains("NaN") && text.contains("inf"));
}

#[test]
fn estimated_neighborhood_functions_are_deterministic_and_close_to_exact() {
    let base = ExperimentConfig {
        thetas: vec![0.2],
        comparisons: vec![Comparison::Delta],
        base_seed: 9,
        ..ExperimentConfig::new(
            vec![GraphSpec::Model {
                model: ModelConfig::Er { n: 120, p: 0.05 },
            }],
            vec![Strategy::Centrality(Measure::Dc)],
        )
    };
    let estimated_cfg = ExperimentConfig {
        exactness_threshold: 0,
        hyperanf: HyperAnfParams {
            register_exponent: 10,
            runs: 10,
        },
        ..base.clone()
    };
    let exact = run_experiment(&base).unwrap()[0].value;
    let estimated = run_experiment(&estimated_cfg).unwrap()[0].value;
    let rerun = run_experiment(&estimated_cfg).unwrap()[0].value;
    assert_eq!(estimated.to_bits(), rerun.to_bits());
    let ratio = (1.0 + estimated) / (1.0 + exact);
    assert!(
        (0.85..=1.15).contains(&ratio),
        "estimator drifted: exact {exact}, estimated {estimated}"
    );
}

#[test]
fn json_configs_fill_defaults_and_reject_bad_input() {
    let minimal = r#"{
        "graphs": [{"kind": "model", "model": "er", "n": 50, "p": 0.1}],
        "strategies": ["dc", "random"]
    }"#;
    let cfg = ExperimentConfig::from_json(minimal.as_bytes()).unwrap();
    assert_eq!(cfg.thetas, DEFAULT_THETAS.to_vec());
    assert_eq!(cfg.comparisons, Comparison::default_set());
    assert_eq!(cfg.repetitions, 1);
    assert_eq!(cfg.base_seed, 0);
    cfg.validate().unwrap();

    // Unknown keys are rejected rather than silently ignored.
    let typo = r#"{
        "graphs": [{"kind": "model", "model": "er", "n": 50, "p": 0.1}],
        "strateges": ["dc"]
    }"#;
    assert!(ExperimentConfig::from_json(typo.as_bytes()).is_err());

    let base = ExperimentConfig::new(
        vec![GraphSpec::Model {
            model: ModelConfig::Er { n: 50, p: 0.1 },
        }],
        vec![Strategy::Random],
    );
    let expect_config_error = |cfg: &ExperimentConfig, needle: &str| {
        let err = cfg.validate().unwrap_err().to_string();
        assert!(err.contains(needle), "{err:?} does not mention {needle:?}");
    };

    let mut dup = base.clone();
    dup.strategies = vec![Strategy::Random, Strategy::Random];
    expect_config_error(&dup, "duplicate strategy");

    let mut zero_theta = base.clone();
    zero_theta.thetas = vec![0.0, 0.2];
    expect_config_error(&zero_theta, "between 0 and 1");

    let mut unsorted = base.clone();
    unsorted.thetas = vec![0.3, 0.2];
    expect_config_error(&unsorted, "strictly increasing");

    let mut expensive = base.clone();
    expensive.comparisons = vec![Comparison::Rho(Measure::Bc)];
    expect_config_error(&expensive, "allow_expensive_rank_comparisons");

    let mut bad_symmetrize = base.clone();
    bad_symmetrize.graphs = vec![GraphSpec::EdgeList {
        path: PathBuf::from("whatever.txt"),
        directed: false,
        symmetrize: true,
    }];
    expect_config_error(&bad_symmetrize, "symmetrize");

    let mut bad_ws = base;
    bad_ws.graphs = vec![GraphSpec::Model {
        model: ModelConfig::Ws {
            n: 10,
            k: 5,
            p_rew: 0.1,
        },
    }];
    expect_config_error(&bad_ws, "k < n/2");
}
