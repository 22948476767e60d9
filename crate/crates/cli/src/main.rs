//! Command-line front end for the `netsens` library: generate benchmark
//! graphs, measure distance structure and centralities, damage a graph by a
//! removal strategy, and run batch sensitivity experiments.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use netsens::centrality::{centrality, Measure, PowerParams};
use netsens::generators;
use netsens::graph::{load_edge_list, write_edge_list, Graph};
use netsens::harness::{
    self, read_records_csv, summarize, write_centrality_csv, write_id_map_csv, write_nf_csv,
    write_plan_csv, write_records_csv, write_summary_csv, ExperimentConfig,
};
use netsens::neighborhood::{
    average_distance, exact_neighborhood_function, harmonic_diameter, hyperanf, reachable_pairs,
    NeighborhoodFunction,
};
use netsens::removal::{apply_removal, removal_order, ModificationLevel, Strategy};

#[derive(Parser)]
#[command(
    name = "netsens",
    version,
    about = "Measure how sensitive a network's distance structure is to vertex removal"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph and print it as an edge list.
    Generate(GenerateArgs),
    /// Measure the neighborhood function or a centrality of a graph.
    Measure(MeasureArgs),
    /// Remove vertices by a strategy until a fraction of the edges is gone.
    Modify(ModifyArgs),
    /// Run a batch experiment described by a JSON config.
    Experiment(ExperimentArgs),
    /// Aggregate an experiment's record CSV into summary statistics.
    Summarize(SummarizeArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[command(subcommand)]
    model: ModelCommand,
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Erdős–Rényi G(n, p).
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Preferential attachment: each new vertex brings l edges.
    Ba {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Small-world ring lattice (k neighbors per side) with rewiring.
    Ws {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p_rew: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Configuration model on the degree sequence of an existing graph.
    Cf {
        /// Edge-list file whose degree sequence is replicated.
        #[arg(long)]
        degrees_from: PathBuf,
        /// Treat the source file as a directed edge list.
        #[arg(long)]
        directed_source: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Flags shared by every command that reads one graph.
#[derive(Args)]
struct GraphArgs {
    /// Edge-list file: one `u v` pair per line, `#`/`%` comments allowed.
    #[arg(long)]
    graph: PathBuf,
    /// Interpret lines as directed arcs.
    #[arg(long)]
    directed: bool,
    /// Forget arc directions after loading (requires --directed).
    #[arg(long)]
    symmetrize: bool,
}

impl GraphArgs {
    fn load(&self) -> anyhow::Result<Graph> {
        let file = File::open(&self.graph)
            .with_context(|| format!("opening graph file {}", self.graph.display()))?;
        let loaded = load_edge_list(BufReader::new(file), self.directed)
            .with_context(|| format!("parsing {}", self.graph.display()))?;
        if loaded.loops_removed + loaded.duplicates_removed > 0 {
            eprintln!(
                "note: dropped {} self-loop(s) and {} duplicate edge(s)",
                loaded.loops_removed, loaded.duplicates_removed
            );
        }
        if self.symmetrize {
            anyhow::ensure!(self.directed, "--symmetrize requires --directed");
            Ok(loaded.graph.symmetrize()?)
        } else {
            Ok(loaded.graph)
        }
    }
}

/// Knobs for the iterative scores (eigenvector, PageRank).
#[derive(Args)]
struct PowerArgs {
    /// PageRank damping factor.
    #[arg(long, default_value_t = 0.85)]
    damping: f64,
    /// Convergence tolerance for the power iterations.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Iteration cap for the power iterations.
    #[arg(long, default_value_t = 200)]
    max_iterations: usize,
}

impl PowerArgs {
    fn params(&self) -> anyhow::Result<PowerParams> {
        let params = PowerParams {
            damping: self.damping,
            tolerance: self.tolerance,
            max_iterations: self.max_iterations,
        };
        params.validate()?;
        Ok(params)
    }
}

#[derive(Args)]
struct MeasureArgs {
    /// What to measure: `nf` (neighborhood function) or a centrality tag
    /// (dc, dc_in, dc_out, cc, cc_in, cc_out, bc, ec, pr).
    target: String,
    #[command(flatten)]
    graph: GraphArgs,
    /// Estimate the neighborhood function probabilistically instead of by
    /// exact BFS.
    #[arg(long)]
    approx: bool,
    /// log2 of the registers per probabilistic counter (4..=16).
    #[arg(long, default_value_t = 10)]
    registers: u32,
    /// Estimator runs to average.
    #[arg(long, default_value_t = 10)]
    runs: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    power: PowerArgs,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ModifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Removal strategy: a centrality tag, `lp`, or `random`.
    #[arg(long)]
    strategy: Strategy,
    /// Fraction of edges to destroy, in [0, 1).
    #[arg(long)]
    theta: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sweep cap for the community detector behind `lp`.
    #[arg(long, default_value_t = netsens::removal::DEFAULT_LP_MAX_ROUNDS)]
    lp_max_rounds: usize,
    #[command(flatten)]
    power: PowerArgs,
    /// Where to write the damaged graph (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the survivor id map as CSV.
    #[arg(long)]
    map_out: Option<PathBuf>,
    /// Also write the full removal plan as CSV.
    #[arg(long)]
    plan_out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON experiment description.
    #[arg(long)]
    config: PathBuf,
    /// Record CSV destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write aggregated summary statistics to this CSV.
    #[arg(long)]
    summary_out: Option<PathBuf>,
    /// Override the config's repetition count.
    #[arg(long)]
    repetitions: Option<u32>,
    /// Override the config's base seed.
    #[arg(long)]
    base_seed: Option<u64>,
}

#[derive(Args)]
struct SummarizeArgs {
    /// Record CSV produced by `netsens experiment`.
    records: PathBuf,
    /// Summary CSV destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn out_writer(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn main() -> anyhow::Result<()> {
    harness::init_threads_from_env();
    let cli = Cli::parse();
    match cli.command {
        Command::Generate(args) => generate(args),
        Command::Measure(args) => measure(args),
        Command::Modify(args) => modify(args),
        Command::Experiment(args) => experiment(args),
        Command::Summarize(args) => summarize_cmd(args),
    }
}

fn generate(args: GenerateArgs) -> anyhow::Result<()> {
    let (graph, out) = match args.model {
        ModelCommand::Er { n, p, seed, out } => (generators::erdos_renyi(n, p, seed)?, out),
        ModelCommand::Ba { n, l, seed, out } => (generators::barabasi_albert(n, l, seed)?, out),
        ModelCommand::Ws {
            n,
            k,
            p_rew,
            seed,
            out,
        } => (generators::watts_strogatz(n, k, p_rew, seed)?, out),
        ModelCommand::Cf {
            degrees_from,
            directed_source,
            seed,
            out,
        } => {
            let file = File::open(&degrees_from)
                .with_context(|| format!("opening {}", degrees_from.display()))?;
            let loaded = load_edge_list(BufReader::new(file), directed_source)?;
            (
                generators::configuration_model(&loaded.graph.degree_sequence(), seed)?,
                out,
            )
        }
    };
    let mut w = out_writer(out.as_deref())?;
    write_edge_list(&graph, &mut w)?;
    w.flush()?;
    eprintln!(
        "generated graph: {} vertices, {} edges",
        graph.vertex_count(),
        graph.edge_count()
    );
    Ok(())
}

fn measure(args: MeasureArgs) -> anyhow::Result<()> {
    let g = args.graph.load()?;
    let mut w = out_writer(args.out.as_deref())?;
    if args.target == "nf" {
        let nf: NeighborhoodFunction = if args.approx {
            hyperanf(&g, args.registers, args.runs, args.seed)?
        } else {
            exact_neighborhood_function(&g)
        };
        write_nf_csv(&nf, &mut w)?;
        w.flush()?;
        match harmonic_diameter(&nf) {
            Ok(hd) => eprintln!("harmonic diameter: {hd}"),
            Err(e) => eprintln!("harmonic diameter: undefined ({e})"),
        }
        match average_distance(&nf) {
            Ok(d) => eprintln!("average distance: {d}"),
            Err(e) => eprintln!("average distance: undefined ({e})"),
        }
        eprintln!("reachable pairs: {}", reachable_pairs(&nf));
    } else {
        let measure: Measure = args
            .target
            .parse()
            .with_context(|| format!("unknown measurement target {:?}", args.target))?;
        anyhow::ensure!(
            measure.valid_for(g.is_directed()),
            "{measure} needs a directed graph"
        );
        let cv = centrality(&g, measure, &args.power.params()?)?;
        if !cv.converged() {
            eprintln!("warning: {measure} hit the iteration cap before converging");
        }
        write_centrality_csv(&g, &cv, &mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn modify(args: ModifyArgs) -> anyhow::Result<()> {
    let g = args.graph.load()?;
    let level = ModificationLevel::new(args.theta)?;
    let plan = removal_order(
        &g,
        args.strategy,
        &args.power.params()?,
        args.seed,
        args.lp_max_rounds,
    )?;
    if let Some(path) = &args.plan_out {
        let mut w = out_writer(Some(path))?;
        write_plan_csv(&g, &plan, &mut w)?;
        w.flush()?;
    }
    let outcome = apply_removal(&g, &plan, level)?;
    if let Some(path) = &args.map_out {
        let mut w = out_writer(Some(path))?;
        write_id_map_csv(&g, &outcome.id_map, &mut w)?;
        w.flush()?;
    }
    let mut w = out_writer(args.out.as_deref())?;
    write_edge_list(&outcome.graph, &mut w)?;
    w.flush()?;
    eprintln!(
        "removed {} of {} vertices and {} of {} edges (theta = {})",
        outcome.removed_vertices,
        g.vertex_count(),
        outcome.removed_edges,
        g.edge_count(),
        args.theta
    );
    Ok(())
}

fn experiment(args: ExperimentArgs) -> anyhow::Result<()> {
    let file = File::open(&args.config)
        .with_context(|| format!("opening config {}", args.config.display()))?;
    let mut cfg = ExperimentConfig::from_json(BufReader::new(file))
        .with_context(|| format!("parsing config {}", args.config.display()))?;
    if let Some(reps) = args.repetitions {
        cfg.repetitions = reps;
    }
    if let Some(seed) = args.base_seed {
        cfg.base_seed = seed;
    }
    let records = harness::run_experiment(&cfg)?;
    let mut w = out_writer(args.out.as_deref())?;
    write_records_csv(&records, &mut w)?;
    w.flush()?;
    if let Some(path) = &args.summary_out {
        let mut w = out_writer(Some(path))?;
        write_summary_csv(&summarize(&records), &mut w)?;
        w.flush()?;
    }
    eprintln!("wrote {} records", records.len());
    Ok(())
}

fn summarize_cmd(args: SummarizeArgs) -> anyhow::Result<()> {
    let file = File::open(&args.records)
        .with_context(|| format!("opening records {}", args.records.display()))?;
    let records = read_records_csv(BufReader::new(file))?;
    let rows = summarize(&records);
    let mut w = out_writer(args.out.as_deref())?;
    write_summary_csv(&rows, &mut w)?;
    w.flush()?;
    eprintln!("{} groups from {} records", rows.len(), records.len());
    Ok(())
}
