use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use graphsize::estimator::AuxMode;
use graphsize::experiment::{evaluate, run_experiment, Correction, EstimateSpec, EstimatorKind, ExperimentPlan, GraphSpec, SamplerSpec};
use graphsize::graph::{exact_stats, largest_connected_component, load_edge_list, size_identity, write_edge_list, LoadOptions};
use graphsize::report::{emit_csv, emit_svg_band, read_csv, SvgOptions};
use graphsize::sample_file::{read_sample, write_sample};
use graphsize::star::StarVariant;
use graphsize::{Error, Graph, WeightRule};
use serde_json::json;

const GENERATORS: [&str; 6] = ["er", "ba", "ring", "grid", "star", "complete"];

#[derive(Parser)]
#[command(name = "graphsize", version, about = "Estimate the number of nodes of a graph from node samples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact statistics of a graph
    Graphstat(GraphArgs),
    /// Write a synthetic graph as an edge list
    Gen {
        /// Generator: er:N:P:SEED, ba:N:M:SEED, ring:COUNT:SIZE, grid:ROWS:COLS, star:LEAVES, complete:N
        spec: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Draw a sample from a graph
    Sample(SampleArgs),
    /// Estimate the graph size from a sample file and print JSON
    Estimate(EstimateArgs),
    /// Run a key-value plan file and write percentile bands as CSV
    Experiment {
        plan: PathBuf,
        /// CSV output (stdout when absent)
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Also render an SVG band plot
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        log_x: bool,
    },
    /// Render an experiment CSV as an SVG band plot
    Plot {
        csv: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "")]
        title: String,
        #[arg(long, default_value = "parameter")]
        x_label: String,
        #[arg(long)]
        log_x: bool,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Edge-list file, or a generator spec such as er:1000:0.02:7
    graph: String,
    /// Use only the largest connected component
    #[arg(long)]
    lcc: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, value_enum)]
    method: MethodArg,
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Weight rule for weighted draws
    #[arg(long, value_enum, default_value = "degree")]
    weight: WeightArg,
    /// Walker count for rw-multi; n is split evenly
    #[arg(long, default_value_t = 1)]
    walkers: usize,
    /// Start node id for a single walk
    #[arg(long)]
    start: Option<u64>,
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    /// Sample file
    sample: PathBuf,
    #[arg(long, value_enum)]
    estimator: EstimatorArg,
    #[arg(long, value_enum, default_value = "none")]
    correction: CorrectionArg,
    #[arg(long, default_value_t = 1)]
    theta: usize,
    #[arg(long, default_value_t = 0)]
    margin: usize,
    #[arg(long, value_enum, default_value = "set")]
    a_mode: AModeArg,
    /// Star sampling variant (experimental estimator)
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    /// Seed of the capture-recapture split
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Uis,
    Wis,
    Rw,
    RwMulti,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightArg {
    Unit,
    Degree,
}

#[derive(Clone, Copy, ValueEnum)]
enum EstimatorArg {
    NodeUis,
    NodeWis,
    Capture,
    MleApprox,
    MleExact,
    IndA,
    IndB,
    /// Experimental
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorrectionArg {
    None,
    Thin,
    ThinShifted,
    Margin,
    CrossWalker,
}

#[derive(Clone, Copy, ValueEnum)]
enum AModeArg {
    Set,
    Multiset,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Uis,
    Wis,
}

fn writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_graph(args: &GraphArgs) -> Result<Graph> {
    let kind = args.graph.split(':').next().unwrap_or("");
    let g = if GENERATORS.contains(&kind) || kind == "file" {
        args.graph.parse::<GraphSpec>()?.build()?
    } else {
        let file = File::open(&args.graph).with_context(|| format!("opening {}", args.graph))?;
        let (g, report) = load_edge_list(BufReader::new(file), &LoadOptions::default())?;
        if report.self_loops + report.duplicate_edges > 0 {
            eprintln!(
                "note: dropped {} self-loops and {} duplicate edges",
                report.self_loops, report.duplicate_edges
            );
        }
        g
    };
    Ok(if args.lcc { largest_connected_component(&g) } else { g })
}

fn graphstat(args: &GraphArgs) -> Result<()> {
    let g = load_graph(args)?;
    if !g.is_connected() {
        eprintln!(
            "warning: graph has {} connected components; walk samplers need --lcc",
            g.component_count()
        );
    }
    let stats = exact_stats(&g)?;
    let mut out = writer(None)?;
    writeln!(out, "nodes\t{}", g.node_count())?;
    writeln!(out, "edges\t{}", g.edge_count())?;
    writeln!(out, "mean_degree\t{}", stats.mean_degree)?;
    writeln!(out, "mean_square_degree\t{}", stats.mean_square_degree)?;
    writeln!(out, "density\t{}", stats.density)?;
    if let Some(d) = stats.diameter_hint {
        writeln!(out, "diameter_hint\t{d}")?;
    }
    match size_identity(&g) {
        Ok(n) => writeln!(out, "identity_residual\t{}", (n - g.node_count() as f64) / g.node_count() as f64)?,
        Err(e) => writeln!(out, "identity_residual\tundefined ({e})")?,
    }
    out.flush()?;
    Ok(())
}

fn sample(args: &SampleArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let s = match args.method {
        MethodArg::Uis => graphsize::sample_uis(&g, args.n, args.seed)?,
        MethodArg::Wis => {
            let rule = match args.weight {
                WeightArg::Unit => WeightRule::Unit,
                WeightArg::Degree => WeightRule::Degree,
            };
            graphsize::sample_wis(&g, &rule, args.n, args.seed)?
        }
        MethodArg::Rw => graphsize::sample_rw(&g, args.n, args.seed, args.start)?,
        MethodArg::RwMulti => {
            if args.start.is_some() {
                return Err(Error::Incompatible("--start applies to a single walk".into()).into());
            }
            SamplerSpec::walkers(args.walkers).draw(&g, args.n, args.seed)?
        }
    };
    let mut out = writer(args.out.as_deref())?;
    write_sample(&s, &mut out)?;
    out.flush()?;
    Ok(())
}

fn estimate(args: &EstimateArgs) -> Result<()> {
    let s = read_sample(BufReader::new(
        File::open(&args.sample).with_context(|| format!("opening {}", args.sample.display()))?,
    ))?;
    let estimator = match args.estimator {
        EstimatorArg::NodeUis => EstimatorKind::NodeUis,
        EstimatorArg::NodeWis => EstimatorKind::NodeWis,
        EstimatorArg::Capture => EstimatorKind::Capture,
        EstimatorArg::MleApprox => EstimatorKind::MleApprox,
        EstimatorArg::MleExact => EstimatorKind::MleExact,
        EstimatorArg::IndA => EstimatorKind::IndA,
        EstimatorArg::IndB => EstimatorKind::IndB,
        EstimatorArg::Star => EstimatorKind::Star,
    };
    let correction = match args.correction {
        CorrectionArg::None => Correction::None,
        CorrectionArg::Thin => Correction::Thin,
        CorrectionArg::ThinShifted => Correction::ThinShifted,
        CorrectionArg::Margin => Correction::Margin,
        CorrectionArg::CrossWalker => Correction::CrossWalker,
    };
    let mut spec = EstimateSpec::new(estimator).with_correction(correction);
    spec.theta = args.theta;
    spec.m = args.margin;
    spec.seed = args.seed;
    spec.a_mode = match args.a_mode {
        AModeArg::Set => AuxMode::Set,
        AModeArg::Multiset => AuxMode::Multiset,
    };
    spec.star_variant = args.variant.map(|v| match v {
        VariantArg::Uis => StarVariant::Uis,
        VariantArg::Wis => StarVariant::Wis,
    });
    if args.variant.is_some() && estimator != EstimatorKind::Star {
        return Err(Error::Incompatible("--variant applies to the star estimator only".into()).into());
    }
    if estimator == EstimatorKind::Star {
        eprintln!("EXPERIMENTAL: star sampling performs poorly in simulations; treat its output as a rough comparison only");
    }
    let eval = evaluate(&s, &spec)?;
    let mut params = serde_json::Map::new();
    match correction {
        Correction::Thin | Correction::ThinShifted => {
            params.insert("theta".into(), json!(args.theta));
        }
        Correction::Margin => {
            params.insert("m".into(), json!(args.margin));
        }
        _ => {}
    }
    if matches!(estimator, EstimatorKind::IndB) {
        params.insert("a_mode".into(), json!(spec.a_mode.as_str()));
    }
    if estimator == EstimatorKind::Capture {
        params.insert("seed".into(), json!(args.seed));
    }
    if let Some(v) = args.variant {
        params.insert("variant".into(), json!(if matches!(v, VariantArg::Uis) { "uis" } else { "wis" }));
    }
    let value = match eval.outcome.value() {
        Some(v) => json!(v),
        None => json!("no_collisions"),
    };
    let doc = json!({
        "estimator": estimator.as_str(),
        "correction": correction.as_str(),
        "params": params,
        "n": s.len(),
        "numerator": eval.ratio.map(|r| r.numerator),
        "denominator": eval.ratio.map(|r| r.denominator),
        "estimate": value,
    });
    println!("{doc}");
    Ok(())
}

fn experiment(plan: &Path, csv: Option<&Path>, svg: Option<&Path>, log_x: bool) -> Result<()> {
    let file = File::open(plan).with_context(|| format!("opening {}", plan.display()))?;
    let plan = ExperimentPlan::parse(BufReader::new(file))?;
    let summaries = run_experiment(&plan)?;
    let mut out = writer(csv)?;
    emit_csv(&summaries, &mut out)?;
    out.flush()?;
    if let Some(path) = svg {
        let opts = SvgOptions {
            x_label: plan.sweep.name().to_string(),
            y_label: if plan.relative { "N\u{302}/N".into() } else { "N\u{302}".into() },
            reference: plan.relative.then_some(1.0),
            log_x,
            ..SvgOptions::default()
        };
        let mut w = writer(Some(path))?;
        emit_svg_band(&summaries, &opts, &mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn plot(csv: &Path, out: Option<&Path>, title: &str, x_label: &str, log_x: bool) -> Result<()> {
    let rows = read_csv(File::open(csv).with_context(|| format!("opening {}", csv.display()))?)?;
    let opts = SvgOptions { title: title.into(), x_label: x_label.into(), log_x, ..SvgOptions::default() };
    let mut w = writer(out)?;
    emit_svg_band(&rows, &opts, &mut w)?;
    w.flush()?;
    Ok(())
}

fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("GRAPHSIZE_THREADS") {
        let threads: usize = raw
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("GRAPHSIZE_THREADS must be a positive integer, got {raw:?}")))?;
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Graphstat(args) => graphstat(&args),
        Command::Gen { spec, out } => {
            let g = spec.parse::<GraphSpec>()?.build()?;
            let mut w = writer(out.as_deref())?;
            write_edge_list(&g, &mut w)?;
            w.flush()?;
            Ok(())
        }
        Command::Sample(args) => sample(&args),
        Command::Estimate(args) => estimate(&args),
        Command::Experiment { plan, csv, svg, log_x } => experiment(&plan, csv.as_deref(), svg.as_deref(), log_x),
        Command::Plot { csv, out, title, x_label, log_x } => plot(&csv, out.as_deref(), &title, &x_label, log_x),
    }
}

/// 2 for configuration problems, 3 for bad or unusable data.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_configuration() => 2,
        Some(_) => 3,
        None if err.downcast_ref::<rayon::ThreadPoolBuildError>().is_some() => 2,
        None => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
