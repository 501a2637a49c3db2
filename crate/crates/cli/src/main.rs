//! `obd`: decompose templates, verify decompositions, count copies exactly
//! and estimate copy counts from the command line.
//!
//! Exit statuses: 0 success, 1 internal error, 2 validation error (bad
//! input, failed class check, invalid decomposition), 3 search budget
//! exhausted before a conclusion.

mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use obd::decomposers::{decompose, decompose_auto, parse_hint, ClassInput, Structure};
use obd::estimator::{estimate, expected_count_formula, EstimateConfig, EstimateReport, Mode, Plan};
use obd::generators::random_gnp;
use obd::grid_negative::{build_diagonal_graph, spanning_component_check, Diagonal};
use obd::oracle::{exact_copies, falling_factorial, ORACLE_BUDGET};
use obd::search::{exhaustive_min_width, MinWidth};
use obd::{read_graph, verify, width, Decomposition, ErrorKind, Graph};

/// Environment variable overriding the default search budgets.
const BUDGET_VAR: &str = "OBD_BUDGET";

/// Default node budget for `grid-negative --mode exhaustive`.
const GRID_BUDGET: u64 = 1_000_000_000;

#[derive(Parser)]
#[command(name = "obd", version, about = "Ordered bipartite decompositions and subgraph copy estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a template of a declared class.
    Decompose(DecomposeArgs),
    /// Check a decomposition and print a JSON validity report.
    Verify(VerifyArgs),
    /// Estimate the number of copies of a template in a base graph.
    Estimate(EstimateArgs),
    /// Count copies exactly by backtracking.
    Exact(ExactArgs),
    /// Check the grid lower bound by exhaustive search or diagonal-graph sweeps.
    GridNegative(GridArgs),
    /// Estimate over a grid of random-graph cells and write CSV.
    Sweep(sweep::SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Class {
    Path,
    Cycle,
    Tree,
    Grid,
    Subdivision,
    Outerplanar,
    SeriesParallel,
    Planar16,
    /// Disjoint union of paths and cycles (no triangles).
    Degree2,
    /// Per-component classification.
    Auto,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Template graph file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    class: Class,
    /// Hint file with the class structure (face, marked, grid, sp, root).
    #[arg(long)]
    hint: Option<PathBuf>,
    /// Where to write the decomposition; standard output if absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    decomposition: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
#[command(group(ArgGroup::new("plan").required(true).args(["decomposition", "auto_decompose"])))]
#[command(group(ArgGroup::new("source").required(true).args(["base", "random"])))]
#[command(group(ArgGroup::new("mode").required(true).args(["trials", "epsilon"])))]
struct EstimateArgs {
    #[arg(long)]
    template: PathBuf,
    /// Decomposition file for the template.
    #[arg(long)]
    decomposition: Option<PathBuf>,
    /// Decompose the template automatically, handling triangle components.
    #[arg(long)]
    auto_decompose: bool,
    /// Base graph file.
    #[arg(long)]
    base: Option<PathBuf>,
    /// Use a G(n, p) base graph drawn with the run's seed.
    #[arg(long, num_args = 2, value_names = ["N", "P"])]
    random: Option<Vec<String>>,
    /// Fixed number of trials.
    #[arg(long)]
    trials: Option<u64>,
    /// Relative error target for adaptive mode.
    #[arg(long, requires = "delta")]
    epsilon: Option<f64>,
    /// Failure probability for adaptive mode.
    #[arg(long, requires = "epsilon")]
    delta: Option<f64>,
    /// Upper limit on trials in adaptive mode.
    #[arg(long, default_value_t = 100_000_000)]
    max_trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; the result does not depend on this.
    #[arg(long, default_value_t = default_workers())]
    workers: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Include wall-clock time in the output, which makes it non-reproducible.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    template: PathBuf,
    #[arg(long)]
    base: PathBuf,
    /// Search node budget; defaults to $OBD_BUDGET or the library default.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GridMode {
    Exhaustive,
    DiagonalSweep,
}

#[derive(Args)]
struct GridArgs {
    /// Side length of the grid.
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum)]
    mode: GridMode,
    /// Width cap for exhaustive mode; defaults to k - 1.
    #[arg(long)]
    cap: Option<usize>,
    /// Number of random diagonal graphs in sweep mode.
    #[arg(long, default_value_t = 10_000)]
    graphs: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search node budget; defaults to $OBD_BUDGET or 10^9.
    #[arg(long)]
    budget: Option<u64>,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

/// A failure with its exit status.
#[derive(Debug)]
pub(crate) struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn validation(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<obd::Error> for Failure {
    fn from(e: obd::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Validation => 2,
            ErrorKind::Internal => 1,
            ErrorKind::Inconclusive => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

pub(crate) type CliResult<T> = std::result::Result<T, Failure>;

pub(crate) fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::validation(format!("cannot read {}: {e}", path.display())))
}

pub(crate) fn load_graph(path: &Path) -> CliResult<Graph> {
    read_graph(&read_text(path)?).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

fn load_decomposition(path: &Path) -> CliResult<Decomposition> {
    Decomposition::parse(&read_text(path)?).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))
}

pub(crate) fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::internal(format!("cannot write {}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::internal(format!("cannot write output: {e}"))),
    }
}

fn budget(flag: Option<u64>, default: u64) -> CliResult<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::validation(format!("{BUDGET_VAR} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(default),
    }
}

fn to_json(value: &impl Serialize) -> CliResult<String> {
    serde_json::to_string_pretty(value).map(|s| s + "\n").map_err(|e| Failure::internal(e.to_string()))
}

fn structure_for(class: Class, hint: Option<Structure>) -> CliResult<Option<Structure>> {
    let need = |what: &str| Failure::validation(format!("class {class:?} needs a hint file with a `{what}:` line"));
    let mismatch = |s: &Structure| Failure::validation(format!("hint describes a {}, not {class:?}", s.name()));
    Ok(Some(match (class, hint) {
        (Class::Auto, None) => return Ok(None),
        (Class::Auto, Some(s)) => s,
        (Class::Path, None) => Structure::Path,
        (Class::Cycle, None) => Structure::Cycle,
        (Class::Planar16, None) => Structure::Planar16,
        (Class::Degree2, None) => Structure::DegreeLeTwo,
        (Class::Tree, None) => Structure::Tree { root: None },
        (Class::Tree, Some(s @ Structure::Tree { .. }))
        | (Class::Grid, Some(s @ Structure::Grid { .. }))
        | (Class::Subdivision, Some(s @ Structure::Subdivision { .. }))
        | (Class::Outerplanar, Some(s @ Structure::Outerplanar { .. }))
        | (Class::SeriesParallel, Some(s @ Structure::SeriesParallel(_))) => s,
        (Class::Grid, None) => return Err(need("grid")),
        (Class::Subdivision, None) => return Err(need("marked")),
        (Class::Outerplanar, None) => return Err(need("face")),
        (Class::SeriesParallel, None) => return Err(need("sp")),
        (_, Some(s)) => return Err(mismatch(&s)),
    }))
}

fn cmd_decompose(args: &DecomposeArgs) -> CliResult<()> {
    let graph = load_graph(&args.input)?;
    let hint = match &args.hint {
        Some(path) => {
            Some(parse_hint(&read_text(path)?).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?)
        }
        None => None,
    };
    let d = match structure_for(args.class, hint)? {
        Some(structure) => decompose(&ClassInput { graph: graph.clone(), structure })?,
        None => {
            let auto = decompose_auto(&graph, None)?;
            if !auto.triangles.is_empty() {
                return Err(obd::Error::UseTriangleExtension.into());
            }
            auto.decomposition
        }
    };
    let report = verify(&graph, &d)?;
    if !report.valid {
        return Err(Failure::internal(format!("decomposer output failed verification: {}", to_json(&report)?)));
    }
    emit(args.output.as_deref(), &d.to_text())?;
    eprintln!("width {}, {} stages", width(&graph, &d)?, d.len());
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> CliResult<()> {
    let graph = load_graph(&args.graph)?;
    let d = load_decomposition(&args.decomposition)?;
    let report = verify(&graph, &d)?;
    emit(None, &to_json(&report)?)?;
    if report.valid {
        Ok(())
    } else {
        Err(Failure::validation("decomposition is not valid"))
    }
}

/// Flat estimator output shared by the JSON and CSV formats.
#[derive(Serialize)]
struct EstimateLine {
    template: String,
    base: String,
    n: usize,
    p: Option<f64>,
    seed: u64,
    trials: u64,
    mean: f64,
    mean_num: String,
    mean_den: String,
    variance: f64,
    zero_fraction: f64,
    ratio: Option<f64>,
    /// `n! p^e / aut` for a random base.
    formula: Option<f64>,
    elapsed_ms: Option<u64>,
}

pub(crate) fn parse_probability(text: &str) -> CliResult<f64> {
    let p: f64 = text.parse().map_err(|_| Failure::validation(format!("`{text}` is not a probability")))?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Failure::validation(format!("probability {p} outside [0, 1]")));
    }
    Ok(p)
}

/// `n! p^e / aut` for the template padded with isolated vertices to `n`
/// vertices, whose automorphisms are those of its non-isolated part times
/// the permutations of the padding.
pub(crate) fn formula(n: usize, p: f64, h: &Graph, report: &EstimateReport) -> CliResult<f64> {
    let p = BigRational::from_float(p).ok_or_else(|| Failure::validation("probability is not finite"))?;
    let core = (0..h.vertex_count()).filter(|&v| h.degree(v) > 0).count();
    let padding = n.saturating_sub(core);
    let aut = report.aut() * falling_factorial(padding, padding);
    let f = expected_count_formula(n, &p, h.edge_count(), &aut)?;
    Ok(f.to_f64().unwrap_or(f64::INFINITY))
}

fn cmd_estimate(args: &EstimateArgs) -> CliResult<()> {
    let h = load_graph(&args.template)?;
    let plan = match &args.decomposition {
        Some(path) => Plan::new(&h, &load_decomposition(path)?, &[])?,
        None => Plan::auto(&h)?,
    };
    let (g, base_name, p) = match (&args.base, &args.random) {
        (Some(path), _) => (load_graph(path)?, path.display().to_string(), None),
        (None, Some(np)) => {
            let n: usize =
                np[0].parse().map_err(|_| Failure::validation(format!("`{}` is not a vertex count", np[0])))?;
            let p = parse_probability(&np[1])?;
            (random_gnp(n, p, args.seed)?, format!("G({n}, {p})"), Some(p))
        }
        (None, None) => unreachable!("clap requires a base"),
    };
    let mode = match (args.trials, args.epsilon, args.delta) {
        (Some(trials), _, _) => Mode::Fixed { trials },
        (None, Some(epsilon), Some(delta)) => Mode::Adaptive { epsilon, delta, max_trials: args.max_trials },
        _ => unreachable!("clap requires a mode"),
    };
    let config = EstimateConfig { mode, seed: args.seed, workers: args.workers.max(1) };
    let report = estimate(&plan, &g, &config)?;
    let row = report.row(&args.template.display().to_string(), &base_name, g.vertex_count(), p);
    let line = EstimateLine {
        template: row.template,
        base: row.base,
        n: row.n,
        p: row.p,
        seed: row.seed,
        trials: row.trials,
        mean: report.point_estimate().to_f64().unwrap_or(f64::NAN),
        mean_num: row.mean_num,
        mean_den: row.mean_den,
        variance: row.variance,
        zero_fraction: row.zero_fraction,
        ratio: row.ratio,
        formula: p.map(|p| formula(g.vertex_count(), p, &h, &report)).transpose()?,
        elapsed_ms: args.timing.then_some(row.elapsed_ms),
    };
    let text = match args.format {
        Format::Json => to_json(&line)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.serialize(&line).map_err(|e| Failure::internal(e.to_string()))?;
            String::from_utf8(w.into_inner().map_err(|e| Failure::internal(e.to_string()))?)
                .map_err(|e| Failure::internal(e.to_string()))?
        }
    };
    emit(args.output.as_deref(), &text)
}

fn cmd_exact(args: &ExactArgs) -> CliResult<()> {
    let h = load_graph(&args.template)?;
    let g = load_graph(&args.base)?;
    let count = exact_copies(&h, &g, budget(args.budget, ORACLE_BUDGET)?)?;
    emit(
        None,
        &to_json(&json!({
            "embeddings": count.embeddings.to_string(),
            "copies": count.copies.to_string(),
            "aut": count.aut.to_string(),
        }))?,
    )
}

fn cmd_grid_negative(args: &GridArgs) -> CliResult<()> {
    match args.mode {
        GridMode::Exhaustive => {
            let cap = args.cap.unwrap_or(args.k.saturating_sub(1));
            let grid = obd::generators::grid(args.k, args.k);
            let outcome = exhaustive_min_width(&grid, cap, budget(args.budget, GRID_BUDGET)?)?;
            let (result, extra) = match &outcome {
                MinWidth::NoDecomposition => ("none", json!(null)),
                MinWidth::Found { decomposition, width } => {
                    ("found", json!({ "width": width, "parts": decomposition.parts() }))
                }
                MinWidth::Inconclusive { nodes } => ("inconclusive", json!({ "nodes": nodes })),
            };
            emit(None, &to_json(&json!({ "k": args.k, "cap": cap, "result": result, "detail": extra }))?)?;
            match outcome {
                MinWidth::Inconclusive { .. } => Err(Failure { code: 3, message: "search budget exhausted".into() }),
                _ => Ok(()),
            }
        }
        GridMode::DiagonalSweep => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut witnesses = 0u64;
            let mut first_failure = None;
            for i in 0..args.graphs {
                let hd = build_diagonal_graph(
                    args.k,
                    |_, _| if rng.gen_bool(0.5) { Diagonal::Main } else { Diagonal::Anti },
                )?;
                match spanning_component_check(&hd, args.k) {
                    Ok(_) => witnesses += 1,
                    Err(e) => {
                        first_failure.get_or_insert((i, e.to_string()));
                    }
                }
            }
            emit(
                None,
                &to_json(&json!({ "k": args.k, "graphs": args.graphs, "seed": args.seed, "witnesses": witnesses }))?,
            )?;
            match first_failure {
                None => Ok(()),
                Some((i, msg)) => Err(Failure::internal(format!("diagonal graph {i}: {msg}"))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Estimate(a) => cmd_estimate(a),
        Command::Exact(a) => cmd_exact(a),
        Command::GridNegative(a) => cmd_grid_negative(a),
        Command::Sweep(a) => sweep::run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
