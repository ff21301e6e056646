use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use pasmo_bench::chessboard::gen_chessboard;
use pasmo_bench::histogram::build_histogram;
use pasmo_bench::libsvm::{parse_libsvm, write_libsvm};
use pasmo_bench::report::{emit_report, parse_json_report, Format};
use pasmo_bench::run::{run_bench, run_single, RunConfig, SolverChoice};
use pasmo_core::{Dataset, KernelSpec, PrecomputedKernel};

#[derive(Parser)]
#[command(
    name = "pasmo",
    about = "SMO and planning-ahead SMO for the dual SVM problem",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve once on the data in file order.
    Solve(SolveArgs),
    /// Solve every permutation of the data and summarize.
    Bench {
        #[command(flatten)]
        args: SolveArgs,
        #[arg(long, default_value_t = 10)]
        permutations: usize,
    },
    /// Write a chess-board dataset in LIBSVM format.
    GenChessboard {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of planning step ratios from a JSON report.
    Hist {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        bins: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    /// LIBSVM file; without it a chess-board problem of size --n is generated.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
    #[arg(long, default_value = "pa")]
    solver: String,
    #[arg(long, default_value_t = 1e-3)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.9)]
    eta: f64,
    #[arg(long = "C", default_value_t = 1e6)]
    c: f64,
    /// rbf:<gamma>, linear or precomputed:<file>
    #[arg(long, default_value = "rbf:0.5")]
    kernel: String,
    #[arg(long, default_value_t = 64.0)]
    cache_mb: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000_000)]
    max_iters: u64,
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kernel(spec: &str) -> Result<KernelSpec> {
    if spec == "linear" {
        return Ok(KernelSpec::Linear);
    }
    if let Some(gamma) = spec.strip_prefix("rbf:") {
        let gamma: f64 = gamma
            .parse()
            .with_context(|| format!("invalid gamma {gamma:?}"))?;
        return Ok(KernelSpec::gaussian(gamma)?);
    }
    if let Some(path) = spec.strip_prefix("precomputed:") {
        return Ok(KernelSpec::Precomputed(Arc::new(read_matrix(Path::new(
            path,
        ))?)));
    }
    bail!("unknown kernel {spec:?}, expected rbf:<gamma>, linear or precomputed:<file>")
}

/// Whitespace separated dense matrix, one row per line.
fn read_matrix(path: &Path) -> Result<PrecomputedKernel> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut rows = Vec::new();
    for (k, line) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let row = line
            .split_whitespace()
            .map(str::parse::<f64>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("{}:{}: invalid number", path.display(), k + 1))?;
        rows.push(row);
    }
    Ok(PrecomputedKernel::from_rows(rows)?)
}

fn load_data(args: &SolveArgs) -> Result<(Dataset, String)> {
    match &args.data {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let data =
                parse_libsvm(&text).with_context(|| format!("parsing {}", path.display()))?;
            let name = path
                .file_stem()
                .map_or_else(|| "data".into(), |s| s.to_string_lossy().into_owned());
            Ok((data, name))
        }
        None => Ok((
            gen_chessboard(args.n, args.seed),
            format!("chessboard-{}", args.n),
        )),
    }
}

fn run_config(args: &SolveArgs, permutations: usize) -> Result<RunConfig> {
    let solver: SolverChoice = args.solver.parse()?;
    Ok(RunConfig {
        epsilon: args.epsilon,
        eta: args.eta,
        cache_mb: args.cache_mb,
        permutations,
        seed: args.seed,
        max_iterations: args.max_iters,
        ..RunConfig::new(solver, args.c, parse_kernel(&args.kernel)?)
    })
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}

fn run(args: &SolveArgs, permutations: Option<usize>) -> Result<()> {
    let format: Format = args.format.parse()?;
    let (data, name) = load_data(args)?;
    let config = run_config(args, permutations.unwrap_or(1))?;
    let report = match permutations {
        Some(_) => run_bench(&config, &data, &name)?,
        None => run_single(&config, &data, &name)?,
    };
    write_output(args.out.as_deref(), &emit_report(&report, format)?)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Solve(args) => run(&args, None),
        Command::Bench { args, permutations } => run(&args, Some(permutations)),
        Command::GenChessboard { n, seed, out } => write_output(
            out.as_deref(),
            write_libsvm(&gen_chessboard(n, seed)).as_bytes(),
        ),
        Command::Hist { input, bins, out } => {
            let bytes = fs::read(&input).with_context(|| format!("reading {}", input.display()))?;
            let report = parse_json_report(&bytes)?;
            let ratios: Vec<f64> = report
                .runs
                .iter()
                .flat_map(|r| r.step_ratio_samples.iter().copied())
                .collect();
            let mut json = serde_json::to_vec_pretty(&build_histogram(&ratios, bins)?)?;
            json.push(b'\n');
            write_output(out.as_deref(), &json)
        }
    }
}
