use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use transforms_cli::cache::OracleCache;
use transforms_cli::config::{parse_real, ExperimentConfig, ExperimentKind};
use transforms_cli::eval::{EvalRequest, Method, Side, Transform};
use transforms_cli::{run, run_eval};
use transforms_core::Execution;

#[derive(Parser)]
#[command(
    name = "transforms",
    version,
    about = "Half-line Cauchy and Hilbert transform experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run every grid sequentially.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated mapped expansion: error against n for several p.
    Changingr(RunArgs),
    /// Fixed-cost sweep over p under n = rule/p.
    Optimalr(RunArgs),
    /// Möbius + power map for H f(1.5) with algebraically decaying f.
    IntegerDecay(RunArgs),
    /// Large-frequency expansion of H[e^{(iω-1)x^3}].
    Oscillatory(RunArgs),
    /// Regularized partial sums for irrational exponents.
    Irrational(RunArgs),
    /// Evaluate one transform value.
    Eval(EvalArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides `output_dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot.
    #[arg(long)]
    plot: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "f")]
    function: String,
    #[arg(long, default_value = "oracle")]
    method: Method,
    #[arg(long, default_value = "cauchy")]
    transform: Transform,
    #[arg(long, allow_negative_numbers = true)]
    re: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    im: f64,
    #[arg(long, allow_hyphen_values = true)]
    side: Option<Side>,
    #[arg(long, default_value_t = 1)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    q: u32,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 100.0)]
    omega: f64,
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long = "M", default_value_t = 10)]
    big_m: usize,
    /// Exponent for `irr` and the irrational method; accepts `e`, `4-pi`, ...
    #[arg(long, default_value = "e", value_parser = parse_real)]
    r: f64,
    #[arg(long, default_value = "1e-12", value_parser = parse_real)]
    rel_tol: f64,
    #[arg(long, default_value = "1e-14", value_parser = parse_real)]
    abs_tol: f64,
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

fn experiment(kind: ExperimentKind, args: RunArgs, exec: Execution) -> Result<()> {
    let mut config = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ExperimentConfig::parse_for(&text, Some(kind)).with_context(|| format!("in {}", path.display()))?
        }
        None => ExperimentConfig::defaults(kind),
    };
    if let Some(out) = args.out {
        config.output_dir = out;
    }
    config.plot |= args.plot;
    let cache = OracleCache::from_env(&config.output_dir.join("cache"));
    let out = run(&config, &cache, exec)?;
    println!("wrote {} ({} rows)", out.csv.display(), out.table.rows.len());
    if let Some(svg) = out.svg {
        println!("wrote {}", svg.display());
    }
    Ok(())
}

fn eval(args: EvalArgs, exec: Execution) -> Result<()> {
    let mut config = ExperimentConfig::defaults(ExperimentKind::Eval);
    config.output_dir = args.out;
    config.rel_tol = args.rel_tol;
    config.abs_tol = args.abs_tol;
    config.eval = EvalRequest {
        function: args.function,
        method: args.method,
        transform: args.transform,
        point: num_complex::Complex64::new(args.re, args.im),
        side: args.side,
        p: args.p,
        q: args.q,
        n: args.n,
        omega: args.omega,
        m: args.m,
        big_m: args.big_m,
        r: args.r,
    };
    let (out, path) = run_eval(&config, exec)?;
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    let v = out.estimate.value;
    println!("{:e} {:+e}i ± {:.1e}", v.re, v.im, out.estimate.error);
    println!("wrote {}", path.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let result = match cli.command {
        Command::Changingr(a) => experiment(ExperimentKind::ChangingR, a, exec),
        Command::Optimalr(a) => experiment(ExperimentKind::OptimalR, a, exec),
        Command::IntegerDecay(a) => experiment(ExperimentKind::IntegerDecay, a, exec),
        Command::Oscillatory(a) => experiment(ExperimentKind::Oscillatory, a, exec),
        Command::Irrational(a) => experiment(ExperimentKind::Irrational, a, exec),
        Command::Eval(a) => eval(a, exec),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
