mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Wardrop equilibria, social optima and price-of-anarchy curves for
/// nonatomic routing games.
#[derive(Parser, Debug)]
#[command(name = "poa", version)]
pub struct Cli {
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct GameSource {
    /// Network JSON file with per-edge cost specs.
    #[arg(long)]
    pub network: Option<PathBuf>,
    /// Built-in instance: pigou, step:A, pwl:A, exp:factorial, exp:super:B,
    /// bounded-path, shifted-affine, affine, polynomial, derivative-limit,
    /// affine-sandwich.
    #[arg(long)]
    pub instance: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Wardrop equilibrium at one demand.
    Solve {
        #[command(flatten)]
        game: GameSource,
        #[arg(long)]
        demand: f64,
        /// Require the log-domain solver (exponential instances only).
        #[arg(long)]
        log_domain: bool,
    },
    /// Social optimum at one demand.
    Opt {
        #[command(flatten)]
        game: GameSource,
        #[arg(long)]
        demand: f64,
        /// auto, marginal, step, pwl, exp, brute or general.
        #[arg(long, default_value = "auto")]
        method: String,
        /// Grid points per axis for the brute-force method.
        #[arg(long, default_value_t = 4001)]
        resolution: usize,
    },
    /// Price of anarchy at one demand.
    Poa {
        #[command(flatten)]
        game: GameSource,
        #[arg(long)]
        demand: f64,
    },
    /// PoA over a geometric demand range.
    Sweep {
        #[command(flatten)]
        game: GameSource,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 512)]
        per_decade: usize,
        /// Period ratio a for windows (2a^k, 2a^{k+1}]; inferred for step
        /// and interpolated-square instances.
        #[arg(long)]
        period_base: Option<f64>,
        /// Output file; relative paths resolve against $POA_OUT_DIR when set.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// liminf/limsup estimates from a sweep CSV.
    Extremes {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        period_base: Option<f64>,
        #[arg(long, default_value_t = 3)]
        periods: usize,
    },
    /// Reproduce a closed-form result with pass/fail per assertion.
    Repro {
        #[command(subcommand)]
        which: Repro,
    },
    /// Regular-variation report for one cost, or the canonical suite.
    Rv {
        /// Cost spec as JSON text, or @FILE.
        #[arg(long)]
        cost: Option<String>,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum Repro {
    /// Step costs: per-period extrema against (4+4a)/(4+3a).
    Thm5 {
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 512)]
        per_decade: usize,
    },
    /// Interpolated-square costs: PoA at the special demands.
    Thm6 {
        #[arg(long)]
        a: f64,
    },
    /// Exponential costs: PoA just right of α_k + α_{k+1}.
    Thm7 {
        /// factorial, super:B, or a comma-separated list.
        #[arg(long, default_value = "factorial")]
        alpha: String,
        #[arg(long)]
        k: usize,
    },
    /// Regular-variation closure checks on the canonical family.
    Rv,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(out) => {
            if !out.text.is_empty() {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: {}", commands::CliError::Failed);
                ExitCode::from(commands::CliError::Failed.exit_code())
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
