use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use secondary::verify::Suite;
use secondary_cli::commands::{self, VerifyOptions};
use secondary_cli::config::Config;
use secondary_cli::eval::Ring;
use secondary_cli::report::{Format, Report};
use secondary_cli::Result;

/// Exact computations in the Steenrod algebra and its secondary model.
///
/// Exit status: 0 on success, 1 on a computation or input error, 2 when a
/// verification fails.
#[derive(Debug, Parser)]
#[command(name = "secsteen", version)]
struct Cli {
    /// TOML file with defaults for the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Ring to evaluate in (inferred from the expression by default).
    #[arg(long, global = true, value_enum)]
    ring: Option<Ring>,
    /// Degree bound for verification, homology and sweeps.
    #[arg(long, global = true)]
    max_deg: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Prime for `bp-check` and the `bp` suite.
    #[arg(long, short = 'p', global = true)]
    prime: Option<u64>,
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression such as `Sq^1*Sq^1` or `2*Sq(2)+Y[-1,0]`.
    Eval { expr: String },
    /// Multiply two expressions.
    Mul { left: String, right: String },
    /// Print the Adem elements [n,m] with n + m <= max-sum.
    Adem {
        #[arg(long, default_value_t = 7)]
        max_sum: u32,
    },
    /// The triple Massey product <a, b, c> of elements of A.
    Massey { a: String, b: String, c: String },
    /// The brackets <P_t^s, P_t^s, P_t^s> for t <= max-t.
    Corollary {
        #[arg(long, default_value_t = 3)]
        max_t: usize,
    },
    /// The operators L and S on a relation of E0, e.g. `Adem[3,2]`.
    LsOps { expr: String },
    /// Run a property suite (d0, d1, ehat, diagonal, homogeneity, bp) or `all`.
    Verify {
        suite: String,
        /// Elements per degree in sampled checks.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Check the structure formulas of the odd-primary cooperation algebroid.
    BpCheck {
        /// Largest generator index.
        #[arg(short = 'n', long = "max-n", default_value_t = 3)]
        max_n: u32,
    },
}

fn run(cli: &Cli, config: &Config) -> Result<Report> {
    let ring = cli.ring.or(config.ring.map(Ring::from));
    let max_deg = cli.max_deg.or(config.max_deg);
    let prime = cli.prime.or(config.prime);
    match &cli.command {
        Command::Eval { expr } => commands::eval(expr, ring),
        Command::Mul { left, right } => commands::mul(left, right, ring),
        Command::Adem { max_sum } => commands::adem(*max_sum, config.adem_max_sum()),
        Command::Massey { a, b, c } => commands::massey(a, b, c),
        Command::Corollary { max_t } => commands::corollary(*max_t, max_deg.unwrap_or(84)),
        Command::LsOps { expr } => commands::ls_ops(expr),
        Command::Verify { suite, samples } => {
            let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>()?] };
            let opts = VerifyOptions {
                max_degree: max_deg,
                samples: *samples,
                prime,
            };
            commands::verify(&suites, opts)
        }
        Command::BpCheck { max_n } => commands::bp_check(prime.unwrap_or(3), *max_n, max_deg.unwrap_or(10)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let config = match cli.config.as_deref().map(Config::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(jobs) = cli.jobs.or(config.jobs) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let format = cli.format.or(config.format).unwrap_or_default();
    match run(&cli, &config).and_then(|r| Ok((r.render(format)?, r.passed))) {
        Ok((text, passed)) => {
            println!("{text}");
            ExitCode::from(if passed { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
