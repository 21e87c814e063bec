use std::path::PathBuf;
use std::process::ExitCode;

use cep_cli::commands::{self, Output};
use cep_cli::{CliError, Format, Market, RunConfig};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "cep", version, about = "Carbon-linked project finance pricing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv, markdown or json; overrides the config.
    #[arg(long)]
    format: Option<Format>,
    /// Seed for stochastic commands; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Annuity spreads over technologies, scenarios and maturities.
    Spreads(Common),
    /// NET capacity for financial net-zero.
    Netzero(Common),
    /// Permanence-adjusted NET cost curves.
    Permanence(Common),
    /// Linked cash/XCE termsheet and its event schedule.
    Termsheet {
        #[command(flatten)]
        common: Common,
        /// Technology case id; overrides the config.
        #[arg(long)]
        case: Option<String>,
        /// Financing length in years; overrides the config.
        #[arg(long)]
        years: Option<u32>,
    },
    /// Operating emissions cross-check.
    Sanity(Common),
    /// Validate inputs and emit plot-ready series.
    Ingest(Common),
}

fn load(common: &Common) -> Result<Market, CliError> {
    let mut config = RunConfig::load(&common.config)?;
    if let Some(out) = &common.out {
        config.out_dir = out.clone();
    }
    if let Some(format) = common.format {
        config.format = format;
    }
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    Market::load(config)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let common = match &cli.command {
        Command::Spreads(c)
        | Command::Netzero(c)
        | Command::Permanence(c)
        | Command::Sanity(c)
        | Command::Ingest(c) => c,
        Command::Termsheet { common, .. } => common,
    };
    let market = load(common)?;
    let output: Output = match &cli.command {
        Command::Spreads(_) => commands::spreads(&market)?,
        Command::Netzero(_) => commands::netzero(&market)?,
        Command::Permanence(_) => commands::permanence(&market, market.config.seed)?,
        Command::Termsheet { case, years, .. } => {
            let t = &market.config.termsheet;
            let case = case.clone().unwrap_or_else(|| t.case.clone());
            let years = years.unwrap_or(t.years);
            if years == 0 {
                return Err(CliError::Config("--years must be > 0".into()));
            }
            commands::termsheet(&market, &case, years)?
        }
        Command::Sanity(_) => commands::sanity(&market)?,
        Command::Ingest(_) => commands::ingest(&market)?,
    };
    for path in output.write_to(market.config.out_dir())? {
        println!("wrote {}", path.display());
    }
    println!("{}", output.summary);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
