use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use parind_cli::{run, CliError, Report, RunConfig, Suite};

#[derive(Parser)]
#[command(
    name = "parind",
    version,
    about = "Exact verification suites for parabolic restriction and induction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Upper bound on any enumerated set; overrides the config.
    #[arg(long, global = true)]
    guard: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Test mode: use |Δ| where the descent identity has |Δ|^(1/2).
    #[arg(long, global = true, hide = true)]
    corrupt_normalization: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Restrictions of the basis measures and their independence of P.
    Restriction,
    /// Traces on induced representations against pairings with restrictions.
    Characters,
    /// Descent of GL_2 orbital integrals to the torus.
    Orbital,
    /// Induced unipotent sets over finite fields.
    Unipotent,
    /// Certified saturation membership.
    Saturate,
    /// Every suite.
    All,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Json,
    Csv,
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::default(),
    };
    if let Some(g) = cli.guard {
        if g == 0 {
            return Err(CliError::Config {
                field: "--guard".into(),
                line: None,
                message: "guard must be positive".into(),
            });
        }
        cfg.guard = g;
    }
    cfg.corrupt_normalization = cli.corrupt_normalization;
    let suites: Vec<Suite> = match cli.command {
        Command::Restriction => vec![Suite::Restriction],
        Command::Characters => vec![Suite::Characters],
        Command::Orbital => vec![Suite::Orbital],
        Command::Unipotent => vec![Suite::Unipotent],
        Command::Saturate => vec![Suite::Saturate],
        Command::All => Suite::ALL.to_vec(),
    };
    Ok(Report::new(run(&suites, &cfg)?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("parind: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("parind: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("parind: {} failing rows", report.failures());
        ExitCode::from(1)
    }
}
