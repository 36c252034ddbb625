use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rigidity_cli::commands::{cmd_equivariant, cmd_genus, DEFAULT_Q_ORDER, DEFAULT_SEED};
use rigidity_cli::report::{ReplayReport, Report};
use rigidity_cli::scenario::Scenario;
use rigidity_cli::suites::{cmd_verify, parse_counterexample};
use rigidity_cli::{read_input, CliError};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Exact genera, equivariant characters and rigidity checks.
///
/// Exit codes: 0 success, 1 check failure, 2 parse error, 3 precondition violation.
#[derive(Parser, Debug)]
#[command(name = "rigidity", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Highest power of q computed for q-series (overridden by a scenario's options.q_order).
    #[arg(long, global = true, default_value_t = DEFAULT_Q_ORDER)]
    q_order: u32,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Non-equivariant genus of a space. SCENARIO is a file path or inline JSON.
    Genus { scenario: String },
    /// Equivariant character of a circle action with its rigidity verdict.
    Equivariant { scenario: String },
    /// Run a named suite: classical, localization, rigidity, vanishing or structure.
    Verify {
        #[arg(required_unless_present = "suite", conflicts_with = "suite")]
        name: Option<String>,
        #[arg(long)]
        suite: Option<String>,
    },
    /// Re-run a failed check from its serialized counterexample.
    Replay { counterexample: String },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    Ok(match &cli.command {
        Command::Genus { scenario } => {
            Report::Genus(cmd_genus(&Scenario::parse(&read_input(scenario)?)?, cli.q_order)?)
        }
        Command::Equivariant { scenario } => {
            Report::Equivariant(cmd_equivariant(&Scenario::parse(&read_input(scenario)?)?, cli.q_order)?)
        }
        Command::Verify { name, suite } => {
            let name = name.as_ref().or(suite.as_ref()).expect("clap enforces a suite name");
            Report::Verify(cmd_verify(name, cli.seed)?)
        }
        Command::Replay { counterexample } => {
            let check = parse_counterexample(&read_input(counterexample)?)?;
            let result = check.run("replay".into());
            Report::Replay(ReplayReport { check, result })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.to_csv(),
            };
            // A closed pipe is not worth a panic.
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
