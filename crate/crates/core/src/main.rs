use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{debug, info};

use prym_core::correspondence::{build_grid_matrix, build_subset_matrix, identity_report};
use prym_core::covering::CoveringScenario;
use prym_core::output::{canonical_json, identity_table, report_table};
use prym_core::{assemble, Error, ModelChoice, Scenario};

const EXIT_VALIDATION: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;

#[derive(Parser)]
#[command(name = "prym", version, about = "Exact checks of Prym-Tyurin constructions on branched covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (or a covering scenario with `degree`).
    Run {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run one of the builtin constructions.
    Builtin {
        #[command(subcommand)]
        which: Builtin,
    },
    /// Discover and verify the quadratic identity of a generic-fiber matrix.
    VerifyIdentity {
        #[arg(long, value_enum)]
        kind: MatrixKind,
        #[arg(long, required_unless_present = "m", conflicts_with = "m")]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Builtin {
    /// Covers of P¹ of degree n + 2 with two special fibers.
    PnCase {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gx: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Triple covers of a hyperelliptic curve of genus g.
    Hyperelliptic {
        #[arg(long)]
        g: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Paper,
    Monodromy,
    Both,
}

impl From<ModelArg> for ModelChoice {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::Paper => ModelChoice::Paper,
            ModelArg::Monodromy => ModelChoice::Monodromy,
            ModelArg::Both => ModelChoice::Both,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixKind {
    Subset,
    Grid,
}

fn run_scenario(mut scenario: Scenario, output: &OutputArgs) -> Result<u8, Error> {
    if let Some(model) = output.model {
        scenario.model = Some(model.into());
    }
    info!("assembling {}", scenario.label());
    let report = assemble(&scenario)?;
    match output.format {
        Format::Json => print!("{}", canonical_json(&report).expect("report serializes")),
        Format::Table => print!("{}", report_table(&report)),
    }
    Ok(if report.verified() { 0 } else { EXIT_HYPOTHESIS })
}

fn run_file(file: &PathBuf, output: &OutputArgs) -> Result<u8, Error> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Schema { field: file.display().to_string(), message: e.to_string() })?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Schema { field: "scenario".into(), message: e.to_string() })?;
    if value.get("degree").is_some() {
        debug!("{} is a covering scenario", file.display());
        let covering: CoveringScenario = serde_json::from_value(value)
            .map_err(|e| Error::Schema { field: "scenario".into(), message: e.to_string() })?;
        let summary = covering.summarize()?;
        print!("{}", canonical_json(&summary).expect("summary serializes"));
        return Ok(0);
    }
    run_scenario(Scenario::from_json(&text)?, output)
}

fn verify_identity(kind: MatrixKind, param: usize, format: Format) -> Result<u8, Error> {
    let (name, corr) = match kind {
        MatrixKind::Subset => ("subset", build_subset_matrix(param)?),
        MatrixKind::Grid => ("grid", build_grid_matrix(param)?),
    };
    let id = identity_report(&corr)?;
    match format {
        Format::Json => print!("{}", canonical_json(&id).expect("identity serializes")),
        Format::Table => print!("{}", identity_table(name, param, corr.size(), &id)),
    }
    Ok(if id.q.is_some() { 0 } else { EXIT_HYPOTHESIS })
}

fn dispatch(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Run { file, output } => run_file(&file, &output),
        Command::Builtin { which: Builtin::PnCase { n, gx, output } } => run_scenario(Scenario::pn_case(n, gx)?, &output),
        Command::Builtin { which: Builtin::Hyperelliptic { g, output } } => {
            run_scenario(Scenario::hyperelliptic(g), &output)
        }
        Command::VerifyIdentity { kind, n, m, format } => {
            let param = n.or(m).expect("clap requires one of --n/--m");
            verify_identity(kind, param, format)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("PRYM_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}
