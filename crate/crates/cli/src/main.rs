use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cubicq_core::minimality::galclass_name;
use cubicq_core::surface::{classify, SurfaceError, SurfaceSpec};
use cubicq_core::tables::tables;
use cubicq_core::verify::{self, default_data_dir, Context, Module};
use cubicq_core::weyl::subgroup_from_spec;
use cubicq_core::{analyze, GaloisScenario};
use serde_json::json;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "cubicq",
    version,
    about = "Rationality of cubic surfaces and their order-3 quotients"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite.
    Verify {
        /// Restrict to these modules (repeatable or comma-separated).
        #[arg(long, value_delimiter = ',', value_parser = parse_module)]
        only: Vec<Module>,
        /// Directory holding `scenarios/` and `surfaces/`.
        #[arg(long)]
        data_dir: Option<PathBuf>,
    },
    /// Verdicts for a Galois image given by generators, e.g. "a r s".
    ClassifyGamma {
        /// Words in a, b, c, r, s, cs, cycles such as "(E1 Q1)(E2 Q2)", or a JSON spec.
        spec: String,
        /// Do not assume a rational point.
        #[arg(long)]
        no_point: bool,
    },
    /// Verdicts for a surface given as a JSON file.
    ClassifySurface { path: PathBuf },
    /// Print the reference tables.
    Tables,
}

fn parse_module(s: &str) -> Result<Module, String> {
    s.parse()
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(value: &impl serde::Serialize) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(value).expect("report serializes")
    ));
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn verify(format: Format, only: &[Module], data_dir: Option<PathBuf>) -> ExitCode {
    let ctx = Context::new(data_dir.unwrap_or_else(default_data_dir));
    let report = verify::run(&ctx, only);
    match format {
        Format::Text => emit(&format!("{report}\n")),
        Format::Json => print_json(&report),
    }
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn classify_gamma(format: Format, spec: &str, no_point: bool) -> ExitCode {
    let gamma = match subgroup_from_spec(spec) {
        Ok(g) => g,
        Err(e) => return usage_error(e),
    };
    let scenario = match GaloisScenario::new(
        cubicq_core::minimality::default_geometric_group(),
        gamma,
        !no_point,
    ) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    let verdict = match analyze(&scenario) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    let class = galclass_name(scenario.galois_image());
    match format {
        Format::Text => {
            if let Some(c) = &class {
                emit(&format!("class: {c}\n"));
            }
            emit(&verdict.to_string());
        }
        Format::Json => print_json(&json!({ "class": class, "verdict": verdict })),
    }
    ExitCode::SUCCESS
}

fn is_input_error(e: &SurfaceError) -> bool {
    matches!(
        e,
        SurfaceError::MissingField(_)
            | SurfaceError::InvalidField { .. }
            | SurfaceError::IncompleteNormalForm
            | SurfaceError::NormalFormMismatch { .. }
            | SurfaceError::Io { .. }
            | SurfaceError::Json(_)
    )
}

fn classify_surface(format: Format, path: &Path) -> ExitCode {
    let result = SurfaceSpec::load(path).and_then(|s| classify(&s).map(|v| (s, v)));
    let (spec, verdict) = match result {
        Ok(x) => x,
        Err(e) if is_input_error(&e) => return usage_error(e),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };
    match format {
        Format::Text => {
            if let Some(name) = &spec.name {
                emit(&format!("surface: {name}\n"));
            }
            emit(&format!("equation: {spec}\n{verdict}"));
        }
        Format::Json => print_json(
            &json!({ "name": spec.name, "equation": spec.to_string(), "result": verdict }),
        ),
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { only, data_dir } => verify(cli.format, &only, data_dir),
        Command::ClassifyGamma { spec, no_point } => classify_gamma(cli.format, &spec, no_point),
        Command::ClassifySurface { path } => classify_surface(cli.format, &path),
        Command::Tables => {
            let t = tables();
            match cli.format {
                Format::Text => emit(&t.to_string()),
                Format::Json => print_json(&t),
            }
            ExitCode::SUCCESS
        }
    }
}
