use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use henkin_core::parse::parse_theory;
use henkin_core::pipeline::{cmd_lawvere, cmd_naturality, cmd_pipeline, PipelineConfig};
use henkin_core::syntax::Theory;
use henkin_core::translation::parse_translation;

/// Builds term models and canonical finite models of first-order theories
/// and checks the comparison map between them.
#[derive(Parser)]
#[command(name = "henkin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check for one theory.
    Pipeline {
        theory: PathBuf,
        #[command(flatten)]
        config: PipelineConfig,
    },
    /// Check the naturality square along a translation.
    Naturality {
        source: PathBuf,
        target: PathBuf,
        translation: PathBuf,
        #[command(flatten)]
        config: PipelineConfig,
    },
    /// Exponentials, Cantor's diagonal, and fixed points on small finite sets.
    Lawvere { x: usize, y: usize },
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_theory(path: &Path) -> Result<Theory, String> {
    parse_theory(&read(path)?).map_err(|e| format!("{}:{e}", path.display()))
}

fn emit(report: &impl Serialize, json: Option<&Path>) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    match json {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let json = cli.json.as_deref();
    match cli.command {
        Command::Pipeline { theory, config } => {
            let report = cmd_pipeline(&load_theory(&theory)?, &config);
            emit(&report, json)?;
            Ok(report.exit_code)
        }
        Command::Naturality {
            source,
            target,
            translation,
            config,
        } => {
            let (src, dst) = (load_theory(&source)?, load_theory(&target)?);
            let phi = parse_translation(&read(&translation)?, &src, &dst).map_err(|e| format!("{}: {e}", translation.display()))?;
            let report = cmd_naturality(&phi, &config);
            emit(&report, json)?;
            Ok(report.exit_code)
        }
        Command::Lawvere { x, y } => {
            let report = cmd_lawvere(x, y).map_err(|e| e.to_string())?;
            emit(&report, json)?;
            Ok(report.exit_code)
        }
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
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
