mod cli;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "dualcover", version, about = "Covers of the dual plane branched along dual curves")]
pub struct Args {
    /// Seed for every random choice (coordinate changes, pencils, loops).
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Number of sheets for `search` and `census`.
    #[arg(long, global = true)]
    pub sheets: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Relative residual below which a gradient counts as zero when locating
    /// singular points.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Dual curve, its singularities and the Plücker cross-check.
    Dual { curve: PathBuf },
    /// Singular points of a curve (or of its dual with `--dual`).
    Singular {
        curve: PathBuf,
        #[arg(long)]
        dual: bool,
    },
    /// Is the curve general enough (nodes only, simple flexes, no tritangent or flex bitangent)?
    Genericity { curve: PathBuf },
    /// Braid monodromy factorization of the dual curve.
    Monodromy { curve: PathBuf },
    /// Monodromy of the projection of the curve from a generic point.
    Projection {
        curve: PathBuf,
        /// Factorization written earlier by `monodromy`.
        #[arg(long)]
        factorization: Option<PathBuf>,
    },
    /// Does the cover in the rep file extend, and is it a projection?
    Verdict {
        curve: PathBuf,
        rep: PathBuf,
        #[arg(long)]
        factorization: Option<PathBuf>,
    },
    /// All covers with `--sheets` sheets satisfying the relations.
    Search {
        curve: PathBuf,
        #[arg(long)]
        factorization: Option<PathBuf>,
    },
    /// Hurwitz counts, or with a curve the verdict on every class.
    Census {
        /// Number of branch points.
        #[arg(long)]
        length: Option<usize>,
        #[arg(long)]
        curve: Option<PathBuf>,
        /// List the class representatives.
        #[arg(long)]
        list: bool,
    },
    /// Named end-to-end check.
    Scenario { name: cli::ScenarioName },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = cli::run(&args);
    let text = match args.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("report serializes") + "\n",
        Format::Text => outcome.text,
    };
    match &args.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(outcome.code)
}
