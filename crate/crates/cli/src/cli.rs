use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::{cmd_kan, cmd_report, cmd_roundtrip, cmd_trivialize, cmd_twist, cmd_validate, RoundtripInputs, Run};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Validation and round-trip pipelines for algebras, cocycles, anomalies and
/// their representations.
#[derive(Debug, Parser)]
#[command(name = "morita-lab", version)]
pub struct Cli {
    /// For `twist` and `kan`, where to write the produced manifest; for the
    /// other commands, where to write the report.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for commands that process several manifests.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Colored text output (`0` or `1`).
    #[arg(long, env = "MORITA_LAB_COLOR", default_value = "0", hide = true)]
    pub color: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the kind-appropriate validator on each manifest.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Build the twisted group algebra of a group and a cocycle.
    Twist { group: PathBuf, cocycle: PathBuf },
    /// Find a cochain whose coboundary is the cocycle, if any.
    Trivialize { cocycle: PathBuf },
    /// Check the equivalences between pointed, anomalous and projective
    /// representations.
    Roundtrip {
        anomaly: PathBuf,
        /// An `st_rep` or `anomalous_rep` manifest.
        rep: PathBuf,
        #[arg(long)]
        alpha_structure: Option<PathBuf>,
        #[arg(long)]
        test_modules: Option<PathBuf>,
    },
    /// Factor a candidate through the twisted group algebra.
    Kan { group: PathBuf, cocycle: PathBuf, candidate: PathBuf },
    /// Merge saved JSON reports.
    Report {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

impl Cli {
    pub fn execute(&self) -> Run {
        let out = self.out.as_deref();
        match &self.command {
            Command::Validate { paths } => cmd_validate(paths, self.jobs),
            Command::Twist { group, cocycle } => cmd_twist(group, cocycle, out),
            Command::Trivialize { cocycle } => cmd_trivialize(cocycle),
            Command::Roundtrip { anomaly, rep, alpha_structure, test_modules } => cmd_roundtrip(&RoundtripInputs {
                anomaly: anomaly.clone(),
                rep: rep.clone(),
                alpha_structure: alpha_structure.clone(),
                test_modules: test_modules.clone(),
            }),
            Command::Kan { group, cocycle, candidate } => cmd_kan(group, cocycle, candidate, out),
            Command::Report { paths } => cmd_report(paths),
        }
    }

    fn writes_report(&self) -> bool {
        !matches!(self.command, Command::Twist { .. } | Command::Kan { .. })
    }

    pub fn render(&self, run: &Run) -> String {
        match self.format {
            Format::Json => run.report.to_json(),
            Format::Text => run.report.to_text(self.color == "1"),
        }
    }

    /// Executes the command, emits the report and returns the exit code.
    pub fn run(&self) -> i32 {
        let run = self.execute();
        let text = self.render(&run);
        match (&self.out, self.writes_report()) {
            (Some(path), true) => {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("{}: {e}", path.display());
                    return 2;
                }
            }
            _ => {
                let _ = std::io::stdout().write_all(text.as_bytes());
            }
        }
        run.code
    }
}
