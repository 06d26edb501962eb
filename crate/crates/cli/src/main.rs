//! `rsc`: command-line front end for restriction-sensitive choice analysis.
//!
//! Exit status is 0 on success, 1 when a check finds axiom violations and
//! 2 on input errors. Errors are written to stderr as a JSON object with a
//! machine-readable `code`.

mod commands;
mod sweep;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "rsc", version, about = "Analyze finite choice functions for reactions to restricted options")]
struct Cli {
    /// Seed for randomized sweeps.
    #[arg(long, global = true, env = "RSC_SEED", default_value_t = 0)]
    seed: u64,
    /// Maximum number of violations reported per axiom.
    #[arg(long, global = true, default_value_t = rsc_core::axioms::DEFAULT_VIOLATION_CAP)]
    cap: usize,
    /// Output format, where a subcommand supports both.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ChoiceInput {
    /// Choice-function file (JSON or CSV).
    file: PathBuf,
    /// Input encoding; guessed from the extension when absent.
    #[arg(long, value_enum)]
    input_format: Option<Format>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check axioms on a choice function and emit one verdict per axiom.
    CheckAxioms {
        #[command(flatten)]
        input: ChoiceInput,
        /// Axioms to check.
        #[arg(long, value_delimiter = ',', default_values = ["exp", "nrs", "ir", "spr"])]
        axioms: Vec<commands::AxiomName>,
    },
    /// Revealed preference, reaction relation and similarity classes.
    Reveal {
        #[command(flatten)]
        input: ChoiceInput,
    },
    /// Build and certify a structure generating the choice function.
    Synthesize {
        #[command(flatten)]
        input: ChoiceInput,
        /// Also write the bare structure file here.
        #[arg(long)]
        structure: Option<PathBuf>,
    },
    /// Welfare relations identified from choices.
    Welfare {
        #[command(flatten)]
        input: ChoiceInput,
        /// Close the welfare-improving relation transitively.
        #[arg(long)]
        closure: bool,
    },
    /// Freedom count n(A) for every menu of a structure.
    Freedom {
        /// Structure file.
        file: PathBuf,
    },
    /// Source choice in the news-media model.
    SimulateMedia(commands::MediaArgs),
    /// Integrate the cultural-transmission dynamics.
    SimulateCulture {
        #[command(flatten)]
        params: commands::CultureArgs,
        /// Also write the trajectory CSV here.
        #[arg(long)]
        trajectory: Option<PathBuf>,
    },
    /// Grid or random parameter sweeps, as tidy CSV.
    Sweep {
        #[command(subcommand)]
        model: sweep::SweepModel,
    },
    /// Exhaustive or sampled checks over all choice functions or random
    /// structures on a small ground set.
    Enumerate(commands::EnumerateArgs),
}

/// A failed run: machine-readable code, message and exit status.
#[derive(Debug)]
pub struct Failure {
    code: String,
    message: String,
    status: u8,
}

impl Failure {
    pub fn input(code: &str, message: impl Into<String>) -> Failure {
        Failure {
            code: code.to_string(),
            message: message.into(),
            status: 2,
        }
    }
}

impl From<rsc_core::Error> for Failure {
    fn from(e: rsc_core::Error) -> Failure {
        let status = match e {
            rsc_core::Error::AxiomViolation(_) | rsc_core::Error::NotSinglePeakedRsc => 1,
            _ => 2,
        };
        Failure {
            code: e.code().to_string(),
            message: e.to_string(),
            status,
        }
    }
}

/// What a successful subcommand produced.
pub struct Report {
    pub body: String,
    /// Checks ran and found violations.
    pub violations: bool,
}

impl Report {
    pub fn clean(body: String) -> Report {
        Report { body, violations: false }
    }
}

pub fn to_json<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(rsc_core::Error::from)?;
    s.push('\n');
    Ok(s)
}

pub fn write_file(path: &Path, body: &str) -> Result<(), Failure> {
    fs::write(path, body).map_err(|e| Failure::input("io", format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let format = cli.format;
    let json_only = |name: &str| match format {
        Some(Format::Csv) => Err(Failure::input("unsupported_format", format!("{name} emits JSON only"))),
        _ => Ok(()),
    };
    match cli.command {
        Command::CheckAxioms { input, axioms } => {
            json_only("check-axioms")?;
            commands::check_axioms(&commands::load_choice(&input)?, &axioms, cli.cap)
        }
        Command::Reveal { input } => {
            json_only("reveal")?;
            commands::reveal(&commands::load_choice(&input)?)
        }
        Command::Synthesize { input, structure } => {
            json_only("synthesize")?;
            commands::synthesize(&commands::load_choice(&input)?, structure.as_deref())
        }
        Command::Welfare { input, closure } => {
            json_only("welfare")?;
            commands::welfare(&commands::load_choice(&input)?, closure)
        }
        Command::Freedom { file } => commands::freedom(&file, format.unwrap_or(Format::Csv)),
        Command::SimulateMedia(args) => {
            json_only("simulate-media")?;
            commands::simulate_media(&args)
        }
        Command::SimulateCulture { params, trajectory } => {
            commands::simulate_culture(&params, trajectory.as_deref(), format.unwrap_or(Format::Json))
        }
        Command::Sweep { model } => {
            if format == Some(Format::Json) {
                return Err(Failure::input("unsupported_format", "sweep emits CSV only"));
            }
            sweep::run(&model, cli.seed)
        }
        Command::Enumerate(args) => {
            json_only("enumerate")?;
            commands::enumerate(&args, cli.seed)
        }
    }
}

fn fail(f: &Failure) -> ExitCode {
    let body = json!({ "code": f.code, "message": f.message });
    eprintln!("{body}");
    ExitCode::from(f.status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // help and version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&Failure::input("usage", e.to_string().trim_end())),
    };
    let output = cli.output.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(f) => return fail(&f),
    };
    let written = match &output {
        Some(path) => write_file(path, &report.body),
        None => std::io::stdout()
            .write_all(report.body.as_bytes())
            .map_err(|e| Failure::input("io", e.to_string())),
    };
    if let Err(f) = written {
        return fail(&f);
    }
    if report.violations {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
