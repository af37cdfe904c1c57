use std::io::{IsTerminal, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

mod commands;
mod report;

use report::{InputDigest, Report};

#[derive(Parser)]
#[command(name = "dirac", version, about = "Exact checks for Dirac-Manin triples, linear groupoids and homogeneous spaces")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the resulting spec file here.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate any spec file; classification and Robinson files need --triple.
    Validate {
        file: String,
        #[arg(long)]
        triple: Option<String>,
    },
    /// Build the double d ⋉ d*_beta and check its identities.
    Double { triple: String },
    /// Build the Manin pair (q, g) and the groupoid q ⇉ g.
    Qpair { triple: String },
    /// Reduce the double by the preimage of the datum's c.
    Reduce { triple: String, datum: String },
    /// Pradines dual of a groupoid or module file.
    Dualize { file: String },
    /// Check classification data, or build it from a Robinson datum.
    Classify { triple: String, file: String },
    /// Build classification data from a Robinson datum and run every check.
    Robinson { triple: String, datum: String },
    /// Coisotropic subalgebras spanned by subsets of the candidates.
    Search {
        triple: String,
        /// Candidate vector, comma separated, e.g. `1,-1`.
        #[arg(short = 'c', long = "candidate", allow_hyphen_values = true)]
        candidates: Vec<String>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        lagrangian: bool,
        /// Basis vector of the required intersection with h; zero if absent.
        #[arg(long = "k", allow_hyphen_values = true)]
        k: Vec<String>,
    },
    /// Dressing action and H ⋉ q on the triple's group elements.
    Dress { triple: String },
    /// Exactness of the triple and bijectivity of f_q.
    Exactness { triple: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Double { .. } => "double",
            Command::Qpair { .. } => "qpair",
            Command::Reduce { .. } => "reduce",
            Command::Dualize { .. } => "dualize",
            Command::Classify { .. } => "classify",
            Command::Robinson { .. } => "robinson",
            Command::Search { .. } => "search",
            Command::Dress { .. } => "dress",
            Command::Exactness { .. } => "exactness",
        }
    }
}

/// Reads a file, or stdin for `-`, recording its digest in the report.
pub fn read_input(path: &str, report: &mut Report) -> Result<String> {
    let mut bytes = Vec::new();
    if path == "-" {
        std::io::stdin().read_to_end(&mut bytes).context("reading stdin")?;
    } else {
        bytes = std::fs::read(path).with_context(|| format!("reading {path}"))?;
    }
    report.inputs.push(InputDigest {
        path: path.to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    });
    String::from_utf8(bytes).with_context(|| format!("{path} is not UTF-8"))
}

fn use_color() -> bool {
    match std::env::var("DIRAC_COLOR").as_deref() {
        Ok("0") => false,
        Ok(_) => true,
        Err(_) => std::io::stdout().is_terminal(),
    }
}

fn write_output(path: &PathBuf, text: &str, report: &mut Report) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    report.outputs.push(path.display().to_string());
    Ok(())
}

fn run(cli: &Cli, report: &mut Report) -> Result<()> {
    let out = commands::execute(&cli.command, report)?;
    match (&cli.output, out) {
        (Some(p), Some(text)) => write_output(p, &text, report)?,
        (Some(_), None) if report.checks.all_pass() => bail!("{} does not produce a spec file", cli.command.name()),
        _ => {}
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(cli.command.name());
    if let Err(e) = run(&cli, &mut report) {
        report.error = Some(format!("{e:#}"));
    }
    report.finish();
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text(use_color())),
    }
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    ExitCode::from(report.exit_code as u8)
}
