//! Batch front end: each subcommand reads literals or a JSON document and
//! prints one JSON document (or a table) to stdout or `--out`.

mod commands;
mod table;

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use table::Table;

#[derive(Debug, Parser)]
#[command(name = "coxring", version, about = "Cox rings of graded families of line bundles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub io: OutputArgs,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ext¹(G, U), the group classifying multiplications.
    Ext1(GroupArgs),
    /// One representative family per isomorphism class.
    Classify(GroupArgs),
    /// Check unit, commutativity and associativity of a family (or of every
    /// representative in a `classify` output).
    FamilyValidate(InputArgs),
    /// Decide whether `left` and `right` are isomorphic.
    FamilyIso(InputArgs),
    /// Extend a family along an embedding `H → G`.
    FamilyExtend(InputArgs),
    /// Quotient a family by a subgroup on which it is trivialized.
    FamilyQuotient(InputArgs),
    /// Class group of a complete toric presentation.
    ToricClassgroup(InputArgs),
    /// Dimension of one graded piece of the Cox ring.
    ToricCoxdim(CoxdimArgs),
    /// Piece dimensions of the divisorial algebra over a degree window.
    ToricReport(ReportArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Grading group literal `r;d1,d2,...`.
    #[arg(long)]
    pub group: String,
    /// Unit group literal `div`, `div*<group>` or `<group>`.
    #[arg(long)]
    pub units: String,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// JSON input; `-` or absent reads stdin.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoxdimArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Class in canonical coordinates, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "divisor")]
    pub class: Option<String>,
    /// A Weil divisor whose class is used, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub divisor: Option<String>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Largest entry sum of the nonnegative `K₀` vectors listed.
    #[arg(long, default_value_t = 2)]
    pub max_degree: u32,
}

/// A failed invocation with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<coxring::Error> for Failure {
    fn from(e: coxring::Error) -> Self {
        let code = if e.is_input_error() {
            2
        } else if e.is_invariant_violation() {
            4
        } else {
            3
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// What a command produces: the JSON document and its tabular view.
pub struct Rendered {
    pub json: serde_json::Value,
    pub table: Table,
}

impl Rendered {
    pub fn new(doc: &impl Serialize, table: Table) -> CliResult<Self> {
        let json = serde_json::to_value(doc)
            .map_err(|e| Failure { code: 4, message: format!("serialization failed: {e}") })?;
        Ok(Rendered { json, table })
    }

    pub fn format(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Tsv => self.table.to_tsv(),
            Format::Table => self.table.to_aligned(),
        }
    }
}

pub(crate) fn read_input(args: &InputArgs) -> CliResult<String> {
    match &args.input {
        Some(p) if p.as_os_str() != "-" => fs::read_to_string(p)
            .map_err(|e| Failure::input(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

pub(crate) fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| Failure::input(format!("invalid JSON input: {e}")))
}

/// Runs one command and returns the rendered output text.
pub fn run(cli: &Cli) -> CliResult<String> {
    let rendered = match &cli.command {
        Command::Ext1(a) => commands::ext1(a)?,
        Command::Classify(a) => commands::classify(a)?,
        Command::FamilyValidate(a) => commands::family_validate(a)?,
        Command::FamilyIso(a) => commands::family_iso(a)?,
        Command::FamilyExtend(a) => commands::family_extend(a)?,
        Command::FamilyQuotient(a) => commands::family_quotient(a)?,
        Command::ToricClassgroup(a) => commands::toric_classgroup(a)?,
        Command::ToricCoxdim(a) => commands::toric_coxdim(a)?,
        Command::ToricReport(a) => commands::toric_report(a)?,
    };
    Ok(rendered.format(cli.io.format))
}

/// Runs and writes the output, returning the exit status.
pub fn main_with(cli: &Cli) -> i32 {
    let result = run(cli).and_then(|text| match &cli.io.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
