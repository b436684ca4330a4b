//! `suzuki-ds`: construct, verify and search for central difference sets in the
//! Suzuki p-groups `A_p(m, theta)`.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "suzuki-ds", version, about = "Central difference sets in Suzuki p-groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Leave timing fields out of reports.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Human-readable summary on stdout instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Field and group data for a field spec.
    FieldInfo {
        #[arg(long)]
        field: String,
    },
    /// Character table as CSV plus a validation report.
    Chartable {
        #[arg(long)]
        field: String,
        /// CSV output (rows are characters, columns are classes).
        #[arg(long)]
        csv: Option<String>,
        #[arg(long)]
        report: Option<String>,
        /// Coset representatives restricted to squares (p odd, m odd).
        #[arg(long)]
        squares_only: bool,
        /// Skip the class-sum multiplication check.
        #[arg(long)]
        no_hom: bool,
    },
    /// Build a set and write it as a set file.
    Construct(ConstructArgs),
    /// Check a set or a family of sets.
    Verify {
        #[arg(value_enum)]
        what: VerifyKind,
        /// Set files, comma separated.
        #[arg(long = "in", value_delimiter = ',', required = true)]
        inputs: Vec<String>,
        #[arg(long, default_value = "both")]
        method: String,
        #[arg(long)]
        report: Option<String>,
        #[arg(long, default_value_t = 16)]
        max_witnesses: usize,
    },
    /// Exhaustive search over central sets.
    Search {
        #[arg(value_enum)]
        what: SearchKind,
        #[arg(long)]
        field: String,
        /// v,k,lambda,n for ds; v,k,lambda,mu for pds.
        #[arg(long, value_delimiter = ',', required = true)]
        params: Vec<u64>,
        #[arg(long, value_enum, default_value = "pruned")]
        mode: Mode,
        #[arg(long)]
        report: Option<String>,
        /// Directory for one set file per result.
        #[arg(long)]
        sets_dir: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: ConstructKind,
    #[arg(long)]
    pub field: String,
    /// Field element as an index or `c0:c1:...` coefficients.
    #[arg(long)]
    pub t: Option<String>,
    /// Subfield element as an index or `c0:...` coefficients.
    #[arg(long)]
    pub z: Option<String>,
    /// all-ker, all-comp, seed:<n> or file:<path>.
    #[arg(long, default_value = "all-ker")]
    pub variants: String,
    /// Side of Ker(psi_t) for example-mf.
    #[arg(long, default_value = "ker")]
    pub side: String,
    /// J0 for example-mf, comma separated elements.
    #[arg(long, value_delimiter = ',')]
    pub j0: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub j1: Vec<String>,
    /// Set file; families write `<stem>-<i>.json`.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructKind {
    DsTz,
    DsZ,
    LinkingRt,
    LinkingR,
    PdsTz,
    PdsZ,
    PdsZprime,
    PdsZdprime,
    Dillon,
    ExampleMf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyKind {
    Ds,
    Pds,
    Linking,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchKind {
    Ds,
    Pds,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Brute,
    Pruned,
}

/// Exit statuses.
pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
