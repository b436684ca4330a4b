//! The run configuration embedded in every report, and the report envelope.

use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

/// Seed used whenever a randomized choice is requested without one.
pub const DEFAULT_SEED: u64 = suzuki_core::constructions::DEFAULT_SEED;

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    /// Operation parameters, in the order given on the command line.
    pub params: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variants: Option<String>,
    pub seed: u64,
    pub outputs: Vec<String>,
    /// Requested worker threads; results do not depend on it.
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(subcommand: &str, field: Option<&str>, threads: Option<usize>) -> Self {
        Self {
            subcommand: subcommand.into(),
            field: field.map(Into::into),
            params: Map::new(),
            variants: None,
            seed: DEFAULT_SEED,
            outputs: Vec::new(),
            threads,
        }
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.params.insert(key.into(), serde_json::to_value(v).expect("serializable parameter"));
        self
    }
}

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a RunConfig,
    pub report: T,
}

pub fn envelope<'a, T: Serialize>(config: &'a RunConfig, report: T) -> Envelope<'a, T> {
    Envelope { tool: "suzuki-ds", version: env!("CARGO_PKG_VERSION"), config, report }
}

pub fn write_json(path: &str, v: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    std::fs::write(Path::new(path), text).with_context(|| format!("writing {path}"))
}

/// Writes to `path` if given, and prints JSON unless `pretty` asks for the summary.
pub fn emit(path: Option<&str>, pretty: bool, summary: &str, v: &impl Serialize) -> Result<()> {
    if let Some(p) = path {
        write_json(p, v)?;
    }
    if pretty {
        println!("{summary}");
    } else if path.is_none() {
        println!("{}", serde_json::to_string_pretty(v)?);
    }
    Ok(())
}
