//! Report types shared by every check.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::params::{DsParams, LatinSquare, LinkingParams, PdsParams};

/// Default number of witnesses kept per report.
pub const WITNESS_CAP: usize = 16;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    GroupRing,
    Character,
    Both,
}

impl Method {
    pub fn uses(self, engine: Engine) -> bool {
        matches!(
            (self, engine),
            (Method::Both, _) | (Method::GroupRing, Engine::GroupRing) | (Method::Character, Engine::Character)
        )
    }
}

impl std::str::FromStr for Method {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "groupring" => Ok(Method::GroupRing),
            "character" => Ok(Method::Character),
            "both" => Ok(Method::Both),
            _ => Err(crate::Error::Parse(format!("unknown method `{s}`"))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    GroupRing,
    Character,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdsSummary {
    #[serde(flatten)]
    pub params: PdsParams,
    pub latin_square: Option<LatinSquare>,
}

impl From<PdsParams> for PdsSummary {
    fn from(params: PdsParams) -> Self {
        Self { params, latin_square: params.latin_square_type() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Params {
    Ds(DsParams),
    Pds(PdsSummary),
    Linking(LinkingParams),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    Element,
    Character,
    Class,
    Pair,
    Engine,
}

/// One offending element, character, class or pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub at: String,
    pub got: String,
    pub expected: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pair: Option<[usize; 2]>,
}

impl Witness {
    pub fn new(kind: WitnessKind, at: impl Into<String>, got: impl ToString, expected: impl ToString) -> Self {
        Self { kind, at: at.into(), got: got.to_string(), expected: expected.to_string(), pair: None }
    }

    pub fn in_pair(mut self, i: usize, j: usize) -> Self {
        self.pair = Some([i, j]);
        self
    }
}

/// Collects witnesses up to a cap, counting the rest.
#[derive(Clone, Debug, Default)]
pub struct Witnesses {
    cap: usize,
    pub kept: Vec<Witness>,
    pub total: u64,
}

impl Witnesses {
    pub fn new(cap: usize) -> Self {
        Self { cap, kept: Vec::new(), total: 0 }
    }

    pub fn push(&mut self, w: Witness) {
        self.total += 1;
        if self.kept.len() < self.cap {
            self.kept.push(w);
        }
    }

    pub fn push_with(&mut self, w: impl FnOnce() -> Witness) {
        self.total += 1;
        if self.kept.len() < self.cap {
            self.kept.push(w());
        }
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }
}

#[derive(Copy, Clone, Debug)]
pub struct VerifyOptions {
    pub max_witnesses: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { max_witnesses: WITNESS_CAP }
    }
}

/// What one engine concluded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineOutcome {
    pub engine: Engine,
    pub holds: bool,
    pub trivial: bool,
    pub params: Option<Params>,
    pub witnesses: Vec<Witness>,
    pub witness_total: u64,
}

impl EngineOutcome {
    pub fn new(engine: Engine, holds: bool, trivial: bool, params: Option<Params>, w: Witnesses) -> Self {
        Self { engine, holds, trivial, params, witnesses: w.kept, witness_total: w.total }
    }

    /// The fields two engines must agree on.
    pub fn verdict(&self) -> (bool, bool, Option<&Params>) {
        (self.holds, self.trivial, self.params.as_ref())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub check: String,
    pub method: Method,
    pub passed: bool,
    pub trivial: bool,
    pub degenerate: bool,
    pub params: Option<Params>,
    pub engines: Vec<EngineOutcome>,
    pub witnesses: Vec<Witness>,
    pub witness_total: u64,
    pub notes: Vec<String>,
    pub elapsed_ms: Option<f64>,
}

impl VerifyReport {
    /// Merges engine outcomes: passes when every engine holds and all verdicts agree.
    pub fn from_engines(check: &str, method: Method, engines: Vec<EngineOutcome>, cap: usize, start: Instant) -> Self {
        let mut w = Witnesses::new(cap);
        for e in &engines {
            for x in &e.witnesses {
                w.push(x.clone());
            }
            w.total += e.witness_total - e.witnesses.len() as u64;
        }
        let agree = engines.windows(2).all(|p| p[0].verdict() == p[1].verdict());
        if !agree {
            let show = |e: &EngineOutcome| format!("{:?}", e.verdict());
            w.push(Witness::new(WitnessKind::Engine, "engine agreement", show(&engines[1]), show(&engines[0])));
        }
        let passed = agree && engines.iter().all(|e| e.holds);
        let first = engines.first();
        let mut r = Self {
            check: check.to_string(),
            method,
            passed,
            trivial: first.map_or(false, |e| e.trivial),
            degenerate: false,
            params: first.and_then(|e| e.params.clone()),
            engines,
            witnesses: w.kept,
            witness_total: w.total,
            notes: Vec::new(),
            elapsed_ms: None,
        };
        r.stamp(start);
        r
    }

    pub fn stamp(&mut self, start: Instant) {
        self.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }

    /// Marks the report failed with a witness.
    pub fn fail(&mut self, w: Witness) {
        self.passed = false;
        self.witness_total += 1;
        if self.witnesses.len() < WITNESS_CAP.max(1) {
            self.witnesses.push(w);
        }
    }
}
