//! The `milnor` command line: configuration, dispatch and report rendering.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

mod args;
mod commands;
mod report;

pub use args::{parse_args, Cli};
pub use report::{Check, Report, SCHEMA_ID};

/// Output rendering.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Structured,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json" => Ok(Format::Structured),
            _ => Err(format!("unknown format {s:?}; use text or structured")),
        }
    }
}

/// `Q(zeta)` (characteristic 0) or a field of prime characteristic `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldSelector {
    pub characteristic: u64,
}

impl FieldSelector {
    pub const CYCLOTOMIC: FieldSelector = FieldSelector { characteristic: 0 };

    pub fn finite(q: u64) -> Self {
        FieldSelector { characteristic: q }
    }
}

impl fmt::Display for FieldSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q(zeta)"),
            q => write!(f, "F{q}"),
        }
    }
}

impl FromStr for FieldSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if matches!(t, "Q(zeta)" | "Q" | "Qzeta" | "C" | "0") {
            return Ok(FieldSelector::CYCLOTOMIC);
        }
        let digits = t.strip_prefix('F').or_else(|| t.strip_prefix("GF")).unwrap_or(t);
        let q: u64 = digits
            .parse()
            .map_err(|_| format!("unknown field {s:?}; use Q(zeta) or F<q> with q prime"))?;
        if !milnor_core::exactnum::is_prime(q) {
            return Err(format!("field characteristic {q} is not prime"));
        }
        Ok(FieldSelector::finite(q))
    }
}

impl Serialize for FieldSelector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Which presentation of the fundamental group to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PresentationKind {
    /// The complement of the decone at `H2`; generators `g1, g12:r, y_i`.
    #[default]
    Deconed,
    /// The full central arrangement; generators `g1, g2, g12:r, y_i`.
    Cone,
    /// The decone in the basis `u_r, v_r` (odd `p`).
    Alternate,
}

impl FromStr for PresentationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "deconed" | "decone" => Ok(PresentationKind::Deconed),
            "cone" => Ok(PresentationKind::Cone),
            "alternate" => Ok(PresentationKind::Alternate),
            _ => Err(format!("unknown presentation {s:?}; use deconed, cone or alternate")),
        }
    }
}

/// How a character is specified on the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum CharacterSelector {
    /// `lambda_a^(N/k)`.
    Power { k: u64 },
    /// A character file (generator or hyperplane labels).
    File { path: String },
    /// Explicit exponents of a primitive `order`-th root, in generator order.
    Exponents { order: u64, exponents: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase", rename_all_fields = "camelCase", tag = "name")]
pub enum Command {
    Present,
    Alexander,
    Depth,
    /// Sample points of the components `C_i` (and of `T`, `sT` for `p = 2`).
    Charvar { u_order: u64, component: Option<usize> },
    Milnor,
    Snf { path: String },
    Verify { max_p: usize },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Present => "present",
            Command::Alexander => "alexander",
            Command::Depth => "depth",
            Command::Charvar { .. } => "charvar",
            Command::Milnor => "milnor",
            Command::Snf { .. } => "snf",
            Command::Verify { .. } => "verify",
        }
    }
}

/// A fully parsed invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub command: Command,
    pub p: usize,
    /// Multiplicities in hyperplane order; `None` for the defaults.
    pub multiplicities: Option<Vec<u64>>,
    pub presentation: PresentationKind,
    pub character: Option<CharacterSelector>,
    pub field: Option<FieldSelector>,
    pub format: Format,
    #[serde(skip)]
    pub out: Option<String>,
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub quiet: bool,
}

impl RunConfig {
    pub fn new(command: Command, p: usize) -> Self {
        RunConfig {
            command,
            p,
            multiplicities: None,
            presentation: PresentationKind::Deconed,
            character: None,
            field: None,
            format: Format::Text,
            out: None,
            threads: None,
            quiet: true,
        }
    }
}

/// Exit status and the rendered report.
#[derive(Clone, Debug)]
pub struct Outcome {
    /// 0: success; 1: a check failed; 2: invalid input or computation error.
    pub status: i32,
    pub output: String,
    pub report: Option<Report>,
}

/// Runs one command. Errors become status 2 with the message in `output`.
pub fn run(config: &RunConfig) -> Outcome {
    let mut progress = |msg: &str| {
        if !config.quiet {
            eprintln!("{msg}");
        }
    };
    match commands::dispatch(config, &mut progress) {
        Ok(report) => Outcome {
            status: if report.passed() { 0 } else { 1 },
            output: report.render(config.format, config),
            report: Some(report),
        },
        Err(e) => Outcome {
            status: 2,
            output: format!("error: {e}\n"),
            report: None,
        },
    }
}
