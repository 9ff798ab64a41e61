//! Report envelope shared by all subcommands.

use kummono::Error;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::GlobalOpts;

pub const SCHEMA_VERSION: u32 = 1;

pub enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
}

impl Failure {
    pub fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(s) => s.clone(),
            Failure::Io(s) => format!("i/o error: {s}"),
        }
    }

    fn class(&self) -> &'static str {
        match self {
            Failure::Core(e) => match e.class() {
                kummono::ErrorClass::Hypothesis => "hypothesis",
                kummono::ErrorClass::Budget => "budget",
                kummono::ErrorClass::Input => "input",
                kummono::ErrorClass::Internal => "internal",
            },
            Failure::Usage(_) => "usage",
            Failure::Io(_) => "io",
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Result of a subcommand: the machine payload and its text rendering.
pub struct Outcome {
    pub payload: Value,
    pub human: String,
    /// Stdout carries data (CSV), so the report goes to stderr.
    pub report_to_stderr: bool,
}

impl Outcome {
    pub fn new(payload: Value, human: String) -> Outcome {
        Outcome { payload, human, report_to_stderr: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assumptions {
    pub assume_maximal: bool,
    pub assume_irreducible: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub class: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub argv: Vec<String>,
    pub assumptions: Assumptions,
    pub result: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(
        command: &str,
        argv: &[String],
        g: &GlobalOpts,
        result: Value,
        failure: Option<&Failure>,
        timing_ms: Option<u64>,
    ) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            argv: argv.to_vec(),
            assumptions: Assumptions {
                assume_maximal: g.assume_maximal,
                assume_irreducible: g.assume_irreducible,
                seed: g.seed,
            },
            result,
            error: failure.map(|f| ErrorInfo { class: f.class().into(), message: f.message() }),
            timing_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Loud notice of any assumption that weakens the result.
    pub fn human_header(&self) -> String {
        let mut s = String::new();
        if self.assumptions.assume_maximal {
            s.push_str("WARNING: maximality of the base order is ASSUMED, not verified\n");
        }
        if self.assumptions.assume_irreducible {
            s.push_str("WARNING: irreducibility is ASSUMED, not verified; verdicts are conditional\n");
        }
        s
    }
}
