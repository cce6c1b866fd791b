//! Command line front end for `starcat-core`: argument handling, the
//! verification suites, JSON reports and parallel classification.

pub mod config;
pub mod crosscheck;
pub mod report;
pub mod suites;

use std::path::Path;
use std::time::Duration;

use starcat_core::bicategory::StarKind;

use config::{AlgebraKind, Command, DemoKind, FieldMode, RunConfig};
use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] starcat_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) | CliError::Io { .. } => 1,
        }
    }
}

pub struct Outcome {
    pub report: Report,
    /// wall clock per stage; never part of the JSON output
    pub timings: Vec<(String, Duration)>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.passed() {
            0
        } else {
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let prime = match cfg.field {
        FieldMode::Rational => None,
        FieldMode::Prime(p) => Some((p, cfg.seed)),
    };
    let mut timings = Vec::new();
    let start = std::time::Instant::now();
    let report = match &cfg.command {
        Command::Verify => Report::Verify(suites::verify(cfg.n, prime)?),
        Command::Homtable { algebra } => {
            let kind = match algebra {
                AlgebraKind::Zigzag => StarKind::Zigzag,
                AlgebraKind::Star => StarKind::Quotient,
            };
            Report::Homtable(suites::homtable(cfg.n, kind, prime)?)
        }
        Command::Classify { presentation_bound } => Report::Classify(suites::classify(
            cfg.n,
            *presentation_bound,
            cfg.length_cap,
            cfg.parallelism,
            &mut timings,
        )?),
        Command::Modcheck => Report::Modcheck(suites::modcheck(cfg.n, cfg.length_cap)?),
        Command::Demo { which, data, partition } => match which {
            DemoKind::Counterexample => Report::Counterexample(suites::counterexample(cfg.length_cap)?),
            DemoKind::Naturality => {
                let text = match data {
                    Some(p) => read(p)?,
                    None => suites::ALGEBRA_B.to_string(),
                };
                let file = suites::PresentationFile::parse(&text)?;
                Report::Naturality(suites::naturality(&file, cfg.n)?)
            }
            DemoKind::Colimit => {
                let p = match partition {
                    Some(s) => suites::parse_partition(cfg.n, s)?,
                    None => suites::merged_partition(cfg.n),
                };
                Report::Colimit(suites::colimit(&p, cfg.length_cap)?)
            }
        },
    };
    timings.push(("total".into(), start.elapsed()));
    Ok(Outcome { report, timings })
}

/// JSON emitted when a suite aborts with an error instead of a report.
pub fn error_json(err: &CliError) -> String {
    let v = serde_json::json!({ "error": err.to_string(), "exit_code": err.exit_code() });
    let mut s = serde_json::to_string_pretty(&v).expect("json value");
    s.push('\n');
    s
}
