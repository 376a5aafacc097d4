use thiserror::Error;

use crate::schedule::ScheduleViolation;
use crate::workload::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid task system: {}", join(.0))]
    InvalidSystem(Vec<Violation>),

    #[error("invalid schedule: {}", join(.0))]
    InvalidSchedule(Vec<ScheduleViolation>),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("unknown algorithm `{0}` (expected one of lcmpf, lcf, mcf, lcmcf)")]
    UnknownAlgorithm(String),

    #[error("algorithm `{algorithm}` cannot schedule a splitable system")]
    ModeMismatch { algorithm: &'static str },

    #[error("oracle node budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("{algorithm} produced an invalid schedule on instance seed {seed}: {source}")]
    Experiment {
        seed: u64,
        algorithm: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        let mut message = err.to_string();
        if let Some(at) = message.rfind(" at line ") {
            message.truncate(at);
        }
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message,
        }
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
