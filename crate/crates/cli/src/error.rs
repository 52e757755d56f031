use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Geometry(#[from] ckgeom::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    /// The command ran but its check did not pass; the report is on stdout.
    #[error("{0}")]
    Failed(String),
}

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Geometry(e) if !e.is_input_error() => EXIT_DOMAIN,
            CliError::Failed(_) => EXIT_DOMAIN,
            CliError::Write(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        }
    }

    pub fn payload(&self) -> ErrorPayload {
        let (kind, class) = match self {
            CliError::Geometry(e) => (e.kind(), e.norm_class()),
            CliError::Usage(_) | CliError::Read { .. } | CliError::Json(_) | CliError::Csv(_) => ("usage", None),
            CliError::Write(_) => ("internal", None),
            CliError::Failed(_) => ("check-failed", None),
        };
        ErrorPayload { error: self.to_string(), kind, class }
    }
}

#[derive(Serialize)]
pub struct ErrorPayload {
    pub error: String,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ckgeom::NormClass>,
}

pub type CliResult<T> = std::result::Result<T, CliError>;
