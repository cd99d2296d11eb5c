use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("ParseError: {path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("malformed {what}: {detail}")]
    Format { what: String, detail: String },
    #[error("UnknownName: no {kind} named `{name}`")]
    UnknownName { kind: String, name: String },
    #[error("{0}")]
    Core(#[from] ordalg::Error),
    #[error("InvariantViolation: {invariant}: {detail} (in {path})")]
    Invariant {
        path: PathBuf,
        invariant: &'static str,
        detail: String,
    },
}

/// Name of the input invariant a core error reports, if it is one.
pub fn invariant_name(e: &ordalg::Error) -> Option<&'static str> {
    use ordalg::Error::*;
    Some(match e {
        DuplicateElement(_) => "distinct elements",
        UnknownElement(_) => "known elements",
        AntisymmetryViolation(..) => "antisymmetry",
        ReflexivityViolation(_) => "reflexivity",
        TransitivityViolation(..) => "transitivity",
        NotTotal(_) => "totality",
        NotMonotone(..) | NotMonotoneOperation { .. } => "monotonicity",
        InvalidSplitting(_) => "splitting",
        DomainMismatch(_) => "matching domains",
        SignatureMismatch(_) => "signature",
        MalformedTerm(_) => "well-formed term",
        PreconditionFailed(_) => "well-formed presentation",
        _ => return None,
    })
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant { .. } => 3,
            CliError::Core(e) if invariant_name(e).is_some() => 3,
            _ => 2,
        }
    }

    /// Re-labels a load-time error as an input invariant violation.
    pub fn at_load(self, path: &std::path::Path) -> CliError {
        match self {
            CliError::Core(e) => match invariant_name(&e) {
                Some(invariant) => CliError::Invariant {
                    path: path.to_owned(),
                    invariant,
                    detail: e.to_string(),
                },
                None => CliError::Core(e),
            },
            CliError::UnknownName { kind, name } => CliError::Invariant {
                path: path.to_owned(),
                invariant: "cross-references resolve",
                detail: format!("no {kind} named `{name}`"),
            },
            other => other,
        }
    }
}
