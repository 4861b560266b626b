//! CLI errors. All of them map to exit code 2.

use thiserror::Error;

/// Why a command could not produce a verdict.
#[derive(Debug, Error)]
pub enum CliError {
    /// The document is not well-formed.
    #[error("parse error at line {line}, column {column} (field `{path}`): {message}")]
    Parse {
        line: usize,
        column: usize,
        path: String,
        message: String,
    },
    /// A reference names nothing of the expected kind.
    #[error("unresolved reference `{name}` at `{path}`")]
    Unresolved { path: String, name: String },
    /// An entity failed its validator or is malformed.
    #[error("invalid `{path}`: {message}")]
    Invalid { path: String, message: String },
    /// A library operation failed.
    #[error("{0}")]
    Core(#[from] intcat_core::Error),
    /// The command line is inconsistent with the document.
    #[error("{0}")]
    Usage(String),
    /// Reading the document failed.
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub(crate) fn invalid(path: impl Into<String>, message: impl std::fmt::Display) -> CliError {
        CliError::Invalid {
            path: path.into(),
            message: message.to_string(),
        }
    }

    pub(crate) fn unresolved(path: impl Into<String>, name: impl Into<String>) -> CliError {
        CliError::Unresolved {
            path: path.into(),
            name: name.into(),
        }
    }
}
