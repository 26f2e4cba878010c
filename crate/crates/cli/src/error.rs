//! CLI error type with stable exit codes and a single-line machine format.

use frogsim::FrogError;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Invalid configuration or parameters (exit 2).
    Config,
    /// A trajectory left the window budget (exit 3).
    Window,
    /// Domain refusal, e.g. no invariant measure exists (exit 4).
    Domain,
    /// Filesystem failure (exit 5).
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> u8 {
        match self {
            ErrorKind::Config => 2,
            ErrorKind::Window => 3,
            ErrorKind::Domain => 4,
            ErrorKind::Io => 5,
        }
    }

    fn label(self) -> &'static str {
        match self {
            ErrorKind::Config => "config",
            ErrorKind::Window => "window",
            ErrorKind::Domain => "domain",
            ErrorKind::Io => "io",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
        }
    }

    /// Attaches run context (which sweep point / replicate failed).
    pub fn with_context(mut self, context: &str) -> Self {
        self.message = format!("{context}: {}", self.message);
        self
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "frogsim-error: kind={} msg=\"{}\"",
            self.kind.label(),
            self.message
        )
    }
}

impl From<FrogError> for CliError {
    fn from(err: FrogError) -> Self {
        let kind = match &err {
            FrogError::WindowExhausted { .. } | FrogError::TrajectoryUndefined { .. } => {
                ErrorKind::Window
            }
            FrogError::NoInvariantMeasure { .. } => ErrorKind::Domain,
            _ => ErrorKind::Config,
        };
        CliError::new(kind, err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::new(ErrorKind::Io, err.to_string())
    }
}
