use std::fmt;

/// Failure classes and their process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or an unusable grid (64).
    Usage(String),
    /// Inputs outside the mathematical domain (65).
    Domain(String),
    /// A computation or check failed (1).
    Failure(String),
    /// Output could not be written (74).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Domain(_) => 65,
            CliError::Failure(_) => 1,
            CliError::Io(_) => 74,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
            CliError::Failure(m) => write!(f, "error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<levy_stable::Error> for CliError {
    fn from(e: levy_stable::Error) -> Self {
        use levy_stable::Error as E;
        match e {
            E::Pole(_)
            | E::Domain(_)
            | E::ConvergenceGate { .. }
            | E::Construction(_)
            | E::DivergentMoment { .. } => CliError::Domain(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}
