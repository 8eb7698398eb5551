use std::fmt;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad or missing options.
    Usage(String),
    /// Options parse but describe an impossible configuration, such as a
    /// reference point outside the region.
    Domain(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<polydist::Error> for CliError {
    fn from(e: polydist::Error) -> Self {
        match e {
            polydist::Error::OutsidePolygon { .. } | polydist::Error::OutsideDisk { .. } => {
                CliError::Domain(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}
