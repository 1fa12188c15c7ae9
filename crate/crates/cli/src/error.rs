use std::fmt;
use std::path::PathBuf;

use defect_forge_core::Error as CoreError;
use defect_forge_nevanlinna::Error as NumError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    VerificationFailed = 1,
    Precondition = 2,
    Resource = 3,
    Pipeline = 4,
    Inconclusive = 5,
    Usage = 64,
    DataErr = 65,
    NoInput = 66,
    IoErr = 74,
}

#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    Numeric(NumError),
    Missing(PathBuf),
    Io(PathBuf, std::io::Error),
    Verification(String),
    Usage(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<NumError> for CliError {
    fn from(e: NumError) -> Self {
        match e {
            NumError::Core(c) => CliError::Core(c),
            other => CliError::Numeric(other),
        }
    }
}

fn core_code(e: &CoreError) -> ExitCode {
    match e {
        CoreError::PreconditionViolated(_) | CoreError::NotInPosition(_) => ExitCode::Precondition,
        CoreError::ResourceLimit(_) => ExitCode::Resource,
        CoreError::PipelineFailure { .. } => ExitCode::Pipeline,
        CoreError::Inconclusive(_) => ExitCode::Inconclusive,
        CoreError::InvalidInput(_) | CoreError::Parse { .. } => ExitCode::DataErr,
    }
}

impl CliError {
    pub fn code(&self) -> ExitCode {
        match self {
            CliError::Core(e) => core_code(e),
            CliError::Numeric(e) => match e {
                NumError::Core(c) => core_code(c),
                NumError::CurveOnDivisor { .. } => ExitCode::Precondition,
                NumError::Unresolved { .. } | NumError::Quadrature(_) => ExitCode::Resource,
                NumError::Csv(_) => ExitCode::IoErr,
            },
            CliError::Missing(_) => ExitCode::NoInput,
            CliError::Io(..) => ExitCode::IoErr,
            CliError::Verification(_) => ExitCode::VerificationFailed,
            CliError::Usage(_) => ExitCode::Usage,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::Missing(p) => write!(f, "{}: no such file", p.display()),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Verification(m) => write!(f, "certificate rejected: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
