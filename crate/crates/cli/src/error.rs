use spr_core::SprError;
use thiserror::Error;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Bad flags or parameters.
pub const EXIT_USAGE: i32 = 2;
/// Unreadable or malformed input file.
pub const EXIT_INPUT: i32 = 3;
/// A computation failed its own checks.
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }

    /// Maps a library error raised while loading a file.
    pub fn input(e: SprError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SprError> for CliError {
    fn from(e: SprError) -> Self {
        match e {
            SprError::Format(_) | SprError::InvalidSpace(_) | SprError::DegenerateBasis(_) | SprError::SpaceMismatch(_) => {
                CliError::Input(e.to_string())
            }
            SprError::Domain(_) | SprError::InvalidParameter(_) | SprError::Dimension(_) | SprError::Unsupported(_) => {
                CliError::Usage(e.to_string())
            }
            SprError::NonUnit(_)
            | SprError::DegenerateSpan(_)
            | SprError::NotCertified
            | SprError::SurrogateQuality(_)
            | SprError::Undersampled(_)
            | SprError::Norming(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
