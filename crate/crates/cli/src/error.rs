use decomp_embed_core::covering::CoveringError;
use decomp_embed_core::embedding::EmbedError;
use decomp_embed_core::families::FamilyError;
use decomp_embed_core::seqspace::SeqError;
use thiserror::Error;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_SCHEMA: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_ORACLE: i32 = 10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("oracle disagrees with the symbolic decision: {0}")]
    OracleMismatch(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Schema(_) => EXIT_SCHEMA,
            CliError::Unsupported(_) | CliError::Internal(_) => EXIT_SOFTWARE,
            CliError::OracleMismatch(_) => EXIT_ORACLE,
        }
    }
}

impl From<SeqError> for CliError {
    fn from(e: SeqError) -> Self {
        match e {
            SeqError::UnsupportedWeight(_) => CliError::Unsupported(e.to_string()),
            SeqError::LatticeMismatch(_) | SeqError::Malformed(_) => CliError::Schema(e.to_string()),
        }
    }
}

impl From<EmbedError> for CliError {
    fn from(e: EmbedError) -> Self {
        match e {
            EmbedError::Seq(s) => s.into(),
            EmbedError::InvalidQuery(m) => CliError::Usage(m),
            EmbedError::ModerationUnknown(_) | EmbedError::Inconsistent(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::InvalidParams(_) => CliError::Schema(e.to_string()),
            FamilyError::Seq(s) => s.into(),
        }
    }
}

impl From<CoveringError> for CliError {
    fn from(e: CoveringError) -> Self {
        match e {
            CoveringError::WindowTooLarge { .. } => CliError::Usage(e.to_string()),
            CoveringError::Invalid(_) => CliError::Schema(e.to_string()),
            CoveringError::UnsupportedGeometry(_) | CoveringError::MissingTightnessWitness => {
                CliError::Unsupported(e.to_string())
            }
        }
    }
}
