use thiserror::Error;

pub type Result<T, E = ZdaError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZdaError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("carrier of size {size} exceeds the configured bound {bound} (set ZDA_MAX_CARRIER to raise it)")]
    CarrierTooLarge { size: usize, bound: usize },

    #[error("ring axiom `{law}` fails at {witness}")]
    RingAxiom { law: &'static str, witness: String },

    #[error("element belongs to a different ring")]
    CrossRing,

    #[error("handle {handle} out of range for a ring with {size} elements")]
    HandleOutOfRange { handle: usize, size: usize },

    #[error("not a ring homomorphism: `{law}` fails at {witness}")]
    NotAHomomorphism { law: &'static str, witness: String },

    #[error("no natural homomorphism {source_label} -> {target}: {reason}")]
    UnresolvableNaturalHom {
        source_label: String,
        target: String,
        reason: String,
    },

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("invalid amalgamation: {0}")]
    InvalidSpec(String),

    #[error("invalid module: {law} fails at {witness}")]
    InvalidModule { law: &'static str, witness: String },

    #[error("invalid n-trivial extension: {law} fails at {witness}")]
    InvalidExtension { law: &'static str, witness: String },

    #[error("{0} is not a vertex of the graph")]
    InvalidVertex(String),

    #[error("theorem violated ({theorem}): {witness}")]
    TheoremViolation { theorem: String, witness: String },

    #[error("classification gap: {0}")]
    ClassificationGap(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),

    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("{line}:{col}: {msg}")]
    Semantic { line: usize, col: usize, msg: String },
}

impl ZdaError {
    /// True for errors caused by the user's input rather than by a failed check.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            ZdaError::TheoremViolation { .. } | ZdaError::ClassificationGap(_) | ZdaError::Internal(_)
        )
    }
}
