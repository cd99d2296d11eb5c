use thiserror::Error;

/// Errors raised by the workbench operations.
///
/// Partiality of term interpretation is not an error; see [`crate::term::interpret`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("antisymmetry violated: `{0}` and `{1}` are distinct but mutually below each other")]
    AntisymmetryViolation(String, String),
    #[error("relation is not reflexive at `{0}`")]
    ReflexivityViolation(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}`")]
    TransitivityViolation(String, String, String),
    #[error("map is not total: `{0}` has no image")]
    NotTotal(String),
    #[error("map is not monotone: `{0}` <= `{1}` but images `{2}` and `{3}` are not ordered")]
    NotMonotone(String, String, String, String),
    #[error("operation `{symbol}` is not monotone at {witness}")]
    NotMonotoneOperation { symbol: String, witness: String },
    #[error("sequence is not a chain: `{0}` is not below `{1}`")]
    NotAChain(String, String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("square does not commute at `{0}`")]
    SquareNotCommuting(String),
    #[error("map is not dense (not surjective): `{0}` is not in its image")]
    NotDense(String),
    #[error("map is not an order embedding: {0}")]
    NotEmbedding(String),
    #[error("splitting is invalid: {0}")]
    InvalidSplitting(String),
    #[error("parallel pair has no splitting")]
    MissingSplitting,
    #[error("diagram is empty")]
    EmptyDiagram,
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("carrier would be empty: no generators and no constants")]
    CarrierEmpty,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("arity {0} out of range (max arity {1})")]
    ArityOutOfRange(usize, usize),
    #[error("invalid Eilenberg-Moore data: {0}")]
    InvalidEmData(String),
    #[error("algebra is not in the variety: {0}")]
    NotInVariety(String),
    #[error("malformed term: {0}")]
    MalformedTerm(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
