use thiserror::Error;

/// Errors shared across the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("undeclared generator `{name}` at line {line}, column {col}")]
    UndeclaredGenerator { name: String, line: usize, col: usize },

    #[error("permutation degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("degree {got} exceeds the stabilizer-chain cap of {cap} points")]
    DegreeCap { got: usize, cap: usize },

    #[error("coset enumeration overflow in {stage}: live cosets would exceed {cap}")]
    Overflow { stage: String, cap: usize },

    #[error("group order {order} exceeds the pipeline cap {cap}")]
    OrderCap { order: u64, cap: u64 },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("coset table is not complete")]
    IncompleteTable,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("homomorphism is not verified on the source relations")]
    UnverifiedHomomorphism,

    #[error("generator images do not define a homomorphism")]
    NotAHomomorphism,

    #[error("element-triples mode requires the element list of the group")]
    ElementListRequired,

    #[error("duplicate group name `{0}`")]
    DuplicateName(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("internal consistency check failed: {0}")]
    InternalCheck(String),

    #[error("invalid permutation images: {0}")]
    InvalidPermutation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("report deserialization failed: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
