use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (|1 - norm^2| = {deficit:e})")]
    NotNormalized { deficit: f64 },

    #[error("expected {expected} entries, got {actual}")]
    BadLength { expected: usize, actual: usize },

    #[error("expected arity {expected}, got {actual}")]
    WrongArity { expected: usize, actual: usize },

    #[error("expected a point with {expected} coordinates, got {actual}")]
    BadArity { expected: usize, actual: usize },

    #[error("count {0} outside 1..={max}", max = crate::qstate::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("all entries are zero; factorization is not unique")]
    AllZero,

    #[error("variable map is invalid: {0}")]
    BadVarMap(String),

    #[error("factor variables collide on v{0}")]
    VariableCollision(usize),

    #[error("basis coefficient matrix is singular")]
    SingularBasis,

    #[error("matrix is not unitary (max deviation {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("branch k={k}, i={i} is singular (|det G| = {det_abs:e})")]
    SingularBranch { k: usize, i: usize, det_abs: f64 },

    #[error("index {0} outside 1..=4")]
    BadIndex(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("polynomial has complex coefficients (max |im| = {max_im:e})")]
    ComplexCoefficients { max_im: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
}
