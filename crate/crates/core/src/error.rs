use thiserror::Error;

use crate::linalg::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot take the tensor product of an empty list")]
    EmptyTensor,
    #[error("length {0} is not a power of two with at least one qubit")]
    NotPowerOfTwo(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("qubit label {0} is not in the register")]
    UnknownLabel(Label),
    #[error("qubit label {0} appears more than once")]
    DuplicateLabel(Label),
    #[error("operator acts on {arity} qubits but {targets} targets were given")]
    ArityMismatch { arity: usize, targets: usize },
    #[error("partial trace must keep at least one qubit")]
    EmptyKeep,
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("state is not normalized (norm squared {0})")]
    NotNormalized(f64),
    #[error("{name} = {value} is outside the open interval (0, pi/2)")]
    AngleOutOfRange { name: &'static str, value: f64 },
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("basis label needs {expected} lambda bits, got {found}")]
    LambdaLength { expected: usize, found: usize },
    #[error("bit value {0} is not 0 or 1")]
    NotABit(u8),
    #[error("a basis needs at least two qubits, got {0}")]
    TooFewQubits(usize),
    #[error("qubits {0:?} are not a wired part of the {1} channel")]
    PartNotInGeometry(Vec<Label>, &'static str),
    #[error("gamma for a {qubits}-qubit part needs {expected} index bits, got {found}")]
    GammaIndexLength { qubits: usize, expected: usize, found: usize },
    #[error("outcome index {index} is out of range for {scheme}")]
    OutcomeIndex { index: usize, scheme: &'static str },
    #[error("outcome belongs to {found}, expected {expected}")]
    OutcomeSchemeMismatch { expected: &'static str, found: &'static str },
    #[error("qubit {0} is not a channel qubit (expected one of 2, 4, 6, 7, 8, 9)")]
    NotAChannelQubit(Label),
    #[error("no closed form covers {0}; covered combinations: {1}")]
    Uncovered(String, &'static str),
    #[error("the closed per-input form only applies to the noiseless case")]
    NoiseNotAllowed,
    #[error("invalid averaging method: {0}")]
    InvalidMethod(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
