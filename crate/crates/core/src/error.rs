use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Pauli string {text:?}: {reason}")]
    ParsePauli { text: String, reason: String },

    #[error("length mismatch: {left} vs {right} qubits")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid algebra specification: {0}")]
    InvalidSpec(String),

    #[error("invalid pivot ({u}, {v}): {reason}")]
    InvalidPivot { u: usize, v: usize, reason: String },

    #[error("index {index} out of range for {len} generators")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("singular change-of-generators matrix")]
    Singular,

    #[error("sign branch has {got} entries, expected {expected}")]
    SignBranchLength { expected: usize, got: usize },

    #[error("generator {index} ({pauli}) is not Hermitian")]
    NotHermitian { index: usize, pauli: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{what} needs {qubits} qubits, above the oracle cap of {cap}")]
    DimensionCap {
        what: &'static str,
        qubits: usize,
        cap: usize,
    },

    #[error("set of {0} elements is odd; no element can complete it")]
    OddCompletion(usize),

    #[error("elements {0} and {1} do not anti-commute")]
    NotAnticommuting(usize, usize),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
