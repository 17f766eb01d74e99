use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("duplicate label {0}")]
    DuplicateLabel(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("gate {0} is not a Clifford propagation step")]
    NonClifford(String),
    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),
    #[error("{0}")]
    Invalid(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("too many qubits for dense simulation: {0}")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
