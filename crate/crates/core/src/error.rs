use thiserror::Error;

/// Errors raised by the exact-arithmetic and group-theory kernels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not invertible")]
    NotInvertible,
    #[error("zero matrix has no projective class")]
    ZeroMatrix,
    #[error("closure cap exceeded: more than {0} elements")]
    ClosureCap(usize),
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("not normal")]
    NotNormal,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("order cap exceeded: {0} > {1}")]
    OrderCap(usize, usize),
    #[error("no suitable prime below {0}")]
    NoPrime(u64),
    #[error("character table computation failed: {0}")]
    Dixon(String),
    #[error("corrupt table: {0}")]
    CorruptTable(String),
    #[error("unknown lattice {0:?}")]
    UnknownLattice(String),
    #[error("unsupported modulus {0}")]
    UnsupportedModulus(u32),
    #[error("residue space too large: {0} residues exceeds guard {1}")]
    Guard(u64, u64),
    #[error("{0}")]
    InvalidInput(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("fixture parse error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
