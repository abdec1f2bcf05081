use thiserror::Error;

use crate::exactalg::Field;

/// Errors raised by the exact-algebra pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixed characteristic: {left} vs {right}")]
    MixedCharacteristic { left: Field, right: Field },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("constraint #{index} is nonlinear in unknown `{unknown}`")]
    NonlinearConstraint { index: usize, unknown: String },

    #[error("constraint #{index} has a term free of every unknown")]
    InhomogeneousConstraint { index: usize },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("illegal root system type {kind}{rank}")]
    IllegalType { kind: char, rank: usize },

    #[error("eigenvalue solver did not converge")]
    EigenNonConvergence,

    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),

    #[error("structure constant invariant violated: {0}")]
    StructureConstants(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("subspace is not graded by the given weights")]
    NotGraded,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is not unipotent")]
    NotUnipotent,

    #[error("nilpotent element is not regular")]
    NotRegular,

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Springer coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("flag enumeration needs {count} flags, over the budget of {budget}")]
    FlagBudgetExceeded { count: u128, budget: u128 },

    #[error("empty weight list")]
    EmptyWeights,

    #[error("invalid weight data: {0}")]
    InvalidWeights(String),

    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
