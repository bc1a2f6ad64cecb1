use thiserror::Error;

/// Which of the two inputs of a pair-level operation was at fault.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operand {
    First,
    Second,
    Third,
}

impl std::fmt::Display for Operand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Operand::First => write!(f, "first"),
            Operand::Second => write!(f, "second"),
            Operand::Third => write!(f, "third"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degree overflow: {left} + {right} exceeds dimension {dim}")]
    DegreeOverflow { left: usize, right: usize, dim: usize },

    #[error("wrong degree: expected {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },

    #[error("interior product of a 0-form")]
    ZeroDegree,

    #[error("index out of range: {index} not in 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("Pfaffian requires even dimension, got {0}")]
    OddDimension(usize),

    #[error("matrix is not {0}")]
    NotSymmetric(&'static str),

    #[error("matrix is singular")]
    Singular,

    #[error("{0} form is degenerate")]
    DegenerateForm(Operand),

    #[error("structure constants are not antisymmetric at [e{i},e{j}] component e{k}")]
    Antisymmetry { i: usize, j: usize, k: usize },

    #[error("Jacobi identity fails for triples {0:?}")]
    Jacobi(Vec<(usize, usize, usize)>),

    #[error("linearly dependent subspace basis")]
    DependentBasis,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("unknown example `{0}`")]
    UnknownExample(String),

    #[error("degenerate family at t = {t}, x = {x:?} (condition number {cond:.3e})")]
    DegenerateFamily { t: f64, x: Vec<f64>, cond: f64 },

    #[error("step rejected at t = {t}: {reason}")]
    StepRejected { t: f64, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
