use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported")]
    CharTwo,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("modulus is not squarefree over its base")]
    NotSquarefree,
    #[error("modulus must be monic of degree >= 1")]
    BadModulus,
    #[error("zero entry in a diagonal form")]
    ZeroEntry,
    #[error("could not factor {0} within the budget")]
    FactorBudgetExceeded(String),
    #[error("operation unsupported over this field: {0}")]
    UnsupportedField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("bilinear form is degenerate")]
    Degenerate,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("zero set is not finite (non-isolated zeros)")]
    NonIsolatedZeros,
    #[error("Groebner basis step budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("zero is not simple (Jacobian determinant vanishes)")]
    NotSimple,
    #[error("system is not triangular: {0}")]
    NotTriangular(String),
    #[error("cannot factor {0}: irreducible factor of degree > 3")]
    FactorDegreeTooHigh(String),
    #[error("local index matrix is singular")]
    SingularIndex,
    #[error("chart is degenerate: quotient dimension {dim}, expected {expected}")]
    ChartDegenerate { dim: usize, expected: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CharTwo => "CharTwo",
            Error::NotPrime(_) => "NotPrime",
            Error::NotSquarefree => "NotSquarefree",
            Error::BadModulus => "BadModulus",
            Error::ZeroEntry => "ZeroEntry",
            Error::FactorBudgetExceeded(_) => "FactorBudgetExceeded",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::Degenerate => "Degenerate",
            Error::NotSymmetric => "NotSymmetric",
            Error::NotInvertible => "NotInvertible",
            Error::NonIsolatedZeros => "NonIsolatedZeros",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NotSimple => "NotSimple",
            Error::NotTriangular(_) => "NotTriangular",
            Error::FactorDegreeTooHigh(_) => "FactorDegreeTooHigh",
            Error::SingularIndex => "SingularIndex",
            Error::ChartDegenerate { .. } => "ChartDegenerate",
            Error::Parse(_) => "Parse",
            Error::Invalid(_) => "Invalid",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
