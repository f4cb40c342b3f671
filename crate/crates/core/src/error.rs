use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("variable table mismatch")]
    VarTableMismatch,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("element does not belong to this algebra")]
    AlgebraMismatch,
    #[error("name clash: {0}")]
    NameClash(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("unsupported base change: {0}")]
    UnsupportedBaseChange(String),
    #[error("unknown catalog algebra `{0}`")]
    UnknownCatalog(String),
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("element is not invertible (determinant vanishes)")]
    NotInvertible,
    #[error("inverse has non-polynomial coordinates: determinant {0} does not divide")]
    InverseNotPolynomial(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("algebra is not associative and unital:\n{0}")]
    NotAssociative(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
