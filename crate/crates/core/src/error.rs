use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Variants split into two families: mathematical failures (the input was
/// well-formed but the requested object does not exist) and input errors.
/// [`Error::is_math_error`] tells them apart; the CLI maps them onto
/// different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable tables do not match ({0} vs {1} variables)")]
    VarTableMismatch(usize, usize),
    #[error("operands live in different Weyl algebras")]
    ContextMismatch,
    #[error("variable index {0} is not a base variable")]
    NotABaseVariable(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}: the zero element has no leading term")]
    ZeroInput(&'static str),
    #[error("initial monomial of the divisor does not divide the initial monomial of the dividend")]
    NotDivisible,
    #[error("the ideal has infinite holonomic rank")]
    InfiniteRank,
    #[error("the given elements are not a basis of R/RI (singular change-of-basis matrix)")]
    NotABasis,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrices violate the integrability conditions")]
    NotIntegrable,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("invalid variable table: {0}")]
    InvalidVariables(String),
    #[error("invalid weight vector: {0}")]
    InvalidWeight(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown identifier '{name}' at position {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("cannot divide by an expression containing a derivation (position {0})")]
    DivisionByOperator(usize),
    #[error("expression has non-polynomial coefficients and is not an element of the Weyl algebra")]
    NotPolynomial,
    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// `true` for failures that are mathematical facts about valid input.
    pub fn is_math_error(&self) -> bool {
        matches!(self, Error::InfiniteRank | Error::NotABasis | Error::SingularMatrix | Error::NotIntegrable)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
