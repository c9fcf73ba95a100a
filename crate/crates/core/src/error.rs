use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("square input: {0} is a perfect square")]
    SquareInput(i64),
    #[error("only trivial solutions (±1, 0) exist for square d = {0}")]
    OnlyTrivial(i64),
    #[error("d must be positive, got {0}")]
    NonPositiveD(i64),
    #[error("norm m must be nonzero")]
    ZeroM,
    #[error("Pell solutions belong to different d ({0} vs {1})")]
    MismatchedD(i64, i64),
    #[error("degenerate: discriminant {0}")]
    Degenerate(i64),
    #[error("square discriminant {0}: the lattice has isotropic classes")]
    SquareDiscriminant(i64),
    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,
    #[error("k = 0 is handled by the isotropic-class test")]
    ZeroK,
    #[error("zero class has no orbit")]
    ZeroClass,
    #[error("no hyperbolic isometry found (enumeration bound failure)")]
    NoHyperbolicIsometry,
    #[error("(deg, genus) = ({0}, {1}) is not realizable on a smooth quartic")]
    NotRealizable(i64, i64),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Errors caused by the input lying outside the domain of the computation,
    /// as opposed to failures of the computation itself.
    pub fn is_domain_rejection(&self) -> bool {
        !matches!(
            self,
            Error::NoHyperbolicIsometry | Error::Internal(_) | Error::MismatchedD(..)
        )
    }
}
