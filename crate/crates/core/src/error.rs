use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("data is attached to a different category")]
    CategoryMismatch,
    #[error("morphisms {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("cocycle mismatch: {0}")]
    CocycleMismatch(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("scalar action is not multiplicative: {0}")]
    ScalarAction(String),
    #[error("map does not descend to the balanced tensor product: {0}")]
    Balancing(String),
    #[error("module is not regular: {0}")]
    NonRegularModule(String),
    #[error("cannot factor {0} over the supported prime range")]
    Factorization(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
}

pub(crate) fn dim_err(what: impl Into<String>) -> Error {
    Error::DimensionMismatch(what.into())
}
