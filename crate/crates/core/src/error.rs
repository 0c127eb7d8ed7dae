use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("singular transformation")]
    Singular,
    #[error("division is not exact in the coefficient ring")]
    NotExact,
    #[error("form has non-integral coefficients")]
    NotIntegral,
    #[error("quadratic form is not primitive")]
    NotPrimitive,
    #[error("form has zero discriminant")]
    Degenerate,
    #[error("quartic is not stabilized by the given quadratic form")]
    NotStabilized,
    #[error("no valid chart for this quadratic form")]
    NoChart,
    #[error("quadratic form is not in canonical shape")]
    NotCanonical,
    #[error("discriminant must be a positive non-square")]
    SquareDiscriminant,
    #[error("quartic is reducible over Q")]
    Reducible,
    #[error("quartic is irreducible over Q")]
    Irreducible,
    #[error("Galois group is not contained in D4")]
    NotSmallGalois,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
