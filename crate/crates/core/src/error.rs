use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = 2 is not an odd prime")]
    EvenPrime,
    #[error("p = {p} exceeds the supported bound {bound}")]
    PrimeTooLarge { p: u64, bound: u64 },
    #[error("{a} is a quadratic non-residue mod {p}")]
    NonResidue { a: u64, p: u64 },
    #[error("{0} is not a sum of two squares (p ≡ 3 mod 4)")]
    NoRepresentation(u64),
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("characters belong to different fields (p = {0} vs p = {1})")]
    ContextMismatch(u64, u64),
    #[error("degenerate argument λ = {0} (λ must avoid 0 and 1)")]
    DegenerateLambda(u64),
    #[error("λ = {0} is not one of -1, 1/2, 2")]
    BadLambda(u64),
    #[error("invalid hypergeometric parameters: {0}")]
    InvalidParams(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("model {0} has no closed-form count")]
    UnsupportedModel(&'static str),
    #[error("closed forms disagree: {0}")]
    FormulaDisagreement(String),
    #[error("exceptional addition: denominator {0} vanishes")]
    ExceptionalAddition(&'static str),
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: u64, y: u64 },
    #[error("singular curve: {0}")]
    SingularCurve(String),
}

pub type Result<T> = std::result::Result<T, Error>;
