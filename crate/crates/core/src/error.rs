use thiserror::Error;

/// Every failure the library can report. Mathematical failures are ordinary
/// values, never panics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("division by a non-unit: {0}")]
    NonUnitDenominator(String),
    #[error("series has a non-unit constant term")]
    NonUnitConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("no permutation of the boundary set matches the valuations")]
    NoConsistentPermutation,
    #[error("group closure exceeded {0} elements")]
    ClosureExceeded(usize),
    #[error("points are not everywhere distinct")]
    NotEverywhereDistinct,
    #[error("discriminant is not a unit")]
    NonUnitDiscriminant,
    #[error("zero vector has no slope")]
    ZeroVector,
    #[error("inflection check failed: coefficient of t^{degree} is {coefficient}")]
    InflectionFailure { degree: usize, coefficient: String },
    #[error("no torsion point matches the transported image of {0}")]
    NoMatchingTorsionPoint(String),
    #[error("series precision {0} is too low")]
    PrecisionTooLow(usize),
    #[error("height mismatch: {0}")]
    HeightMismatch(String),
    #[error("divisor certificate failed, residual {0}")]
    DivisorMismatch(String),
    #[error("point is not of order three: {0}")]
    NotOrderThree(String),
    #[error("slope difference is not invertible")]
    SlopeDifferenceNotInvertible,
    #[error("normalized curve is not in canonical form: {0}")]
    CanonicalFormMismatch(String),
    #[error("no primitive cube root of unity matches the level structure")]
    NoCubeRootMatch,
    #[error("fiber is singular (nu^3 = 1)")]
    SingularFiber,
    #[error("no ordinary fiber found for p = {0}")]
    NoWitnessFound(u32),
    #[error("consistency mismatch: {0}")]
    Mismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
