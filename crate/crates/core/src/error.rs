use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// The variants follow the failure taxonomy of the individual layers: p-adic
/// arithmetic, the deformation algebra, characters, the cohomology models and
/// the theorem verifier.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported prime {0}: only odd primes are supported")]
    UnsupportedPrime(u64),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("invalid precision {0}")]
    InvalidPrecision(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields or precision contexts")]
    FieldMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("argument outside the convergence domain (valuation {0} < 1)")]
    OutsideConvergenceDomain(i64),
    #[error("value at gamma0 is not a principal unit; the character is not continuous")]
    DiscontinuousCharacter,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invariant undefined on the zero element")]
    UndefinedInvariant,
    #[error("zero input: {0}")]
    ZeroInput(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("wrong case: specialization classified as {0}, expected second(k)")]
    WrongCase(String),
    #[error("crystalline specialization: ord_p(q0) = 0")]
    CrystallineSpecialization,
    #[error("inconsistent scenario: (eta/delta)_1(q0) = {0} is not zero")]
    InconsistentScenario(String),
    #[error("zero valuation: the Tate parameter must have nonzero ord_p")]
    ZeroValuation,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
