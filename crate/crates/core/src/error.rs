use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as an exact rational")]
pub struct ParseRationalError(pub String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ ({left} vs {right})")]
    OrderMismatch { left: u32, right: u32 },
    #[error("series has zero constant term and is not invertible")]
    ZeroConstantTerm,
    #[error("series is not divisible by (z - y): remainder in degree {degree}")]
    NotDivisible { degree: u32 },
    #[error("coefficient {0} is not a non-negative integer")]
    NotANonNegativeInteger(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("invalid slope profile in degree {degree}: {violations}")]
    InvalidProfile { degree: u32, violations: String },
    #[error("slope number m^{{{i},{j}}} = {value} is not a non-negative integer")]
    NonIntegralSlopeNumber { i: usize, j: usize, value: String },
    #[error("profile degree {degree} exceeds 2 * dim = {}", 2 * .dim)]
    DegreeTooLarge { degree: u32, dim: u32 },
    #[error("no profile for degree {0}")]
    MissingDegree(u32),
    #[error("slope {0} is not in [0, 1)")]
    SlopeNotBelowOne(String),
    #[error("V-quotient length {0} is not a non-negative integer")]
    NonIntegralLength(String),
    #[error("degree-{0} profile expected")]
    WrongDegree(u32),
    #[error("profile is not self-dual under lambda -> {0} - lambda")]
    NotSelfDual(u32),
    #[error("sum of slope numbers in degree {degree} is {sum}, Betti number is {betti}")]
    BettiMismatch { degree: u32, sum: i64, betti: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeWittError {
    #[error("matrix shapes differ: {0}")]
    ShapeMismatch(String),
    #[error("domino matrix has negative entry T^{{{i},{j}}} = {value}")]
    NegativeDomino { i: usize, j: usize, value: i64 },
    #[error("not Mazur-Ogus consistent: recursion gives T^{{{i},{j}}} = {value} < 0")]
    NotMazurOgus { i: usize, j: usize, value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("Hodge-Witt formulas disagree: Ekedahl {ekedahl} vs Hodge-Witt-Noether {noether}")]
    FormulaDisagreement { ekedahl: String, noether: String },
    #[error("domino number T^{{0,2}} = {0} is not a non-negative integer")]
    BadDomino(String),
    #[error("equivalence violated: {0}")]
    EquivalenceViolated(String),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
    #[error("integrality violated: {0}")]
    Integrality(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error(transparent)]
    Slope(#[from] SlopeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreefoldError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("non-integral result: {0}")]
    NonIntegral(String),
    #[error("inconsistent invariants: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypersurfaceError {
    #[error("unsupported dimension {0}: closed forms exist for 2, 3, 4")]
    UnsupportedDimension(u32),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("closed form and Hodge sum disagree: {0}")]
    Mismatch(String),
    #[error("non-integral closed form: {0}")]
    NonIntegral(String),
    #[error("unknown Hodge number method {0:?}")]
    UnknownMethod(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Slope(#[from] SlopeError),
    #[error(transparent)]
    HodgeWitt(#[from] HodgeWittError),
}
