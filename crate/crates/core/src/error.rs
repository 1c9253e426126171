use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is too small (need p >= 5)")]
    PrimeTooSmall(u64),
    #[error("p = {0} is too large for single-word arithmetic (need p < 65536)")]
    PrimeTooLarge(u64),
    #[error("bad reduction at p = {p}: {reason}")]
    BadReduction { p: u64, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial has no order at a point")]
    ZeroPolynomial,
    #[error("unsupported extension degree {0}")]
    UnsupportedDegree(usize),
    #[error("class is not defined over F_p")]
    NotRational,
    #[error("points are not on the curve")]
    NotOnCurve,
    #[error("wedge form is zero")]
    ZeroWedge,
    #[error("invalid Mobius data: {0}")]
    InvalidMobius(String),
    #[error("weight {weight} is below the degree {degree}")]
    WeightTooSmall { weight: usize, degree: usize },
    #[error("the wedge form cuts out an elliptic component (beta = {beta:?})")]
    EllipticObstruction { beta: [u64; 3] },
    #[error("multiplicity bound {m} needs p > {m}, got p = {p}")]
    MultiplicityTooLarge { m: u32, p: u64 },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("series is inconclusive: {0}")]
    Inconclusive(String),
    #[error("subgroup exceeds {0} elements")]
    SubgroupTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
