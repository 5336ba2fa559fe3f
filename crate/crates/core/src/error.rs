use crate::field::FieldDesc;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields: {0} and {1}")]
    FieldMismatch(FieldDesc, FieldDesc),
    #[error("zero is not a valid input here")]
    ZeroInput,
    #[error("cannot enumerate an infinite field")]
    InfiniteField,
    #[error("characteristic 2 is not supported")]
    Characteristic2,
    #[error("{0} is not an odd prime")]
    BadModulus(u64),
    #[error("objects live over different quadratic spaces")]
    SpaceMismatch,
    #[error("not invertible")]
    NotInvertible,
    #[error("target algebra does not extend the source space")]
    NotASuperspace,
    #[error("space has no rho generator")]
    NoRhoGenerator,
    #[error("element does not live in the expected space")]
    WrongTargetSpace,
    #[error("element is not a paravector")]
    NotAParavector,
    #[error("element is not in the Clifford group")]
    NotInCliffordGroup,
    #[error("element is not in the paravector Clifford group")]
    NotInParavectorGroup,
    #[error("matrix is not a Vahlen matrix")]
    NotVahlen,
    #[error("expected a scalar, got a higher-grade element")]
    NotScalar,
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("search space of {0} items exceeds the limit of {1}")]
    TooLarge(u128, u128),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
