use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not present: {0}")]
    NotPresent(String),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("valuation of zero is undefined")]
    ZeroInput,
    #[error("element has a pole at {0}")]
    PoleAtPlace(String),
    #[error("db = 0: {0} is a pth power")]
    ExactDifferentialZero(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("invalid place: {0}")]
    InvalidPlace(String),
    #[error("unsupported place for local expansion: {0}")]
    UnsupportedPlace(String),
    #[error("integrality away from infinity is unattainable: {0}")]
    IntegralityUnattainable(String),
    #[error("Newton iteration does not converge: {0}")]
    NoConvergence(String),
    #[error("invalid window [{0}, {1}]")]
    WindowInvalid(i64, i64),
    #[error("no non-member found in window [{0}, {1}]")]
    NotFound(i64, i64),
    #[error("parameter a = {0} is a pth power")]
    ParameterInKp(String),
    #[error("zeta missing: {0}")]
    ZetaMissing(String),
    #[error("unsupported characteristic: {0}")]
    UnsupportedCharacteristic(String),
    #[error("operation unsupported for group kind {0}")]
    KindUnsupported(String),
    #[error("point is not on the curve: {0}")]
    OffCurve(String),
    #[error("operands live over different rings")]
    RingMismatch,
    #[error("W_a(k) is infinite for p = 2")]
    InfinitePointSet,
    #[error("connecting map value is not rational: {0}")]
    ValueNotRational(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("seed failure at {0}")]
    SeedFailure(String),
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("modulus is not separable")]
    NotSeparable,
}
