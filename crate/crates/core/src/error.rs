use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} is outside the supported range (p < 2^31)")]
    ModulusTooLarge(u64),
    #[error("empty set")]
    EmptySet,
    #[error("field mismatch: p={left} vs p={right}")]
    FieldMismatch { left: u32, right: u32 },
    #[error("element {value} is not reduced mod {p}")]
    Unreduced { value: u64, p: u32 },
    #[error("repetition count must be at least 1")]
    ZeroRepetition,
    #[error("degenerate pair: bisector of a point with itself")]
    DegeneratePair,
    #[error("degenerate line or plane: all direction coefficients are zero")]
    DegenerateCoefficients,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("the Minkowski form is only defined in dimension 2 (got {0})")]
    MinkowskiDimension(usize),
    #[error("the Cartesian product identity requires the Euclidean form")]
    ProductNeedsEuclidean,
    #[error("duplicate point in a point set")]
    DuplicatePoint,
    #[error("multiset input (multiplicity > 1); use hanson_check")]
    MultisetInput,
    #[error("budget exceeded for {what}: {size} > {limit}{hint}")]
    BudgetExceeded {
        what: &'static str,
        size: u64,
        limit: u64,
        hint: &'static str,
    },
    #[error("invalid expression: {0}")]
    InvalidExpression(String),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("threshold exponent requires {0}")]
    ThresholdDomain(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, size: u64, limit: u64) -> Self {
        Error::BudgetExceeded {
            what,
            size,
            limit,
            hint: "",
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
