use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live over different variable tables")]
    TableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}` in table")]
    DuplicateVariable(String),
    #[error("exponent overflow on variable `{0}`")]
    ExponentOverflow(String),
    #[error("form is not homogeneous in {0}")]
    NotHomogeneous(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("index {index} exceeds the available degree {degree}")]
    IndexTooLarge { index: u32, degree: u32 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("hypergeometric series does not terminate")]
    NonTerminating,
    #[error("lower parameter {0} hits a pole before the series terminates")]
    LowerParameterPole(String),
    #[error("negative multiplicity {multiplicity} for S_{m}")]
    NegativeMultiplicity { m: u32, multiplicity: i64 },
    #[error("not a symmetric character: weight {0} has no mirror image")]
    AsymmetricCharacter(i64),
    #[error("result is not proportional to the predicted shape: {0}")]
    NotProportional(String),
    #[error("expected a one-dimensional solution space, found dimension {0}")]
    SolutionDimension(usize),
    #[error("symbolic letter `{letter}` has degree {found}, expected {expected}")]
    LetterDegree { letter: String, expected: u32, found: u32 },
    #[error("closed-form regimes disagree at e={e}, p={p}")]
    RegimeDisagreement { e: u32, p: u32 },
    #[error("value expected to be an integer: {0}")]
    NotInteger(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
