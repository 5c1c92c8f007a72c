use thiserror::Error;

/// Broad classes of failure, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// An option value is out of its allowed range.
    Usage,
    /// Malformed input text, JSON or braid word.
    Parse,
    /// The input is well formed but violates a mathematical precondition.
    Precondition,
    /// A numerical routine failed to converge or two independent routes disagree.
    Numeric,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,

    #[error("{0} of the zero polynomial is undefined")]
    ZeroPolynomial(&'static str),

    #[error("variable index {index} out of range for {num_vars} variables")]
    VarIndexOutOfRange { index: usize, num_vars: usize },

    #[error("entry ({row},{col}) has a negative coefficient; positive-coefficient entries required")]
    MixedSign { row: usize, col: usize },

    #[error("entry ({row},{col}) is zero")]
    ZeroEntry { row: usize, col: usize },

    #[error("matrix is not primitive (entry ({row},{col}) stays zero)")]
    NotPrimitive { row: usize, col: usize },

    #[error("spread never uniform in variable {var} up to power {bound}")]
    SpreadNeverUniform { var: usize, bound: usize },

    #[error("integrality check failed in characteristic polynomial at step {step}")]
    Integrality { step: usize },

    #[error("determinant {det} is not a unit; matrix is not invertible over the Laurent ring")]
    NonUnitDeterminant { det: String },

    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeading(String),

    #[error("not a fibered-face pair: remainder {remainder}")]
    NotDivisible { remainder: String },

    #[error("root finder did not converge after {iterations} iterations (best residual {residual:e})")]
    RootsNoConvergence { iterations: usize, residual: f64 },

    #[error("polynomial has degree 0 or a zero leading coefficient")]
    DegenerateDegree,

    #[error("spectral radius cross-check failed: roots give {roots}, power iteration gives {power}")]
    CrossCheck { roots: f64, power: f64 },

    #[error("value out of floating-point range: {0}")]
    Range(String),

    #[error("no nonnegative real root")]
    NoRealRoot,

    #[error("braid word: unknown token `{0}`")]
    BraidToken(String),

    #[error("braid generator s{index} out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },

    #[error("braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),

    #[error("braid is not pure: strand permutation is {0}")]
    NotPure(String),

    #[error("invalid character: {0}")]
    Character(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("input: {0}")]
    Input(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::BraidToken(_)
            | Error::GeneratorOutOfRange { .. }
            | Error::Character(_)
            | Error::Input(_) => ErrorKind::Parse,
            Error::RootsNoConvergence { .. } | Error::CrossCheck { .. } | Error::Range(_) => {
                ErrorKind::Numeric
            }
            Error::Argument(_) => ErrorKind::Usage,
            _ => ErrorKind::Precondition,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
