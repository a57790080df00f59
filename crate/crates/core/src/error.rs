use alloc::string::String;
use core::fmt;

/// Errors raised by the algebra and topology layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    /// Operands come from different coefficient fields.
    FieldMismatch,
    InvalidField(String),
    /// Equality in the abelianized unit group is not decidable for a genuinely skew field.
    SkewEqualityUndecidable,
    Shape(String),
    RankDeficient {
        rank: usize,
        rows: usize,
    },
    /// A τ-chain block of odd index is singular; another chain is needed.
    OddBlockSingular {
        index: usize,
    },
    /// No τ-chain with invertible odd blocks was found within the search budget.
    ChainNotFound {
        candidates: usize,
    },
    RelatorViolation {
        relator: usize,
    },
    NotAHomomorphism {
        relator: usize,
    },
    PhiMismatch {
        generator: usize,
    },
    InvalidClass(String),
    BoundaryCheckFailed {
        index: usize,
    },
    DiagramDoesNotCommute(String),
    /// Two independent computations disagree; always an implementation defect.
    MismatchDetected(String),
    Precondition(String),
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::InvalidField(msg) => write!(f, "invalid field: {msg}"),
            Error::SkewEqualityUndecidable => {
                write!(
                    f,
                    "equality of abelianized units is undecidable over a skew field"
                )
            }
            Error::Shape(msg) => write!(f, "shape error: {msg}"),
            Error::RankDeficient { rank, rows } => {
                write!(f, "matrix has rank {rank} but {rows} rows")
            }
            Error::OddBlockSingular { index } => {
                write!(f, "block A_{index} of the chain is singular")
            }
            Error::ChainNotFound { candidates } => {
                write!(f, "no usable tau-chain after {candidates} candidates")
            }
            Error::RelatorViolation { relator } => {
                write!(f, "relator {relator} does not map to the identity")
            }
            Error::NotAHomomorphism { relator } => {
                write!(
                    f,
                    "relator {relator} does not map to the identity of the group"
                )
            }
            Error::PhiMismatch { generator } => {
                write!(f, "generator {generator} has image incompatible with phi")
            }
            Error::InvalidClass(msg) => write!(f, "invalid cohomology class: {msg}"),
            Error::BoundaryCheckFailed { index } => {
                write!(f, "boundary maps compose to nonzero at degree {index}")
            }
            Error::DiagramDoesNotCommute(msg) => write!(f, "diagram does not commute: {msg}"),
            Error::MismatchDetected(msg) => write!(f, "internal mismatch: {msg}"),
            Error::Precondition(msg) => write!(f, "precondition failed: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
