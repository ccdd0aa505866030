use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable tables differ: [{0}] vs [{1}]")]
    VarTableMismatch(String, String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("elements belong to different Frobenius systems")]
    SystemMismatch,
    #[error("internal consistency check failed: {0}")]
    InternalInconsistency(String),
    #[error("rank {0} is too small (need n >= 2)")]
    RankTooSmall(usize),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("system is not fully numeric")]
    NotNumeric,
    #[error("roots are not distinct")]
    RootsNotDistinct,

    #[error("partition {0} has more parts than {1} variables")]
    TooManyParts(String, usize),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("symmetric polynomials in {0} and {1} variables")]
    NvarsMismatch(usize, usize),
    #[error("b = {b} is outside 1..={n}")]
    BOutOfRange { b: usize, n: usize },
    #[error("{0} must be positive")]
    NotPositive(&'static str),

    #[error("closed form mismatch: {0}")]
    ClosedFormMismatch(String),
    #[error("mark degree {k} is outside 0..{n}")]
    MarkDegreeOutOfRange { k: usize, n: usize },

    #[error("relation {0} does not match at the given site")]
    PatternMismatch(u8),
    #[error("configuration size bound exceeded: {0}")]
    SizeBound(String),
    #[error("root alpha{0} is not a repeated root")]
    RootNotRepeated(usize),
    #[error("root index {0} out of range")]
    RootIndexOutOfRange(usize),
    #[error("tube parameters disagree with the rank-2 system: {0}")]
    ParamsInconsistent(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

impl Error {
    /// Variant name, used as the diagnostic tag by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::VarTableMismatch(..) => "VarTableMismatch",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::UnboundVariable(_) => "UnboundVariable",
            Error::DuplicateVariable(_) => "DuplicateVariable",
            Error::Parse { .. } => "ParseError",
            Error::SystemMismatch => "SystemMismatch",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::RankTooSmall(_) => "RankTooSmall",
            Error::NotInvertible => "NotInvertible",
            Error::NotNumeric => "NotNumeric",
            Error::RootsNotDistinct => "RootsNotDistinct",
            Error::TooManyParts(..) => "TooManyParts",
            Error::NotSymmetric => "NotSymmetric",
            Error::NvarsMismatch(..) => "NvarsMismatch",
            Error::BOutOfRange { .. } => "BOutOfRange",
            Error::NotPositive(_) => "NotPositive",
            Error::ClosedFormMismatch(_) => "ClosedFormMismatch",
            Error::MarkDegreeOutOfRange { .. } => "MarkDegreeOutOfRange",
            Error::PatternMismatch(_) => "PatternMismatch",
            Error::SizeBound(_) => "SizeBound",
            Error::RootNotRepeated(_) => "RootNotRepeated",
            Error::RootIndexOutOfRange(_) => "RootIndexOutOfRange",
            Error::ParamsInconsistent(_) => "ParamsInconsistent",
            Error::Json(_) => "JsonError",
        }
    }
}
