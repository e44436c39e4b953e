use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("empty dataset")]
    EmptyDataset,
    #[error("dataset needs at least one input and one output column")]
    NoAxes,
    #[error("duplicate DMU id `{0}`")]
    DuplicateId(String),
    #[error("DMU `{id}` has {found} {what} values, expected {expected}")]
    DimensionMismatch {
        id: String,
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("DMU `{id}`: {axis} must be positive")]
    NonPositive { id: String, axis: String },
    #[error("LP dimension mismatch: {0}")]
    LpDimension(String),
    #[error("LP for DMU `{id}` is {status}, expected an optimum")]
    UnexpectedLpStatus { id: String, status: &'static str },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("reference set is empty")]
    EmptyReference,
    #[error("CCR-efficient DMUs `{0}` and `{1}` are proportional; remove one of them")]
    ProportionalEfficientPair(String, String),
    #[error("{0} must be positive")]
    NonPositiveParameter(&'static str),
    #[error("zero hyperplane normal")]
    ZeroNormal,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("scale guard exceeded: {0}")]
    ScaleGuard(String),
}
