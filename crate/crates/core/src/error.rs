use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("cover relation forms a cycle through `{0}`")]
    CycleDetected(String),
    #[error("adding `{0}` would change the order among existing elements")]
    OrderChanged(String),
    #[error("posets are limited to {max} elements, got {got}")]
    TooManyElements { got: usize, max: usize },
    #[error("enumeration exceeded the cap of {cap} items")]
    CapacityExceeded { cap: usize },
    #[error("invalid interval: bottom {bottom} is not below top {top}")]
    InvalidInterval { bottom: usize, top: usize },
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("no lattice element has filter {0}")]
    UnknownFilter(String),
    #[error("interval [{bottom}, {top}] is not a cutting")]
    NotACutting { bottom: usize, top: usize },
    #[error("size {0} must be even")]
    OddSize(usize),
    #[error("size {size} is below the minimum {min}")]
    TooSmall { size: usize, min: usize },
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            Error::Parse { .. } | Error::AtLine { .. } => self,
            other => Error::AtLine {
                line,
                source: Box::new(other),
            },
        }
    }
}
