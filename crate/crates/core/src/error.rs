use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree must be positive")]
    EmptyDegree,
    #[error("element {0} is not in the group")]
    NotInGroup(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("{what} needs {needed}, bound is {limit}")]
    BoundExceeded {
        what: &'static str,
        needed: u64,
        limit: u64,
    },
    #[error("{0} is not a quad")]
    NotQuad(String),
    #[error("{0} is not an involution")]
    NotInvolution(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("unknown check: {0}")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn bound(what: &'static str, needed: u64, limit: u64) -> Self {
        Error::BoundExceeded {
            what,
            needed,
            limit,
        }
    }
}
