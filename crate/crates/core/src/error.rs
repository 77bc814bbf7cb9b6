use thiserror::Error;

use crate::series::Series;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series {series} does not admit dimV = {dimv}: {reason}")]
    InvalidDimension {
        series: Series,
        dimv: usize,
        reason: &'static str,
    },
    #[error("invalid skew-graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not admissible for series {series}: {reason}")]
    NotAdmissible { series: Series, reason: String },
    #[error("an orbit sign only applies to a connected graph in series D")]
    OrbitSignNotApplicable,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{what} needs {requested}, above the limit of {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("relation check failed: {0}")]
    RelationsFailed(String),
    #[error("subspace is not stable under ad h")]
    NotAdStable,
    #[error("pair is not in normal form: {0}")]
    NotNormalForm(String),
    #[error("graph has no closed-form centralizer description: {0}")]
    NoClosedForm(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("verification failed for graph `{graph}`: {reason}")]
    Verification { graph: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
