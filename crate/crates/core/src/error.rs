use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("{what}: {value} is outside the domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("degenerate input: {0}")]
    Degenerate(&'static str),

    /// Horospheres (beta = 0 or pi) sit at infinite distance from every geodesic.
    #[error("offset is infinite for beta = {beta}")]
    InfiniteOffset { beta: f64 },

    /// The profile function diverges at the boundary of its domain.
    #[error("profile diverges to {toward} at h = {h}")]
    ProfileDivergence { h: f64, toward: f64 },

    #[error("not a leaf: {0}")]
    NotALeaf(&'static str),

    #[error("operation requires a {expected} transversal")]
    WrongTransversal { expected: &'static str },

    #[error("malformed route: {0}")]
    MalformedRoute(String),

    #[error("route rejected: {violations} violation(s), worst slack {worst_slack:e}")]
    RouteRejected { violations: usize, worst_slack: f64 },

    #[error("parse error at `{path}`: {message}")]
    Parse { path: String, message: String },

    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            expected,
        }
    }
}
