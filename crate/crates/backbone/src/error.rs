use thiserror::Error;

/// Errors produced by graph ingestion, scoring methods, filters, and the
/// comparison framework.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed row at line {line}: {msg}")]
    MalformedRow { line: usize, msg: String },

    #[error("non-positive or non-finite weight {value} at line {line}")]
    NonPositiveWeight { line: usize, value: f64 },

    #[error("duplicate edge {u} -- {v} (pass merge_duplicates to sum them)")]
    DuplicateEdge { u: String, v: String },

    #[error("unknown node {label}")]
    UnknownNode { label: String },

    #[error("edge {u} -- {v} has non-integer weight {weight}; enable weight rounding or supply integer weights")]
    NonIntegerWeight { u: String, v: String, weight: f64 },

    #[error("doubly stochastic normalization did not converge: residual {residual:.3e} after {iterations} iterations")]
    SinkhornNonConvergence { residual: f64, iterations: usize },

    #[error("method {method} cannot run on this graph: {msg}")]
    DegenerateInput { method: String, msg: String },

    #[error("filter {filter} is not compatible with method {method}")]
    IncompatibleFilter { method: String, filter: String },

    #[error("unknown method {name}; known methods: {known}")]
    UnknownMethod { name: String, known: String },

    #[error("unknown measure {name}; known measures: {known}")]
    UnknownMeasure { name: String, known: String },

    #[error("name {name} is already registered")]
    DuplicateName { name: String },

    #[error("method {name} produced an invalid backbone: {msg}")]
    InvalidBackbone { name: String, msg: String },

    #[error("invalid argument: {msg}")]
    InvalidArgument { msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument { msg: msg.into() }
    }
}
