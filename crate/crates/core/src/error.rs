use std::io;

use thiserror::Error;

/// Errors raised anywhere in the mesh → tree → profile pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("topology error: {0}")]
    Topology(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("degenerate field: {0}")]
    DegenerateField(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("unknown builtin field `{0}`")]
    UnknownField(String),

    #[error("bad field parameter: {0}")]
    BadParam(String),

    #[error("unknown edge {0}")]
    UnknownEdge(usize),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("tree function mean is {0:e}, expected zero")]
    MeanNotZero(f64),

    #[error("elementary decomposition residual {0:e} exceeds tolerance")]
    Residual(f64),

    #[error("argument {value} outside the admissible domain {domain}")]
    Domain { value: f64, domain: String },

    #[error("invalid k = {0}")]
    BadK(usize),

    #[error("invalid link: {0}")]
    BadLink(String),

    #[error("flattening error: {0}")]
    Gap(String),

    #[error("C0 distance {0} must be < 1")]
    EpsTooLarge(f64),

    #[error("profile is not strictly monotone on segment {0}")]
    NonMonotoneProfile(usize),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("bad configuration: {0}")]
    Config(String),
}

impl Error {
    /// Process exit code: 2 input/output, 3 topology, 4 degenerate input,
    /// 5 bad configuration, 1 anything else (a failed internal check).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Parse { .. } | Error::Json(_) | Error::MalformedTree(_) => 2,
            Error::Topology(_) => 3,
            Error::Degenerate(_) | Error::DegenerateField(_) => 4,
            Error::Config(_)
            | Error::UnknownField(_)
            | Error::BadParam(_)
            | Error::BadK(_)
            | Error::BadLink(_)
            | Error::Resource(_)
            | Error::EpsTooLarge(_) => 5,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
