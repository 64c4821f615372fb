use thiserror::Error;

/// Errors raised by graph loading, sampling and estimation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components); run on its largest connected component")]
    Disconnected { components: usize },

    #[error("graph density is undefined for fewer than two nodes")]
    DensityUndefined,

    #[error("graph has no edges; density is zero")]
    NoEdges,

    #[error("non-positive weight {weight} at sample position {position}")]
    InvalidWeight { position: usize, weight: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("incompatible configuration: {0}")]
    Incompatible(String),

    #[error("unknown node id {0}")]
    UnknownNode(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by how the caller configured a run, as opposed
    /// to problems with the input data.
    pub fn is_configuration(&self) -> bool {
        matches!(self, Error::InvalidParameter(_) | Error::Incompatible(_))
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
