use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("vertex {0} is not a cut vertex")]
    NotCutVertex(usize),

    #[error("degenerate split at vertex {0}: side selector must be a nonempty proper subset of the components")]
    DegenerateSplit(usize),

    #[error("enumeration over {edges} edges exceeds the cap of {cap}{}", block_suffix(.block))]
    CapExceeded {
        edges: usize,
        cap: usize,
        block: Option<Vec<usize>>,
    },

    #[error("frontier width {width} exceeds the limit of {limit}{}", block_suffix(.block))]
    FrontierTooWide {
        width: usize,
        limit: usize,
        block: Option<Vec<usize>>,
    },

    #[error("bound exceeded: {what} = {value}, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("computation routes disagree: {0}")]
    Inconsistent(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn block_suffix(block: &Option<Vec<usize>>) -> String {
    match block {
        Some(vs) => format!(" (block on base vertices {vs:?})"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Attaches a block description to capacity errors that do not carry one yet.
    pub(crate) fn in_block(self, vertices: &[usize]) -> Self {
        match self {
            Error::CapExceeded {
                edges,
                cap,
                block: None,
            } => Error::CapExceeded {
                edges,
                cap,
                block: Some(vertices.to_vec()),
            },
            Error::FrontierTooWide {
                width,
                limit,
                block: None,
            } => Error::FrontierTooWide {
                width,
                limit,
                block: Some(vertices.to_vec()),
            },
            other => other,
        }
    }
}
