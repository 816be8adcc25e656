use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,

    /// Both indices are 1-based, as they appear in the input.
    #[error("set {set} contains element {element}, outside the universe 1..={universe_size}")]
    ElementOutOfRange {
        set: usize,
        element: usize,
        universe_size: usize,
    },

    /// Elements are 1-based.
    #[error("uncoverable elements: {{{}}}", join(.0))]
    Uncoverable(Vec<usize>),

    #[error("unknown set identifier {0}")]
    UnknownSet(usize),

    #[error("set identifier {0} selected more than once")]
    DuplicateSet(usize),

    #[error("no active sets remain")]
    Exhausted,

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("both row-major and column-major encodings consume the stream exactly; pass an explicit format")]
    AmbiguousFormat,

    #[error("instance has {sets} sets; this solver admits at most {max}")]
    TooLarge { sets: usize, max: usize },

    #[error("{algorithm} returned an infeasible cover for {instance}")]
    Infeasible { algorithm: String, instance: String },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn join(items: &[usize]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}
