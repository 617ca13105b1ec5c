use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("network must have at least one channel")]
    ZeroChannels,

    #[error("comparator {lo}:{hi} needs lo < hi")]
    ReversedComparator { lo: usize, hi: usize },

    #[error("comparator {lo}:{hi} out of range on {channels} channels")]
    InvalidComparator { lo: usize, hi: usize, channels: usize },

    #[error("layer {layer} uses channel {channel} twice")]
    ChannelConflict { layer: usize, channel: usize },

    #[error("layer {layer} is empty")]
    EmptyLayer { layer: usize },

    #[error("input has {actual} keys, network has {expected} channels")]
    InputShape { expected: usize, actual: usize },

    #[error("{what}: {requested} exceeds the supported maximum of {cap}")]
    Capacity {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Domain(String),

    #[error("no catalog entry for {channels} channels (catalog covers 1..=16)")]
    CatalogMiss { channels: usize },

    #[error("network on {channels} channels does not sort; refusing to emit")]
    NotSorting { channels: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("output of {algorithm} at n={n} is not sorted")]
    Unsorted { algorithm: String, n: usize },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
