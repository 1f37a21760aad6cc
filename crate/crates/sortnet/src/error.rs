use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("width mismatch: input has {input} bits, network has {channels} channels")]
    WidthMismatch { input: usize, channels: usize },
    #[error("channel {channel} out of range 1..={channels}")]
    ChannelOutOfRange { channel: usize, channels: usize },
    #[error("comparator endpoints must differ (channel {channel})")]
    DegenerateComparator { channel: usize },
    #[error("channel {channel} used twice in layer {layer}")]
    DuplicateChannel { layer: usize, channel: usize },
    #[error("twisted comparator ({lo},{hi}) in layer {layer} where a standard network is required")]
    TwistedComparator { layer: usize, lo: usize, hi: usize },
    #[error("{channels} channels exceeds the exhaustive evaluation limit of {limit}")]
    ExhaustiveLimit { channels: usize, limit: usize },
    #[error("two-layer enumeration is limited to {limit} channels, got {channels}")]
    EnumerationLimit { channels: usize, limit: usize },
    #[error("not a permutation of 1..={n}")]
    NotAPermutation { n: usize },
    #[error("green filter needs a power-of-two channel count, got {n}")]
    NotPowerOfTwo { n: usize },
    #[error("green filter depth {t} out of range 1..={max}")]
    GreenDepth { t: usize, max: usize },
    #[error("invalid network document: {0}")]
    BadDocument(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("prefix depth {prefix} exceeds target depth {d}")]
    PrefixTooDeep { prefix: usize, d: usize },
    #[error("duplicate input {0}")]
    DuplicateInput(String),
    #[error("malformed clause: {0}")]
    MalformedClause(String),
    #[error("bad dimacs: {0}")]
    BadDimacs(String),
    #[error("decoded model places two comparators on channel {channel} in layer {layer}")]
    DecodeConflict { layer: usize, channel: usize },
    #[error("external solver: {0}")]
    ExternalSolver(String),
    #[error("solver integrity: {0}")]
    SolverIntegrity(String),
    #[error("unknown catalog id `{0}`")]
    UnknownCatalogId(String),
    #[error("catalog data for `{id}` failed its checksum")]
    CatalogChecksum { id: String },
    #[error("bounds table covers 1..=20 channels, got {0}")]
    BoundsRange(usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
