//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum SchurError {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("domain is not invariant under the acting group")]
    NonInvariantDomain,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("incompatible section data: {0}")]
    IncompatibleSection(String),
    #[error("not an A-section: {0}")]
    NotASection(String),
    #[error("S-ring is not dense over the designated factors")]
    NotDense,
    #[error("basic set lies inside a designated factor")]
    InsideFactor,
    #[error("partition is not regular")]
    NotRegular,
    #[error("no conjugate standard pair: {0}")]
    NoConjugate(String),
    #[error("block-count pair ({0}, {1}) has no standard group")]
    PairNotInTable(u32, u32),
    #[error("quotient actions are not isomorphic: {0}")]
    QuotientMismatch(String),
    #[error("group does not have the required shape: {0}")]
    WrongGroupShape(String),
    #[error("classification gap: {0}")]
    ClassificationGap(String),
    #[error("time budget exceeded: {0}")]
    Timeout(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("malformed catalog: {0}")]
    Format(String),
}
