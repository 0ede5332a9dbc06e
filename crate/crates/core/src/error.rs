// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("row {row} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("coordinate {value} exceeds the supported magnitude 2^40")]
    CoordOutOfRange { value: i64 },
    #[error("value {value} lies outside the counting-sort range [{lo}, {hi}]")]
    ValueOutOfRange { value: i64, lo: i64, hi: i64 },
    #[error("point id {0} is not part of the point set")]
    InvalidPointId(usize),
    #[error("point id {0} was not part of the range tree build set")]
    UnknownPoint(usize),
    #[error("half-space index needs a non-empty subset")]
    EmptySubset,
    #[error("lookup candidates must be sorted ascending")]
    UnsortedCandidates,
    #[error("at least two points are required")]
    NoPair,
    #[error("{k} does not divide the length {len}")]
    BadDivisor { k: usize, len: usize },
    #[error("input shares the character {0:?} with the marker alphabet")]
    MarkerCollision(char),
    #[error("malformed encoding at offset {offset}: {reason}")]
    MalformedEncoding { offset: usize, reason: String },
    #[error("pattern must be non-empty")]
    EmptyPattern,
    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),
    #[error("invalid cover configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
