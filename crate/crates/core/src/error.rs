use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// A layer period was zero or negative.
    NonPositivePeriod { label: String },
    NonPositiveLength { label: String, length: BigInt },
    OffsetOutOfRange { label: String, offset: BigInt },
    EmptyLayer { label: String },
    DuplicateTemplate { label: String, offset: BigInt, length: BigInt },
    /// Layer 0 of a graph must be the nearest-neighbour layer.
    MissingUnitLayer,
    DuplicateLabel(String),
    EmptyWindow { lo: BigInt, hi: BigInt },
    /// The traversal visited more than `cap` vertices.
    BudgetExceeded { cap: u64 },
    InsufficientData { needed: usize, got: usize },
    /// An argument outside the domain where the quantity is defined.
    OutOfDomain { what: &'static str, detail: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositivePeriod { label } => {
                write!(f, "layer {label}: period must be positive")
            }
            Error::NonPositiveLength { label, length } => {
                write!(f, "layer {label}: edge length {length} must be positive")
            }
            Error::OffsetOutOfRange { label, offset } => {
                write!(f, "layer {label}: offset {offset} outside [0, period)")
            }
            Error::EmptyLayer { label } => write!(f, "layer {label} has no templates"),
            Error::DuplicateTemplate { label, offset, length } => write!(
                f,
                "layer {label}: template (offset {offset}, length {length}) given twice"
            ),
            Error::MissingUnitLayer => {
                f.write_str("layer 0 must be the unit layer (period 1, offset 0, length 1)")
            }
            Error::DuplicateLabel(label) => write!(f, "duplicate layer label {label}"),
            Error::EmptyWindow { lo, hi } => write!(f, "empty window [{lo}, {hi}]"),
            Error::BudgetExceeded { cap } => {
                write!(f, "visited-vertex budget of {cap} exceeded")
            }
            Error::InsufficientData { needed, got } => {
                write!(f, "need at least {needed} usable points, got {got}")
            }
            Error::OutOfDomain { what, detail } => write!(f, "{what}: {detail}"),
        }
    }
}

impl core::error::Error for Error {}
