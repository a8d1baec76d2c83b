//! Error type shared by the analytics operations.

use alloc::string::String;
use core::fmt;

/// Errors reported by graph construction and analysis operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input violated a documented contract (negative weight, empty
    /// seed list, out-of-range coordinate, ...).
    Validation(String),
    /// A vertex id was not present in the graph it was looked up in.
    UnknownVertex(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::UnknownVertex(id) => write!(f, "unknown vertex: {id}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
