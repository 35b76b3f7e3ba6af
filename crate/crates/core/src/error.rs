//! Error type shared by every fallible operation in the crate.

use alloc::string::String;
use core::fmt;

use crate::element::GroupId;

/// Why an operation was rejected.
///
/// Mixing elements of different groups is always a [`Error::GroupMismatch`],
/// never a silent coercion.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An element of one group was handed to an operation of another.
    GroupMismatch {
        /// Group the operation belongs to.
        expected: GroupId,
        /// Group the offending element belongs to.
        found: GroupId,
        /// Operation that rejected the element.
        context: &'static str,
    },
    /// The group does not support the requested operation (no n-th root,
    /// no scalar action, ...).
    Unsupported {
        /// Group that lacks the capability.
        group: GroupId,
        /// The missing operation.
        operation: &'static str,
    },
    /// A payload failed the group's validation rules.
    InvalidElement {
        /// Group whose constructor rejected the payload.
        group: GroupId,
        /// Human-readable reason.
        reason: String,
    },
    /// Two objects that must agree (base points, domains, the factored
    /// function) do not.
    Contract(String),
    /// A parameter is out of range or a name is unknown.
    Config(String),
    /// An estimate could not be formed, e.g. every sampled pair was
    /// degenerate.
    Estimation(String),
}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GroupMismatch {
                expected,
                found,
                context,
            } => write!(
                f,
                "group mismatch in {context}: expected element of '{expected}', got '{found}'"
            ),
            Error::Unsupported { group, operation } => {
                write!(f, "group '{group}' does not support {operation}")
            }
            Error::InvalidElement { group, reason } => {
                write!(f, "invalid element for group '{group}': {reason}")
            }
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::Estimation(msg) => write!(f, "estimation failed: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
