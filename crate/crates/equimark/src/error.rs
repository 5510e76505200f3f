//! Error type shared by the whole crate.
//!
//! There are only two failure shapes: a caller handed us data that violates a
//! documented precondition (`Usage`), or text input failed to parse
//! (`Parse`, which carries the 1-based offending line).  Verification
//! *failures* are not errors — they are reported as data in
//! [`crate::verify::Report`].

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// A documented precondition was violated by the caller.
    #[error("usage: {0}")]
    Usage(String),

    /// Text input could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for `Err(Error::Usage(..))` with format args.
macro_rules! usage {
    ($($arg:tt)*) => {
        return Err($crate::error::Error::Usage(format!($($arg)*)))
    };
}

/// Guard form: `ensure!(cond, "msg {..}")` returns a usage error when `cond`
/// fails.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !($cond) {
            usage!($($arg)*);
        }
    };
}

pub(crate) use {ensure, usage};
