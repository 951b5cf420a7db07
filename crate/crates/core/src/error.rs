use alloc::string::String;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed or inconsistent input (mismatched quivers, bad breakpoints, ...).
    #[error("invalid input: {0}")]
    Input(String),
    /// An exhaustive enumeration would exceed its configured guard.
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    /// Two independent computations disagreed, or a universe broke a structural assumption.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(alloc::format!($($arg)*)) };
}
macro_rules! resource_err {
    ($($arg:tt)*) => { $crate::error::Error::Resource(alloc::format!($($arg)*)) };
}
macro_rules! internal_err {
    ($($arg:tt)*) => { $crate::error::Error::Internal(alloc::format!($($arg)*)) };
}
pub(crate) use {input_err, internal_err, resource_err};
