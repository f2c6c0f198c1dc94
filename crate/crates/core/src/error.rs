use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("capacity exceeded: {what} = {value} exceeds limit {limit}")]
    Capacity {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn capacity(what: &'static str, value: u64, limit: u64) -> Self {
        Error::Capacity { what, value, limit }
    }
}
