use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Capability` covers both hard size caps (e.g. a 2^m scan with m > 20) and
/// exhausted search budgets; callers that need to distinguish "infeasible"
/// from "gave up" get that distinction through return values, never through
/// this enum.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed valuation: {0}")]
    MalformedValuation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn malformed(msg: impl Into<String>) -> Error {
        Error::MalformedValuation(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Error {
        Error::Capability(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Error {
        Error::Parse(msg.into())
    }
}
