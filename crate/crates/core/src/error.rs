use alloc::boxed::Box;
use alloc::string::String;

use crate::channel::Variant;
use crate::linprog::LpError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what} must be finite and non-negative, got {value}")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid channel: {0}")]
    InvalidChannel(&'static str),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("{op} is not defined for the {variant} variant")]
    UnsupportedVariant { op: &'static str, variant: Variant },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("linear program failed: {0}")]
    Lp(#[from] LpError),

    #[error("LP for {what} reported {status}")]
    Unsolved { what: &'static str, status: &'static str },

    #[error("at k = {k}: {source}")]
    AtRatio { k: f64, source: Box<Error> },

    #[error("regions do not share a channel and convention")]
    MismatchedRegions,
}

impl Error {
    pub(crate) fn at_ratio(self, k: f64) -> Self {
        match self {
            e @ Error::AtRatio { .. } => e,
            e => Error::AtRatio { k, source: Box::new(e) },
        }
    }
}
