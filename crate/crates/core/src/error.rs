use std::io;

use thiserror::Error;

/// Errors raised by the numerical kernels, oracles and file writers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of sc at u = {u} (cn vanishes)")]
    Pole { u: f64 },

    #[error("precision exhausted at ({m}, {n}): {detail}; rebuild with more precision bits")]
    PrecisionExhausted { m: i64, n: i64, detail: String },

    #[error("inconsistent seeds at m = {m}: residual {residual:e} of the unused relation")]
    Inconsistency { m: usize, residual: f64 },

    #[error("range error: {0}")]
    Range(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("tail estimation failed: {0}")]
    Estimation(String),

    #[error("extrapolation failed: {0}")]
    Extrapolation(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
