//! Error types shared by the whole crate.
//!
//! Everything fails loudly: out-of-range queries are never extrapolated,
//! non-physical states are flagged instead of clipped, and malformed data
//! files report the offending location.

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{origin}:{line}: {message}")]
    Parse {
        origin: String,
        line: usize,
        message: String,
    },

    #[error("{origin}: missing required key `{key}`")]
    MissingKey { origin: String, key: &'static str },

    #[error("{origin}: unknown Sellmeier form `{form}`")]
    UnknownForm { origin: String, form: String },

    #[error("{origin}: axis {axis}: expected {expected} coefficients, got {got}")]
    CoefficientCount {
        origin: String,
        axis: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("no bundled crystal named `{name}`")]
    UnknownCrystal { name: String },

    #[error("wavelength {lambda_um} um outside validity range {min_um}..{max_um} um")]
    WavelengthOutOfRange {
        lambda_um: f64,
        min_um: f64,
        max_um: f64,
    },

    #[error("temperature {temp_c} C outside validity range {min_c}..{max_c} C")]
    TemperatureOutOfRange {
        temp_c: f64,
        min_c: f64,
        max_c: f64,
    },

    #[error("{what} must be positive (got {value})")]
    NonPositive { what: &'static str, value: f64 },

    #[error("need at least {needed} fringe points inside the envelope, got {got}")]
    InsufficientFringe { needed: usize, got: usize },

    #[error("fringe delays must be strictly increasing")]
    UnsortedFringe,

    #[error("density matrix is not physical (minimum eigenvalue {min_eigenvalue:.3e})")]
    NonPhysicalState { min_eigenvalue: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
