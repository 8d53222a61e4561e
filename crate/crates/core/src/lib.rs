//! Design and analysis toolkit for simultaneous type-II quasi-phase-matched
//! spontaneous parametric down-conversion (s-SPDC).
//!
//! A single periodically poled crystal can satisfy both type-II polarization
//! assignments of the same pump at once when the condition function
//! F_T(x) = (n_e(x,T) - n_o(x,T))/x takes equal values at the signal and
//! idler wavelengths. This crate evaluates dispersion models, solves that
//! simultaneous phase-matching system, simulates the resulting SPDC spectra,
//! models and fits Hong-Ou-Mandel interferograms, and reconstructs the
//! frequency-bin density matrix implied by a fitted fringe.
//!
//! Units are fixed crate-wide: wavelengths in um, temperatures in degrees C,
//! poling periods in um, crystal lengths in mm, delays in ps, frequencies in
//! THz. Angular phase mismatch is rad/um.

pub mod constants;
pub mod dispersion;
pub mod error;
pub mod hom;
pub mod numeric;
pub mod phasematch;
pub mod qstate;
pub mod spectrum;

pub use error::{Error, Result};
