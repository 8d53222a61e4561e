//! Physical constants in the unit system used throughout the crate.

/// Speed of light in um*THz (equivalently um/ps).
pub const C_UM_THZ: f64 = 299.792458;

/// Speed of light in m/s.
pub const C_M_PER_S: f64 = 2.997_924_58e8;

/// Planck constant in J*s.
pub const PLANCK_J_S: f64 = 6.626_070_15e-34;
