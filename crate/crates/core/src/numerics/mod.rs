//! Shared numerical kernels: bracketed root finding, adaptive quadrature and
//! tail-bounded series summation.

mod quadrature;
mod roots;
mod series;

pub use quadrature::{integrate, integrate_complex, integrate_piecewise};
pub use roots::{
    refine_root, scan_brackets, scan_grid, uniform_grid, Bracket, BracketKind, RootReport, DEFAULT_TANGENCY,
};
pub use series::{odd_power_tail, partial_sum, sum_series, sum_series_capped, CompensatedSum, SeriesSum, MAX_TERMS};

/// Default scan step in the dimensionless spectral variable.
pub const SPECTRAL_SCAN_STEP: f64 = std::f64::consts::PI / 8.0;
