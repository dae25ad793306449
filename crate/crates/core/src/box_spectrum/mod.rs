//! Spectrum and eigenfunctions of `H_U = -D²` on the box `[0, L]`.
//!
//! All spectral work is dimensionless with `L = 1`: a positive level `s`
//! has energy `s²/L²`, a negative level `r` has energy `-r²/L²`. Physical
//! units enter only through [`to_physical_energy`].
//!
//! The eigenvalue equations are scanned in pole-free reduced forms,
//!
//! ```text
//! F̃(s) = 2[sin ψ cos s - m₁] - sinc(s) [cos ψ (s² + 1) - m₀ (s² - 1)]
//! Ĝ(r) = sin ψ (1 + e^{-2r}) - 2 m₁ e^{-r} - (1 - e^{-2r})/(2r) [m₀ (r² + 1) - cos ψ (r² - 1)]
//! ```
//!
//! which equal `F(s)/s` and `e^{-r} G(r)/r` and both reduce to `Z` at the
//! origin.

mod basis;
mod eigen;
mod solver;

pub use basis::{boundary_matrix, Basis};
pub use eigen::{boundary_form, eigenfunctions, BoundaryValues, BoxEigenfunction, ROOT_TOLERANCE};
pub use solver::{solve_spectrum, BoxSpectrumRequest, CrossCheck, Level, SpectrumResult};

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::extensions::ExtensionU2;
use crate::matrix::{Mat2, C64, I};

/// Threshold on `|Z|` for declaring a zero mode.
pub const ZERO_MODE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sector {
    Negative,
    Zero,
    Positive,
}

impl Sector {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sector::Negative => "negative",
            Sector::Zero => "zero",
            Sector::Positive => "positive",
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negative" => Ok(Sector::Negative),
            "zero" => Ok(Sector::Zero),
            "positive" => Ok(Sector::Positive),
            other => Err(Error::InvalidParameter(format!("unknown sector '{other}'"))),
        }
    }
}

/// An eigenvalue label: `s` for the positive sector, `r` for the negative
/// one, ignored for the zero sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub sector: Sector,
    pub value: f64,
}

impl Root {
    pub fn positive(s: f64) -> Self {
        Root {
            sector: Sector::Positive,
            value: s,
        }
    }

    pub fn negative(r: f64) -> Self {
        Root {
            sector: Sector::Negative,
            value: r,
        }
    }

    pub fn zero() -> Self {
        Root {
            sector: Sector::Zero,
            value: 0.0,
        }
    }

    /// Dimensionless energy `E L²`.
    pub fn energy(&self) -> f64 {
        match self.sector {
            Sector::Positive => self.value * self.value,
            Sector::Zero => 0.0,
            Sector::Negative => -self.value * self.value,
        }
    }
}

/// `(𝓛(s), 𝓜(s))` for complex `s`, defined through
/// `(φ'(0) - iφ(0), φ'(1) + iφ(1)) = i 𝓛 Φ` and
/// `(φ'(0) + iφ(0), φ'(1) - iφ(1)) = i 𝓜 Φ` for `φ = A e^{isx} + B e^{-isx}`.
pub fn lm_matrices_complex(s: C64) -> (Mat2, Mat2) {
    let one = C64::new(1.0, 0.0);
    let e = (I * s).exp();
    let ei = (-I * s).exp();
    let l = Mat2::new(s - one, -s - one, (s + one) * e, -(s - one) * ei);
    let m = Mat2::new(s + one, -s + one, (s - one) * e, -(s + one) * ei);
    (l, m)
}

pub fn lm_matrices(s: f64) -> (Mat2, Mat2) {
    lm_matrices_complex(Complex64::new(s, 0.0))
}

/// `F(s)`, the positive-sector eigenvalue function.
pub fn char_positive(e: &ExtensionU2, s: f64) -> f64 {
    let (sp, cp) = e.psi().sin_cos();
    2.0 * s * (sp * s.cos() - e.m1()) - s.sin() * (cp * (s * s + 1.0) - e.m0() * (s * s - 1.0))
}

/// `Z = 2 sin ψ - cos ψ - 2 m₁ - m₀`; a zero mode exists iff `Z = 0`.
pub fn char_zero(e: &ExtensionU2) -> f64 {
    let (sp, cp) = e.psi().sin_cos();
    2.0 * sp - cp - 2.0 * e.m1() - e.m0()
}

/// `G(r) = F(ir)/i`, the negative-sector eigenvalue function.
pub fn char_negative(e: &ExtensionU2, r: f64) -> f64 {
    let (sp, cp) = e.psi().sin_cos();
    2.0 * r * (sp * r.cosh() - e.m1()) - r.sinh() * (-cp * (r * r - 1.0) + e.m0() * (r * r + 1.0))
}

/// `F(s)/s`, even and analytic in `s`.
pub fn reduced_positive(e: &ExtensionU2, s: f64) -> f64 {
    let (sp, cp) = e.psi().sin_cos();
    2.0 * (sp * s.cos() - e.m1()) - sinc(s) * (cp * (s * s + 1.0) - e.m0() * (s * s - 1.0))
}

/// `e^{-r} G(r)/r`, bounded for large `r`.
pub fn reduced_negative(e: &ExtensionU2, r: f64) -> f64 {
    let (sp, cp) = e.psi().sin_cos();
    let d = (-r).exp();
    let shell = if r < 1e-8 {
        1.0 - r
    } else {
        -(-2.0 * r).exp_m1() / (2.0 * r)
    };
    sp * (1.0 + d * d) - 2.0 * e.m1() * d - shell * (-cp * (r * r - 1.0) + e.m0() * (r * r + 1.0))
}

pub(crate) fn sinc(s: f64) -> f64 {
    if s.abs() < 1e-4 {
        let s2 = s * s;
        1.0 - s2 / 6.0 + s2 * s2 / 120.0
    } else {
        s.sin() / s
    }
}

/// Energy in physical units: `±(ħ²/2m) value²/L²`, zero for the zero sector.
pub fn to_physical_energy(value: f64, sector: Sector, length: f64, hbar: f64, mass: f64) -> Result<f64> {
    for (name, v) in [("length", length), ("hbar", hbar), ("mass", mass)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
        }
    }
    let unit = hbar * hbar / (2.0 * mass) / (length * length);
    Ok(match sector {
        Sector::Positive => unit * value * value,
        Sector::Zero => 0.0,
        Sector::Negative => -unit * value * value,
    })
}
