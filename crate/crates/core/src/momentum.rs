//! The momentum extensions `P_θ` on `[0, L]`, with `φ(L) = e^{iθ} φ(0)`.
//!
//! Eigenstates are `φ_n(x) = e^{2iπν x/L}/√L` with `ν = n + θ/2π`. The
//! parabolic state `Ψ(x) = √(30/L⁵) x(L - x)` is expanded on them.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::extensions::MomentumExtension;
use crate::matrix::C64;
use crate::numerics::{integrate, integrate_complex};

const SQRT_30: f64 = 5.477_225_575_051_661;

/// Tolerance of the quadrature cross-check in [`expansion_coeff_checked`].
pub const COEFF_CHECK_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumEigenstate {
    pub n: i64,
    pub theta: f64,
    pub nu: f64,
}

impl MomentumEigenstate {
    pub fn new(theta: f64, n: i64) -> Self {
        let theta = MomentumExtension::new(theta).theta();
        MomentumEigenstate {
            n,
            theta,
            nu: n as f64 + theta / TAU,
        }
    }

    /// `2πν`, the eigenvalue for `ħ = L = 1`.
    pub fn eigenvalue(&self) -> f64 {
        TAU * self.nu
    }

    /// `2πħν/L`.
    pub fn momentum(&self, hbar: f64, length: f64) -> f64 {
        TAU * hbar * self.nu / length
    }

    pub fn evaluate(&self, x: f64, length: f64) -> C64 {
        C64::from_polar(1.0 / length.sqrt(), TAU * self.nu * x / length)
    }

    /// `(φ_self, φ_other)` in closed form; both must share `θ`.
    pub fn inner_product(&self, other: &MomentumEigenstate) -> C64 {
        let d = TAU * (other.nu - self.nu);
        if d.abs() < 1e-300 {
            return C64::new(1.0, 0.0);
        }
        (C64::from_polar(1.0, d) - 1.0) / C64::new(0.0, d)
    }
}

/// Eigenstates with `n_min ≤ n ≤ n_max`.
pub fn p_spectrum(theta: f64, n_min: i64, n_max: i64) -> Result<Vec<MomentumEigenstate>> {
    if n_min > n_max {
        return Err(Error::InvalidParameter(format!("empty range {n_min}..{n_max}")));
    }
    Ok((n_min..=n_max).map(|n| MomentumEigenstate::new(theta, n)).collect())
}

/// `J(a) = ∫_{-½}^{½} cos(au) (¼ - u²) du`.
fn parabola_transform(a: f64) -> f64 {
    if a.abs() < 1.0 {
        let mut sum = 0.0;
        let mut power = 1.0;
        let mut factorial = 1.0;
        for k in 0..12 {
            let k2 = 2.0 * k as f64;
            sum += power / (factorial * 2f64.powf(k2 + 1.0) * (k2 + 1.0) * (k2 + 3.0));
            power *= -a * a;
            factorial *= (k2 + 1.0) * (k2 + 2.0);
        }
        sum
    } else {
        let h = 0.5 * a;
        2.0 / (a * a) * (h.sin() / h - h.cos())
    }
}

/// `c_n(θ) = (φ_n, Ψ)`.
///
/// At `θ = 0`, `c₀ = √30/6` and `c_n = -√30/(2π²n²)` for every `n ≠ 0`;
/// otherwise
/// `c_n = -(√30/(2π²ν²)) [cos(θ/2) - sin(θ/2)/(πν)] e^{-iθ/2}`.
pub fn expansion_coeff(theta: f64, n: i64) -> C64 {
    let state = MomentumEigenstate::new(theta, n);
    let a = TAU * state.nu;
    C64::from_polar(SQRT_30 * parabola_transform(a), -PI * state.nu)
}

/// `(φ_n, Ψ)` by adaptive quadrature.
pub fn expansion_coeff_quadrature(theta: f64, n: i64) -> Result<C64> {
    let state = MomentumEigenstate::new(theta, n);
    let psi = |x: f64| SQRT_30 * x * (1.0 - x);
    integrate_complex(|x| state.evaluate(x, 1.0).conj() * psi(x), 0.0, 1.0, 1e-13)
}

/// [`expansion_coeff`] verified against quadrature to [`COEFF_CHECK_TOLERANCE`].
pub fn expansion_coeff_checked(theta: f64, n: i64) -> Result<C64> {
    let closed = expansion_coeff(theta, n);
    let oracle = expansion_coeff_quadrature(theta, n)?;
    let diff = (closed - oracle).norm();
    if diff > COEFF_CHECK_TOLERANCE {
        return Err(Error::CrossCheck(format!(
            "c_{n}(θ = {theta}): closed form {closed} vs quadrature {oracle} (|Δ| = {diff:e})"
        )));
    }
    Ok(closed)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionEntry {
    pub n: i64,
    pub nu: f64,
    pub coeff: C64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTable {
    pub theta: f64,
    pub entries: Vec<ExpansionEntry>,
    /// `|1 - Σ |c_n|²|` over the table.
    pub parseval_defect: f64,
}

/// Coefficients for `n_min ≤ n ≤ n_max`. With `checked`, each one is also
/// compared with quadrature.
pub fn expansion_table(theta: f64, n_min: i64, n_max: i64, checked: bool) -> Result<ExpansionTable> {
    let states = p_spectrum(theta, n_min, n_max)?;
    let mut entries = Vec::with_capacity(states.len());
    for s in &states {
        let coeff = if checked {
            expansion_coeff_checked(s.theta, s.n)?
        } else {
            expansion_coeff(s.theta, s.n)
        };
        entries.push(ExpansionEntry {
            n: s.n,
            nu: s.nu,
            coeff,
            probability: coeff.norm_sqr(),
        });
    }
    let total: f64 = entries.iter().map(|e| e.probability).sum();
    Ok(ExpansionTable {
        theta: states[0].theta,
        entries,
        parseval_defect: (1.0 - total).abs(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Uncertainty {
    pub dp: f64,
    pub dx: f64,
    pub product: f64,
}

/// `ΔP`, `ΔX` and their product for an eigenstate on a box of length `L`.
///
/// `ΔP` vanishes identically; `ΔX` comes from the moments of `|φ|²`.
pub fn uncertainty_product(state: &MomentumEigenstate, length: f64) -> Result<Uncertainty> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "length must be positive, got {length}"
        )));
    }
    let density = |x: f64| state.evaluate(x, length).norm_sqr();
    let tol = 1e-14 * length * length;
    let m1 = integrate(|x| x * density(x), 0.0, length, tol)?;
    let m2 = integrate(|x| x * x * density(x), 0.0, length, tol)?;
    let dx = (m2 - m1 * m1).max(0.0).sqrt();
    let dp = 0.0;
    Ok(Uncertainty {
        dp,
        dx,
        product: dp * dx,
    })
}
