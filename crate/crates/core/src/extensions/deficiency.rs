//! Deficiency indices of `-i D` and `-D²` on the standard intervals.
//!
//! The tabulated indices can be checked numerically: the deficiency
//! subspaces are spanned by solutions `e^{κx}` of `T† ψ = ±i ψ`, and a
//! solution counts when it is square-integrable on the interval.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::integrate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    /// `-i d/dx`.
    Momentum,
    /// `-d²/dx²`.
    Hamiltonian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    FullLine,
    SemiAxis,
    FiniteBox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionFamily {
    /// Essentially self-adjoint.
    Unique,
    /// Unequal indices.
    None,
    /// Extensions labelled by `U(n)`, `n²` real parameters.
    Unitary { n: usize },
}

impl fmt::Display for ExtensionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionFamily::Unique => write!(f, "unique self-adjoint extension"),
            ExtensionFamily::None => write!(f, "no self-adjoint extension"),
            ExtensionFamily::Unitary { n: 1 } => write!(f, "U(1) family, 1 real parameter"),
            ExtensionFamily::Unitary { n } => write!(f, "U({n}) family, {} real parameters", n * n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeficiencyIndices {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl DeficiencyIndices {
    pub fn family(&self) -> ExtensionFamily {
        match (self.n_plus, self.n_minus) {
            (0, 0) => ExtensionFamily::Unique,
            (a, b) if a == b => ExtensionFamily::Unitary { n: a },
            _ => ExtensionFamily::None,
        }
    }
}

pub fn deficiency_indices(op: OperatorKind, interval: IntervalKind) -> DeficiencyIndices {
    let (n_plus, n_minus) = match (op, interval) {
        (OperatorKind::Momentum, IntervalKind::FullLine) => (0, 0),
        (OperatorKind::Momentum, IntervalKind::SemiAxis) => (1, 0),
        (OperatorKind::Momentum, IntervalKind::FiniteBox) => (1, 1),
        (OperatorKind::Hamiltonian, IntervalKind::FullLine) => (0, 0),
        (OperatorKind::Hamiltonian, IntervalKind::SemiAxis) => (1, 1),
        (OperatorKind::Hamiltonian, IntervalKind::FiniteBox) => (2, 2),
    };
    DeficiencyIndices { n_plus, n_minus }
}

/// Tail fraction at or below which a solution is taken as square-integrable.
const INTEGRABLE_TAIL: f64 = 1e-6;

/// Count square-integrable solutions of `T† ψ = ±i ψ` numerically.
///
/// `scale` is the length `d` of `-i D` or the wavenumber `k₀` of `-D²`.
/// On the unbounded intervals `cutoff` is the truncation length `c`; the
/// fraction of `∫|ψ|²` over `[0, 2c]` contributed by `[c, 2c]` is at most
/// `1e-6` for decaying solutions and at least one half for growing ones.
/// On the finite box `cutoff` is the length `L`.
pub fn verify_deficiency(
    op: OperatorKind,
    interval: IntervalKind,
    scale: f64,
    cutoff: f64,
) -> Result<DeficiencyIndices> {
    if !(scale > 0.0 && scale.is_finite()) || !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "scale and cutoff must be positive and finite (scale = {scale}, cutoff = {cutoff})"
        )));
    }
    let count = |rates: Vec<Complex64>| -> Result<usize> {
        let mut n = 0;
        for kappa in rates {
            if admissible(kappa.re, interval, cutoff)? {
                n += 1;
            }
        }
        Ok(n)
    };
    let (plus, minus) = solution_rates(op, scale);
    Ok(DeficiencyIndices {
        n_plus: count(plus)?,
        n_minus: count(minus)?,
    })
}

/// Exponents `κ` of the solutions `e^{κx}` for the `+i` and `-i` equations.
fn solution_rates(op: OperatorKind, scale: f64) -> (Vec<Complex64>, Vec<Complex64>) {
    match op {
        // -i ψ' = ±i ψ / d
        OperatorKind::Momentum => (
            vec![Complex64::new(-1.0 / scale, 0.0)],
            vec![Complex64::new(1.0 / scale, 0.0)],
        ),
        // -ψ'' = ±i k₀² ψ
        OperatorKind::Hamiltonian => {
            let a = scale * FRAC_1_SQRT_2;
            let plus = Complex64::new(a, -a);
            let minus = Complex64::new(a, a);
            (vec![plus, -plus], vec![minus, -minus])
        }
    }
}

fn admissible(growth: f64, interval: IntervalKind, cutoff: f64) -> Result<bool> {
    let density = move |x: f64| (2.0 * growth * x).exp();
    match interval {
        IntervalKind::FiniteBox => {
            let norm = norm_sq(density, 0.0, cutoff)?;
            Ok(norm.is_finite())
        }
        IntervalKind::SemiAxis => decays(density, 1.0, cutoff),
        IntervalKind::FullLine => Ok(decays(density, 1.0, cutoff)? && decays(density, -1.0, cutoff)?),
    }
}

/// Square-integrability of `density` along `direction · [0, ∞)`.
fn decays<F: Fn(f64) -> f64>(density: F, direction: f64, cutoff: f64) -> Result<bool> {
    let along = |t: f64| density(direction * t);
    let near = norm_sq(along, 0.0, cutoff)?;
    let far = norm_sq(along, cutoff, 2.0 * cutoff)?;
    let tail = far / (near + far);
    if tail <= INTEGRABLE_TAIL {
        Ok(true)
    } else if tail >= 0.5 - INTEGRABLE_TAIL {
        Ok(false)
    } else {
        Err(Error::InconclusiveGrowth {
            tail_fraction: tail,
            cutoff,
        })
    }
}

fn norm_sq<F: Fn(f64) -> f64>(density: F, a: f64, b: f64) -> Result<f64> {
    // Relative tolerance from a coarse trapezoid estimate.
    let n = 64;
    let h = (b - a) / n as f64;
    let rough: f64 = (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            w * density(a + i as f64 * h)
        })
        .sum::<f64>()
        * h;
    let tol = (1e-10 * rough).max(f64::MIN_POSITIVE);
    integrate(density, a, b, tol)
}
