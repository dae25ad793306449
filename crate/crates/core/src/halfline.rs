//! Extensions of `-D²` on `[0, ∞)` with `φ(0) = λ φ'(0)`, in units
//! `ħ = 2m = 1` unless stated otherwise.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::extensions::HalflineExtension;
use crate::matrix::{C64, I};
use crate::numerics::{refine_root, scan_brackets};

/// `λ = -tan(α/2)`, with `α = π` giving `λ = ∞`.
pub fn alpha_to_lambda(alpha: f64) -> Result<HalflineExtension> {
    if !(0.0..=TAU).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("α must lie in [0, 2π], got {alpha}")));
    }
    let half = 0.5 * alpha;
    if (half - FRAC_PI_2).abs() <= 4.0 * f64::EPSILON {
        return Ok(HalflineExtension::Infinite);
    }
    Ok(HalflineExtension::Finite(-half.tan()))
}

/// Inverse of [`alpha_to_lambda`], in `[0, 2π)`.
pub fn lambda_to_alpha(lam: HalflineExtension) -> f64 {
    match lam {
        HalflineExtension::Infinite => PI,
        HalflineExtension::Finite(l) => {
            let a = (-2.0 * l.atan()).rem_euclid(TAU);
            if a >= TAU {
                0.0
            } else {
                a
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflection {
    /// `r = A/B` for `φ = A e^{-ikx} + B e^{ikx}`.
    pub amplitude: C64,
    /// `|r|²`.
    pub probability: f64,
}

/// `r(k) = -(1 + iλk)/(1 - iλk)`; `r = 1` for `λ = ∞`.
pub fn reflection(lam: HalflineExtension, k: f64) -> Result<Reflection> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("k must be positive, got {k}")));
    }
    let amplitude = match lam {
        HalflineExtension::Infinite => C64::new(1.0, 0.0),
        HalflineExtension::Finite(l) => -(1.0 + I * (l * k)) / (1.0 - I * (l * k)),
    };
    Ok(Reflection {
        amplitude,
        probability: amplitude.norm_sqr(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    /// `ρ = 1/|λ|`.
    pub rho: f64,
    /// `E = -ρ²` in units of `ħ²/2m`.
    pub energy: f64,
}

impl BoundState {
    pub fn evaluate(&self, x: f64) -> f64 {
        (2.0 * self.rho).sqrt() * (-self.rho * x).exp()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        -self.rho * self.evaluate(x)
    }

    /// `-ħ²/(2mλ²)`.
    pub fn energy_physical(&self, hbar: f64, mass: f64) -> f64 {
        self.energy * hbar * hbar / (2.0 * mass)
    }
}

/// The surface bound state, present only for finite `λ < 0`.
pub fn bound_state(lam: HalflineExtension) -> Option<BoundState> {
    match lam {
        HalflineExtension::Finite(l) if l < 0.0 => {
            let rho = -1.0 / l;
            Some(BoundState {
                rho,
                energy: -rho * rho,
            })
        }
        _ => None,
    }
}

/// Square-well deuteron model: infinite wall at the origin with boundary
/// parameter `λ`, depth `V₀` on `(0, a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeuteronParams {
    /// `|E|` in MeV.
    pub binding_energy: f64,
    /// `a` in fm.
    pub range_a: f64,
    /// MeV fm.
    pub hbar_c: f64,
    /// Nucleon rest energy `M c²` in MeV, with `2m = M`.
    pub nucleon_mass_c2: f64,
    pub lam_over_a: HalflineExtension,
}

impl Default for DeuteronParams {
    fn default() -> Self {
        DeuteronParams {
            binding_energy: 2.2,
            range_a: 2.0,
            hbar_c: 197.326_980_4,
            nucleon_mass_c2: 938.919,
            lam_over_a: HalflineExtension::Finite(0.0),
        }
    }
}

impl DeuteronParams {
    pub fn with_lambda(self, lam_over_a: HalflineExtension) -> Self {
        DeuteronParams { lam_over_a, ..self }
    }

    /// `Y = ρa = a √(M c² |E|)/ħc`.
    pub fn y(&self) -> f64 {
        self.range_a * (self.nucleon_mass_c2 * self.binding_energy).sqrt() / self.hbar_c
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("binding energy", self.binding_energy),
            ("range", self.range_a),
            ("hbar c", self.hbar_c),
            ("nucleon mass", self.nucleon_mass_c2),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if let HalflineExtension::Finite(l) = self.lam_over_a {
            if !(l >= 0.0 && l.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "the deuteron model needs λ/a ≥ 0 or ∞, got {l}"
                )));
            }
        }
        Ok(())
    }
}

/// The λ/a values of the reference table.
pub const TABLE_LAMBDAS: [Option<f64>; 10] = [
    Some(0.0),
    Some(0.1),
    Some(0.2),
    Some(0.5),
    Some(1.0),
    Some(2.0),
    Some(5.0),
    Some(10.0),
    Some(100.0),
    None,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeuteronSolution {
    pub lam_over_a: HalflineExtension,
    /// `X = ka`.
    pub x: f64,
    /// `Y = ρa`.
    pub y: f64,
    /// Well depth in MeV.
    pub v0: f64,
    /// `|Y - Y(X)|` in the tangent form of the matching condition.
    pub residual: f64,
    /// Relative mismatch of `φ'` at `x = a` for the reconstructed solution.
    pub continuity: f64,
}

/// Matching condition divided by `X(1 + λ/a)`, free of tangent poles:
/// `(1 - w)(cos X + Y sin X / X) + w (Y cos X - X sin X)`, `w = ℓ/(1 + ℓ)`.
fn matching(x: f64, y: f64, w: f64) -> f64 {
    let sinc = if x.abs() < 1e-8 { 1.0 } else { x.sin() / x };
    (1.0 - w) * (x.cos() + y * sinc) + w * (y * x.cos() - x * x.sin())
}

/// Ground-state `X` and the depth `V₀ = |E| (1 + (X/Y)²)`.
pub fn deuteron_v0(p: &DeuteronParams) -> Result<DeuteronSolution> {
    p.validate()?;
    let y = p.y();
    let (w, ell) = match p.lam_over_a {
        HalflineExtension::Infinite => (1.0, f64::INFINITY),
        HalflineExtension::Finite(l) => (l / (1.0 + l), l),
    };
    let f = |x: f64| matching(x, y, w);
    let brackets = scan_brackets(f, 0.0, TAU, PI / 64.0)?;
    let bracket = brackets
        .first()
        .ok_or_else(|| Error::Model(format!("no ground-state solution for λ/a = {ell} below X = 2π")))?;
    let x = refine_root(bracket, f, 1e-15)?.root;

    let residual = if ell.is_infinite() {
        (x * x.tan() - y).abs()
    } else {
        let t = x.tan();
        (y + x * (1.0 - ell * x * t) / (t + ell * x)).abs()
    };

    // φ₁ = sin kx + λk cos kx inside (cos kx for λ = ∞), C e^{-ρx} outside; a = 1.
    let (s, c) = x.sin_cos();
    let (inside, slope) = if ell.is_infinite() {
        (c, -x * s)
    } else {
        (s + ell * x * c, x * c - ell * x * x * s)
    };
    let outside_slope = -y * inside;
    let continuity = (slope - outside_slope).abs() / (x.abs() + y) / inside.abs().max(f64::MIN_POSITIVE);

    Ok(DeuteronSolution {
        lam_over_a: p.lam_over_a,
        x,
        y,
        v0: p.binding_energy * (1.0 + (x / y).powi(2)),
        residual,
        continuity,
    })
}

/// [`deuteron_v0`] for each `λ/a`; `None` stands for `∞`.
pub fn deuteron_table(p: &DeuteronParams, lambdas: &[Option<f64>]) -> Result<Vec<DeuteronSolution>> {
    lambdas
        .iter()
        .map(|l| {
            let lam = l.map_or(HalflineExtension::Infinite, HalflineExtension::Finite);
            deuteron_v0(&p.with_lambda(lam))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;

    #[test]
    fn alpha_lambda_examples() {
        assert_eq!(alpha_to_lambda(0.0).unwrap(), HalflineExtension::Finite(-0.0));
        assert_eq!(alpha_to_lambda(PI).unwrap(), HalflineExtension::Infinite);
        let l = alpha_to_lambda(1.5 * PI).unwrap().finite().unwrap();
        assert!((l - 1.0).abs() < 1e-15);
        assert!((lambda_to_alpha(HalflineExtension::Finite(1.0)) - 1.5 * PI).abs() < 1e-15);
        assert_eq!(lambda_to_alpha(HalflineExtension::Infinite), PI);
        assert!(alpha_to_lambda(7.0).is_err());
        for a in [0.3, 2.0, 4.0, 6.0] {
            assert!((lambda_to_alpha(alpha_to_lambda(a).unwrap()) - a).abs() < 1e-14);
        }
    }

    #[test]
    fn reflection_examples() {
        let r = reflection(HalflineExtension::Finite(0.0), 1.0).unwrap();
        assert_eq!(r.amplitude, C64::new(-1.0, 0.0));
        let r = reflection(HalflineExtension::Finite(1.0), 2.0).unwrap();
        let expect = -C64::new(1.0, 2.0) / C64::new(1.0, -2.0);
        assert!((r.amplitude - expect).norm() < 1e-15);
        assert!((r.probability - 1.0).abs() < 1e-15);
        assert_eq!(
            reflection(HalflineExtension::Infinite, 3.0).unwrap().amplitude,
            C64::new(1.0, 0.0)
        );
        assert!(reflection(HalflineExtension::Finite(1.0), 0.0).is_err());
    }

    #[test]
    fn bound_state_examples() {
        let b = bound_state(HalflineExtension::Finite(-1.0)).unwrap();
        assert_eq!(b.energy, -1.0);
        assert!((b.evaluate(0.5) - 2f64.sqrt() * (-0.5f64).exp()).abs() < 1e-15);
        assert!(bound_state(HalflineExtension::Finite(1.0)).is_none());
        assert!(bound_state(HalflineExtension::Infinite).is_none());
        let b = bound_state(HalflineExtension::Finite(-2.0)).unwrap();
        let norm = integrate(|x| b.evaluate(x).powi(2), 0.0, 80.0, 1e-14).unwrap();
        assert!((norm - 1.0).abs() < 1e-12);
        // φ(0) = λ φ'(0)
        assert!((b.evaluate(0.0) + 2.0 * b.derivative(0.0)).abs() < 1e-12);
    }

    #[test]
    fn deuteron_constants() {
        assert!((DeuteronParams::default().y() - 0.4607).abs() < 1e-4);
    }

    #[test]
    fn deuteron_examples() {
        let p = DeuteronParams::default();
        let table = deuteron_table(&p, &TABLE_LAMBDAS).unwrap();
        let reference = [36.8, 31.5, 27.5, 20.5, 15.3, 11.5, 8.59, 7.50, 6.47, 6.34];
        for (s, v) in table.iter().zip(reference) {
            assert!(((s.v0 - v) / v).abs() < 0.02, "{s:?} vs {v}");
            assert!(s.residual < 1e-10);
            assert!(s.continuity < 1e-10);
            assert!((s.v0 / p.binding_energy - 1.0 - (s.x / s.y).powi(2)).abs() < 1e-12);
        }
        assert!(table[0].x > FRAC_PI_2 && table[0].x < PI);
        assert!(table[9].x > 0.0 && table[9].x < FRAC_PI_2);
        assert!(table.windows(2).all(|w| w[1].v0 < w[0].v0));
    }

    #[test]
    fn negative_lambda_is_rejected() {
        let p = DeuteronParams::default().with_lambda(HalflineExtension::Finite(-0.5));
        assert!(deuteron_v0(&p).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn reflection_is_unitary(l in -1e4..1e4f64, k in 1e-4..1e4f64) {
                let r = reflection(HalflineExtension::Finite(l), k).unwrap();
                prop_assert!((r.probability - 1.0).abs() < 1e-12);
            }

            #[test]
            fn alpha_round_trip(alpha in 0.0..TAU) {
                prop_assume!((alpha - PI).abs() > 1e-6);
                let back = lambda_to_alpha(alpha_to_lambda(alpha).unwrap());
                prop_assert!((back - alpha).abs() < 1e-12 || (back - alpha).abs() > TAU - 1e-12);
            }

            #[test]
            fn deuteron_depth_falls_with_lambda(a in 0.0..50.0f64, b in 0.0..50.0f64) {
                prop_assume!((a - b).abs() > 1e-6);
                let p = DeuteronParams::default();
                let va = deuteron_v0(&p.with_lambda(HalflineExtension::Finite(a.min(b)))).unwrap();
                let vb = deuteron_v0(&p.with_lambda(HalflineExtension::Finite(a.max(b)))).unwrap();
                prop_assert!(vb.v0 < va.v0);
                prop_assert!(va.residual < 1e-10 && vb.residual < 1e-10);
            }
        }
    }
}
