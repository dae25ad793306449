//! Parametrisations of self-adjoint extensions and their symmetry classes.
//!
//! Box extensions of `-D²` on `[0, L]` are labelled by a unitary 2x2 matrix
//! `U` acting on the boundary vectors
//!
//! ```text
//! (L φ'(0) - i φ(0), L φ'(L) + i φ(L))ᵀ = U (L φ'(0) + i φ(0), L φ'(L) - i φ(L))ᵀ
//! ```
//!
//! written as `U = e^{iψ} (m₀ I - i m⃗·τ⃗)` with `(m₀, m⃗)` on the unit
//! three-sphere. Since `(ψ, m)` and `(ψ + π, -m)` give the same matrix, the
//! stored form always has `ψ ∈ [0, π)`.

mod deficiency;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

pub use deficiency::{
    deficiency_indices, verify_deficiency, DeficiencyIndices, ExtensionFamily, IntervalKind, OperatorKind,
};

use crate::error::{Error, Result};
use crate::matrix::{Mat2, C64};

/// Largest `|m₀² + |m⃗|² - 1|` accepted when constructing an extension.
pub const S3_TOLERANCE: f64 = 1e-9;
/// Largest entry of `U†U - I` accepted for a unitary matrix.
pub const UNITARITY_TOLERANCE: f64 = 1e-9;
/// Default tolerance of the symmetry and family classifiers.
pub const CLASSIFY_TOLERANCE: f64 = 1e-10;

/// A self-adjoint extension of `-D²` on a finite box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionU2 {
    psi: f64,
    q: [f64; 4],
}

impl ExtensionU2 {
    /// Build from `(ψ, m₀, m₁, m₂, m₃)`.
    ///
    /// The point is renormalised onto S³ if it lies within [`S3_TOLERANCE`]
    /// of it, and `ψ` is reduced to `[0, π)` using the `(ψ + π, -m)`
    /// identification.
    pub fn new(psi: f64, m0: f64, m1: f64, m2: f64, m3: f64) -> Result<Self> {
        let q = [m0, m1, m2, m3];
        if !psi.is_finite() || q.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("extension parameters must be finite".into()));
        }
        let norm2: f64 = q.iter().map(|x| x * x).sum();
        if (norm2 - 1.0).abs() > S3_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "m = ({m0}, {m1}, {m2}, {m3}) is not on the unit three-sphere (|m|² = {norm2})"
            )));
        }
        let norm = norm2.sqrt();
        let q = q.map(|x| x / norm);
        Ok(Self::canonical(psi, q))
    }

    fn canonical(psi: f64, mut q: [f64; 4]) -> Self {
        let mut psi = psi.rem_euclid(TAU);
        if psi >= TAU {
            psi = 0.0;
        }
        if psi >= PI {
            psi -= PI;
            q = q.map(|x| -x);
        }
        ExtensionU2 { psi, q }
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn m0(&self) -> f64 {
        self.q[0]
    }

    pub fn m1(&self) -> f64 {
        self.q[1]
    }

    pub fn m2(&self) -> f64 {
        self.q[2]
    }

    pub fn m3(&self) -> f64 {
        self.q[3]
    }

    /// `(m₀, m₁, m₂, m₃)`.
    pub fn coordinates(&self) -> [f64; 4] {
        self.q
    }

    /// The SU(2) factor `M = m₀ I - i m⃗·τ⃗`.
    pub fn su2_factor(&self) -> Mat2 {
        let [m0, m1, m2, m3] = self.q;
        Mat2::new(
            C64::new(m0, -m3),
            C64::new(-m2, -m1),
            C64::new(m2, -m1),
            C64::new(m0, m3),
        )
    }

    /// `U = e^{iψ} M`. Infallible: the S³ constraint is enforced at construction.
    pub fn to_matrix(&self) -> UnitaryMatrix2 {
        UnitaryMatrix2(self.su2_factor().scale(C64::from_polar(1.0, self.psi)))
    }

    /// Recover `(ψ, m)` in canonical form from a unitary matrix.
    pub fn from_matrix(u: &UnitaryMatrix2) -> Self {
        let det = u.0.det();
        let mut psi = 0.5 * det.arg();
        if psi.abs() < 1e-15 {
            psi = 0.0;
        }
        let m = u.0.scale(C64::from_polar(1.0, -psi)).0;
        let m0 = 0.5 * (m[0][0].re + m[1][1].re);
        let m3 = 0.5 * (m[1][1].im - m[0][0].im);
        let m1 = -0.5 * (m[0][1].im + m[1][0].im);
        let m2 = 0.5 * (m[1][0].re - m[0][1].re);
        let norm = (m0 * m0 + m1 * m1 + m2 * m2 + m3 * m3).sqrt();
        Self::canonical(psi, [m0, m1, m2, m3].map(|x| x / norm))
    }

    /// Dirichlet walls, `U = I`.
    pub fn dirichlet() -> Self {
        ExtensionU2 {
            psi: 0.0,
            q: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// Neumann walls, `U = -I`, stored as `ψ = 0, m₀ = -1`.
    pub fn neumann() -> Self {
        ExtensionU2 {
            psi: 0.0,
            q: [-1.0, 0.0, 0.0, 0.0],
        }
    }

    /// Periodic walls, `U = τ₁`.
    pub fn periodic() -> Self {
        ExtensionU2 {
            psi: FRAC_PI_2,
            q: [0.0, 1.0, 0.0, 0.0],
        }
    }

    /// Antiperiodic walls, `U = -τ₁`.
    pub fn antiperiodic() -> Self {
        ExtensionU2 {
            psi: FRAC_PI_2,
            q: [0.0, -1.0, 0.0, 0.0],
        }
    }

    /// `φ(L) = e^{iθ} φ(0)`, `φ'(L) = e^{iθ} φ'(0)`, i.e.
    /// `U = ((0, e^{-iθ}), (e^{iθ}, 0))`.
    pub fn quasi_periodic(theta: f64) -> Self {
        let theta = theta.rem_euclid(TAU);
        let (sin, cos) = theta.sin_cos();
        ExtensionU2 {
            psi: FRAC_PI_2,
            q: [0.0, cos, sin, 0.0],
        }
    }
}

/// A 2x2 unitary matrix with entries `((α, γ), (β, δ))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryMatrix2(Mat2);

impl UnitaryMatrix2 {
    pub fn new(m: Mat2) -> Result<Self> {
        let residual = unitarity_residual(&m);
        if residual > UNITARITY_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "matrix is not unitary: max |U†U - I| = {residual:e}"
            )));
        }
        Ok(UnitaryMatrix2(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn alpha(&self) -> C64 {
        self.0.get(0, 0)
    }

    pub fn gamma(&self) -> C64 {
        self.0.get(0, 1)
    }

    pub fn beta(&self) -> C64 {
        self.0.get(1, 0)
    }

    pub fn delta(&self) -> C64 {
        self.0.get(1, 1)
    }

    pub fn unitarity_residual(&self) -> f64 {
        unitarity_residual(&self.0)
    }
}

fn unitarity_residual(m: &Mat2) -> f64 {
    (m.adjoint() * *m).max_abs_diff(&Mat2::identity())
}

/// Extension of the momentum operator on `[0, L]`: `φ(L) = e^{iθ} φ(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumExtension {
    theta: f64,
}

impl MomentumExtension {
    pub fn new(theta: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        if theta >= TAU {
            theta = 0.0;
        }
        MomentumExtension { theta }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

/// Extension of `-D²` on the half-line: `φ(0) = λ φ'(0)`, with `λ = ∞`
/// meaning `φ'(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HalflineExtension {
    Finite(f64),
    Infinite,
}

impl HalflineExtension {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            HalflineExtension::Finite(l) => Some(l),
            HalflineExtension::Infinite => None,
        }
    }
}

/// The closed-form families of box spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimpleFamily {
    /// `m₁ = sin ψ = 0`.
    First,
    /// `m₀ = cos ψ = 0`.
    Second,
    Generic,
}

pub fn classify_simple_family(e: &ExtensionU2, tol: f64) -> SimpleFamily {
    if e.m1().abs() <= tol && e.psi.sin().abs() <= tol {
        SimpleFamily::First
    } else if e.m0().abs() <= tol && e.psi.cos().abs() <= tol {
        SimpleFamily::Second
    } else {
        SimpleFamily::Generic
    }
}

/// `det(I - Ū U)`, which equals `4 m₂²`.
pub fn time_reversal_determinant(e: &ExtensionU2) -> C64 {
    let u = *e.to_matrix().matrix();
    (Mat2::identity() - u.conj() * u).det()
}

/// Time-reversal invariance (real eigenfunctions exist): `m₂ = 0`.
///
/// Cross-checked against `det(I - Ū U) = 0`; the determinant is quadratic
/// in `m₂`, so its threshold is `4 tol²`.
pub fn is_time_reversal(e: &ExtensionU2, tol: f64) -> bool {
    let by_parameter = e.m2().abs() <= tol;
    let det = time_reversal_determinant(e).norm();
    // Away from the threshold the two criteria must agree.
    let margin = (e.m2().abs() - tol).abs() > 1e-6 * tol.max(1e-12) + 1e-12;
    debug_assert!(
        !margin || by_parameter == (det <= 4.0 * tol * tol + 1e-13),
        "time-reversal criteria disagree: m2 = {}, det = {det}",
        e.m2()
    );
    by_parameter
}

/// Parity invariance of `|φ|²` about the box midpoint: `m₃ = 0`.
pub fn is_parity_preserving(e: &ExtensionU2, tol: f64) -> bool {
    e.m3().abs() <= tol
}

/// Named box extensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NamedExtension {
    Dirichlet,
    Neumann,
    Periodic,
    Antiperiodic,
    QuasiPeriodic(f64),
}

pub fn named_extension(name: NamedExtension) -> ExtensionU2 {
    match name {
        NamedExtension::Dirichlet => ExtensionU2::dirichlet(),
        NamedExtension::Neumann => ExtensionU2::neumann(),
        NamedExtension::Periodic => ExtensionU2::periodic(),
        NamedExtension::Antiperiodic => ExtensionU2::antiperiodic(),
        NamedExtension::QuasiPeriodic(theta) => ExtensionU2::quasi_periodic(theta),
    }
}

/// `τ₁`, the periodic boundary matrix.
pub fn tau1() -> UnitaryMatrix2 {
    UnitaryMatrix2(Mat2::pauli(1))
}

/// `((0, e^{-iθ}), (e^{iθ}, 0))`.
pub fn antidiagonal(theta: f64) -> UnitaryMatrix2 {
    let z = C64::new(0.0, 0.0);
    UnitaryMatrix2(Mat2::new(
        z,
        C64::from_polar(1.0, -theta),
        C64::from_polar(1.0, theta),
        z,
    ))
}
