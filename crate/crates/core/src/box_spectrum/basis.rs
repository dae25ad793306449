//! Two-dimensional solution spaces of `-φ'' = E φ` on `[0, 1]`.

use num_complex::Complex64;

use super::{Root, Sector};
use crate::extensions::ExtensionU2;
use crate::matrix::{Mat2, C64, I};

/// Fundamental solutions used for each sector.
///
/// Negative levels switch from `cosh(r(x-½))`, `sinh(r(x-½))/r` to the
/// wall-localised pair `e^{-rx}`, `e^{-r(1-x)}` once `r ≥ 1`, so both
/// pairs stay well conditioned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    /// `e^{isx}`, `e^{-isx}`.
    Plane { s: f64 },
    /// `1`, `x`.
    Linear,
    /// `cosh(r(x-½))`, `sinh(r(x-½))/r`.
    Hyperbolic { r: f64 },
    /// `e^{-rx}`, `e^{-r(1-x)}`.
    Decaying { r: f64 },
}

impl Basis {
    pub fn for_root(root: Root) -> Basis {
        match root.sector {
            Sector::Positive => Basis::Plane { s: root.value },
            Sector::Zero => Basis::Linear,
            Sector::Negative if root.value < 1.0 => Basis::Hyperbolic { r: root.value },
            Sector::Negative => Basis::Decaying { r: root.value },
        }
    }

    /// `(f_j(x), f_j'(x))`.
    pub fn eval(&self, j: usize, x: f64) -> (C64, C64) {
        let re = |a: f64, b: f64| (C64::new(a, 0.0), C64::new(b, 0.0));
        match (*self, j) {
            (Basis::Plane { s }, 0) => {
                let v = Complex64::from_polar(1.0, s * x);
                (v, I * s * v)
            }
            (Basis::Plane { s }, _) => {
                let v = Complex64::from_polar(1.0, -s * x);
                (v, -I * s * v)
            }
            (Basis::Linear, 0) => re(1.0, 0.0),
            (Basis::Linear, _) => re(x, 1.0),
            (Basis::Hyperbolic { r }, 0) => {
                let y = r * (x - 0.5);
                re(y.cosh(), r * y.sinh())
            }
            (Basis::Hyperbolic { r }, _) => {
                let y = r * (x - 0.5);
                re(y.sinh() / r, y.cosh())
            }
            (Basis::Decaying { r }, 0) => {
                let v = (-r * x).exp();
                re(v, -r * v)
            }
            (Basis::Decaying { r }, _) => {
                let v = (-r * (1.0 - x)).exp();
                re(v, r * v)
            }
        }
    }

    /// `G_ij = ∫₀¹ conj(f_i) f_j`.
    pub fn gram(&self) -> Mat2 {
        let re = |x: f64| C64::new(x, 0.0);
        match *self {
            Basis::Plane { s } => {
                let g = if s.abs() < 1e-4 {
                    C64::new(1.0 - 2.0 * s * s / 3.0, -s)
                } else {
                    (C64::new(1.0, 0.0) - Complex64::from_polar(1.0, -2.0 * s)) / (2.0 * I * s)
                };
                Mat2::new(re(1.0), g, g.conj(), re(1.0))
            }
            Basis::Linear => Mat2::new(re(1.0), re(0.5), re(0.5), re(1.0 / 3.0)),
            Basis::Hyperbolic { r } => {
                let cc = 0.5 + 0.5 * r.sinh() / r;
                let ss = 0.5 * sinh_remainder(r);
                Mat2::new(re(cc), re(0.0), re(0.0), re(ss))
            }
            Basis::Decaying { r } => {
                let d = -(-2.0 * r).exp_m1() / (2.0 * r);
                let o = (-r).exp();
                Mat2::new(re(d), re(o), re(o), re(d))
            }
        }
    }

    /// Boundary vectors of `f_j`: `(w, v)` with
    /// `w = (f'(0) - i f(0), f'(1) + i f(1))`, `v = (f'(0) + i f(0), f'(1) - i f(1))`.
    pub fn boundary_vectors(&self, j: usize) -> ([C64; 2], [C64; 2]) {
        let (f0, d0) = self.eval(j, 0.0);
        let (f1, d1) = self.eval(j, 1.0);
        ([d0 - I * f0, d1 + I * f1], [d0 + I * f0, d1 - I * f1])
    }
}

/// `c x^p e^{q (x - shift)}`.
#[derive(Debug, Clone, Copy)]
struct Term {
    c: C64,
    p: i32,
    q: C64,
    shift: f64,
}

impl Basis {
    /// Exponential-polynomial expansion of `f_j`, or `None` where the
    /// expansion would cancel badly (`sinh(r(x-½))/r` at small `r`).
    fn terms(&self, j: usize) -> Option<[Term; 2]> {
        let t = |c: f64, p: i32, q: C64, shift: f64| Term {
            c: C64::new(c, 0.0),
            p,
            q,
            shift,
        };
        let re = |x: f64| C64::new(x, 0.0);
        let none = t(0.0, 0, re(0.0), 0.0);
        Some(match (*self, j) {
            (Basis::Plane { s }, 0) => [t(1.0, 0, I * s, 0.0), none],
            (Basis::Plane { s }, _) => [t(1.0, 0, -I * s, 0.0), none],
            (Basis::Linear, 0) => [t(1.0, 0, re(0.0), 0.0), none],
            (Basis::Linear, _) => [t(1.0, 1, re(0.0), 0.0), none],
            (Basis::Hyperbolic { r }, _) if r < 0.05 => return None,
            (Basis::Hyperbolic { r }, 0) => [t(0.5, 0, re(r), 0.5), t(0.5, 0, re(-r), 0.5)],
            (Basis::Hyperbolic { r }, _) => [t(0.5 / r, 0, re(r), 0.5), t(-0.5 / r, 0, re(-r), 0.5)],
            (Basis::Decaying { r }, 0) => [t(1.0, 0, re(-r), 0.0), none],
            (Basis::Decaying { r }, _) => [t(1.0, 0, re(r), 1.0), none],
        })
    }
}

/// `∫₀¹ conj(a_i) b_j` in closed form, `None` when it is not available.
pub(crate) fn overlap(a: &Basis, i: usize, b: &Basis, j: usize) -> Option<C64> {
    let (ta, tb) = (a.terms(i)?, b.terms(j)?);
    let mut sum = C64::new(0.0, 0.0);
    for x in ta.iter().filter(|t| t.c != C64::new(0.0, 0.0)) {
        for y in tb.iter().filter(|t| t.c != C64::new(0.0, 0.0)) {
            let q = x.q.conj() + y.q;
            let c = x.q.conj() * x.shift + y.q * y.shift;
            sum += x.c.conj() * y.c * moment(x.p + y.p, q, c);
        }
    }
    Some(sum)
}

/// `∫₀¹ x^p e^{qx - c} dx`.
fn moment(p: i32, q: C64, c: C64) -> C64 {
    let ec = (-c).exp();
    if q.norm() < 0.5 {
        // Σ q^k / (k! (k + p + 1))
        let mut term = C64::new(1.0, 0.0);
        let mut sum = C64::new(1.0 / f64::from(p + 1), 0.0);
        for k in 1..60 {
            term = term * q / k as f64;
            let add = term / f64::from(k + p + 1);
            sum += add;
            if add.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        return ec * sum;
    }
    let eq = (q - c).exp();
    let mut acc = (eq - ec) / q;
    for k in 1..=p {
        acc = (eq - f64::from(k) * acc) / q;
    }
    acc
}

/// `(sinh r - r)/r³`.
fn sinh_remainder(r: f64) -> f64 {
    if r < 1e-2 {
        let r2 = r * r;
        1.0 / 6.0 + r2 / 120.0 + r2 * r2 / 5040.0
    } else {
        (r.sinh() - r) / (r * r * r)
    }
}

/// `K = W - U V` on the basis, whose null space holds the eigenfunction
/// coefficients, together with the scale `‖W‖ + ‖UV‖` for rank decisions.
pub fn boundary_matrix(ext: &ExtensionU2, basis: &Basis) -> (Mat2, f64) {
    let (w0, v0) = basis.boundary_vectors(0);
    let (w1, v1) = basis.boundary_vectors(1);
    let w = Mat2::new(w0[0], w1[0], w0[1], w1[1]);
    let v = Mat2::new(v0[0], v1[0], v0[1], v1[1]);
    let uv = *ext.to_matrix().matrix() * v;
    (w - uv, w.frobenius() + uv.frobenius())
}
