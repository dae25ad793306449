//! Adaptive Simpson quadrature on finite intervals.
//!
//! Each panel compares one Simpson estimate against the sum of its two
//! halves and adds the Richardson correction `(S2 - S1) / 15`, which makes a
//! panel exact for polynomials up to degree five.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 50;
const INITIAL_PANELS: usize = 8;

struct Simpson<'a, F> {
    f: &'a F,
    error: f64,
    failed: bool,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    fn eval(&self, x: f64) -> Result<f64> {
        let value = (self.f)(x);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFinite { x, value })
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn panel(
        &mut self,
        a: f64,
        fa: f64,
        m: f64,
        fm: f64,
        b: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        let converged = delta.abs() <= 15.0 * tol;
        // Interval exhausted at floating-point resolution.
        let exhausted = lm <= a || lm >= m || rm <= m || rm >= b;
        if converged || exhausted || depth == 0 {
            if !converged {
                self.failed = true;
            }
            self.error += delta.abs() / 15.0;
            return Ok(left + right + delta / 15.0);
        }
        let l = self.panel(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1)?;
        let r = self.panel(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }
}

/// Integrate `f` over `[a, b]` to an estimated absolute error of `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate_piecewise(f, &[a, b], tol)
}

/// Integrate over `breaks[0]..breaks[last]`, never placing a panel across an
/// interior breakpoint. `breaks` must be strictly increasing.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> Result<f64> {
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[0] < w[1])) || !breaks.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidParameter(
            "integration limits must be finite and strictly increasing".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let total = breaks[breaks.len() - 1] - breaks[0];
    let mut state = Simpson {
        f: &f,
        error: 0.0,
        failed: false,
    };
    let mut sum = 0.0;
    for piece in breaks.windows(2) {
        let (lo, hi) = (piece[0], piece[1]);
        let h = (hi - lo) / INITIAL_PANELS as f64;
        let piece_tol = tol * (hi - lo) / total / INITIAL_PANELS as f64;
        for k in 0..INITIAL_PANELS {
            let a = lo + k as f64 * h;
            let b = if k + 1 == INITIAL_PANELS {
                hi
            } else {
                lo + (k + 1) as f64 * h
            };
            let m = 0.5 * (a + b);
            let (fa, fm, fb) = (state.eval(a)?, state.eval(m)?, state.eval(b)?);
            let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            sum += state.panel(a, fa, m, fm, b, fb, whole, piece_tol, MAX_DEPTH)?;
        }
    }
    if state.failed && state.error > tol {
        return Err(Error::Quadrature {
            estimate: sum,
            achieved: state.error,
            requested: tol,
        });
    }
    Ok(sum)
}

/// Integrate a complex-valued function, real and imaginary parts separately
/// with `tol` each.
pub fn integrate_complex<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let re = integrate(|x| f(x).re, a, b, tol)?;
    let im = integrate(|x| f(x).im, a, b, tol)?;
    Ok(Complex64::new(re, im))
}
