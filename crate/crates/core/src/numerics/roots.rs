//! Bracketing scans and bracketed root refinement for real scalar functions.
//!
//! A scan walks a grid, reports every sign change, and looks for double
//! roots at grid minima of `|f|` that show no sign change. Those double
//! roots are the reason a plain sign scan is not enough for the box
//! spectrum: periodic and antiperiodic extensions have degenerate levels
//! where the characteristic function only touches zero.

use crate::error::{Error, Result};

/// Relative threshold below which a sign-preserving grid minimum counts as a
/// double root. The scale is the larger of the two neighbouring grid values.
pub const DEFAULT_TANGENCY: f64 = 1e-9;

/// Depth, relative to the neighbouring grid values, below which a sign
/// change found between two grid points is treated as rounding noise.
const ROUNDOFF_DEPTH: f64 = 256.0 * f64::EPSILON;

const MAX_REFINE_ITER: usize = 200;
const MAX_GOLDEN_ITER: usize = 200;

/// What a bracket asserts about the function inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BracketKind {
    /// `f(lo)` and `f(hi)` have opposite signs, or one of them is exactly zero.
    SignChange,
    /// No sign change, but `f` comes within the tangency threshold of zero at `x`.
    Tangency { x: f64, fx: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub kind: BracketKind,
}

impl Bracket {
    pub fn is_tangency(&self) -> bool {
        matches!(self.kind, BracketKind::Tangency { .. })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootReport {
    pub root: f64,
    /// `|f(root)|`.
    pub residual: f64,
    pub iterations: usize,
    /// 1 for a sign-change root, 2 for a suspected double root.
    pub multiplicity_hint: u8,
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let value = f(x);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { x, value })
    }
}

/// Scan `[lo, hi]` on a uniform grid of spacing `step` (the last cell may be
/// shorter) using the default tangency threshold.
pub fn scan_brackets<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64) -> Result<Vec<Bracket>> {
    if !(lo < hi) || !(step > 0.0) || step > hi - lo {
        return Err(Error::InvalidParameter(format!(
            "scan needs lo < hi and 0 < step <= hi - lo (lo = {lo}, hi = {hi}, step = {step})"
        )));
    }
    scan_grid(f, &uniform_grid(lo, hi, step), DEFAULT_TANGENCY)
}

/// Grid points `lo, lo + step, ...` ending exactly at `hi`.
pub fn uniform_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let cells = ((hi - lo) / step).ceil().max(1.0) as usize;
    let mut grid: Vec<f64> = (0..cells).map(|i| lo + i as f64 * step).collect();
    // Drop a final point that would leave a sliver cell from rounding.
    while grid.len() > 1 && hi - grid[grid.len() - 1] < 1e-12 * step {
        grid.pop();
    }
    grid.push(hi);
    grid
}

/// Scan an arbitrary strictly increasing grid.
pub fn scan_grid<F: Fn(f64) -> f64>(f: F, grid: &[f64], tangency: f64) -> Result<Vec<Bracket>> {
    if grid.len() < 2 || grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParameter(
            "scan grid needs at least two strictly increasing points".into(),
        ));
    }
    let values = grid.iter().map(|&x| eval(&f, x)).collect::<Result<Vec<f64>>>()?;
    let n = grid.len();
    let mut out = Vec::new();

    for i in 0..n - 1 {
        let (fa, fb) = (values[i], values[i + 1]);
        if fa != 0.0 && fb != 0.0 && fa.signum() != fb.signum() {
            out.push(Bracket {
                lo: grid[i],
                hi: grid[i + 1],
                f_lo: fa,
                f_hi: fb,
                kind: BracketKind::SignChange,
            });
        }
    }

    for j in 0..n {
        let fj = values[j];
        if fj == 0.0 {
            // Exact zero on a grid point.
            let left = (j > 0).then(|| values[j - 1]);
            let right = (j + 1 < n).then(|| values[j + 1]);
            match (left, right) {
                (Some(l), Some(r)) if l != 0.0 && r != 0.0 && l.signum() == r.signum() => {
                    out.push(Bracket {
                        lo: grid[j - 1],
                        hi: grid[j + 1],
                        f_lo: l,
                        f_hi: r,
                        kind: BracketKind::Tangency { x: grid[j], fx: 0.0 },
                    });
                }
                (Some(l), _) if l != 0.0 => out.push(Bracket {
                    lo: grid[j - 1],
                    hi: grid[j],
                    f_lo: l,
                    f_hi: 0.0,
                    kind: BracketKind::SignChange,
                }),
                (_, Some(r)) if r != 0.0 => out.push(Bracket {
                    lo: grid[j],
                    hi: grid[j + 1],
                    f_lo: 0.0,
                    f_hi: r,
                    kind: BracketKind::SignChange,
                }),
                _ => {}
            }
            continue;
        }
        if j == 0 || j + 1 == n {
            continue;
        }
        let (fl, fr) = (values[j - 1], values[j + 1]);
        let same_sign = fl != 0.0 && fr != 0.0 && fl.signum() == fj.signum() && fr.signum() == fj.signum();
        if !same_sign || fj.abs() > fl.abs() || fj.abs() > fr.abs() {
            continue;
        }
        let sign = fj.signum();
        let probe = golden_extremum(&f, grid[j - 1], grid[j + 1], sign)?;
        let scale = fl.abs().max(fr.abs());
        let probe = match probe {
            // A crossing at round-off depth is a touch, not a pair of roots.
            Extremum::Crossing { x, fx } if fx.abs() <= ROUNDOFF_DEPTH * scale => Extremum::Touch { x, fx },
            other => other,
        };
        match probe {
            Extremum::Crossing { x, fx } => {
                // Two close simple roots hiding inside one pair of cells.
                out.push(Bracket {
                    lo: grid[j - 1],
                    hi: x,
                    f_lo: fl,
                    f_hi: fx,
                    kind: BracketKind::SignChange,
                });
                out.push(Bracket {
                    lo: x,
                    hi: grid[j + 1],
                    f_lo: fx,
                    f_hi: fr,
                    kind: BracketKind::SignChange,
                });
            }
            Extremum::Touch { x, fx } if fx.abs() < tangency * scale => out.push(Bracket {
                lo: grid[j - 1],
                hi: grid[j + 1],
                f_lo: fl,
                f_hi: fr,
                kind: BracketKind::Tangency { x, fx },
            }),
            Extremum::Touch { .. } => {}
        }
    }

    out.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
    Ok(out)
}

enum Extremum {
    /// `f` changed sign at `x`.
    Crossing {
        x: f64,
        fx: f64,
    },
    Touch {
        x: f64,
        fx: f64,
    },
}

/// Golden-section minimisation of `sign * f` on `[a, b]`, stopping early if
/// the function crosses zero.
fn golden_extremum<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, sign: f64) -> Result<Extremum> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let g = |x: f64| -> Result<f64> { Ok(sign * eval(f, x)?) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut gc, mut gd) = (g(c)?, g(d)?);
    for _ in 0..MAX_GOLDEN_ITER {
        if gc < 0.0 {
            return Ok(Extremum::Crossing { x: c, fx: sign * gc });
        }
        if gd < 0.0 {
            return Ok(Extremum::Crossing { x: d, fx: sign * gd });
        }
        if gc == 0.0 || gd == 0.0 {
            let x = if gc == 0.0 { c } else { d };
            return Ok(Extremum::Touch { x, fx: 0.0 });
        }
        if b - a <= 4.0 * f64::EPSILON * c.abs().max(1.0) {
            break;
        }
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c)?;
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d)?;
        }
    }
    let (x, gx) = if gc < gd { (c, gc) } else { (d, gd) };
    Ok(Extremum::Touch { x, fx: sign * gx })
}

/// Refine a bracket to a root.
///
/// Sign-change brackets use regula falsi with the Illinois modification and a
/// forced bisection whenever two steps fail to halve the bracket, stopping at
/// `hi - lo <= tol`. Tangency brackets already carry their refined location
/// from the scan and are returned as double-root candidates.
pub fn refine_root<F: Fn(f64) -> f64>(bracket: &Bracket, f: F, tol: f64) -> Result<RootReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if let BracketKind::Tangency { x, .. } = bracket.kind {
        let fx = eval(&f, x)?;
        return Ok(RootReport {
            root: x,
            residual: fx.abs(),
            iterations: 0,
            multiplicity_hint: 2,
        });
    }
    if !(bracket.lo < bracket.hi) {
        return Err(Error::InvalidParameter(format!(
            "bracket needs lo < hi (lo = {}, hi = {})",
            bracket.lo, bracket.hi
        )));
    }

    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (eval(&f, a)?, eval(&f, b)?);
    let simple = |root: f64, residual: f64, iterations| RootReport {
        root,
        residual,
        iterations,
        multiplicity_hint: 1,
    };
    if fa == 0.0 {
        return Ok(simple(a, 0.0, 0));
    }
    if fb == 0.0 {
        return Ok(simple(b, 0.0, 0));
    }
    if fa.signum() == fb.signum() {
        return Err(Error::InvalidParameter(format!(
            "no sign change on [{a}, {b}]: f = {fa}, {fb}"
        )));
    }

    // Secant weights; divided down by the Illinois rule while the true
    // endpoint values stay in fa / fb.
    let (mut wa, mut wb) = (fa, fb);
    let mut last_side = 0i8;
    let mut width_two_steps_ago = b - a;
    let mut force_bisect = false;

    for iter in 1..=MAX_REFINE_ITER {
        let mid = 0.5 * (a + b);
        if b - a <= tol || mid <= a || mid >= b {
            let (root, residual) = if fa.abs() <= fb.abs() {
                (a, fa.abs())
            } else {
                (b, fb.abs())
            };
            return Ok(simple(root, residual, iter - 1));
        }
        let secant = (a * wb - b * wa) / (wb - wa);
        let x = if force_bisect || !(secant > a && secant < b) {
            mid
        } else {
            secant
        };
        force_bisect = false;
        let fx = eval(&f, x)?;
        if fx == 0.0 {
            return Ok(simple(x, 0.0, iter));
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            wa = fx;
            if last_side == -1 {
                wb *= 0.5;
            }
            last_side = -1;
        } else {
            b = x;
            fb = fx;
            wb = fx;
            if last_side == 1 {
                wa *= 0.5;
            }
            last_side = 1;
        }
        if iter % 2 == 0 {
            if b - a > 0.5 * width_two_steps_ago {
                force_bisect = true;
            }
            width_two_steps_ago = b - a;
        }
    }
    Err(Error::Convergence {
        estimate: if fa.abs() <= fb.abs() { a } else { b },
        width: b - a,
        iterations: MAX_REFINE_ITER,
    })
}
