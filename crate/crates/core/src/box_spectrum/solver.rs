use std::f64::consts::PI;

use super::basis::{boundary_matrix, Basis};
use super::{char_zero, reduced_negative, reduced_positive, Root, Sector, ZERO_MODE_TOLERANCE};
use crate::error::{Error, Result};
use crate::extensions::{classify_simple_family, ExtensionU2, SimpleFamily, CLASSIFY_TOLERANCE};
use crate::numerics::{
    refine_root, scan_grid, uniform_grid, Bracket, BracketKind, DEFAULT_TANGENCY, SPECTRAL_SCAN_STEP,
};

/// Rank-zero threshold on `σ_max(K)` relative to the scale of `K`.
const RANK_TOLERANCE: f64 = 1e-8;
/// Uniform part of the negative-sector grid.
const NEGATIVE_UNIFORM_END: f64 = 50.0;
const NEGATIVE_GROWTH: f64 = 1.02;
const MAX_DOUBLINGS: usize = 24;
const CROSS_CHECK_TOLERANCE: f64 = 1e-8;
/// Levels this close to a rank-zero level are merged into it.
const DEGENERATE_MERGE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxSpectrumRequest {
    pub ext: ExtensionU2,
    /// Number of positive eigenvalues, counted with multiplicity.
    pub count: usize,
    /// Initial scan ceiling in `s`; doubled until `count` levels are found.
    pub s_max_hint: f64,
    /// Bound on the scaled residual `|F̃(s)|/(1 + s²)` of every root.
    pub tol: f64,
}

impl BoxSpectrumRequest {
    pub fn new(ext: ExtensionU2, count: usize) -> Self {
        BoxSpectrumRequest {
            ext,
            count,
            s_max_hint: (count as f64 + 1.0) * PI,
            tol: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    /// `s`, `r`, or 0 for the zero mode.
    pub value: f64,
    pub multiplicity: u8,
    pub residual: f64,
    /// A double root flagged by the scan whose boundary matrix still has rank
    /// one: two levels too close to separate.
    pub near_degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheck {
    pub family: SimpleFamily,
    /// Largest `|found - closed form| / max(1, value)` over all compared levels.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Negative levels by increasing `r`.
    pub negative: Vec<Level>,
    pub zero: Option<Level>,
    /// Positive levels by increasing `s`.
    pub positive: Vec<Level>,
    pub cross_check: Option<CrossCheck>,
    /// Final positive-sector scan ceiling.
    pub ceiling: f64,
}

impl SpectrumResult {
    pub fn has_zero_mode(&self) -> bool {
        self.zero.is_some()
    }

    /// Negative eigenvalues counted with multiplicity.
    pub fn negative_count(&self) -> usize {
        self.negative.iter().map(|l| l.multiplicity as usize).sum()
    }

    /// Positive `s` values repeated by multiplicity.
    pub fn positive_values(&self) -> Vec<f64> {
        expand(&self.positive)
    }

    /// Every level by increasing energy.
    pub fn levels(&self) -> Vec<(Root, Level)> {
        let mut out: Vec<(Root, Level)> = self
            .negative
            .iter()
            .rev()
            .map(|l| (Root::negative(l.value), *l))
            .collect();
        out.extend(self.zero.iter().map(|l| (Root::zero(), *l)));
        out.extend(self.positive.iter().map(|l| (Root::positive(l.value), *l)));
        out
    }

    /// Dimensionless energies `E L²` by increasing value, repeated by multiplicity.
    pub fn energies(&self) -> Vec<f64> {
        self.levels()
            .iter()
            .flat_map(|(root, level)| std::iter::repeat_n(root.energy(), level.multiplicity as usize))
            .collect()
    }
}

fn expand(levels: &[Level]) -> Vec<f64> {
    levels
        .iter()
        .flat_map(|l| std::iter::repeat_n(l.value, l.multiplicity as usize))
        .collect()
}

/// Full spectrum of `H_U`: all negative levels, the zero mode if present and
/// the first `count` positive levels counted with multiplicity (a final
/// degenerate level is kept whole).
pub fn solve_spectrum(req: &BoxSpectrumRequest) -> Result<SpectrumResult> {
    if req.count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    if !(req.tol > 0.0) || !(req.s_max_hint > 0.0 && req.s_max_hint.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "tol and s_max_hint must be positive (tol = {}, s_max_hint = {})",
            req.tol, req.s_max_hint
        )));
    }
    let ext = &req.ext;
    let step = SPECTRAL_SCAN_STEP;

    let z = char_zero(ext);
    let zero = (z.abs() <= ZERO_MODE_TOLERANCE).then(|| {
        let (k, scale) = boundary_matrix(ext, &Basis::Linear);
        Level {
            value: 0.0,
            multiplicity: rank_deficiency(k.singular_values().0, scale),
            residual: z.abs(),
            near_degenerate: false,
        }
    });
    // With a zero mode both reduced functions vanish at the origin.
    let start = if zero.is_some() { 1e-3 * step } else { 0.0 };

    let r_max = negative_ceiling(ext);
    let negative = find_levels(ext, Sector::Negative, &negative_grid(start, r_max, step), req.tol)?;

    // Offset so the ceiling does not land on a round multiple of π.
    let mut ceiling = req.s_max_hint.max(2.0 * step) * (1.0 + 1.0 / 64.0);
    let mut positive = Vec::new();
    let mut complete = false;
    for _ in 0..MAX_DOUBLINGS {
        positive = find_levels(ext, Sector::Positive, &uniform_grid(start, ceiling, step), req.tol)?;
        let mut total = 0;
        if let Some(last) = positive.iter().position(|l| {
            total += l.multiplicity as usize;
            total >= req.count
        }) {
            positive.truncate(last + 1);
            complete = true;
            break;
        }
        ceiling *= 2.0;
    }
    if !complete {
        let roots = expand(&positive);
        return Err(Error::IncompleteSpectrum {
            requested: req.count,
            found: roots.len(),
            ceiling,
            roots,
        });
    }

    let mut result = SpectrumResult {
        negative,
        zero,
        positive,
        cross_check: None,
        ceiling,
    };
    result.cross_check = cross_check(ext, &result)?;
    Ok(result)
}

fn rank_deficiency(sigma_max: f64, scale: f64) -> u8 {
    if sigma_max < RANK_TOLERANCE * scale {
        2
    } else {
        1
    }
}

/// Past the largest root of the leading large-`r` term
/// `(cos ψ - m₀) r² + 2 sin ψ r - (cos ψ + m₀)` the reduced function keeps
/// one sign up to exponentially small corrections.
fn negative_ceiling(ext: &ExtensionU2) -> f64 {
    let (sp, cp) = ext.psi().sin_cos();
    let (a, b, c) = (cp - ext.m0(), 2.0 * sp, -(cp + ext.m0()));
    let mut roots = Vec::new();
    if a.abs() > 1e-300 {
        let disc = b * b - 4.0 * a * c;
        if disc >= 0.0 {
            // Cancellation-free quadratic roots.
            let q = -0.5 * (b + b.signum() * disc.sqrt());
            if q != 0.0 {
                roots.push(q / a);
                roots.push(c / q);
            } else {
                roots.push(0.0);
            }
        }
    } else if b != 0.0 {
        roots.push(-c / b);
    }
    let largest = roots.into_iter().filter(|r| r.is_finite()).fold(0.0, f64::max);
    NEGATIVE_UNIFORM_END.max(2.0 * largest + 10.0)
}

fn negative_grid(start: f64, r_max: f64, step: f64) -> Vec<f64> {
    let uniform_end = NEGATIVE_UNIFORM_END.min(r_max);
    let mut grid = uniform_grid(start, uniform_end, step);
    let mut x = uniform_end;
    while x < r_max {
        x = (x * NEGATIVE_GROWTH).min(r_max);
        grid.push(x);
    }
    grid
}

fn reduced(ext: &ExtensionU2, sector: Sector) -> impl Fn(f64) -> f64 + '_ {
    move |x| match sector {
        Sector::Negative => reduced_negative(ext, x),
        _ => reduced_positive(ext, x),
    }
}

fn find_levels(ext: &ExtensionU2, sector: Sector, grid: &[f64], tol: f64) -> Result<Vec<Level>> {
    let f = reduced(ext, sector);
    let brackets = scan_grid(&f, grid, DEFAULT_TANGENCY)?;
    let mut levels = Vec::with_capacity(brackets.len());
    for bracket in &brackets {
        levels.push(resolve(ext, sector, bracket, &f, tol)?);
    }
    levels.sort_by(|a, b| a.value.total_cmp(&b.value));

    // Brackets on either side of one degenerate level describe the same
    // two-dimensional eigenspace.
    let mut merged: Vec<Level> = Vec::with_capacity(levels.len());
    for level in levels {
        let gap = |prev: &Level| level.value - prev.value;
        match merged.last_mut() {
            Some(prev)
                if (prev.multiplicity == 2 || level.multiplicity == 2)
                    && gap(prev) <= DEGENERATE_MERGE * level.value.max(1.0) =>
            {
                if prev.near_degenerate && !level.near_degenerate {
                    *prev = level;
                }
                prev.multiplicity = 2;
            }
            Some(prev) if gap(prev) <= 1e-12 * level.value.max(1.0) => {
                prev.multiplicity = 2;
                prev.near_degenerate = true;
            }
            _ => merged.push(level),
        }
    }
    Ok(merged)
}

fn resolve<F: Fn(f64) -> f64>(ext: &ExtensionU2, sector: Sector, bracket: &Bracket, f: &F, tol: f64) -> Result<Level> {
    let rank_at = |x: f64| {
        let (k, scale) = boundary_matrix(ext, &Basis::for_root(Root { sector, value: x }));
        rank_deficiency(k.singular_values().0, scale)
    };
    let (x, multiplicity, near_degenerate) = match bracket.kind {
        BracketKind::Tangency { x, .. } => match polish_degenerate(ext, sector, x) {
            Some(p) if rank_at(p) == 2 => (p, 2, false),
            _ => (x, 2, true),
        },
        BracketKind::SignChange => {
            let report = refine_root(bracket, f, 1e-15 * bracket.hi.abs().max(1.0))?;
            if rank_at(report.root) == 2 {
                // A degenerate level seen through a rounding-level sign change.
                match polish_degenerate(ext, sector, report.root) {
                    Some(p) if rank_at(p) == 2 => (p, 2, false),
                    _ => (report.root, 2, true),
                }
            } else {
                (report.root, 1, false)
            }
        }
    };
    let residual = f(x).abs() / (1.0 + x * x);
    if !(residual <= tol) {
        return Err(Error::Convergence {
            estimate: x,
            width: bracket.width(),
            iterations: 0,
        });
    }
    Ok(Level {
        value: x,
        multiplicity,
        residual,
        near_degenerate,
    })
}

/// Locate a double root precisely through a simple zero of one boundary
/// matrix entry. At a degenerate level the whole matrix vanishes, so the real
/// or imaginary part of its fastest-varying entry crosses zero there.
fn polish_degenerate(ext: &ExtensionU2, sector: Sector, x0: f64) -> Option<f64> {
    let kind = Basis::for_root(Root { sector, value: x0 });
    let basis = move |x: f64| match kind {
        Basis::Plane { .. } => Basis::Plane { s: x },
        Basis::Hyperbolic { .. } => Basis::Hyperbolic { r: x },
        Basis::Decaying { .. } => Basis::Decaying { r: x },
        Basis::Linear => Basis::Linear,
    };
    let k = |x: f64| boundary_matrix(ext, &basis(x)).0;
    let h = 1e-5 * x0.max(1.0);
    let (kp, km) = (k(x0 + h), k(x0 - h));
    let mut best = (0usize, 0usize, false, 0.0f64);
    for i in 0..2 {
        for j in 0..2 {
            let d = kp.get(i, j) - km.get(i, j);
            for (imag, slope) in [(false, d.re.abs()), (true, d.im.abs())] {
                if slope > best.3 {
                    best = (i, j, imag, slope);
                }
            }
        }
    }
    let (i, j, imag, _) = best;
    let g = |x: f64| {
        let z = k(x).get(i, j);
        if imag {
            z.im
        } else {
            z.re
        }
    };
    let mut delta = 1e-6 * x0.max(1.0);
    for _ in 0..4 {
        let (lo, hi) = (x0 - delta, x0 + delta);
        let (g_lo, g_hi) = (g(lo), g(hi));
        if g_lo.signum() != g_hi.signum() || g_lo == 0.0 || g_hi == 0.0 {
            let bracket = Bracket {
                lo,
                hi,
                f_lo: g_lo,
                f_hi: g_hi,
                kind: BracketKind::SignChange,
            };
            return refine_root(&bracket, g, 1e-16 * x0.max(1.0)).ok().map(|r| r.root);
        }
        delta *= 10.0;
    }
    None
}

fn cross_check(ext: &ExtensionU2, result: &SpectrumResult) -> Result<Option<CrossCheck>> {
    let family = classify_simple_family(ext, CLASSIFY_TOLERANCE);
    let found = result.positive_values();
    let top = found.last().copied().unwrap_or(0.0) + 1.0;
    let (expected_positive, expected_negative, expected_zero): (Vec<f64>, Vec<f64>, bool) = match family {
        SimpleFamily::Generic => return Ok(None),
        SimpleFamily::First => {
            let positive = (1..).map(|n| n as f64 * PI).take_while(|s| *s <= top).collect();
            let m0 = ext.m0() * ext.psi().cos().signum();
            let negative = if m0.abs() < 1.0 - 1e-12 {
                vec![((1.0 + m0) / (1.0 - m0)).sqrt()]
            } else {
                Vec::new()
            };
            (positive, negative, m0 <= -1.0 + 1e-12)
        }
        SimpleFamily::Second => {
            let a = ext.m1().clamp(-1.0, 1.0).acos();
            let mut positive = Vec::new();
            let mut n = 0.0;
            while -a + 2.0 * PI * n <= top {
                for s in [a + 2.0 * PI * n, -a + 2.0 * PI * (n + 1.0)] {
                    if s > 0.0 && s <= top {
                        positive.push(s);
                    }
                }
                n += 1.0;
            }
            positive.sort_by(f64::total_cmp);
            (positive, Vec::new(), ext.m1() >= 1.0 - 1e-12)
        }
    };

    let fail = |what: String| Err(Error::CrossCheck(format!("{family:?}: {what}")));
    if result.has_zero_mode() != expected_zero {
        return fail(format!(
            "zero mode found = {}, expected = {expected_zero}",
            result.has_zero_mode()
        ));
    }
    let negative = expand(&result.negative);
    if negative.len() != expected_negative.len() {
        return fail(format!("negative levels {negative:?}, expected {expected_negative:?}"));
    }
    if expected_positive.len() < found.len() {
        return fail(format!("positive levels {found:?}, expected {expected_positive:?}"));
    }
    let mut max_deviation = 0.0f64;
    for (a, b) in found
        .iter()
        .zip(&expected_positive)
        .chain(negative.iter().zip(&expected_negative))
    {
        max_deviation = max_deviation.max((a - b).abs() / a.abs().max(1.0));
    }
    if max_deviation > CROSS_CHECK_TOLERANCE {
        return fail(format!(
            "deviation {max_deviation:e}: found {found:?}, expected {expected_positive:?}"
        ));
    }
    Ok(Some(CrossCheck { family, max_deviation }))
}
