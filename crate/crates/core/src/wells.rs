//! The infinite square well and its finite-depth regularisation.
//!
//! The paradox computations use `[-½, ½]` with energies in units of
//! `ħ²/(mL²)`; the finite well lives on `[0, 1]` with `E = (kL)²` in units
//! of `ħ²/(2mL²)`.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::numerics::{integrate, odd_power_tail, refine_root, scan_brackets, BracketKind, CompensatedSum};

const SQRT_30: f64 = 5.477_225_575_051_661;

/// `Ψ(x) = √30 (¼ - x²)` on `[-½, ½]`.
fn parabola(x: f64) -> f64 {
    SQRT_30 * (0.25 - x * x)
}

/// Even-parity eigenfunctions `√2 cos((2n-1)πx)` of the well on `[-½, ½]`.
fn well_mode(n: u64, x: f64) -> f64 {
    SQRT_2 * ((2 * n - 1) as f64 * PI * x).cos()
}

/// `E'_n = (2n-1)² π²/2`.
pub fn well_energy(n: u64) -> f64 {
    let k = (2 * n - 1) as f64 * PI;
    0.5 * k * k
}

/// `b_n = (Ψ_n, Ψ) = (-1)^{n-1} 8√15 / (π³ (2n-1)³)`.
pub fn well_coefficients(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let odd = (2 * n - 1) as f64;
    Ok(sign * 8.0 * 15f64.sqrt() / (PI.powi(3) * odd.powi(3)))
}

/// `b_n` by quadrature.
pub fn well_coefficient_quadrature(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    integrate(|x| well_mode(n, x) * parabola(x), -0.5, 0.5, 1e-14)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParadoxReport {
    pub terms_used: u64,
    pub mean_e_series: f64,
    pub mean_e_direct: f64,
    pub mean_e2_series: f64,
    /// `(HΨ, HΨ)`.
    pub mean_e2_direct: f64,
    /// `(Ψ, HΨ̃)` with `Ψ̃ = HΨ`.
    pub naive_e2: f64,
    /// `-½ [Ψ' Ψ̃ - Ψ Ψ̃']` between `-½` and `½`.
    pub boundary_term: f64,
    pub delta_e: f64,
    /// Bound on the omitted part of the `⟨E⟩` series.
    pub tail_e: f64,
    /// Bound on the omitted part of the `⟨E²⟩` series.
    pub tail_e2: f64,
}

/// Series, direct and naive evaluations of `⟨E⟩` and `⟨E²⟩` for `Ψ`.
pub fn paradox_report(terms: u64) -> Result<ParadoxReport> {
    if terms == 0 {
        return Err(Error::InvalidParameter("terms must be at least 1".into()));
    }
    let mut e = CompensatedSum::default();
    let mut e2 = CompensatedSum::default();
    for n in (1..=terms).rev() {
        let b2 = well_coefficients(n)?.powi(2);
        let en = well_energy(n);
        e.add(b2 * en);
        e2.add(b2 * en * en);
    }
    let (mean_e_series, mean_e2_series) = (e.value(), e2.value());

    // HΨ = -½ Ψ'' is the constant √30 inside the well.
    let h_psi = |_x: f64| SQRT_30;
    // H(HΨ) = -½ (constant)'' vanishes identically.
    let h_h_psi = |_x: f64| 0.0;
    let mean_e_direct = integrate(|x| parabola(x) * h_psi(x), -0.5, 0.5, 1e-14)?;
    let mean_e2_direct = integrate(|x| h_psi(x) * h_psi(x), -0.5, 0.5, 1e-14)?;
    let naive_e2 = integrate(|x| parabola(x) * h_h_psi(x), -0.5, 0.5, 1e-14)?;

    let d_psi = |x: f64| -2.0 * SQRT_30 * x;
    let surface = |x: f64| d_psi(x) * h_psi(x) - parabola(x) * 0.0;
    let boundary_term = -0.5 * (surface(0.5) - surface(-0.5));

    // b_n² E'_n = 480/(π⁴ (2n-1)⁴) and b_n² E'_n² = 240/(π² (2n-1)²).
    let tail_e = 480.0 / PI.powi(4) * odd_power_tail(4, terms);
    let tail_e2 = 240.0 / (PI * PI) * odd_power_tail(2, terms);

    Ok(ParadoxReport {
        terms_used: terms,
        mean_e_series,
        mean_e_direct,
        mean_e2_series,
        mean_e2_direct,
        naive_e2,
        boundary_term,
        delta_e: (mean_e2_series - mean_e_series * mean_e_series).sqrt(),
        tail_e,
        tail_e2,
    })
}

/// A bound state of the well `V = 0` on `(0, 1)`, `V = V₀` outside, in
/// units `L = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteWellLevel {
    pub n: usize,
    pub kl: f64,
    pub rho_l: f64,
    /// `(kL)²`, in units of `ħ²/(2mL²)`.
    pub energy: f64,
    /// `+1` for states even about the centre of the well.
    pub parity: i8,
    /// `d_n`, the value at both walls up to the parity sign.
    pub norm_const: f64,
}

impl FiniteWellLevel {
    fn new(n: usize, kl: f64, v0: f64, parity: i8) -> Self {
        let rho_l = (v0 * v0 - kl * kl).sqrt();
        let norm_const = (kl / rho_l) * SQRT_2 / ((1.0 + 2.0 / rho_l) * (1.0 + (kl / rho_l).powi(2))).sqrt();
        FiniteWellLevel {
            n,
            kl,
            rho_l,
            energy: kl * kl,
            parity,
            norm_const,
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let (k, rho, d) = (self.kl, self.rho_l, self.norm_const);
        if x <= 0.0 {
            d * (rho * x).exp()
        } else if x >= 1.0 {
            f64::from(self.parity) * d * (-rho * (x - 1.0)).exp()
        } else {
            d * ((k * x).cos() + rho / k * (k * x).sin())
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let (k, rho, d) = (self.kl, self.rho_l, self.norm_const);
        if x <= 0.0 {
            d * rho * (rho * x).exp()
        } else if x >= 1.0 {
            -f64::from(self.parity) * d * rho * (-rho * (x - 1.0)).exp()
        } else {
            d * (-k * (k * x).sin() + rho * (k * x).cos())
        }
    }

    /// `|sin κ (κ² - P²) - 2κP cos κ| / (κ² + P²)`, the pole-free form of
    /// `tan(kL) = 2kρ/(k² - ρ²)`.
    pub fn residual(&self) -> f64 {
        let (k, p) = (self.kl, self.rho_l);
        (k.sin() * (k * k - p * p) - 2.0 * k * p * k.cos()).abs() / (k * k + p * p)
    }

    /// `cos(kL) + (ρ/k) sin(kL)`, equal to the parity.
    pub fn parity_relation(&self) -> f64 {
        self.kl.cos() + self.rho_l / self.kl * self.kl.sin()
    }
}

/// Bound levels with `kL < v0`, at most `max_n` of them, from separate scans
/// of `κ sin(κ/2) = P cos(κ/2)` (even) and `κ cos(κ/2) = -P sin(κ/2)` (odd),
/// where `κ = kL`, `P = ρL = √(v0² - κ²)`.
pub fn finite_well_levels(v0: f64, max_n: usize) -> Result<Vec<FiniteWellLevel>> {
    if !(v0 > 0.0 && v0.is_finite()) {
        return Err(Error::InvalidParameter(format!("v0 must be positive, got {v0}")));
    }
    let p = |k: f64| (v0 * v0 - k * k).max(0.0).sqrt();
    let even = |k: f64| k * (0.5 * k).sin() - p(k) * (0.5 * k).cos();
    let odd = |k: f64| {
        let half = 0.5 * k;
        let sinc = if half.abs() < 1e-8 { 0.5 } else { half.sin() / k };
        half.cos() + p(k) * sinc
    };
    // κ_n lies in ((n-1)π, nπ).
    let hi = v0.min(max_n as f64 * PI + 1.0);
    let step = PI / 16.0;
    let mut levels = Vec::new();
    for (parity, f) in [(1i8, &even as &dyn Fn(f64) -> f64), (-1, &odd)] {
        for b in scan_brackets(f, 0.0, hi, step)? {
            if b.kind != BracketKind::SignChange {
                continue;
            }
            let k = refine_root(&b, f, 1e-15)?.root;
            if k > 0.0 && k < v0 {
                levels.push((k, parity));
            }
        }
    }
    levels.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(levels
        .into_iter()
        .take(max_n)
        .enumerate()
        .map(|(i, (k, parity))| FiniteWellLevel::new(i + 1, k, v0, parity))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow {
    pub v0: f64,
    pub kl: f64,
    /// `kL - nπ`.
    pub deviation: f64,
    /// `kL - nπ(1 - 2/v0)`.
    pub asymptotic_deviation: f64,
    /// `E_n / E_n^∞`.
    pub energy_ratio: f64,
    pub wall_left: f64,
    pub wall_right: f64,
    /// `|φ_n(0)| v0 / (nπ √2)`.
    pub wall_ratio: f64,
    /// `φ_n'(0)`, the same from both sides.
    pub wall_slope: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitStudy {
    pub n: usize,
    pub rows: Vec<LimitRow>,
    /// Order `p` in `E_n^∞ - E_n ∝ v0^{-p}` fitted on consecutive triples.
    pub orders: Vec<f64>,
}

/// Three-point order of `E(v) = E∞ - C v^{-p}` without assuming `E∞`.
pub fn richardson_order(v: [f64; 3], e: [f64; 3]) -> Result<f64> {
    let target = (e[0] - e[1]) / (e[1] - e[2]);
    if !target.is_finite() || target <= 0.0 {
        return Err(Error::Model(format!("energies {e:?} are not monotone")));
    }
    let ratio = |p: f64| {
        let w = v.map(|x| x.powf(-p));
        ((w[0] - w[1]) / (w[1] - w[2])).ln() - target.ln()
    };
    if v[1] / v[0] == v[2] / v[1] {
        return Ok(target.ln() / (v[1] / v[0]).ln());
    }
    let brackets = scan_brackets(ratio, 0.05, 10.0, 0.05)?;
    let b = brackets
        .iter()
        .find(|b| b.kind == BracketKind::SignChange)
        .ok_or_else(|| Error::Model("no convergence order in (0.05, 10)".into()))?;
    Ok(refine_root(b, ratio, 1e-14)?.root)
}

/// Level `n` of the finite well for each `v0`, compared with the infinite well.
pub fn infinite_limit_study(v0_list: &[f64], n: usize) -> Result<LimitStudy> {
    if n == 0 {
        return Err(Error::InvalidParameter("level must be at least 1".into()));
    }
    if v0_list.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidParameter("v0 values must be increasing".into()));
    }
    let npi = n as f64 * PI;
    let mut rows = Vec::with_capacity(v0_list.len());
    for &v0 in v0_list {
        let levels = finite_well_levels(v0, n)?;
        let level = levels
            .get(n - 1)
            .ok_or_else(|| Error::Model(format!("v0 = {v0} has only {} bound levels", levels.len())))?;
        rows.push(LimitRow {
            v0,
            kl: level.kl,
            deviation: level.kl - npi,
            asymptotic_deviation: level.kl - npi * (1.0 - 2.0 / v0),
            energy_ratio: level.energy / (npi * npi),
            wall_left: level.evaluate(0.0).abs(),
            wall_right: level.evaluate(1.0).abs(),
            wall_ratio: level.evaluate(0.0).abs() * v0 / (npi * SQRT_2),
            wall_slope: level.derivative(0.0),
        });
    }
    let orders = rows
        .windows(3)
        .map(|w| {
            richardson_order(
                [w[0].v0, w[1].v0, w[2].v0],
                w.iter().map(|r| r.kl * r.kl).collect::<Vec<_>>().try_into().unwrap(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitStudy { n, rows, orders })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate_piecewise;

    #[test]
    fn coefficient_examples() {
        assert!((well_coefficients(1).unwrap() - 0.999_277_2).abs() < 1e-7);
        assert!((well_coefficients(2).unwrap() + 0.037_010_3).abs() < 1e-7);
        for n in 1..8 {
            let q = well_coefficient_quadrature(n).unwrap();
            assert!((q - well_coefficients(n).unwrap()).abs() < 1e-12);
        }
        assert!(well_coefficients(0).is_err());
    }

    #[test]
    fn parseval_for_well_coefficients() {
        let mut s = CompensatedSum::default();
        for n in (1..=10_000).rev() {
            s.add(well_coefficients(n).unwrap().powi(2));
        }
        let defect = 1.0 - s.value();
        assert!(defect.abs() < 1e-9);
        // Σ_{n>N} b_n² ≤ (960/π⁶) / (10 (2N-1)⁵)
        let n = 20u64;
        let partial: f64 = (1..=n).map(|k| well_coefficients(k).unwrap().powi(2)).sum();
        assert!(1.0 - partial <= 960.0 / PI.powi(6) * odd_power_tail(6, n) + 1e-15);
    }

    #[test]
    fn paradox_values() {
        let r = paradox_report(1).unwrap();
        assert!((r.mean_e_series - 480.0 / PI.powi(4)).abs() < 1e-13);
        assert!((r.mean_e_series - 4.927_671_5).abs() < 1e-7);
        let r = paradox_report(100_000).unwrap();
        assert!((r.mean_e_direct - 5.0).abs() < 1e-12);
        assert!((r.mean_e2_direct - 30.0).abs() < 1e-12);
        assert_eq!(r.naive_e2, 0.0);
        assert!((r.mean_e2_direct - r.naive_e2 - r.boundary_term).abs() < 1e-10);
        assert!((r.mean_e_series - r.mean_e_direct).abs() <= r.tail_e + 1e-13);
        assert!((r.mean_e2_series - r.mean_e2_direct).abs() <= r.tail_e2 + 1e-12);
        assert!((r.delta_e - 5f64.sqrt()).abs() < 1e-3);
        assert!(paradox_report(0).is_err());
    }

    #[test]
    fn shallow_well_has_one_even_level() {
        let levels = finite_well_levels(1.0, 10).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].parity, 1);
    }

    #[test]
    fn level_invariants() {
        for v0 in [5.0, 30.0, 1000.0] {
            let levels = finite_well_levels(v0, 6).unwrap();
            assert!(!levels.is_empty());
            for (i, l) in levels.iter().enumerate() {
                assert_eq!(l.n, i + 1);
                assert_eq!(l.parity, if i % 2 == 0 { 1 } else { -1 });
                assert!(l.kl > i as f64 * PI && l.kl < (i + 1) as f64 * PI);
                assert!(l.residual() < 1e-10, "{l:?}");
                assert!((l.parity_relation() - f64::from(l.parity)).abs() < 1e-8);
                for x in [0.0, 1.0] {
                    let h = 1e-12;
                    assert!((l.evaluate(x - h) - l.evaluate(x + h)).abs() < 1e-9);
                    let jump = (l.derivative(x - h) - l.derivative(x + h)).abs();
                    assert!(jump < 1e-10 * (1.0 + l.rho_l), "{jump}");
                }
                let norm = integrate_piecewise(
                    |x| l.evaluate(x).powi(2),
                    &[-40.0 / l.rho_l, 0.0, 1.0, 1.0 + 40.0 / l.rho_l],
                    1e-13,
                )
                .unwrap();
                assert!((norm - 1.0).abs() < 1e-10, "{norm}");
            }
        }
    }

    #[test]
    fn large_depth_asymptotics() {
        let v0 = 1000.0;
        let l = finite_well_levels(v0, 1).unwrap()[0];
        let dev = l.kl - PI * (1.0 - 2.0 / v0);
        // κ₁ = π(1 - 2/v0 + 4/v0²) + O(v0⁻³)
        assert!((dev * v0 * v0 - 4.0 * PI).abs() < 0.1, "{}", dev * v0 * v0);
        let ratio = l.energy / (PI * PI);
        assert!((ratio - (1.0 - 4.0 / v0)).abs() < 20.0 / (v0 * v0));
    }

    #[test]
    fn limit_study() {
        let s = infinite_limit_study(&[100.0, 1000.0, 10_000.0], 1).unwrap();
        assert_eq!(s.orders.len(), 1);
        assert!((s.orders[0] - 1.0).abs() < 0.1);
        let devs: Vec<f64> = s.rows.iter().map(|r| r.asymptotic_deviation.abs()).collect();
        assert!(devs[1] < devs[0] / 50.0 && devs[2] < devs[1] / 50.0);
        for r in &s.rows {
            assert!((r.wall_ratio - 1.0).abs() < 5.0 / r.v0);
            assert!((r.wall_left - r.wall_right).abs() < 1e-12);
            assert!((r.wall_slope - SQRT_2 * PI).abs() < 5.0 * SQRT_2 * PI / r.v0);
        }
        assert!(s.rows.windows(2).all(|w| w[1].energy_ratio > w[0].energy_ratio));
        assert!(infinite_limit_study(&[10.0, 5.0], 1).is_err());
    }

    #[test]
    fn uneven_grid_order() {
        let v = [100.0f64, 300.0, 2000.0];
        let e = v.map(|x| 3.0 - 2.0 * x.powf(-1.3));
        assert!((richardson_order(v, e).unwrap() - 1.3).abs() < 1e-8);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn levels_satisfy_matching(v0 in 0.5..500.0f64) {
                let levels = finite_well_levels(v0, 8).unwrap();
                prop_assert!(!levels.is_empty());
                let expected = ((v0 / PI).ceil() as usize).min(8);
                prop_assert_eq!(levels.len(), expected);
                for l in &levels {
                    prop_assert!(l.residual() < 1e-10);
                    prop_assert!((l.parity_relation() - f64::from(l.parity)).abs() < 1e-8);
                }
            }
        }
    }
}
