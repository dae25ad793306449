use crate::error::{Error, Result};

/// Hard cap on the number of terms `sum_series` will add.
pub const MAX_TERMS: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    /// Number of terms added, `N`.
    pub terms: u64,
    /// `tail_bound(N)` at termination.
    pub tail_bound: f64,
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// `term(1) + ... + term(n)`, compensated.
pub fn partial_sum<F: Fn(u64) -> f64>(term: F, n: u64) -> f64 {
    let mut acc = CompensatedSum::default();
    for k in 1..=n {
        acc.add(term(k));
    }
    acc.value()
}

/// Sum `term(1) + term(2) + ...` until `tail_bound(N) <= tol`.
///
/// `tail_bound(N)` must bound `|sum_{n > N} term(n)|` and decrease with `N`.
/// Terms are indexed from 1; `tail_bound(0)` is checked before any term is
/// added, so an identically zero series returns after no terms.
pub fn sum_series<T, B>(term: T, tail_bound: B, tol: f64) -> Result<SeriesSum>
where
    T: Fn(u64) -> f64,
    B: Fn(u64) -> f64,
{
    sum_series_capped(term, tail_bound, tol, MAX_TERMS)
}

/// [`sum_series`] with an explicit term cap.
pub fn sum_series_capped<T, B>(term: T, tail_bound: B, tol: f64, cap: u64) -> Result<SeriesSum>
where
    T: Fn(u64) -> f64,
    B: Fn(u64) -> f64,
{
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut acc = CompensatedSum::default();
    let mut n = 0u64;
    let mut bound = tail_bound(0);
    while bound > tol {
        if n == cap {
            return Err(Error::SeriesCap {
                terms: n,
                bound,
                requested: tol,
            });
        }
        n += 1;
        acc.add(term(n));
        bound = tail_bound(n);
    }
    Ok(SeriesSum {
        value: acc.value(),
        terms: n,
        tail_bound: bound,
    })
}

/// `sum_{n > N} 1/(2n-1)^p <= 1/(2 (p-1) (2N-1)^(p-1))` for `p > 1`, `N >= 1`,
/// from comparison with the integral of the decreasing summand.
pub fn odd_power_tail(p: i32, n: u64) -> f64 {
    if n == 0 {
        // The integral bound needs N >= 1; bound the whole series by its
        // first term plus the N = 1 tail.
        return 1.0 + odd_power_tail(p, 1);
    }
    let base = 2.0 * n as f64 - 1.0;
    1.0 / (2.0 * f64::from(p - 1) * base.powi(p - 1))
}
