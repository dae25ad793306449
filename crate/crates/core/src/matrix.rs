//! Minimal 2x2 complex matrix algebra.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;

pub const I: C64 = C64::new(0.0, 1.0);

/// Row-major 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Mat2::new(
            C64::new(1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        )
    }

    pub fn zero() -> Self {
        Mat2([[C64::new(0.0, 0.0); 2]; 2])
    }

    /// Pauli matrices tau_1, tau_2, tau_3.
    pub fn pauli(k: usize) -> Self {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        match k {
            1 => Mat2::new(z, o, o, z),
            2 => Mat2::new(z, -I, I, z),
            3 => Mat2::new(o, z, z, -o),
            _ => panic!("Pauli index must be 1, 2 or 3, got {k}"),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[row][col]
    }

    pub fn row(&self, row: usize) -> [C64; 2] {
        self.0[row]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, k: C64) -> Self {
        self.map(|z| z * k)
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let m = self.0;
        Mat2::new(m[0][0], m[1][0], m[0][1], m[1][1])
    }

    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Singular values `(largest, smallest)` from the closed form for 2x2 matrices.
    pub fn singular_values(&self) -> (f64, f64) {
        let f2 = self.frobenius().powi(2);
        let d = self.det().norm();
        let disc = (f2 * f2 - 4.0 * d * d).max(0.0).sqrt();
        let big = (0.5 * (f2 + disc)).sqrt();
        let small = if big > 0.0 { d / big } else { 0.0 };
        (big, small)
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        let m = self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        let m = self.0;
        Mat2::new(f(m[0][0]), f(m[0][1]), f(m[1][0]), f(m[1][1]))
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|z| -z)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (self.0, rhs.0);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// Euclidean norm of a complex 2-vector.
pub fn norm2(v: [C64; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_algebra() {
        let (t1, t2, t3) = (Mat2::pauli(1), Mat2::pauli(2), Mat2::pauli(3));
        assert!((t1 * t1).max_abs_diff(&Mat2::identity()) == 0.0);
        assert!((t1 * t2).max_abs_diff(&t3.scale(I)) == 0.0);
        assert_eq!(t2.det(), C64::new(-1.0, 0.0));
    }

    #[test]
    fn singular_values_of_rank_one() {
        let m = Mat2::new(
            C64::new(1.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(2.0, 0.0),
            C64::new(4.0, 0.0),
        );
        let (big, small) = m.singular_values();
        assert!((big - 5.0).abs() < 1e-14);
        assert!(small < 1e-14);
    }
}
