use super::basis::{boundary_matrix, overlap, Basis};
use super::{Root, Sector};
use crate::error::{Error, Result};
use crate::extensions::ExtensionU2;
use crate::matrix::{norm2, Mat2, C64, I};
use crate::numerics::integrate_complex;

/// Largest `σ_min(K)/scale` accepted for a supplied root.
pub const ROOT_TOLERANCE: f64 = 1e-8;
const RANK_TOLERANCE: f64 = 1e-8;

/// `(φ(0), φ'(0), φ(L), φ'(L))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryValues {
    pub f0: C64,
    pub d0: C64,
    pub f1: C64,
    pub d1: C64,
}

/// `(1/2i) [φ'(L) conj ψ(L) - φ(L) conj ψ'(L) - φ'(0) conj ψ(0) + φ(0) conj ψ'(0)]`,
/// the surface term of `⟨Hφ, ψ⟩ - ⟨φ, Hψ⟩` up to conjugation. Linear in
/// the first argument.
pub fn boundary_form(phi: &BoundaryValues, psi: &BoundaryValues) -> C64 {
    (phi.d1 * psi.f1.conj() - phi.f1 * psi.d1.conj() - phi.d0 * psi.f0.conj() + phi.f0 * psi.d0.conj()) / (2.0 * I)
}

/// A normalised eigenfunction `φ(x) = (c₀ f₀(x/L) + c₁ f₁(x/L)) / √L` in the
/// basis of its sector. For positive levels `(c₀, c₁) = (A, B)` of
/// `A e^{isx/L} + B e^{-isx/L}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxEigenfunction {
    root: Root,
    basis: Basis,
    coeffs: [C64; 2],
    length: f64,
}

impl BoxEigenfunction {
    pub fn root(&self) -> Root {
        self.root
    }

    pub fn sector(&self) -> Sector {
        self.root.sector
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Coefficients on the dimensionless basis, normalised on `[0, 1]`.
    pub fn coeffs(&self) -> [C64; 2] {
        self.coeffs
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// Energy in units of `ħ²/2m`.
    pub fn energy(&self) -> f64 {
        self.root.energy() / (self.length * self.length)
    }

    /// `(φ(x), φ'(x))` in dimensionless form on `[0, 1]`.
    fn unit(&self, u: f64) -> (C64, C64) {
        let (a, da) = self.basis.eval(0, u);
        let (b, db) = self.basis.eval(1, u);
        (
            self.coeffs[0] * a + self.coeffs[1] * b,
            self.coeffs[0] * da + self.coeffs[1] * db,
        )
    }

    pub fn evaluate(&self, x: f64) -> C64 {
        self.unit(x / self.length).0 / self.length.sqrt()
    }

    pub fn derivative(&self, x: f64) -> C64 {
        self.unit(x / self.length).1 / self.length.powf(1.5)
    }

    pub fn boundary_values(&self) -> BoundaryValues {
        let l = self.length;
        BoundaryValues {
            f0: self.evaluate(0.0),
            d0: self.derivative(0.0),
            f1: self.evaluate(l),
            d1: self.derivative(l),
        }
    }

    /// `‖K c‖ / ‖c‖` for the boundary matrix of `ext`; zero when the
    /// boundary condition holds exactly.
    pub fn boundary_residual(&self, ext: &ExtensionU2) -> f64 {
        let (k, _) = boundary_matrix(ext, &self.basis);
        norm2(k.apply(self.coeffs)) / norm2(self.coeffs)
    }

    /// `∫₀^L |φ|²`, from the closed-form Gram matrix of the basis.
    pub fn norm_sq(&self) -> f64 {
        quadratic_form(&self.basis.gram(), self.coeffs, self.coeffs).re
    }

    /// `⟨self, other⟩ = ∫₀^L conj(self) other`.
    pub fn inner_product(&self, other: &BoxEigenfunction) -> Result<C64> {
        if self.length != other.length {
            return Err(Error::InvalidParameter(
                "eigenfunctions live on boxes of different length".into(),
            ));
        }
        if self.basis == other.basis {
            return Ok(quadratic_form(&self.basis.gram(), self.coeffs, other.coeffs));
        }
        let mut sum = C64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                match overlap(&self.basis, i, &other.basis, j) {
                    Some(g) => sum += self.coeffs[i].conj() * other.coeffs[j] * g,
                    None => return integrate_complex(|u| self.unit(u).0.conj() * other.unit(u).0, 0.0, 1.0, 1e-13),
                }
            }
        }
        Ok(sum)
    }
}

/// `a† G b`.
fn quadratic_form(g: &Mat2, a: [C64; 2], b: [C64; 2]) -> C64 {
    let gb = g.apply(b);
    a[0].conj() * gb[0] + a[1].conj() * gb[1]
}

fn normalised(g: &Mat2, c: [C64; 2]) -> [C64; 2] {
    let n = quadratic_form(g, c, c).re.sqrt();
    [c[0] / n, c[1] / n]
}

/// Orthonormal eigenfunctions of `H_U` at `root` on a box of length `length`:
/// one for a simple level, two for a degenerate one.
pub fn eigenfunctions(ext: &ExtensionU2, root: Root, length: f64) -> Result<Vec<BoxEigenfunction>> {
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "length must be positive, got {length}"
        )));
    }
    let root = match root.sector {
        Sector::Zero => Root::zero(),
        _ if !(root.value > 0.0 && root.value.is_finite()) => {
            return Err(Error::InvalidRoot {
                value: root.value,
                residual: f64::INFINITY,
            })
        }
        _ => root,
    };
    let basis = Basis::for_root(root);
    let (k, scale) = boundary_matrix(ext, &basis);
    let (big, small) = k.singular_values();
    let residual = small / scale;
    if !(residual <= ROOT_TOLERANCE) {
        return Err(Error::InvalidRoot {
            value: root.value,
            residual,
        });
    }
    let g = basis.gram();
    let make = |coeffs| BoxEigenfunction {
        root,
        basis,
        coeffs,
        length,
    };
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);

    if big < RANK_TOLERANCE * scale {
        // Every solution satisfies the boundary condition.
        let e1 = normalised(&g, [one, zero]);
        let overlap = quadratic_form(&g, e1, [zero, one]);
        let e2 = normalised(&g, [-overlap * e1[0], one - overlap * e1[1]]);
        return Ok(vec![make(e1), make(e2)]);
    }
    let row = if norm2(k.row(0)) >= norm2(k.row(1)) {
        k.row(0)
    } else {
        k.row(1)
    };
    Ok(vec![make(normalised(&g, [row[1], -row[0]]))])
}
