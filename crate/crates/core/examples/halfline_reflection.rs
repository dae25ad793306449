//! Reflection on the half-line and the surface bound state for λ < 0.

use std::f64::consts::PI;

use saext::extensions::HalflineExtension;
use saext::halfline::{alpha_to_lambda, bound_state, reflection};

fn main() -> saext::Result<()> {
    for alpha in [0.0, PI / 2.0, PI, 1.5 * PI] {
        let lam = alpha_to_lambda(alpha)?;
        let r = reflection(lam, 1.0)?;
        println!(
            "α = {alpha:.4}  λ = {lam:?}  r(k=1) = {:+.6} {:+.6}i  |r|² = {}",
            r.amplitude.re, r.amplitude.im, r.probability
        );
    }
    for l in [-2.0, -0.5] {
        let b = bound_state(HalflineExtension::Finite(l)).unwrap();
        println!("λ = {l}: E = {}  φ(0) = {:.6}", b.energy, b.evaluate(0.0));
    }
    Ok(())
}
