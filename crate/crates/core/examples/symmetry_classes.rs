//! Time reversal and parity of some boundary matrices, and the parity of
//! |φ|² that follows from m₃ = 0.

use saext::box_spectrum::{eigenfunctions, solve_spectrum, BoxSpectrumRequest};
use saext::extensions::{
    classify_simple_family, is_parity_preserving, is_time_reversal, ExtensionU2, CLASSIFY_TOLERANCE,
};

fn main() -> saext::Result<()> {
    let cases = [
        ("dirichlet", ExtensionU2::dirichlet()),
        ("periodic", ExtensionU2::periodic()),
        ("quasi-periodic θ=1", ExtensionU2::quasi_periodic(1.0)),
        ("m3 = 0", ExtensionU2::new(0.4, 0.6, 0.0, 0.8, 0.0)?),
        ("m2 = 0", ExtensionU2::new(1.1, 0.0, 0.6, 0.0, 0.8)?),
    ];
    for (name, e) in cases {
        println!(
            "{name:<20} T: {:<5} P: {:<5} family: {:?}",
            is_time_reversal(&e, CLASSIFY_TOLERANCE),
            is_parity_preserving(&e, CLASSIFY_TOLERANCE),
            classify_simple_family(&e, CLASSIFY_TOLERANCE)
        );
    }

    let e = cases[3].1;
    let spec = solve_spectrum(&BoxSpectrumRequest::new(e, 3))?;
    for (root, _) in spec.levels() {
        let f = &eigenfunctions(&e, root, 1.0)?[0];
        let worst = (0..=20)
            .map(|k| k as f64 / 20.0)
            .map(|x| (f.evaluate(x).norm_sqr() - f.evaluate(1.0 - x).norm_sqr()).abs())
            .fold(0.0, f64::max);
        println!(
            "{} {:.6}: max ||φ(x)|² - |φ(1-x)|²| = {worst:.1e}",
            root.sector, root.value
        );
    }
    Ok(())
}
