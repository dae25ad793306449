//! Spectrum and eigenfunctions of -D² on [0, 1] for a generic boundary matrix.

use saext::box_spectrum::{eigenfunctions, solve_spectrum, BoxSpectrumRequest};
use saext::extensions::ExtensionU2;

fn main() -> saext::Result<()> {
    let ext = ExtensionU2::new(0.7, -0.6, 0.2, 0.5, (1.0f64 - 0.36 - 0.04 - 0.25).sqrt())?;
    let spec = solve_spectrum(&BoxSpectrumRequest::new(ext, 6))?;

    println!("{:>9} {:>14} {:>4} {:>12}", "sector", "value", "mult", "energy");
    for (root, level) in spec.levels() {
        println!(
            "{:>9} {:>14.10} {:>4} {:>12.6}",
            root.sector,
            level.value,
            level.multiplicity,
            root.energy()
        );
    }

    let (root, _) = spec.levels()[0];
    let f = &eigenfunctions(&ext, root, 1.0)?[0];
    println!(
        "\nlowest eigenfunction, boundary residual {:.2e}",
        f.boundary_residual(&ext)
    );
    for k in 0..=4 {
        let x = k as f64 / 4.0;
        let v = f.evaluate(x);
        println!("  x = {x:.2}  φ = {:+.6} {:+.6}i", v.re, v.im);
    }
    Ok(())
}
