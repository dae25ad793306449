//! The parabola x(1 - x) on the eigenbasis of P_θ for a few θ.

use std::f64::consts::PI;

use saext::momentum::{expansion_table, uncertainty_product, MomentumEigenstate};

fn main() -> saext::Result<()> {
    for theta in [0.0, PI / 2.0, PI] {
        let table = expansion_table(theta, -50, 50, false)?;
        let p0 = table.entries.iter().find(|e| e.n == 0).unwrap().probability;
        println!(
            "θ = {theta:.4}: |c_0|² = {p0:.6}, Parseval defect {:.2e}",
            table.parseval_defect
        );
    }
    let checked = expansion_table(1.0, -3, 3, true)?;
    for e in &checked.entries {
        println!("  n = {:>2}  c = {:+.8} {:+.8}i", e.n, e.coeff.re, e.coeff.im);
    }
    let u = uncertainty_product(&MomentumEigenstate::new(1.0, 2), 1.0)?;
    println!("eigenstate: ΔP = {}, ΔX = {:.6}, ΔP ΔX = {}", u.dp, u.dx, u.product);
    Ok(())
}
