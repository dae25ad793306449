//! ⟨E²⟩ for the parabola in the infinite well: the eigenbasis series, the
//! direct integral and the naive (Ψ, H²Ψ) that misses the surface term.

use saext::wells::{paradox_report, well_coefficients};

fn main() -> saext::Result<()> {
    for n in 1..=4 {
        println!("b_{n} = {:+.8}", well_coefficients(n)?);
    }
    for terms in [10, 1_000, 1_000_000] {
        let r = paradox_report(terms)?;
        println!(
            "N = {terms:>7}: <E> = {:.9}  <E²> = {:.6}  ΔE = {:.6}",
            r.mean_e_series, r.mean_e2_series, r.delta_e
        );
    }
    let r = paradox_report(1)?;
    println!("(HΨ, HΨ)   = {}", r.mean_e2_direct);
    println!("(Ψ, H HΨ)  = {}", r.naive_e2);
    println!("surface    = {}", r.boundary_term);
    Ok(())
}
