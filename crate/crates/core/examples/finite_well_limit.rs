//! Levels of a finite square well as the depth grows.

use saext::wells::{finite_well_levels, infinite_limit_study};

fn main() -> saext::Result<()> {
    for level in finite_well_levels(12.0, 10)? {
        println!(
            "n = {}  kL = {:.8}  parity {:+}  d = {:.6}",
            level.n, level.kl, level.parity, level.norm_const
        );
    }
    let study = infinite_limit_study(&[100.0, 1_000.0, 10_000.0, 100_000.0], 1)?;
    println!(
        "\n{:>8} {:>14} {:>14} {:>10}",
        "v0", "kL - π", "kL - π(1-2/v0)", "φ(0) v0/π√2"
    );
    for r in &study.rows {
        println!(
            "{:>8} {:>14.6e} {:>14.6e} {:>10.6}",
            r.v0, r.deviation, r.asymptotic_deviation, r.wall_ratio
        );
    }
    println!("fitted orders: {:?}", study.orders);
    Ok(())
}
