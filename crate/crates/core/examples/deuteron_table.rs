//! Square-well depth of the deuteron as the wall parameter λ/a varies.

use saext::halfline::{deuteron_table, DeuteronParams, TABLE_LAMBDAS};

fn main() -> saext::Result<()> {
    let params = DeuteronParams::default();
    println!("Y = ρa = {:.5}", params.y());
    println!("{:>8} {:>10} {:>10}", "λ/a", "X", "V0 (MeV)");
    for s in deuteron_table(&params, &TABLE_LAMBDAS)? {
        let lam = s.lam_over_a.finite().map_or("∞".to_string(), |l| l.to_string());
        println!("{lam:>8} {:>10.6} {:>10.4}", s.x, s.v0);
    }
    Ok(())
}
