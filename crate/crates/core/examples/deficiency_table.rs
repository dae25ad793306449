use saext::extensions::{deficiency_indices, verify_deficiency, IntervalKind, OperatorKind};

fn main() -> saext::Result<()> {
    for op in [OperatorKind::Momentum, OperatorKind::Hamiltonian] {
        for iv in [IntervalKind::FullLine, IntervalKind::SemiAxis, IntervalKind::FiniteBox] {
            let d = deficiency_indices(op, iv);
            let cutoff = if iv == IntervalKind::FiniteBox { 1.0 } else { 20.0 };
            let numeric = verify_deficiency(op, iv, 1.0, cutoff)?;
            println!(
                "{op:?} on {iv:?}: ({}, {}) {}  [numerical ({}, {})]",
                d.n_plus,
                d.n_minus,
                d.family(),
                numeric.n_plus,
                numeric.n_minus
            );
        }
    }
    Ok(())
}
