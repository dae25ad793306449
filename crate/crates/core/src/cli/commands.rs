use super::{Cell, CliError, Command, DeuteronArgs, IntervalArg, OperatorArg, Report, SpectrumArgs};
use crate::box_spectrum::{eigenfunctions, solve_spectrum, BoxSpectrumRequest, Root, Sector};
use crate::extensions::{
    classify_simple_family, deficiency_indices, is_parity_preserving, is_time_reversal, time_reversal_determinant,
    verify_deficiency, ExtensionU2, HalflineExtension, IntervalKind, OperatorKind, SimpleFamily, CLASSIFY_TOLERANCE,
};
use crate::halfline::{bound_state, deuteron_v0, reflection, DeuteronParams};
use crate::momentum::{expansion_table, p_spectrum};
use crate::wells::{infinite_limit_study, paradox_report};

type Outcome = Result<Report, CliError>;

pub(super) fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Deficiency { operator, interval } => deficiency(*operator, *interval),
        Command::Spectrum(a) => spectrum(a),
        Command::Classify { u } => classify(u),
        Command::MomentumSpectrum { theta, range } => momentum_spectrum(*theta, *range),
        Command::Expand { theta, range, checked } => expand(*theta, *range, *checked),
        Command::Paradox { terms } => paradox(*terms),
        Command::Deuteron(a) => deuteron(a),
        Command::WellLimit { v0_list, level } => well_limit(&v0_list.0, *level),
        Command::Reflect { lambda, k } => reflect(*lambda, *k),
        Command::BoundState { lambda } => bound(*lambda),
    }
}

fn lambda_cell(l: HalflineExtension) -> Cell {
    match l {
        HalflineExtension::Finite(x) => Cell::Real(x),
        HalflineExtension::Infinite => Cell::Text("inf".into()),
    }
}

fn extension_inputs(r: &mut Report, u: &ExtensionU2) {
    r.input("psi", u.psi());
    for (name, v) in ["m0", "m1", "m2", "m3"].iter().zip(u.coordinates()) {
        r.input(name, v);
    }
}

fn deficiency(operator: Option<OperatorArg>, interval: Option<IntervalArg>) -> Outcome {
    let ops: Vec<OperatorArg> = operator.map_or(vec![OperatorArg::Momentum, OperatorArg::Hamiltonian], |o| vec![o]);
    let ivs: Vec<IntervalArg> = interval
        .map_or(vec![IntervalArg::Line, IntervalArg::Halfline, IntervalArg::Box], |i| {
            vec![i]
        });
    let mut r = Report::new(
        "deficiency",
        &["operator", "interval", "n_plus", "n_minus", "conclusion", "verified"],
    );
    if let Some(o) = operator {
        r.input("operator", op_name(o));
    }
    if let Some(i) = interval {
        r.input("interval", iv_name(i));
    }
    let mut lines = Vec::new();
    for &o in &ops {
        for &i in &ivs {
            let (op, iv) = (op_kind(o), iv_kind(i));
            let d = deficiency_indices(op, iv);
            let cutoff = if iv == IntervalKind::FiniteBox { 1.0 } else { 20.0 };
            let verified = verify_deficiency(op, iv, 1.0, cutoff)? == d;
            let conclusion = d.family().to_string();
            lines.push(format!("({},{}): {conclusion}", d.n_plus, d.n_minus));
            r.row(vec![
                op_name(o).into(),
                iv_name(i).into(),
                d.n_plus.into(),
                d.n_minus.into(),
                conclusion.into(),
                verified.into(),
            ]);
        }
    }
    if lines.len() == 1 {
        r.headline = lines.pop();
    }
    Ok(r)
}

fn op_kind(o: OperatorArg) -> OperatorKind {
    match o {
        OperatorArg::Momentum => OperatorKind::Momentum,
        OperatorArg::Hamiltonian => OperatorKind::Hamiltonian,
    }
}

fn iv_kind(i: IntervalArg) -> IntervalKind {
    match i {
        IntervalArg::Line => IntervalKind::FullLine,
        IntervalArg::Halfline => IntervalKind::SemiAxis,
        IntervalArg::Box => IntervalKind::FiniteBox,
    }
}

fn op_name(o: OperatorArg) -> &'static str {
    match o {
        OperatorArg::Momentum => "momentum",
        OperatorArg::Hamiltonian => "hamiltonian",
    }
}

fn iv_name(i: IntervalArg) -> &'static str {
    match i {
        IntervalArg::Line => "line",
        IntervalArg::Halfline => "halfline",
        IntervalArg::Box => "box",
    }
}

fn spectrum(a: &SpectrumArgs) -> Outcome {
    let spec = solve_spectrum(&BoxSpectrumRequest::new(a.u, a.count as usize))?;
    let mut levels: Vec<(Root, crate::box_spectrum::Level)> = spec.levels();
    if !a.include_negative {
        levels.retain(|(root, _)| root.sector != Sector::Negative);
    }
    let mut counters = [0usize; 3];
    let indexed: Vec<(usize, Root, crate::box_spectrum::Level)> = levels
        .into_iter()
        .map(|(root, level)| {
            let slot = match root.sector {
                Sector::Negative => 0,
                Sector::Zero => 1,
                Sector::Positive => 2,
            };
            counters[slot] += 1;
            (counters[slot], root, level)
        })
        .collect();

    let mut r = if a.eigenfunctions {
        Report::new(
            "spectrum",
            &["sector", "index", "value", "mode", "x", "re_phi", "im_phi"],
        )
    } else {
        Report::new(
            "spectrum",
            &["sector", "index", "value", "multiplicity", "residual", "energy"],
        )
    };
    extension_inputs(&mut r, &a.u);
    r.input("count", a.count as usize);
    r.input("include_negative", a.include_negative);
    for (index, root, level) in indexed {
        if a.eigenfunctions {
            for (mode, f) in eigenfunctions(&a.u, root, 1.0)?.iter().enumerate() {
                for k in 0..a.samples {
                    let x = k as f64 / (a.samples - 1) as f64;
                    let v = f.evaluate(x);
                    r.row(vec![
                        root.sector.as_str().into(),
                        index.into(),
                        level.value.into(),
                        (mode + 1).into(),
                        x.into(),
                        v.re.into(),
                        v.im.into(),
                    ]);
                }
            }
        } else {
            r.row(vec![
                root.sector.as_str().into(),
                index.into(),
                level.value.into(),
                usize::from(level.multiplicity).into(),
                level.residual.into(),
                root.energy().into(),
            ]);
        }
    }
    if let Some(c) = spec.cross_check {
        r.summary("cross_check_max_deviation", c.max_deviation);
    }
    Ok(r)
}

fn family_name(f: SimpleFamily) -> &'static str {
    match f {
        SimpleFamily::First => "first",
        SimpleFamily::Second => "second",
        SimpleFamily::Generic => "generic",
    }
}

fn classify(u: &ExtensionU2) -> Outcome {
    let mut r = Report::new(
        "classify",
        &[
            "psi",
            "m0",
            "m1",
            "m2",
            "m3",
            "time_reversal",
            "parity",
            "simple_family",
            "det_time_reversal",
        ],
    );
    extension_inputs(&mut r, u);
    let [m0, m1, m2, m3] = u.coordinates();
    r.row(vec![
        u.psi().into(),
        m0.into(),
        m1.into(),
        m2.into(),
        m3.into(),
        is_time_reversal(u, CLASSIFY_TOLERANCE).into(),
        is_parity_preserving(u, CLASSIFY_TOLERANCE).into(),
        family_name(classify_simple_family(u, CLASSIFY_TOLERANCE)).into(),
        time_reversal_determinant(u).re.into(),
    ]);
    Ok(r)
}

fn momentum_spectrum(theta: f64, (a, b): (i64, i64)) -> Outcome {
    let mut r = Report::new("momentum-spectrum", &["n", "nu", "eigenvalue"]);
    r.input("theta", theta);
    r.input("range", format!("{a}:{b}"));
    for s in p_spectrum(theta, a, b)? {
        r.row(vec![s.n.into(), s.nu.into(), s.eigenvalue().into()]);
    }
    Ok(r)
}

fn expand(theta: f64, (a, b): (i64, i64), checked: bool) -> Outcome {
    let table = expansion_table(theta, a, b, checked)?;
    let mut r = Report::new("expand", &["n", "nu", "re_c", "im_c", "prob"]);
    r.input("theta", theta);
    r.input("range", format!("{a}:{b}"));
    r.input("checked", checked);
    for e in &table.entries {
        r.row(vec![
            e.n.into(),
            e.nu.into(),
            e.coeff.re.into(),
            e.coeff.im.into(),
            e.probability.into(),
        ]);
    }
    r.summary("parseval_defect", table.parseval_defect);
    Ok(r)
}

fn paradox(terms: u64) -> Outcome {
    let p = paradox_report(terms)?;
    let mut r = Report::new(
        "paradox",
        &[
            "terms",
            "mean_E_series",
            "mean_E_direct",
            "mean_E2_series",
            "mean_E2_direct",
            "naive_E2",
            "boundary_term",
            "delta_E",
        ],
    );
    r.input("terms", terms as usize);
    r.row(vec![
        (p.terms_used as usize).into(),
        p.mean_e_series.into(),
        p.mean_e_direct.into(),
        p.mean_e2_series.into(),
        p.mean_e2_direct.into(),
        p.naive_e2.into(),
        p.boundary_term.into(),
        p.delta_e.into(),
    ]);
    Ok(r)
}

fn deuteron(a: &DeuteronArgs) -> Outcome {
    let mut base = DeuteronParams::default();
    if let Some(x) = a.hbarc {
        base.hbar_c = x;
    }
    if let Some(x) = a.mass_c2 {
        base.nucleon_mass_c2 = x;
    }
    if let Some(x) = a.binding {
        base.binding_energy = x;
    }
    if let Some(x) = a.range {
        base.range_a = x;
    }
    let (flag, lambdas) = match (&a.lambda_over_a, &a.sweep) {
        (Some(l), _) => ("--lambda-over-a", vec![*l]),
        (None, Some(list)) => ("--sweep", list.0.clone()),
        (None, None) => return Err(CliError::Usage("one of --lambda-over-a or --sweep is required".into())),
    };
    let mut r = Report::new("deuteron", &["lam_over_a", "X", "Y", "V0_MeV", "residual"]);
    r.input("hbarc", base.hbar_c);
    r.input("mass_c2", base.nucleon_mass_c2);
    r.input("binding", base.binding_energy);
    r.input("range", base.range_a);
    r.input(
        &flag[2..],
        lambdas
            .iter()
            .map(|l| l.finite().map_or("inf".to_string(), |x| x.to_string()))
            .collect::<Vec<_>>()
            .join(","),
    );
    for l in lambdas {
        if let HalflineExtension::Finite(x) = l {
            if x < 0.0 {
                return Err(CliError::Usage(format!(
                    "{flag}: λ/a must be non-negative or inf, got {x}"
                )));
            }
        }
        let s = deuteron_v0(&base.with_lambda(l))?;
        r.row(vec![
            lambda_cell(l),
            s.x.into(),
            s.y.into(),
            s.v0.into(),
            s.residual.into(),
        ]);
    }
    Ok(r)
}

fn well_limit(v0_list: &[f64], level: u64) -> Outcome {
    if v0_list.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(CliError::Usage("--v0-list: values must be increasing".into()));
    }
    let study = infinite_limit_study(v0_list, level as usize)?;
    let mut r = Report::new(
        "well-limit",
        &[
            "v0",
            "kL",
            "deviation",
            "asymptotic_deviation",
            "energy_ratio",
            "wall_left",
            "wall_right",
            "wall_ratio",
            "wall_slope",
        ],
    );
    r.input(
        "v0_list",
        v0_list.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
    );
    r.input("level", level as usize);
    for row in &study.rows {
        r.row(vec![
            row.v0.into(),
            row.kl.into(),
            row.deviation.into(),
            row.asymptotic_deviation.into(),
            row.energy_ratio.into(),
            row.wall_left.into(),
            row.wall_right.into(),
            row.wall_ratio.into(),
            row.wall_slope.into(),
        ]);
    }
    for (i, p) in study.orders.iter().enumerate() {
        r.summary(&format!("order_{}", i + 1), *p);
    }
    Ok(r)
}

fn reflect(lambda: HalflineExtension, k: f64) -> Outcome {
    let rf = reflection(lambda, k)?;
    let mut r = Report::new("reflect", &["lambda", "k", "re_r", "im_r", "abs_r2"]);
    r.input("lambda", lambda_cell(lambda));
    r.input("k", k);
    r.row(vec![
        lambda_cell(lambda),
        k.into(),
        rf.amplitude.re.into(),
        rf.amplitude.im.into(),
        rf.probability.into(),
    ]);
    Ok(r)
}

fn bound(lambda: HalflineExtension) -> Outcome {
    let mut r = Report::new("bound-state", &["lambda", "rho", "energy", "phi_0"]);
    r.input("lambda", lambda_cell(lambda));
    match bound_state(lambda) {
        Some(b) => r.row(vec![
            lambda_cell(lambda),
            b.rho.into(),
            b.energy.into(),
            b.evaluate(0.0).into(),
        ]),
        None => r.headline = Some("no bound state: λ must be finite and negative".into()),
    }
    Ok(r)
}
