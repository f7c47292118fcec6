//! One function per command. Each returns the artifacts to write.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use spinon::dynamics::{closed_equation_residual, observable_evolution, twisting_expectation, TwistingModel};
use spinon::io::{Cell, CsvTable};
use spinon::linalg::{hermitian_eigensystem, random_hermitian};
use spinon::qes::{
    classify_potential, effective_potential, reconstruct_wavefunction, susceptibility_scan, verify_correspondence,
    PotentialShape, SchrodingerGrid, UniaxialModel, DEFAULT_TIE_TOLERANCE,
};
use spinon::quadrature::SphereQuadrature;
use spinon::sectors::{dicke_sector, two_oscillator_sector, DickeModel, TwoOscillatorModel};
use spinon::wk::{wk_convergence, WkPreset, DEFAULT_QUADRATURE_TOLERANCE};
use spinon::{CoherentPoint, QuadraticSpinModel, SpinOperatorSet, SpinQuantum};

use crate::config::{CommandKind, Params};
use crate::error::CliError;
use crate::output::{line_plot, Artifact};

type Out = Result<Vec<Artifact>, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(bad(format!("{name} must be positive, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad(format!("{name} must be finite, got {v}")))
    }
}

fn spin(p: &Params, default: f64) -> Result<SpinQuantum, CliError> {
    let s = SpinQuantum::from_spin(p.s.unwrap_or(default))?;
    if s.two_s() == 0 {
        return Err(bad("spin must be positive"));
    }
    Ok(s)
}

fn json_artifact(name: &str, value: serde_json::Value) -> Artifact {
    let mut text = serde_json::to_string_pretty(&value).expect("json serializes");
    text.push('\n');
    Artifact::new(name, text)
}

fn uniaxial(p: &Params) -> Result<UniaxialModel, CliError> {
    let s = spin(p, 1.0)?;
    let b = positive("b", p.b.unwrap_or(1.0))?;
    Ok(UniaxialModel::new(s, b)?)
}

/// Explicit `--x-max`/`--grid-points` replace the automatic grid.
fn particle_grid(p: &Params, m: &UniaxialModel, levels: usize) -> Result<SchrodingerGrid, CliError> {
    let auto = SchrodingerGrid::for_uniaxial(m, levels)?;
    if p.x_max.is_none() && p.grid_points.is_none() {
        return Ok(auto);
    }
    let x_max = positive("x_max", p.x_max.unwrap_or(auto.x_max))?;
    let n = p.grid_points.unwrap_or(auto.n_points);
    Ok(SchrodingerGrid::new(x_max, n)?)
}

pub fn run_command(command: CommandKind, p: &Params) -> Out {
    let mut artifacts = match command {
        CommandKind::Spectrum => spectrum(p),
        CommandKind::Potential => potential(p),
        CommandKind::Correspond => correspond(p),
        CommandKind::Susceptibility => susceptibility(p),
        CommandKind::Dicke => dicke(p),
        CommandKind::Oscillators => oscillators(p),
        CommandKind::Dynamics => dynamics(p),
        CommandKind::ClosedEq => closed_eq(p),
        CommandKind::Wk => wk(p),
    }?;
    if p.plot != Some(true) {
        artifacts.retain(|a| !a.name.ends_with(".svg"));
    }
    Ok(artifacts)
}

fn spectrum(p: &Params) -> Out {
    let s = spin(p, 1.0)?;
    let b = finite("b", p.b.unwrap_or(1.0))?;
    let model = match (p.alpha, p.beta) {
        (None, None) => QuadraticSpinModel::uniaxial(s, b),
        (a, bt) => QuadraticSpinModel::biaxial(s, finite("alpha", a.unwrap_or(0.0))?, finite("beta", bt.unwrap_or(0.0))?, b),
    };
    let levels = hermitian_eigensystem(&model.hamiltonian())?.eigenvalues;
    let mut t = CsvTable::new(&["level", "energy"]);
    for (k, e) in levels.iter().enumerate() {
        t.push(vec![k.into(), (*e).into()]);
    }
    let pts = levels.iter().enumerate().map(|(k, &e)| (k as f64, e)).collect();
    Ok(vec![
        Artifact::new("spectrum.csv", t.to_csv()),
        Artifact::new("plot.svg", line_plot(&format!("spectrum, S = {s}"), "level", "energy", &[("E", pts)])),
    ])
}

fn shape_name(s: PotentialShape) -> &'static str {
    match s {
        PotentialShape::SingleWell => "single_well",
        PotentialShape::DoubleWell => "double_well",
        PotentialShape::QuarticMinimum => "quartic_minimum",
    }
}

fn potential(p: &Params) -> Out {
    let m = uniaxial(p)?;
    let pot = effective_potential(&m);
    let report = classify_potential(&m, DEFAULT_TIE_TOLERANCE);
    let x_max = match p.x_max {
        Some(x) => positive("x_max", x)?,
        None => 1.5 * pot.turning_point_above(0.0).max(1.0),
    };
    let n = p.grid_points.unwrap_or(401);
    if n < 2 {
        return Err(bad("grid_points must be at least 2"));
    }
    let mut t = CsvTable::new(&["x", "U"]);
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        let x = -x_max + 2.0 * x_max * i as f64 / (n - 1) as f64;
        let u = pot.evaluate(x);
        t.push(vec![x.into(), u.into()]);
        pts.push((x, u));
    }
    let summary = json!({
        "shape": shape_name(report.shape),
        "b0": m.b0(),
        "minima": report.minima,
        "taylor": {"c0": report.taylor[0], "c2": report.taylor[1], "c4": report.taylor[2]},
    });
    Ok(vec![
        Artifact::new("potential.csv", t.to_csv()),
        json_artifact("potential.json", summary),
        Artifact::new("plot.svg", line_plot("effective potential", "x", "U(x)", &[("U", pts)])),
    ])
}

fn correspond(p: &Params) -> Out {
    let m = uniaxial(p)?;
    let grid = particle_grid(p, &m, m.s.dim() + 1)?;
    let r = verify_correspondence(&m, &grid)?;
    let mut t = CsvTable::new(&["level", "spin_E", "schrodinger_eps", "offset"]);
    for k in 0..r.spin_levels.len() {
        t.push(vec![
            k.into(),
            r.spin_levels[k].into(),
            r.schrodinger_levels[k].into(),
            r.per_level_offsets[k].into(),
        ]);
    }
    let wf = reconstruct_wavefunction(&m, 0, &grid)?;
    let mut w = CsvTable::new(&["x", "psi"]);
    for (x, v) in wf.x.iter().zip(&wf.psi) {
        w.push(vec![(*x).into(), (*v).into()]);
    }
    let tol = 1e-6 * (1.0 + r.schrodinger_levels[0].abs());
    let summary = json!({
        "fitted_slope": r.fitted_slope,
        "fitted_offset": r.fitted_offset,
        "offset_spread": r.offset_spread,
        "spread_tolerance": tol,
        "spread_within_tolerance": r.spread_within(1e-6),
        "first_extra_level": r.first_extra_level,
        "negative_control_gap": r.negative_control_gap,
        "h_coarse": r.h_coarse,
        "h_fine": r.h_fine,
        "x_max": grid.x_max,
        "grid_points": grid.n_points,
        "ground_state": {
            "weight_convention": format!("{:?}", wf.convention),
            "residual": wf.residual,
            "rejected_residual": wf.rejected_residual,
            "nodes": wf.nodes,
        },
    });
    let spin_pts = r.spin_levels.iter().enumerate().map(|(k, &e)| (k as f64, e)).collect();
    let part_pts = r.schrodinger_levels.iter().enumerate().map(|(k, &e)| (k as f64, e)).collect();
    Ok(vec![
        Artifact::new("correspondence.csv", t.to_csv()),
        Artifact::new("wavefunction.csv", w.to_csv()),
        json_artifact("correspondence.json", summary),
        Artifact::new(
            "plot.svg",
            line_plot("spin and particle levels", "level", "energy", &[("spin", spin_pts), ("particle", part_pts)]),
        ),
    ])
}

fn susceptibility(p: &Params) -> Out {
    let s = spin(p, 10.0)?;
    let b0 = s.critical_field();
    let lo = p.b_min.unwrap_or(0.3 * b0);
    let hi = p.b_max.unwrap_or(1.3 * b0);
    let db = p.db.unwrap_or(1e-3 * b0);
    let r = susceptibility_scan(s, (lo, hi), db)?;
    let mut t = CsvTable::new(&["B", "chi"]);
    for (b, c) in r.b_grid.iter().zip(&r.chi_values) {
        t.push(vec![(*b).into(), (*c).into()]);
    }
    let summary = json!({
        "b0": b0,
        "b_star": r.b_star,
        "gamma_estimate": r.gamma_estimate,
        "boundary_maximum": r.boundary.map(|b| format!("{b:?}").to_lowercase()),
    });
    let pts = r.b_grid.iter().cloned().zip(r.chi_values.iter().cloned()).collect();
    Ok(vec![
        Artifact::new("susceptibility.csv", t.to_csv()),
        json_artifact("susceptibility.json", summary),
        Artifact::new("plot.svg", line_plot(&format!("susceptibility, S = {s}"), "B", "chi", &[("chi", pts)])),
    ])
}

fn sector_table(sectors: &[(f64, Vec<f64>)]) -> CsvTable {
    let mut t = CsvTable::new(&["sector", "index", "energy"]);
    for (label, levels) in sectors {
        for (k, e) in levels.iter().enumerate() {
            t.push(vec![(*label).into(), k.into(), (*e).into()]);
        }
    }
    t
}

fn dicke(p: &Params) -> Out {
    let s = spin(p, 0.5)?;
    let m = DickeModel {
        omega: finite("omega", p.omega.unwrap_or(1.0))?,
        epsilon: finite("epsilon", p.epsilon.unwrap_or(1.0))?,
        g: finite("g", p.g.unwrap_or(0.1))?,
        s,
    };
    let top = p.sector_max.unwrap_or(10);
    let mut sectors = Vec::new();
    // labels r = n + sigma run from -S upward in unit steps
    for k in 0..=top {
        let r = k as f64 - s.value();
        sectors.push((r, dicke_sector(&m, r)?.eigenvalues));
    }
    Ok(vec![Artifact::new("sectors.csv", sector_table(&sectors).to_csv())])
}

fn oscillators(p: &Params) -> Out {
    let m = TwoOscillatorModel {
        omega: finite("omega", p.omega.unwrap_or(1.0))?,
        capital_omega: finite("capital_omega", p.capital_omega.unwrap_or(0.5))?,
        g: finite("g", p.g.unwrap_or(0.1))?,
    };
    let top = p.sector_max.unwrap_or(10);
    let sectors: Vec<(f64, Vec<f64>)> = (0..=top)
        .map(|n| (n as f64, two_oscillator_sector(&m, n).eigenvalues))
        .collect();
    Ok(vec![Artifact::new("sectors.csv", sector_table(&sectors).to_csv())])
}

fn time_grid(p: &Params, default_t: f64) -> Result<Vec<f64>, CliError> {
    let t_max = positive("t_max", p.t_max.unwrap_or(default_t))?;
    let steps = p.steps.unwrap_or(200);
    if steps == 0 {
        return Err(bad("steps must be at least 1"));
    }
    Ok((0..=steps).map(|k| t_max * k as f64 / steps as f64).collect())
}

fn dynamics(p: &Params) -> Out {
    let s = spin(p, 5.0)?;
    let m = TwistingModel {
        s,
        b: finite("b", p.b.unwrap_or(1.0))?,
        d: finite("d", p.d.unwrap_or(0.05))?,
    };
    let point = CoherentPoint::new(p.theta.unwrap_or(std::f64::consts::FRAC_PI_2), p.phi.unwrap_or(0.0));
    let times = time_grid(p, 10.0 / m.b.abs().max(1e-12))?;
    let ops = SpinOperatorSet::new(s);
    let exact = observable_evolution(&m.quadratic_model().hamiltonian(), &ops.splus, &point, &times)?;
    let closed = twisting_expectation(&m, &point, &times);
    let mut t = CsvTable::new(&["t", "re_g", "im_g"]);
    let mut dev = 0.0f64;
    for ((time, g), c) in times.iter().zip(&exact.values).zip(&closed) {
        t.push(vec![(*time).into(), g.re.into(), g.im.into()]);
        dev = dev.max((g - c).norm());
    }
    let summary = json!({
        "observable": "S_plus",
        "theta": point.theta,
        "phi": point.phi,
        "max_deviation_from_closed_form": dev,
    });
    let re = times.iter().zip(&exact.values).map(|(t, g)| (*t, g.re)).collect();
    let modulus = times.iter().zip(&exact.values).map(|(t, g)| (*t, g.norm())).collect();
    Ok(vec![
        Artifact::new("trajectory.csv", t.to_csv()),
        json_artifact("trajectory.json", summary),
        Artifact::new("plot.svg", line_plot("<S+>(t)", "t", "value", &[("Re", re), ("|.|", modulus)])),
    ])
}

fn closed_eq(p: &Params) -> Out {
    let s = spin(p, 2.0)?;
    let b = finite("b", p.b.unwrap_or(1.0))?;
    let model = match p.preset.as_deref().unwrap_or("uniaxial") {
        "uniaxial" => QuadraticSpinModel::uniaxial(s, b),
        "biaxial" => QuadraticSpinModel::biaxial(s, finite("alpha", p.alpha.unwrap_or(1.0))?, finite("beta", p.beta.unwrap_or(0.5))?, b),
        other => return Err(bad(format!("closed-eq preset must be uniaxial or biaxial, got {other}"))),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed.unwrap_or(0));
    let g = random_hermitian(s.dim(), &mut rng);
    let grid = SphereQuadrature::new(p.nu.unwrap_or(4), p.nphi.unwrap_or(6))?;
    let h = positive("h", p.h.unwrap_or(0.02))?;
    let t = finite("t_max", p.t_max.unwrap_or(0.5))?;
    let coarse = closed_equation_residual(&model, &g, &grid.nodes, t, h, h)?;
    let fine = closed_equation_residual(&model, &g, &grid.nodes, t, h / 2.0, h / 2.0)?;
    let summary = json!({
        "t": t,
        "grid_points": grid.len(),
        "seed": p.seed.unwrap_or(0),
        "coarse": {"h": coarse.h, "dt": coarse.dt, "max": coarse.max, "mean": coarse.mean},
        "fine": {"h": fine.h, "dt": fine.dt, "max": fine.max, "mean": fine.mean},
        "halving_ratio": coarse.max / fine.max,
        "extrapolated_max": (4.0 * fine.max - coarse.max) / 3.0,
    });
    Ok(vec![json_artifact("residual.json", summary)])
}

fn wk(p: &Params) -> Out {
    let b = finite("b", p.b.unwrap_or(1.0))?;
    let preset = match p.preset.as_deref().unwrap_or("zeeman") {
        "zeeman" => WkPreset::Zeeman { b },
        "uniaxial" => WkPreset::Uniaxial { b },
        other => return Err(bad(format!("wk preset must be zeeman or uniaxial, got {other}"))),
    };
    let t = positive("temperature", p.temperature.unwrap_or(1.0))?;
    let list = p.s_list.clone().unwrap_or_else(|| vec![5.0, 10.0, 20.0, 40.0]);
    if list.is_empty() {
        return Err(bad("s_list is empty"));
    }
    let spins = list
        .iter()
        .map(|&v| {
            let s = SpinQuantum::from_spin(v)?;
            if s.two_s() == 0 {
                return Err(bad("spin must be positive"));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let quad = SphereQuadrature::new(p.nu.unwrap_or(32), p.nphi.unwrap_or(48))?;
    let conv = wk_convergence(preset, &spins, t, &quad, DEFAULT_QUADRATURE_TOLERANCE)?;
    let mut table = CsvTable::new(&["S", "T", "F_quantum", "F_classical", "deltaF", "residual"]);
    for r in &conv.reports {
        table.push(vec![
            Cell::from(r.s_value),
            r.temperature.into(),
            r.f_quantum.into(),
            r.f_classical.into(),
            r.delta_f.into(),
            r.residual.into(),
        ]);
    }
    let gap = conv.reports.iter().map(|r| (r.s_value, r.uncorrected_gap().abs())).collect();
    let res = conv.reports.iter().map(|r| (r.s_value, r.residual.abs())).collect();
    let summary = json!({
        "preset": preset.name(),
        "residual_ratios": conv.residual_ratios,
        "gap_ratios": conv.gap_ratios,
    });
    Ok(vec![
        Artifact::new("wk.csv", table.to_csv()),
        json_artifact("wk.json", summary),
        Artifact::new(
            "plot.svg",
            line_plot("free-energy error", "S", "|error|", &[("uncorrected", gap), ("corrected", res)]),
        ),
    ])
}

