//! Classical spin thermodynamics on the sphere and the first quantum
//! correction to the free energy.
//!
//! The classical partition function uses the measure `(2S+1)/(4 pi) dOmega`,
//! so that a constant energy reproduces the `2S+1` states exactly. The
//! correction is
//!
//! ```text
//! dF = 1/(4S) < sum_kl (delta_kl - n_k n_l) (f_kl - f_k f_l / T) >
//! ```
//!
//! with unconstrained partials of `f` with respect to `n` and `<.>` the
//! classical Gibbs average.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, CMatrix};
use crate::quadrature::SphereQuadrature;
use crate::spin::{ClassicalSpinHamiltonian, QuadraticSpinModel, SpinQuantum};

/// Tolerance of the quadrature doubling test.
pub const DEFAULT_QUADRATURE_TOLERANCE: f64 = 1e-9;

fn check_temperature(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::invalid(format!("temperature must be positive, got {t}")));
    }
    Ok(())
}

/// `-T ln sum_k exp(-E_k/T)` from a list of levels, shifted by the minimum.
pub fn free_energy_from_levels(levels: &[f64], t: f64) -> Result<f64> {
    check_temperature(t)?;
    if levels.is_empty() {
        return Err(Error::invalid("no levels"));
    }
    let e0 = levels.iter().cloned().fold(f64::INFINITY, f64::min);
    let z: f64 = levels.iter().map(|e| (-(e - e0) / t).exp()).sum();
    Ok(e0 - t * z.ln())
}

pub fn quantum_free_energy(h: &CMatrix, t: f64) -> Result<f64> {
    check_temperature(t)?;
    let eig = hermitian_eigensystem(h)?;
    free_energy_from_levels(eig.eigenvalues.as_slice(), t)
}

/// `P_kl = delta_kl - n_k n_l`.
pub fn tangential_projector(n: [f64; 3]) -> [[f64; 3]; 3] {
    let mut p = [[0.0; 3]; 3];
    for k in 0..3 {
        for l in 0..3 {
            p[k][l] = if k == l { 1.0 } else { 0.0 } - n[k] * n[l];
        }
    }
    p
}

/// Integrand of the correction at one point, before the `1/(4S)` factor.
fn correction_density<H: ClassicalSpinHamiltonian + ?Sized>(h: &H, n: [f64; 3], t: f64) -> f64 {
    let p = tangential_projector(n);
    let g = h.gradient(n);
    let hess = h.hessian(n);
    let mut acc = 0.0;
    for k in 0..3 {
        for l in 0..3 {
            acc += p[k][l] * (hess[k][l] - g[k] * g[l] / t);
        }
    }
    acc
}

/// Classical free energy and correction from one quadrature pass.
fn single_pass<H: ClassicalSpinHamiltonian + ?Sized>(h: &H, t: f64, quad: &SphereQuadrature) -> (f64, f64) {
    let s = h.spin().value();
    let pts: Vec<[f64; 3]> = quad.nodes.iter().map(|p| p.unit_vector()).collect();
    let energies: Vec<f64> = pts.par_iter().map(|&n| h.energy(n)).collect();
    let f0 = energies.iter().cloned().fold(f64::INFINITY, f64::min);
    // per-node terms in parallel, sums in a fixed order so results are reproducible
    let terms: Vec<(f64, f64)> = pts
        .par_iter()
        .zip(&energies)
        .zip(&quad.weights)
        .map(|((&n, &e), &w)| {
            let b = w * (-(e - f0) / t).exp();
            (b, b * correction_density(h, n, t))
        })
        .collect();
    let (z, num) = terms.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let measure = (2.0 * s + 1.0) / (4.0 * std::f64::consts::PI);
    let f_cl = f0 - t * (measure * z).ln();
    let delta = num / z / (4.0 * s);
    (f_cl, delta)
}

fn converged_pass<H: ClassicalSpinHamiltonian + ?Sized>(
    h: &H,
    t: f64,
    quad: &SphereQuadrature,
    tol: f64,
) -> Result<(f64, f64)> {
    check_temperature(t)?;
    let (f1, d1) = single_pass(h, t, quad);
    let fine = SphereQuadrature::new(2 * quad.n_u, 2 * quad.n_phi)?;
    let (f2, d2) = single_pass(h, t, &fine);
    let shift = (f2 - f1).abs().max((d2 - d1).abs());
    if !(shift <= tol) {
        return Err(Error::QuadratureUnconverged { shift, tol });
    }
    Ok((f2, d2))
}

/// `-T ln[(2S+1)/(4 pi) int dOmega exp(-f/T)]`, accepted once doubling the
/// quadrature moves it by at most `tol`.
pub fn classical_free_energy<H: ClassicalSpinHamiltonian + ?Sized>(
    h: &H,
    t: f64,
    quad: &SphereQuadrature,
    tol: f64,
) -> Result<f64> {
    converged_pass(h, t, quad, tol).map(|r| r.0)
}

pub fn wk_correction<H: ClassicalSpinHamiltonian + ?Sized>(
    h: &H,
    t: f64,
    quad: &SphereQuadrature,
    tol: f64,
) -> Result<f64> {
    converged_pass(h, t, quad, tol).map(|r| r.1)
}

/// `dF = -(T/(2S)) (beta coth(beta) - 1)` for `f = -B S n_z`, `beta = B S / T`.
pub fn zeeman_correction_closed_form(s: SpinQuantum, b_field: f64, t: f64) -> f64 {
    let beta = b_field * s.value() / t;
    let x = if beta.abs() < 1e-4 {
        beta * beta / 3.0
    } else {
        beta / beta.tanh() - 1.0
    };
    -t / (2.0 * s.value()) * x
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeEnergyReport {
    pub s_value: f64,
    pub temperature: f64,
    pub f_quantum: f64,
    pub f_classical: f64,
    pub delta_f: f64,
    pub residual: f64,
}

impl FreeEnergyReport {
    pub fn uncorrected_gap(&self) -> f64 {
        self.f_quantum - self.f_classical
    }
}

/// Model families with couplings scaled so the classical energy is
/// independent of `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WkPreset {
    /// `H = -(b/S) S_z`, `f = -b n_z`.
    Zeeman { b: f64 },
    /// `H = -S_z^2/S^2 - (b/S) S_x`, `f = -n_z^2 - b n_x`.
    Uniaxial { b: f64 },
}

impl WkPreset {
    pub fn name(&self) -> &'static str {
        match self {
            WkPreset::Zeeman { .. } => "zeeman",
            WkPreset::Uniaxial { .. } => "uniaxial",
        }
    }

    pub fn model(&self, s: SpinQuantum) -> QuadraticSpinModel {
        let j = s.value();
        match *self {
            WkPreset::Zeeman { b } => QuadraticSpinModel::zeeman(s, b / j),
            WkPreset::Uniaxial { b } => {
                let mut a = [[0.0; 3]; 3];
                a[2][2] = -1.0 / (j * j);
                QuadraticSpinModel::new(s, a, [-b / j, 0.0, 0.0])
            }
        }
    }
}

pub fn free_energy_report(model: &QuadraticSpinModel, t: f64, quad: &SphereQuadrature, tol: f64) -> Result<FreeEnergyReport> {
    let f_quantum = quantum_free_energy(&model.hamiltonian(), t)?;
    let (f_classical, delta_f) = converged_pass(model, t, quad, tol)?;
    Ok(FreeEnergyReport {
        s_value: model.s.value(),
        temperature: t,
        f_quantum,
        f_classical,
        delta_f,
        residual: f_quantum - f_classical - delta_f,
    })
}

/// Reports for each `S` plus `log2` ratios of consecutive residuals and
/// uncorrected gaps (about 2 and 1 for a first-order correction).
#[derive(Debug, Clone)]
pub struct WkConvergence {
    pub preset: WkPreset,
    pub reports: Vec<FreeEnergyReport>,
    pub residual_ratios: Vec<f64>,
    pub gap_ratios: Vec<f64>,
}

impl WkConvergence {
    pub fn residual_exponents(&self) -> Vec<f64> {
        self.residual_ratios.iter().map(|r| r.log2()).collect()
    }
}

pub fn wk_convergence(preset: WkPreset, spins: &[SpinQuantum], t: f64, quad: &SphereQuadrature, tol: f64) -> Result<WkConvergence> {
    check_temperature(t)?;
    let reports = spins
        .par_iter()
        .map(|&s| free_energy_report(&preset.model(s), t, quad, tol))
        .collect::<Result<Vec<_>>>()?;
    let ratio = |f: fn(&FreeEnergyReport) -> f64| -> Vec<f64> {
        reports.windows(2).map(|w| f(&w[0]).abs() / f(&w[1]).abs()).collect()
    };
    Ok(WkConvergence {
        preset,
        residual_ratios: ratio(|r| r.residual),
        gap_ratios: ratio(|r| r.uncorrected_gap()),
        reports,
    })
}
