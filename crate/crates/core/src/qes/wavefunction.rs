use super::potential::Potential;
use super::schrodinger::{count_nodes, SchrodingerGrid};
use super::{effective_potential, UniaxialModel};
use crate::error::{Error, Result};
use crate::spin::SpinQuantum;

const CONVENTION_BOUND: f64 = 1e-4;

/// Weight `w_sigma` in `a_sigma = v_sigma w_sigma` linking the spin
/// eigenvector `v` to the coefficients of `Phi = sum a_sigma e^{sigma x}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightConvention {
    /// `sqrt((2S)! / ((S - sigma)! (S + sigma)!))`.
    SqrtBinomial,
    /// The reciprocal of [`WeightConvention::SqrtBinomial`].
    ReciprocalSqrtBinomial,
}

impl WeightConvention {
    fn weights(self, s: SpinQuantum) -> Vec<f64> {
        let w = crate::spin::coherent_weights(s);
        match self {
            WeightConvention::SqrtBinomial => w,
            WeightConvention::ReciprocalSqrtBinomial => w.iter().map(|v| v.recip()).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct WavefunctionReport {
    pub level: usize,
    /// Spin eigenvalue, used as the particle energy.
    pub energy: f64,
    pub convention: WeightConvention,
    /// `a_sigma` for `sigma = S, S-1, ..., -S`.
    pub coefficients: Vec<f64>,
    pub x: Vec<f64>,
    /// `Psi(x) = Phi(x) exp(-(B/2) cosh x)`, scaled to unit peak.
    pub psi: Vec<f64>,
    /// `||-Psi'' + U Psi - E Psi|| / ||Psi||` on the inner 80% of the grid.
    pub residual: f64,
    /// Same residual with the other weight convention.
    pub rejected_residual: f64,
    /// `|Psi(x_max)| / max |Psi|`.
    pub decay_ratio: f64,
    pub nodes: usize,
}

fn sample_psi(m: &UniaxialModel, coeffs: &[f64], xs: &[f64]) -> Vec<f64> {
    let half_b = 0.5 * m.b_field;
    xs.iter()
        .map(|&x| {
            let envelope = -half_b * x.cosh();
            coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * (m.s.sigma(i) * x + envelope).exp())
                .sum()
        })
        .collect()
}

/// Fourth-order residual of `-Psi'' + (U - E) Psi` over `|x| <= 0.8 x_max`.
fn operator_residual(m: &UniaxialModel, grid: &SchrodingerGrid, psi: &[f64], energy: f64) -> f64 {
    let pot = effective_potential(m);
    let h = grid.h();
    let inner = 0.8 * grid.x_max;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 2..grid.n_points - 2 {
        let x = grid.x(i);
        if x.abs() > inner {
            continue;
        }
        let d2 = (-psi[i + 2] + 16.0 * psi[i + 1] - 30.0 * psi[i] + 16.0 * psi[i - 1] - psi[i - 2])
            / (12.0 * h * h);
        let r = -d2 + (pot.value(x) - energy) * psi[i];
        num += r * r;
        den += psi[i] * psi[i];
    }
    (num / den).sqrt()
}

/// Particle wavefunction of spin level `level` built from the spin
/// eigenvector. Both weight conventions are tried; the one that makes `Psi`
/// an eigenfunction of the Schrödinger operator wins.
pub fn reconstruct_wavefunction(
    m: &UniaxialModel,
    level: usize,
    grid: &SchrodingerGrid,
) -> Result<WavefunctionReport> {
    let dim = m.s.dim();
    if level >= dim {
        return Err(Error::invalid(format!(
            "level {level} has no spin partner (only {dim} spin levels)"
        )));
    }
    let eig = m.tridiagonal().lowest_eigenpairs(level + 1);
    let energy = eig.values[level];
    let v = &eig.vectors[level];
    let xs = grid.points();

    let build = |conv: WeightConvention| {
        let coeffs: Vec<f64> = v.iter().zip(conv.weights(m.s)).map(|(a, w)| a * w).collect();
        let psi = sample_psi(m, &coeffs, &xs);
        let res = operator_residual(m, grid, &psi, energy);
        (coeffs, psi, res)
    };
    let (c_bin, psi_bin, r_bin) = build(WeightConvention::SqrtBinomial);
    let (c_rec, psi_rec, r_rec) = build(WeightConvention::ReciprocalSqrtBinomial);
    if r_bin > CONVENTION_BOUND && r_rec > CONVENTION_BOUND {
        return Err(Error::ConventionMismatch {
            residual_binomial: r_bin,
            residual_reciprocal: r_rec,
            bound: CONVENTION_BOUND,
        });
    }
    let (convention, coefficients, mut psi, residual, rejected_residual) = if r_bin <= r_rec {
        (WeightConvention::SqrtBinomial, c_bin, psi_bin, r_bin, r_rec)
    } else {
        (WeightConvention::ReciprocalSqrtBinomial, c_rec, psi_rec, r_rec, r_bin)
    };

    let (peak_idx, peak) = psi
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |(bi, bv), (i, v)| if v.abs() > bv { (i, v.abs()) } else { (bi, bv) });
    let scale = if psi[peak_idx] < 0.0 { -peak } else { peak };
    psi.iter_mut().for_each(|v| *v /= scale);
    let decay_ratio = psi[0].abs().max(psi[psi.len() - 1].abs());
    let nodes = count_nodes(&psi);
    Ok(WavefunctionReport {
        level,
        energy,
        convention,
        coefficients,
        x: xs,
        psi,
        residual,
        rejected_residual,
        decay_ratio,
        nodes,
    })
}
