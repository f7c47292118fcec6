use super::schrodinger::{solve_schrodinger, SchrodingerGrid, DEFAULT_SHIFT_TOLERANCE};
use super::{effective_potential, uniaxial_spin_spectrum, UniaxialModel};
use crate::error::Result;

/// Spin levels against the lowest particle levels of the effective potential.
#[derive(Debug, Clone)]
pub struct CorrespondenceReport {
    pub spin_levels: Vec<f64>,
    /// Lowest `2S + 1` Richardson-extrapolated particle levels.
    pub schrodinger_levels: Vec<f64>,
    /// Particle level `2S + 2`, the first one without a spin partner.
    pub first_extra_level: f64,
    pub fitted_slope: f64,
    pub fitted_offset: f64,
    /// `eps_n - sign(slope) E_n`.
    pub per_level_offsets: Vec<f64>,
    pub offset_spread: f64,
    /// Distance of level `2S + 2` to the nearest mapped spin level.
    pub negative_control_gap: f64,
    pub coarse_levels: Vec<f64>,
    pub fine_levels: Vec<f64>,
    pub h_coarse: f64,
    pub h_fine: f64,
}

impl CorrespondenceReport {
    /// `offset_spread <= tol * (1 + |eps_0|)`.
    pub fn spread_within(&self, tol: f64) -> bool {
        self.offset_spread <= tol * (1.0 + self.schrodinger_levels[0].abs())
    }
}

/// Least-squares line `y = slope x + offset`.
fn affine_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return (1.0, my - mx);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Solves the particle problem for `2S + 2` levels on `grid` (and `grid`
/// refined), fits the lowest `2S + 1` against the exact spin spectrum and
/// measures how far the next level sits from the spin band.
pub fn verify_correspondence(m: &UniaxialModel, grid: &SchrodingerGrid) -> Result<CorrespondenceReport> {
    let spin = uniaxial_spin_spectrum(m)?;
    let n = spin.len();
    let pot = effective_potential(m);
    let sol = solve_schrodinger(&pot, grid, n + 1, DEFAULT_SHIFT_TOLERANCE)?;
    let eps = &sol.levels[..n];
    let (slope, offset) = affine_fit(&spin, eps);
    let sign = if slope < 0.0 { -1.0 } else { 1.0 };
    let per_level: Vec<f64> = eps.iter().zip(&spin).map(|(e, s)| e - sign * s).collect();
    let max = per_level.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = per_level.iter().cloned().fold(f64::INFINITY, f64::min);
    let mean_offset = per_level.iter().sum::<f64>() / n as f64;
    let extra = sol.levels[n];
    let gap = spin
        .iter()
        .map(|s| (extra - (sign * s + mean_offset)).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(CorrespondenceReport {
        spin_levels: spin,
        schrodinger_levels: eps.to_vec(),
        first_extra_level: extra,
        fitted_slope: slope,
        fitted_offset: offset,
        per_level_offsets: per_level,
        offset_spread: max - min,
        negative_control_gap: gap,
        coarse_levels: sol.coarse,
        fine_levels: sol.fine,
        h_coarse: sol.h_coarse,
        h_fine: sol.h_fine,
    })
}
