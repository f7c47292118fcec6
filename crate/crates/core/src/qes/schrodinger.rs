use super::potential::Potential;
use super::{effective_potential, uniaxial_spin_spectrum, UniaxialModel};
use crate::error::{Error, Result};
use crate::linalg::SymTridiagonal;

/// Default bound on `|eps(h) - eps(h/2)| / (1 + |eps|)` before the grid is
/// declared too coarse.
pub const DEFAULT_SHIFT_TOLERANCE: f64 = 1e-3;

const MAX_LEVELS: usize = 40;
const MIN_POINTS: usize = 201;
const WALL_MARGIN: f64 = 50.0;

/// Uniform grid on `[-x_max, x_max]` with Dirichlet walls at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchrodingerGrid {
    pub x_max: f64,
    pub n_points: usize,
}

impl SchrodingerGrid {
    pub fn new(x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_max > 0.0) || !x_max.is_finite() {
            return Err(Error::invalid(format!("x_max must be positive, got {x_max}")));
        }
        if n_points < MIN_POINTS || n_points % 2 == 0 {
            return Err(Error::invalid(format!(
                "grid needs an odd number of points >= {MIN_POINTS}, got {n_points}"
            )));
        }
        Ok(Self { x_max, n_points })
    }

    pub fn h(&self) -> f64 {
        2.0 * self.x_max / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        -self.x_max + i as f64 * self.h()
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    /// Same interval with half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            x_max: self.x_max,
            n_points: 2 * self.n_points - 1,
        }
    }

    /// Grid for the uniaxial effective potential able to hold `levels`
    /// bound states.
    ///
    /// `x_max` starts from `arccosh(1 + (eps_max + 50 + B(S+1/2)) 4/B^2)` and is
    /// pushed outwards until `U(x_max) >= eps_max + 50`; the spacing is the
    /// finer of `0.005 x_max` and `0.05 / k_max` with `k_max` the largest
    /// local wavenumber below `eps_max`.
    pub fn for_uniaxial(m: &UniaxialModel, levels: usize) -> Result<Self> {
        let spin = uniaxial_spin_spectrum(m)?;
        let (lo, hi) = (spin[0], spin[spin.len() - 1]);
        // levels beyond 2S+1 sit above the spin band; pad generously
        let extra = levels.saturating_sub(spin.len()) as f64;
        let eps_max = hi + (1.0 + extra) * (hi - lo).max(1.0) + 10.0;
        let pot = effective_potential(m);
        let b = m.b_field;
        let heuristic = (1.0 + (eps_max + WALL_MARGIN + b * (m.s.value() + 0.5)) * 4.0 / (b * b)).acosh();
        let x_max = heuristic.max(pot.turning_point_above(eps_max + WALL_MARGIN));
        let u_min = pot.taylor()[0].min(-0.25 * b * b - (m.s.value() + 0.5).powi(2));
        let k_max = (eps_max - u_min).max(1.0).sqrt();
        let h = (0.005 * x_max).min(0.05 / k_max);
        let mut n = (2.0 * x_max / h).ceil() as usize + 1;
        if n % 2 == 0 {
            n += 1;
        }
        Self::new(x_max, n.max(MIN_POINTS))
    }
}

/// Eigenvalues and eigenfunctions of `-psi'' + U psi = eps psi` from
/// second-order central differences on two grids `(h, h/2)`.
#[derive(Debug, Clone)]
pub struct SchrodingerSolution {
    /// Richardson-extrapolated levels `(4 eps(h/2) - eps(h)) / 3`.
    pub levels: Vec<f64>,
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub h_coarse: f64,
    pub h_fine: f64,
    /// Sample points of the fine grid, walls included.
    pub x: Vec<f64>,
    /// Eigenfunctions on the fine grid, `sum psi^2 h = 1`, zero at the walls.
    pub eigenfunctions: Vec<Vec<f64>>,
}

impl SchrodingerSolution {
    /// Sign changes of eigenfunction `k`, ignoring samples below `1e-7` of
    /// its peak.
    pub fn node_count(&self, k: usize) -> usize {
        count_nodes(&self.eigenfunctions[k])
    }
}

pub(crate) fn count_nodes(psi: &[f64]) -> usize {
    let peak = psi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let floor = 1e-7 * peak;
    let mut last = 0.0f64;
    let mut nodes = 0;
    for &v in psi {
        if v.abs() <= floor {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            nodes += 1;
        }
        last = v;
    }
    nodes
}

fn finite_difference_matrix<P: Potential + ?Sized>(pot: &P, grid: &SchrodingerGrid) -> SymTridiagonal {
    let h = grid.h();
    let inv = 1.0 / (h * h);
    let interior = grid.n_points - 2;
    let diag = (1..=interior).map(|i| 2.0 * inv + pot.value(grid.x(i))).collect();
    let off = vec![-inv; interior - 1];
    SymTridiagonal { diag, off }
}

/// Lowest `count` levels of `-psi'' + U psi` with Dirichlet walls at
/// `+-x_max`.
///
/// Solves on `grid` and on its refinement and returns the Richardson
/// combination. Fails with [`Error::GridTooCoarse`] when a level moves by
/// more than `shift_tol * (1 + |eps|)` between the two grids.
pub fn solve_schrodinger<P: Potential + ?Sized>(
    pot: &P,
    grid: &SchrodingerGrid,
    count: usize,
    shift_tol: f64,
) -> Result<SchrodingerSolution> {
    if count == 0 || count > MAX_LEVELS {
        return Err(Error::invalid(format!("level count must be in 1..={MAX_LEVELS}, got {count}")));
    }
    let fine_grid = grid.refined();
    let (coarse, fine_pairs) = rayon::join(
        || finite_difference_matrix(pot, grid).lowest_eigenvalues(count),
        || finite_difference_matrix(pot, &fine_grid).lowest_eigenpairs(count),
    );
    let fine = fine_pairs.values.clone();

    let mut levels = Vec::with_capacity(count);
    for (k, (c, f)) in coarse.iter().zip(&fine).enumerate() {
        let shift = (c - f).abs();
        let tol = shift_tol * (1.0 + f.abs());
        if shift > tol {
            return Err(Error::GridTooCoarse { level: k, shift, tol });
        }
        levels.push((4.0 * f - c) / 3.0);
    }

    let wall = pot.value(grid.x_max).min(pot.value(-grid.x_max));
    let top = levels[levels.len() - 1];
    if wall < top + WALL_MARGIN {
        return Err(Error::invalid(format!(
            "potential at the walls ({wall}) must exceed the highest level ({top}) by {WALL_MARGIN}"
        )));
    }

    let h_fine = fine_grid.h();
    let norm = h_fine.sqrt().recip();
    let eigenfunctions = fine_pairs
        .vectors
        .into_iter()
        .map(|v| {
            let mut psi = Vec::with_capacity(fine_grid.n_points);
            psi.push(0.0);
            psi.extend(v.into_iter().map(|x| x * norm));
            psi.push(0.0);
            psi
        })
        .collect();

    Ok(SchrodingerSolution {
        levels,
        coarse,
        fine,
        h_coarse: grid.h(),
        h_fine,
        x: fine_grid.points(),
        eigenfunctions,
    })
}
