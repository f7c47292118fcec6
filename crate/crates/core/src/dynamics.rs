//! Dynamics of coherent-state symbols `g(n, t) = <n| G(t) |n>`.
//!
//! Averaging the Heisenberg equation over `|n>` and replacing every spin
//! operator by its action on symbols gives a closed equation for `g`:
//!
//! ```text
//! dg/dt = i (H(S^) g - conj(H(S^) conj(g)))
//! ```
//!
//! with `S^ = S n + (a - i b)/2` the sphere representation. This module
//! evaluates the exact trajectories, measures the residual of that equation,
//! and provides the one-axis-twisting closed form and the classical limit.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, CMatrix, Eigensystem, I};
use crate::spin::{
    apply_sphere_representation, coherent_state, covariant_symbol, ClassicalSpinHamiltonian,
    CoherentPoint, QuadraticSpinModel, SpinComponent, SpinOperatorSet, SpinQuantum,
};

/// Exact values of an observable symbol along time for one coherent-state
/// label. The label plays the role of a Lagrangian coordinate: only the
/// initial condition distinguishes trajectories.
#[derive(Debug, Clone)]
pub struct ObservableTrajectory {
    pub point: CoherentPoint,
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
}

/// Heisenberg-picture operator `G(t) = e^{iHt} G e^{-iHt}` with the
/// eigendecomposition of `H` computed once.
#[derive(Debug, Clone)]
pub struct HeisenbergObservable {
    eig: Eigensystem,
    g: CMatrix,
}

impl HeisenbergObservable {
    pub fn new(h: &CMatrix, g: &CMatrix) -> Result<Self> {
        if h.nrows() != g.nrows() || g.nrows() != g.ncols() {
            return Err(Error::DimensionMismatch {
                expected: h.nrows(),
                found: g.nrows(),
            });
        }
        Ok(Self {
            eig: hermitian_eigensystem(h)?,
            g: g.clone(),
        })
    }

    pub fn at(&self, t: f64) -> CMatrix {
        let u = self.eig.propagator(t);
        u.adjoint() * &self.g * u
    }
}

/// `values[k] = <n| e^{iHt_k} G e^{-iHt_k} |n>`.
pub fn observable_evolution(
    h: &CMatrix,
    g: &CMatrix,
    point: &CoherentPoint,
    times: &[f64],
) -> Result<ObservableTrajectory> {
    if h.nrows() != g.nrows() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            found: g.nrows(),
        });
    }
    let eig = hermitian_eigensystem(h)?;
    let s = SpinQuantum::from_two_s(h.nrows() as u32 - 1);
    let psi0 = coherent_state(s, point, true);
    let values = times
        .iter()
        .map(|&t| {
            let psi = crate::linalg::evolve_with(&eig, t, &psi0);
            psi.dotc(&(g * &psi))
        })
        .collect();
    Ok(ObservableTrajectory {
        point: *point,
        times: times.to_vec(),
        values,
    })
}

/// Residual statistics of the closed equation over a sphere grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub max: f64,
    pub mean: f64,
    pub h: f64,
    pub dt: f64,
}

/// `H(S^) F` for a quadratic model: `sum a_ij S^_i S^_j F + sum b_i S^_i F`,
/// with nested central differences.
fn apply_model<F>(model: &QuadraticSpinModel, f: &F, point: &CoherentPoint, h: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let s = model.s;
    let axes = SpinComponent::CARTESIAN;
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &cj) in axes.iter().enumerate() {
        let column: f64 = (0..3).map(|i| model.a[i][j].abs()).sum();
        if column != 0.0 {
            let inner = |t: f64, p: f64| {
                apply_sphere_representation(s, cj, f, &CoherentPoint { theta: t, phi: p }, h)
                    .expect("inner stencil stays inside the chart")
            };
            for (i, &ci) in axes.iter().enumerate() {
                if model.a[i][j] != 0.0 {
                    acc += model.a[i][j] * apply_sphere_representation(s, ci, &inner, point, h)?;
                }
            }
        }
        if model.b[j] != 0.0 {
            acc += model.b[j] * apply_sphere_representation(s, cj, f, point, h)?;
        }
    }
    Ok(acc)
}

/// `i (H(S^) g - conj(H(S^) conj(g)))` at `point` for the symbol sampler `g`.
pub fn closed_equation_rhs<F>(model: &QuadraticSpinModel, g: &F, point: &CoherentPoint, h: f64) -> Result<Complex64>
where
    F: Fn(f64, f64) -> Complex64 + Sync,
{
    let direct = apply_model(model, g, point, h)?;
    let conj_g = |t: f64, p: f64| g(t, p).conj();
    let mirrored = apply_model(model, &conj_g, point, h)?;
    Ok(I * (direct - mirrored.conj()))
}

/// Residual `|dg/dt - i K g|` of the closed equation at time `t` over `grid`,
/// with `dg/dt` from a central difference of step `dt` and the spin
/// representation from central differences of step `h`.
///
/// Grid points closer than `2h` to a pole are rejected because the nested
/// stencil would cross the chart boundary.
pub fn closed_equation_residual(
    model: &QuadraticSpinModel,
    g: &CMatrix,
    grid: &[CoherentPoint],
    t: f64,
    h: f64,
    dt: f64,
) -> Result<ResidualReport> {
    if grid.is_empty() {
        return Err(Error::invalid("residual grid is empty"));
    }
    if !(dt > 0.0) {
        return Err(Error::invalid(format!("time step must be positive, got {dt}")));
    }
    for p in grid {
        if p.theta <= 2.0 * h || p.theta >= std::f64::consts::PI - 2.0 * h {
            return Err(Error::PoleSingularity {
                theta: p.theta,
                reach: 2.0 * h,
            });
        }
    }
    let heis = HeisenbergObservable::new(&model.hamiltonian(), g)?;
    let (g_now, g_plus, g_minus) = (heis.at(t), heis.at(t + dt), heis.at(t - dt));
    let symbol = |t: f64, p: f64| covariant_symbol(&g_now, &CoherentPoint { theta: t, phi: p });

    let residuals: Vec<f64> = grid
        .par_iter()
        .map(|p| {
            let dgdt = (covariant_symbol(&g_plus, p) - covariant_symbol(&g_minus, p)) / (2.0 * dt);
            let rhs = closed_equation_rhs(model, &symbol, p, h)?;
            Ok((dgdt - rhs).norm())
        })
        .collect::<Result<_>>()?;
    let max = residuals.iter().cloned().fold(0.0, f64::max);
    let mean = residuals.iter().sum::<f64>() / residuals.len() as f64;
    Ok(ResidualReport { max, mean, h, dt })
}

/// Precession plus one-axis twisting, `H = -B S_z - D S_z^2` (`hbar = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwistingModel {
    pub s: SpinQuantum,
    pub b: f64,
    pub d: f64,
}

impl TwistingModel {
    pub fn omega(&self) -> f64 {
        self.b
    }

    pub fn tau(&self, t: f64) -> f64 {
        self.d * t
    }

    /// `D S << B`, the regime in which the modulation is a small correction
    /// to precession. The closed form below holds regardless.
    pub fn weak_twisting(&self) -> bool {
        self.d.abs() * self.s.value() < 0.1 * self.b.abs()
    }

    pub fn quadratic_model(&self) -> QuadraticSpinModel {
        QuadraticSpinModel::twisting(self.s, self.b, self.d)
    }
}

/// `<S_+>(t) = S sin(theta) e^{i(phi - B t)} (cos(D t) - i sin(D t) cos(theta))^(2S-1)`.
pub fn twisting_expectation(m: &TwistingModel, point: &CoherentPoint, times: &[f64]) -> Vec<Complex64> {
    let j = m.s.value();
    let (st, ct) = point.theta.sin_cos();
    let power = m.s.two_s() as i32 - 1;
    times
        .iter()
        .map(|&t| {
            let tau = m.tau(t);
            let bracket = Complex64::new(tau.cos(), -tau.sin() * ct);
            let carrier = Complex64::from_polar(j * st, point.phi - m.omega() * t);
            if j == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                carrier * bracket.powi(power)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalSpinState {
    pub t: f64,
    pub n: [f64; 3],
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Sign of the classical precession `dn/dt = sign * (1/S) n x grad_n f`,
/// fixed by matching the exact quantum evolution (`H = -B S_z` turns the
/// spin clockwise about z, `phi(t) = phi_0 - B t`).
pub const PRECESSION_SIGN: f64 = -1.0;

fn velocity<H: ClassicalSpinHamiltonian + ?Sized>(h: &H, n: [f64; 3]) -> [f64; 3] {
    let inv_s = 1.0 / h.spin().value();
    let v = cross(n, h.gradient(n));
    v.map(|x| PRECESSION_SIGN * inv_s * x)
}

fn rk4_step<H: ClassicalSpinHamiltonian + ?Sized>(h: &H, n: [f64; 3], dt: f64) -> [f64; 3] {
    let add = |a: [f64; 3], b: [f64; 3], s: f64| [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]];
    let k1 = velocity(h, n);
    let k2 = velocity(h, add(n, k1, 0.5 * dt));
    let k3 = velocity(h, add(n, k2, 0.5 * dt));
    let k4 = velocity(h, add(n, k3, dt));
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = n[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    let r = (out[0] * out[0] + out[1] * out[1] + out[2] * out[2]).sqrt();
    out.map(|x| x / r)
}

/// Integrates the classical spin precession with fourth-order Runge-Kutta
/// (step at most `dt`, renormalizing `|n|` after every step) and samples it
/// at `times` (ascending, non-negative).
///
/// The energy scale for the drift check is `max(|f(n0)|, |grad f(n0)|)`.
pub fn classical_trajectory<H: ClassicalSpinHamiltonian + ?Sized>(
    h: &H,
    n0: [f64; 3],
    times: &[f64],
    dt: f64,
) -> Result<Vec<ClassicalSpinState>> {
    if !(dt > 0.0) {
        return Err(Error::invalid(format!("time step must be positive, got {dt}")));
    }
    if times.windows(2).any(|w| w[1] < w[0]) || times.first().is_some_and(|&t| t < 0.0) {
        return Err(Error::invalid("sample times must be ascending and non-negative"));
    }
    let r = (n0[0] * n0[0] + n0[1] * n0[1] + n0[2] * n0[2]).sqrt();
    let mut n = n0.map(|x| x / r);
    let e0 = h.energy(n);
    let g0 = h.gradient(n);
    let scale = e0
        .abs()
        .max((g0[0] * g0[0] + g0[1] * g0[1] + g0[2] * g0[2]).sqrt());
    let bound = 1e-8 * scale;

    let mut out = Vec::with_capacity(times.len());
    let mut t_now = 0.0;
    for &t in times {
        let span = t - t_now;
        if span > 0.0 {
            let steps = (span / dt).ceil() as usize;
            let step = span / steps as f64;
            for _ in 0..steps {
                n = rk4_step(h, n, step);
            }
            t_now = t;
        }
        if t > 0.0 {
            let rate = (h.energy(n) - e0).abs() / t;
            if rate > bound {
                return Err(Error::StepTooLarge {
                    drift_rate: rate,
                    bound,
                });
            }
        }
        out.push(ClassicalSpinState { t, n });
    }
    Ok(out)
}

/// `<S>(t) / S` from exact evolution, one entry per time.
pub fn spin_direction_trajectory(
    h: &CMatrix,
    point: &CoherentPoint,
    times: &[f64],
) -> Result<Vec<[f64; 3]>> {
    let s = SpinQuantum::from_two_s(h.nrows() as u32 - 1);
    let ops = SpinOperatorSet::new(s);
    let eig = hermitian_eigensystem(h)?;
    let psi0 = coherent_state(s, point, true);
    Ok(times
        .iter()
        .map(|&t| {
            let psi = crate::linalg::evolve_with(&eig, t, &psi0);
            ops.cartesian()
                .map(|op| psi.dotc(&(op * &psi)).re / s.value())
        })
        .collect())
}
