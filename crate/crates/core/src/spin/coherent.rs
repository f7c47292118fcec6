use std::f64::consts::PI;

use num_complex::Complex64;

use super::SpinQuantum;
use crate::linalg::{CMatrix, CVector};

/// A point on the unit sphere labelling a spin coherent state.
///
/// `xi = tan(theta/2) exp(i phi)` and `n = (sin theta cos phi, sin theta sin phi, cos theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPoint {
    pub theta: f64,
    pub phi: f64,
}

impl CoherentPoint {
    /// `theta` is clamped to `[0, pi]`, `phi` wrapped into `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Self {
        Self {
            theta: theta.clamp(0.0, PI),
            phi: phi.rem_euclid(2.0 * PI),
        }
    }

    pub fn from_unit_vector(n: [f64; 3]) -> Self {
        let r = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        let theta = (n[2] / r).clamp(-1.0, 1.0).acos();
        let phi = n[1].atan2(n[0]);
        Self::new(theta, phi)
    }

    /// `None` at the south pole where `xi` is infinite.
    pub fn xi(&self) -> Option<Complex64> {
        if self.theta >= PI {
            return None;
        }
        Some(Complex64::from_polar((0.5 * self.theta).tan(), self.phi))
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Local frame `(e_theta, e_phi)` tangent to the sphere.
    pub fn tangent_frame(&self) -> ([f64; 3], [f64; 3]) {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        ([ct * cp, ct * sp, -st], [-sp, cp, 0.0])
    }
}

/// `sqrt(binomial(2S, i))` for `i = 0..=2S`.
pub(crate) fn sqrt_binomials(s: SpinQuantum) -> Vec<f64> {
    let n = s.two_s() as usize;
    let mut out = Vec::with_capacity(n + 1);
    let mut b = 1.0f64;
    out.push(1.0);
    for k in 1..=n {
        b *= (n - k + 1) as f64 / k as f64;
        out.push(b.sqrt());
    }
    out
}

/// Public view of the `sqrt(binomial(2S, S - sigma))` weights, row order.
pub fn coherent_weights(s: SpinQuantum) -> Vec<f64> {
    sqrt_binomials(s)
}

/// Unnormalized coherent state `exp(xi S_-)|S>` for finite `xi`.
pub fn coherent_state_xi(s: SpinQuantum, xi: Complex64) -> CVector {
    let w = sqrt_binomials(s);
    let mut power = Complex64::new(1.0, 0.0);
    CVector::from_iterator(
        s.dim(),
        w.iter().map(|&wk| {
            let v = power * wk;
            power *= xi;
            v
        }),
    )
}

/// Coherent state at `point`; component `i` (i.e. `sigma = S - i`) is
/// `sqrt(binomial(2S, i)) xi^i`, divided by `(1 + |xi|^2)^S` when
/// `normalized`.
///
/// The normalized form is evaluated as `cos(theta/2)^(2S-i) sin(theta/2)^i e^{i i phi}`,
/// which stays finite at the south pole. At `theta = pi` the unnormalized
/// state does not exist; the `xi -> infinity` limit rescaled by `xi^(-2S)`
/// (i.e. `e^{2iS phi}|-S>`) is returned instead.
pub fn coherent_state(s: SpinQuantum, point: &CoherentPoint, normalized: bool) -> CVector {
    if !normalized {
        if let Some(xi) = point.xi() {
            return coherent_state_xi(s, xi);
        }
    }
    let w = sqrt_binomials(s);
    let n = s.two_s() as i32;
    let (sh, ch) = (0.5 * point.theta).sin_cos();
    CVector::from_iterator(
        s.dim(),
        w.iter().enumerate().map(|(i, &wk)| {
            let i = i as i32;
            let mag = wk * ch.powi(n - i) * sh.powi(i);
            Complex64::from_polar(mag, i as f64 * point.phi)
        }),
    )
}

/// `<n|A|n>` in the normalized coherent state.
pub fn covariant_symbol(a: &CMatrix, point: &CoherentPoint) -> Complex64 {
    let dim = a.nrows();
    let s = SpinQuantum::from_two_s(dim as u32 - 1);
    let psi = coherent_state(s, point, true);
    psi.dotc(&(a * &psi))
}
