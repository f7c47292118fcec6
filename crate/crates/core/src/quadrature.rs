//! Gauss-Legendre rules and the product rule on the unit sphere.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::spin::CoherentPoint;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        // Newton iteration from the Tricomi-style initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Product rule: Gauss-Legendre in `u = cos(theta)` times the trapezoid rule
/// in `phi`. Weights sum to `4 pi`.
#[derive(Debug, Clone)]
pub struct SphereQuadrature {
    pub n_u: usize,
    pub n_phi: usize,
    pub nodes: Vec<CoherentPoint>,
    pub weights: Vec<f64>,
}

impl SphereQuadrature {
    pub fn new(n_u: usize, n_phi: usize) -> Result<Self> {
        if n_u < 2 || n_phi < 4 {
            return Err(Error::invalid(format!(
                "sphere quadrature needs n_u >= 2 and n_phi >= 4, got {n_u} x {n_phi}"
            )));
        }
        let (u, w) = gauss_legendre(n_u);
        let dphi = 2.0 * PI / n_phi as f64;
        let mut nodes = Vec::with_capacity(n_u * n_phi);
        let mut weights = Vec::with_capacity(n_u * n_phi);
        for (ui, wi) in u.iter().zip(&w) {
            let theta = ui.clamp(-1.0, 1.0).acos();
            for j in 0..n_phi {
                nodes.push(CoherentPoint::new(theta, j as f64 * dphi));
                weights.push(wi * dphi);
            }
        }
        Ok(Self {
            n_u,
            n_phi,
            nodes,
            weights,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(&CoherentPoint) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }
}

pub fn sphere_quadrature(n_u: usize, n_phi: usize) -> Result<SphereQuadrature> {
    SphereQuadrature::new(n_u, n_phi)
}
