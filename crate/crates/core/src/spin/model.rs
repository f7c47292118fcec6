use num_complex::Complex64;

use super::{SpinOperatorSet, SpinQuantum};
use crate::linalg::CMatrix;

/// `H = sum_ij a_ij S_i S_j + sum_i b_i S_i` with a symmetric `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticSpinModel {
    pub s: SpinQuantum,
    pub a: [[f64; 3]; 3],
    pub b: [f64; 3],
}

impl QuadraticSpinModel {
    /// Symmetrizes `a`.
    pub fn new(s: SpinQuantum, a: [[f64; 3]; 3], b: [f64; 3]) -> Self {
        let mut sym = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                sym[i][j] = 0.5 * (a[i][j] + a[j][i]);
            }
        }
        Self { s, a: sym, b }
    }

    /// Uniaxial paramagnet in a transverse field, `-S_z^2 - B S_x`.
    pub fn uniaxial(s: SpinQuantum, b_field: f64) -> Self {
        let mut a = [[0.0; 3]; 3];
        a[2][2] = -1.0;
        Self::new(s, a, [-b_field, 0.0, 0.0])
    }

    /// `alpha S_z^2 - beta S_y^2 + B S_x`.
    pub fn biaxial(s: SpinQuantum, alpha: f64, beta: f64, b_field: f64) -> Self {
        let mut a = [[0.0; 3]; 3];
        a[2][2] = alpha;
        a[1][1] = -beta;
        Self::new(s, a, [b_field, 0.0, 0.0])
    }

    /// One-axis twisting about z with precession, `-B S_z - D S_z^2`.
    pub fn twisting(s: SpinQuantum, b_field: f64, d: f64) -> Self {
        let mut a = [[0.0; 3]; 3];
        a[2][2] = -d;
        Self::new(s, a, [0.0, 0.0, -b_field])
    }

    /// `-B S_z`.
    pub fn zeeman(s: SpinQuantum, b_field: f64) -> Self {
        Self::new(s, [[0.0; 3]; 3], [0.0, 0.0, -b_field])
    }

    pub fn hamiltonian(&self) -> CMatrix {
        self.hamiltonian_with(&SpinOperatorSet::new(self.s))
    }

    pub fn hamiltonian_with(&self, ops: &SpinOperatorSet) -> CMatrix {
        let comps = ops.cartesian();
        let mut h = CMatrix::zeros(ops.dim(), ops.dim());
        for i in 0..3 {
            if self.b[i] != 0.0 {
                h += comps[i] * Complex64::new(self.b[i], 0.0);
            }
            for j in 0..3 {
                if self.a[i][j] != 0.0 {
                    h += comps[i] * comps[j] * Complex64::new(self.a[i][j], 0.0);
                }
            }
        }
        h
    }

    /// Classical energy `f(S n)` for a unit (or off-sphere) vector `n`.
    pub fn classical_energy(&self, n: [f64; 3]) -> f64 {
        let m = n.map(|x| x * self.s.value());
        let mut e = 0.0;
        for i in 0..3 {
            e += self.b[i] * m[i];
            for j in 0..3 {
                e += self.a[i][j] * m[i] * m[j];
            }
        }
        e
    }

    /// `d f / d n_k` with `f` extended off the sphere as a polynomial in `m = S n`.
    pub fn classical_gradient(&self, n: [f64; 3]) -> [f64; 3] {
        let s = self.s.value();
        let mut g = [0.0; 3];
        for k in 0..3 {
            g[k] = s * self.b[k];
            for j in 0..3 {
                g[k] += 2.0 * s * s * self.a[k][j] * n[j];
            }
        }
        g
    }

    /// `d^2 f / d n_k d n_l`.
    pub fn classical_hessian(&self) -> [[f64; 3]; 3] {
        let s2 = self.s.value() * self.s.value();
        self.a.map(|row| row.map(|x| 2.0 * s2 * x))
    }
}

/// Classical spin Hamiltonian `f(S n)` with derivatives taken with
/// respect to the unconstrained components of `n`.
pub trait ClassicalSpinHamiltonian: Sync {
    fn spin(&self) -> SpinQuantum;
    fn energy(&self, n: [f64; 3]) -> f64;
    fn gradient(&self, n: [f64; 3]) -> [f64; 3];
    fn hessian(&self, n: [f64; 3]) -> [[f64; 3]; 3];
}

impl ClassicalSpinHamiltonian for QuadraticSpinModel {
    fn spin(&self) -> SpinQuantum {
        self.s
    }

    fn energy(&self, n: [f64; 3]) -> f64 {
        self.classical_energy(n)
    }

    fn gradient(&self, n: [f64; 3]) -> [f64; 3] {
        self.classical_gradient(n)
    }

    fn hessian(&self, _n: [f64; 3]) -> [[f64; 3]; 3] {
        self.classical_hessian()
    }
}

/// Build `sum a_ij S_i S_j + sum b_i S_i` for `m`.
pub fn build_quadratic_hamiltonian(m: &QuadraticSpinModel) -> CMatrix {
    m.hamiltonian()
}
