//! Finite spin representations: operator matrices, coherent states and the
//! two differential representations of spin acting on coherent-state
//! symbols.
//!
//! Basis ordering: index `i` holds `|sigma = S - i>`, so row 0 is `|S>` and
//! the last row is `|-S>`.

mod coherent;
mod model;
mod sphere;
mod symbol;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, CMatrix, I};

pub use coherent::{coherent_state, coherent_weights, coherent_state_xi, covariant_symbol, CoherentPoint};
pub use model::{build_quadratic_hamiltonian, ClassicalSpinHamiltonian, QuadraticSpinModel};
pub use sphere::{apply_sphere_representation, sphere_gradient, SphereFunction};
pub use symbol::{apply_xi_representation, polynomial_symbol, SymbolPolynomial};

/// Spin length stored as the integer `2S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinQuantum {
    two_s: u32,
}

impl SpinQuantum {
    pub const fn from_two_s(two_s: u32) -> Self {
        Self { two_s }
    }

    /// Parses a spin value such as `0.5`, `1`, `7.5`.
    pub fn from_spin(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        if !twice.is_finite() || twice < 0.0 || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "spin must be a non-negative integer or half-integer, got {s}"
            )));
        }
        Ok(Self {
            two_s: twice.round() as u32,
        })
    }

    pub const fn two_s(self) -> u32 {
        self.two_s
    }

    pub const fn dim(self) -> usize {
        self.two_s as usize + 1
    }

    pub fn value(self) -> f64 {
        self.two_s as f64 / 2.0
    }

    /// Magnetic quantum number of basis row `i`.
    pub fn sigma(self, i: usize) -> f64 {
        self.value() - i as f64
    }

    /// Critical transverse field `2S + 1` of the uniaxial model.
    pub fn critical_field(self) -> f64 {
        self.two_s as f64 + 1.0
    }
}

impl std::fmt::Display for SpinQuantum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.two_s % 2 == 0 {
            write!(f, "{}", self.two_s / 2)
        } else {
            write!(f, "{}/2", self.two_s)
        }
    }
}

/// Cartesian spin components together with the ladder combinations
/// `S_+ = S_x + i S_y` and `S_- = S_x - i S_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinComponent {
    X,
    Y,
    Z,
    Plus,
    Minus,
}

impl SpinComponent {
    pub const CARTESIAN: [SpinComponent; 3] = [SpinComponent::X, SpinComponent::Y, SpinComponent::Z];

    pub fn cartesian_index(self) -> Option<usize> {
        match self {
            SpinComponent::X => Some(0),
            SpinComponent::Y => Some(1),
            SpinComponent::Z => Some(2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpinOperatorSet {
    pub s: SpinQuantum,
    pub sx: CMatrix,
    pub sy: CMatrix,
    pub sz: CMatrix,
    pub splus: CMatrix,
    pub sminus: CMatrix,
}

impl SpinOperatorSet {
    pub fn new(s: SpinQuantum) -> Self {
        let dim = s.dim();
        let j = s.value();
        let mut up = DMatrix::<f64>::zeros(dim, dim);
        // <sigma+1| S_+ |sigma> = sqrt(S(S+1) - sigma(sigma+1)), row i-1 <- column i
        for i in 1..dim {
            let sigma = s.sigma(i);
            up[(i - 1, i)] = (j * (j + 1.0) - sigma * (sigma + 1.0)).sqrt();
        }
        let splus = up.map(|x| Complex64::new(x, 0.0));
        let sminus = splus.transpose();
        let sx = (&splus + &sminus).map(|z| z * 0.5);
        let sy = (&splus - &sminus).map(|z| z / (2.0 * I));
        let sz = CMatrix::from_fn(dim, dim, |r, c| {
            if r == c {
                Complex64::new(s.sigma(r), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        Self {
            s,
            sx,
            sy,
            sz,
            splus,
            sminus,
        }
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }

    pub fn component(&self, c: SpinComponent) -> &CMatrix {
        match c {
            SpinComponent::X => &self.sx,
            SpinComponent::Y => &self.sy,
            SpinComponent::Z => &self.sz,
            SpinComponent::Plus => &self.splus,
            SpinComponent::Minus => &self.sminus,
        }
    }

    pub fn cartesian(&self) -> [&CMatrix; 3] {
        [&self.sx, &self.sy, &self.sz]
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim())
    }

    /// `n . S` for a (not necessarily unit) direction.
    pub fn along(&self, n: [f64; 3]) -> CMatrix {
        &self.sx * Complex64::new(n[0], 0.0)
            + &self.sy * Complex64::new(n[1], 0.0)
            + &self.sz * Complex64::new(n[2], 0.0)
    }

    /// Wigner rotation `R = exp(-i angle S_y)`.
    pub fn rotation_about_y(&self, angle: f64) -> Result<CMatrix> {
        Ok(hermitian_eigensystem(&self.sy)?.propagator(angle))
    }

    /// Conjugates `op` by the rotation about `y`: returns `R^H op R`.
    ///
    /// Useful to move a point of interest away from the poles of the
    /// `(theta, phi)` chart: `<n|R^H A R|n> = <R n|A|R n>`.
    pub fn rotate_operator(&self, op: &CMatrix, angle: f64) -> Result<CMatrix> {
        let r = self.rotation_about_y(angle)?;
        Ok(r.adjoint() * op * r)
    }
}

pub fn build_spin_operators(s: SpinQuantum) -> SpinOperatorSet {
    SpinOperatorSet::new(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, frobenius_norm};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn spin_half_is_half_pauli() {
        let ops = SpinOperatorSet::new(SpinQuantum::from_two_s(1));
        let sx = CMatrix::from_row_slice(2, 2, &[c(0.0), c(0.5), c(0.5), c(0.0)]);
        let sz = CMatrix::from_row_slice(2, 2, &[c(0.5), c(0.0), c(0.0), c(-0.5)]);
        assert!(frobenius_norm(&(&ops.sx - sx)) < 1e-15);
        assert!(frobenius_norm(&(&ops.sz - sz)) < 1e-15);
    }

    #[test]
    fn spin_one_sz_diagonal() {
        let ops = SpinOperatorSet::new(SpinQuantum::from_two_s(2));
        let diag: Vec<f64> = (0..3).map(|i| ops.sz[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, 0.0, -1.0]);
    }

    #[test]
    fn commutators_and_casimir() {
        for two_s in 0..=12 {
            let s = SpinQuantum::from_two_s(two_s);
            let ops = SpinOperatorSet::new(s);
            let j = s.value();
            let scale = (j * j).max(1.0);
            let [x, y, z] = ops.cartesian();
            assert!(frobenius_norm(&(commutator(x, y) - z * I)) <= 1e-12 * scale);
            assert!(frobenius_norm(&(commutator(y, z) - x * I)) <= 1e-12 * scale);
            assert!(frobenius_norm(&(commutator(z, x) - y * I)) <= 1e-12 * scale);
            let cas = x * x + y * y + z * z - ops.identity() * c(j * (j + 1.0));
            assert!(frobenius_norm(&cas) <= 1e-12 * scale);
            // sx real symmetric, sy purely imaginary
            assert!(x.iter().all(|v| v.im == 0.0));
            assert!(y.iter().all(|v| v.re == 0.0));
            assert!(frobenius_norm(&(&ops.splus - (x + y * I))) < 1e-14 * scale);
        }
    }

    #[test]
    fn spin_three_halves_commutator() {
        let ops = SpinOperatorSet::new(SpinQuantum::from_spin(1.5).unwrap());
        let d = commutator(&ops.sx, &ops.sy) - &ops.sz * I;
        assert!(d.iter().all(|v| v.norm() < 1e-14));
    }

    #[test]
    fn from_spin_validates() {
        assert_eq!(SpinQuantum::from_spin(2.5).unwrap().two_s(), 5);
        assert!(SpinQuantum::from_spin(0.3).is_err());
        assert!(SpinQuantum::from_spin(-1.0).is_err());
        assert_eq!(SpinQuantum::from_two_s(3).to_string(), "3/2");
    }

    #[test]
    fn quarter_turn_maps_sz_to_sx() {
        let ops = SpinOperatorSet::new(SpinQuantum::from_two_s(3));
        let rotated = ops
            .rotate_operator(&ops.sz, std::f64::consts::FRAC_PI_2)
            .unwrap();
        // R^H S_z R = cos(a) S_z - sin(a) S_x
        assert!(frobenius_norm(&(rotated + &ops.sx)) < 1e-12);
    }
}
