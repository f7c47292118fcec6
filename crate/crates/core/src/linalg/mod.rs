//! Dense complex matrices and the numeric kernels shared by every module:
//! a cyclic Jacobi eigensolver for Hermitian matrices, a Sturm-bisection
//! solver for real symmetric tridiagonal matrices, and unitary evolution.

mod jacobi;
mod tridiag;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

pub use jacobi::hermitian_eigensystem;
pub use tridiag::{SymTridiagonal, TridiagonalEigen};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored column by column.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl Eigensystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(f(lambda)) V^H`.
    pub fn spectral_map<F: Fn(f64) -> Complex64>(&self, f: F) -> CMatrix {
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            for r in 0..v.nrows() {
                scaled[(r, k)] *= w;
            }
        }
        &scaled * v.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.spectral_map(|x| Complex64::new(x, 0.0))
    }

    /// `exp(-i H t)` for the Hermitian matrix this system was computed from.
    pub fn propagator(&self, t: f64) -> CMatrix {
        self.spectral_map(|e| (-I * e * t).exp())
    }
}

pub fn frobenius_norm(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise deviation from Hermiticity.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn to_complex(a: &DMatrix<f64>) -> CMatrix {
    a.map(|x| Complex64::new(x, 0.0))
}

/// `exp(-i H t) v` through the eigendecomposition of `H`.
pub fn evolve(h: &CMatrix, t: f64, v: &CVector) -> Result<CVector> {
    if h.nrows() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: h.nrows(),
            found: v.len(),
        });
    }
    let eig = hermitian_eigensystem(h)?;
    Ok(evolve_with(&eig, t, v))
}

/// Same as [`evolve`] but reuses an existing eigendecomposition.
pub fn evolve_with(eig: &Eigensystem, t: f64, v: &CVector) -> CVector {
    let vecs = &eig.eigenvectors;
    let mut coeffs = vecs.adjoint() * v;
    for (c, &e) in coeffs.iter_mut().zip(&eig.eigenvalues) {
        *c *= (-I * e * t).exp();
    }
    vecs * coeffs
}

/// Random Hermitian matrix with entries of order one.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let mut a = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        a[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in (i + 1)..dim {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            a[(i, j)] = z;
            a[(j, i)] = z.conj();
        }
    }
    a
}

/// Random complex matrix, not necessarily Hermitian.
pub fn random_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}
