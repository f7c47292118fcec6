//! Uniaxial paramagnet in a transverse field, `H = -S_z^2 - B S_x`, and its
//! quasi-exactly-solvable partner: a particle in
//!
//! ```text
//! U(x) = (B^2/4) sinh^2 x - B (S + 1/2) cosh x,   -psi'' + U psi = eps psi.
//! ```
//!
//! Writing `psi = Phi exp(-(B/2) cosh x)` with `Phi = sum_sigma a_sigma e^{sigma x}`
//! turns the Schrödinger operator into a tridiagonal map on the `a_sigma`
//! which is the spin Hamiltonian conjugated by `diag(sqrt(binomial(2S, S - sigma)))`.
//! The lowest `2S + 1` particle levels therefore equal the spin levels with
//! unit slope and zero offset.

mod correspondence;
mod potential;
mod schrodinger;
mod susceptibility;
mod wavefunction;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, CMatrix, SymTridiagonal};
use crate::spin::{QuadraticSpinModel, SpinQuantum};

pub use correspondence::{verify_correspondence, CorrespondenceReport};
pub use potential::{
    classify_potential, effective_potential, EffectivePotentialModel, Potential, PotentialShape,
    PotentialShapeReport, DEFAULT_TIE_TOLERANCE,
};
pub use schrodinger::{solve_schrodinger, SchrodingerGrid, SchrodingerSolution, DEFAULT_SHIFT_TOLERANCE};
pub use susceptibility::{
    ground_energy, susceptibility_scan, BoundaryMaximum, SusceptibilityReport,
};
pub use wavefunction::{reconstruct_wavefunction, WavefunctionReport, WeightConvention};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniaxialModel {
    pub s: SpinQuantum,
    pub b_field: f64,
}

impl UniaxialModel {
    pub fn new(s: SpinQuantum, b_field: f64) -> Result<Self> {
        if !(b_field > 0.0) || !b_field.is_finite() {
            return Err(Error::invalid(format!("transverse field must be positive, got {b_field}")));
        }
        Ok(Self { s, b_field })
    }

    /// `B_0 = 2S + 1`.
    pub fn b0(&self) -> f64 {
        self.s.critical_field()
    }

    pub fn hamiltonian(&self) -> CMatrix {
        QuadraticSpinModel::uniaxial(self.s, self.b_field).hamiltonian()
    }

    /// The same Hamiltonian as a real tridiagonal matrix in the `S_z` basis.
    pub fn tridiagonal(&self) -> SymTridiagonal {
        uniaxial_tridiagonal(self.s, self.b_field)
    }
}

pub(crate) fn uniaxial_tridiagonal(s: SpinQuantum, b_field: f64) -> SymTridiagonal {
    let j = s.value();
    let dim = s.dim();
    let diag = (0..dim).map(|i| -s.sigma(i).powi(2)).collect();
    let off = (0..dim - 1)
        .map(|i| {
            let sigma = s.sigma(i);
            -0.5 * b_field * (j * (j + 1.0) - sigma * (sigma - 1.0)).sqrt()
        })
        .collect();
    SymTridiagonal { diag, off }
}

/// Exact eigenvalues of `-S_z^2 - B S_x`, ascending.
pub fn uniaxial_spin_spectrum(m: &UniaxialModel) -> Result<Vec<f64>> {
    Ok(hermitian_eigensystem(&m.hamiltonian())?.eigenvalues)
}
