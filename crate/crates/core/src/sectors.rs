//! Block decomposition of two infinite-dimensional models by a conserved
//! excitation number:
//!
//! * Dicke spin-boson model `H = w a^+a + e S_z - g (a^+ S_- + S_+ a)`, which
//!   conserves `r = a^+a + S_z`;
//! * two coupled oscillators `H = w a^+a + W b^+b + g (a^+ b^2 + a b^+2)`,
//!   which conserve `N = 2 a^+a + b^+b`.
//!
//! Every sector is finite; its matrix is real symmetric tridiagonal and is
//! diagonalized exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigensystem, CMatrix, SymTridiagonal};
use crate::spin::SpinQuantum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DickeModel {
    pub omega: f64,
    pub epsilon: f64,
    pub g: f64,
    pub s: SpinQuantum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoOscillatorModel {
    pub omega: f64,
    pub capital_omega: f64,
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectorState {
    /// Boson number `n` and spin projection `sigma`.
    Dicke { n: u64, sigma: f64 },
    Oscillators { n_a: u64, n_b: u64 },
}

#[derive(Debug, Clone)]
pub struct SectorSpectrum {
    /// Value of the conserved quantity (`r` or `N`).
    pub sector_label: f64,
    pub basis: Vec<SectorState>,
    pub eigenvalues: Vec<f64>,
}

fn tridiagonal_spectrum(diag: Vec<f64>, off: Vec<f64>) -> Vec<f64> {
    let n = diag.len();
    SymTridiagonal { diag, off }.lowest_eigenvalues(n)
}

/// Sector `a^+a + S_z = r` of the Dicke model, basis ordered by boson number.
pub fn dicke_sector(m: &DickeModel, r: f64) -> Result<SectorSpectrum> {
    let j = m.s.value();
    let frac = r - j;
    if (frac - frac.round()).abs() > 1e-9 {
        return Err(Error::invalid(format!(
            "sector label {r} must differ from S = {j} by an integer"
        )));
    }
    // sigma runs from min(S, r) down to -S with n = r - sigma >= 0
    let mut basis = Vec::new();
    for i in 0..m.s.dim() {
        let sigma = m.s.sigma(i);
        let n = r - sigma;
        if n > -0.5 {
            basis.push((n.round() as u64, sigma));
        }
    }
    if basis.is_empty() {
        return Err(Error::EmptySector {
            label: format!("r = {r}"),
        });
    }
    let diag = basis
        .iter()
        .map(|&(n, sigma)| m.omega * n as f64 + m.epsilon * sigma)
        .collect();
    let off = basis
        .windows(2)
        .map(|w| {
            let (n, sigma) = w[0];
            -m.g * ((n + 1) as f64).sqrt() * ((j + sigma) * (j - sigma + 1.0)).sqrt()
        })
        .collect();
    Ok(SectorSpectrum {
        sector_label: r,
        eigenvalues: tridiagonal_spectrum(diag, off),
        basis: basis
            .into_iter()
            .map(|(n, sigma)| SectorState::Dicke { n, sigma })
            .collect(),
    })
}

/// Dicke Hamiltonian on `n <= n_max` bosons times the spin space; rows are
/// `n * (2S + 1) + i` with `i` the spin row (`sigma = S - i`).
pub fn dicke_truncated_hamiltonian(m: &DickeModel, n_max: usize) -> CMatrix {
    let ds = m.s.dim();
    let j = m.s.value();
    let dim = (n_max + 1) * ds;
    let mut h = CMatrix::zeros(dim, dim);
    for n in 0..=n_max {
        for i in 0..ds {
            let sigma = m.s.sigma(i);
            let row = n * ds + i;
            h[(row, row)] = Complex64::new(m.omega * n as f64 + m.epsilon * sigma, 0.0);
            // a^+ S_- : (n, sigma) -> (n + 1, sigma - 1)
            if n < n_max && i + 1 < ds {
                let col = (n + 1) * ds + i + 1;
                let v = -m.g * ((n + 1) as f64).sqrt() * ((j + sigma) * (j - sigma + 1.0)).sqrt();
                h[(col, row)] = Complex64::new(v, 0.0);
                h[(row, col)] = Complex64::new(v, 0.0);
            }
        }
    }
    h
}

/// `a^+a + S_z` on the same truncated space.
pub fn dicke_excitation_operator(s: SpinQuantum, n_max: usize) -> CMatrix {
    let ds = s.dim();
    let dim = (n_max + 1) * ds;
    CMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new((r / ds) as f64 + s.sigma(r % ds), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Full spectrum of the truncated Dicke Hamiltonian. Only levels below
/// `omega * n_max / 2` are free of truncation artefacts.
pub fn dicke_truncated_full(m: &DickeModel, n_max: usize) -> Result<Vec<f64>> {
    if n_max < 1 {
        return Err(Error::invalid("boson cutoff must be at least 1"));
    }
    Ok(hermitian_eigensystem(&dicke_truncated_hamiltonian(m, n_max))?.eigenvalues)
}

/// Sector `2 n_a + n_b = N` of the two-oscillator model, basis ordered by `n_a`.
pub fn two_oscillator_sector(m: &TwoOscillatorModel, big_n: u64) -> SectorSpectrum {
    let basis: Vec<(u64, u64)> = (0..=big_n / 2).map(|na| (na, big_n - 2 * na)).collect();
    let diag = basis
        .iter()
        .map(|&(na, nb)| m.omega * na as f64 + m.capital_omega * nb as f64)
        .collect();
    // <n_a+1, n_b-2| a^+ b^2 |n_a, n_b> = sqrt(n_a+1) sqrt(n_b (n_b-1))
    let off = basis
        .windows(2)
        .map(|w| {
            let (na, nb) = w[0];
            m.g * ((na + 1) as f64).sqrt() * ((nb * (nb - 1)) as f64).sqrt()
        })
        .collect();
    SectorSpectrum {
        sector_label: big_n as f64,
        eigenvalues: tridiagonal_spectrum(diag, off),
        basis: basis
            .into_iter()
            .map(|(n_a, n_b)| SectorState::Oscillators { n_a, n_b })
            .collect(),
    }
}

/// Two-oscillator Hamiltonian on `n_a <= na_max`, `n_b <= nb_max`; row
/// `n_a * (nb_max + 1) + n_b`.
pub fn two_oscillator_truncated_hamiltonian(m: &TwoOscillatorModel, na_max: usize, nb_max: usize) -> CMatrix {
    let nb_dim = nb_max + 1;
    let dim = (na_max + 1) * nb_dim;
    let mut h = CMatrix::zeros(dim, dim);
    for na in 0..=na_max {
        for nb in 0..=nb_max {
            let row = na * nb_dim + nb;
            h[(row, row)] = Complex64::new(m.omega * na as f64 + m.capital_omega * nb as f64, 0.0);
            if na < na_max && nb >= 2 {
                let col = (na + 1) * nb_dim + nb - 2;
                let v = m.g * ((na + 1) as f64).sqrt() * ((nb * (nb - 1)) as f64).sqrt();
                h[(col, row)] = Complex64::new(v, 0.0);
                h[(row, col)] = Complex64::new(v, 0.0);
            }
        }
    }
    h
}

/// `2 a^+a + b^+b` on the truncated two-oscillator space.
pub fn two_oscillator_excitation_operator(na_max: usize, nb_max: usize) -> CMatrix {
    let nb_dim = nb_max + 1;
    let dim = (na_max + 1) * nb_dim;
    CMatrix::from_fn(dim, dim, |r, c| {
        if r == c {
            Complex64::new((2 * (r / nb_dim) + r % nb_dim) as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, frobenius_norm, hermiticity_defect};

    fn dicke(two_s: u32) -> DickeModel {
        DickeModel {
            omega: 1.0,
            epsilon: 1.3,
            g: 0.35,
            s: SpinQuantum::from_two_s(two_s),
        }
    }

    #[test]
    fn lowest_sector_is_one_state() {
        for two_s in 1..6u32 {
            let m = dicke(two_s);
            let sec = dicke_sector(&m, -m.s.value()).unwrap();
            assert_eq!(sec.basis.len(), 1);
            assert!((sec.eigenvalues[0] + m.epsilon * m.s.value()).abs() < 1e-15);
        }
    }

    #[test]
    fn jaynes_cummings_doublet() {
        let m = dicke(1);
        let sec = dicke_sector(&m, 0.5).unwrap();
        let root = ((m.epsilon - m.omega).powi(2) / 4.0 + m.g * m.g).sqrt();
        assert!((sec.eigenvalues[0] - (m.omega / 2.0 - root)).abs() < 1e-12);
        assert!((sec.eigenvalues[1] - (m.omega / 2.0 + root)).abs() < 1e-12);
    }

    #[test]
    fn invalid_and_empty_sectors() {
        let m = dicke(2);
        assert!(matches!(dicke_sector(&m, 0.5), Err(Error::InvalidParameter(_))));
        assert!(matches!(dicke_sector(&m, -2.0), Err(Error::EmptySector { .. })));
    }

    #[test]
    fn excitation_number_commutes() {
        for two_s in [1u32, 2, 3] {
            let m = dicke(two_s);
            let h = dicke_truncated_hamiltonian(&m, 12);
            let r = dicke_excitation_operator(m.s, 12);
            assert!(frobenius_norm(&commutator(&h, &r)) <= 1e-12);
            assert!(hermiticity_defect(&h) == 0.0);
        }
        let osc = TwoOscillatorModel {
            omega: 1.0,
            capital_omega: 0.6,
            g: 0.2,
        };
        let h = two_oscillator_truncated_hamiltonian(&osc, 6, 12);
        let n = two_oscillator_excitation_operator(6, 12);
        assert!(frobenius_norm(&commutator(&h, &n)) <= 1e-12);
    }

    #[test]
    fn decoupled_truncated_levels() {
        let mut m = dicke(2);
        m.g = 0.0;
        let levels = dicke_truncated_full(&m, 4).unwrap();
        assert_eq!(levels.len(), 5 * 3);
        let mut expected: Vec<f64> = (0..=4)
            .flat_map(|n| (0..3).map(move |i| n as f64 + 1.3 * (1.0 - i as f64)))
            .collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in levels.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn two_oscillator_small_sectors() {
        let m = TwoOscillatorModel {
            omega: 1.1,
            capital_omega: 0.45,
            g: 0.3,
        };
        let zero = two_oscillator_sector(&m, 0);
        assert_eq!(zero.eigenvalues, vec![0.0]);
        let two = two_oscillator_sector(&m, 2);
        let mean = (m.omega + 2.0 * m.capital_omega) / 2.0;
        let root = ((m.omega - 2.0 * m.capital_omega).powi(2) / 4.0 + 2.0 * m.g * m.g).sqrt();
        assert!((two.eigenvalues[0] - (mean - root)).abs() < 1e-12);
        assert!((two.eigenvalues[1] - (mean + root)).abs() < 1e-12);

        let free = TwoOscillatorModel { g: 0.0, ..m };
        let sec = two_oscillator_sector(&free, 7);
        let mut expected: Vec<f64> = (0..=3u64).map(|na| 1.1 * na as f64 + 0.45 * (7 - 2 * na) as f64).collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in sec.eigenvalues.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
