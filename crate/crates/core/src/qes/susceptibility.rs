use rayon::prelude::*;

use super::uniaxial_tridiagonal;
use crate::error::{Error, Result};
use crate::spin::SpinQuantum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryMaximum {
    Lower,
    Upper,
}

/// Zero-temperature transverse susceptibility `chi(B) = -d^2 E_0 / dB^2`.
#[derive(Debug, Clone)]
pub struct SusceptibilityReport {
    pub s: SpinQuantum,
    pub b_grid: Vec<f64>,
    pub chi_values: Vec<f64>,
    /// Argmax of `chi` refined by a parabola through the three best samples.
    pub b_star: f64,
    /// `(1 - b_star / B_0) (S + 1/2)^(2/3)`.
    pub gamma_estimate: f64,
    /// Set when the discrete maximum sits on an end of the scan.
    pub boundary: Option<BoundaryMaximum>,
}

/// Ground-state energy of `-S_z^2 - B S_x`.
pub fn ground_energy(s: SpinQuantum, b_field: f64) -> f64 {
    uniaxial_tridiagonal(s, b_field).eigenvalue(0)
}

/// Scans `chi(B)` over `b_range` on a uniform grid of spacing `db`, using the
/// five-point stencil on exact ground energies sampled on the same lattice.
pub fn susceptibility_scan(s: SpinQuantum, b_range: (f64, f64), db: f64) -> Result<SusceptibilityReport> {
    let (lo, hi) = b_range;
    let b0 = s.critical_field();
    if !(db > 0.0) {
        return Err(Error::invalid(format!("field step must be positive, got {db}")));
    }
    if !(lo - 2.0 * db > 0.0) || !(hi > lo) || hi + 2.0 * db >= 2.0 * b0 + 1e-12 * b0 {
        return Err(Error::invalid(format!(
            "field range ({lo}, {hi}) with step {db} must lie inside (0, 2 B0 = {})",
            2.0 * b0
        )));
    }
    let n = ((hi - lo) / db).round() as usize + 1;
    if n < 3 {
        return Err(Error::invalid("field range must span at least three samples"));
    }
    // lattice B_k = lo + (k - 2) db, k = 0..n+4
    let energies: Vec<f64> = (0..n + 4)
        .into_par_iter()
        .map(|k| ground_energy(s, lo + (k as f64 - 2.0) * db))
        .collect();
    let b_grid: Vec<f64> = (0..n).map(|k| lo + k as f64 * db).collect();
    let chi_values: Vec<f64> = (0..n)
        .map(|k| {
            let e = &energies[k..k + 5];
            -(-e[0] + 16.0 * e[1] - 30.0 * e[2] + 16.0 * e[3] - e[4]) / (12.0 * db * db)
        })
        .collect();

    let (k_max, _) = chi_values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bk, bv), (k, &v)| if v > bv { (k, v) } else { (bk, bv) });
    let (b_star, boundary) = if k_max == 0 {
        (b_grid[0], Some(BoundaryMaximum::Lower))
    } else if k_max == n - 1 {
        (b_grid[n - 1], Some(BoundaryMaximum::Upper))
    } else {
        let (y0, y1, y2) = (chi_values[k_max - 1], chi_values[k_max], chi_values[k_max + 1]);
        let curv = y0 - 2.0 * y1 + y2;
        let shift = if curv != 0.0 { 0.5 * (y0 - y2) / curv } else { 0.0 };
        (b_grid[k_max] + shift * db, None)
    };
    let gamma_estimate = (1.0 - b_star / b0) * (s.value() + 0.5).powf(2.0 / 3.0);
    Ok(SusceptibilityReport {
        s,
        b_grid,
        chi_values,
        b_star,
        gamma_estimate,
        boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_one_closed_form() {
        let s = SpinQuantum::from_two_s(2);
        let b0 = s.critical_field();
        let rep = susceptibility_scan(s, (0.1, 5.0), 1e-3 * b0).unwrap();
        for (b, chi) in rep.b_grid.iter().zip(&rep.chi_values) {
            let exact = 2.0 * (1.0 + 4.0 * b * b).powf(-1.5);
            assert!((chi - exact).abs() < 1e-7, "B={b}: {chi} vs {exact}");
        }
        assert!(rep.chi_values.windows(2).all(|w| w[1] < w[0]));
        assert_eq!(rep.boundary, Some(BoundaryMaximum::Lower));
    }

    #[test]
    fn spin_one_ground_energy() {
        let s = SpinQuantum::from_two_s(2);
        for &b in &[0.3f64, 2.0, 7.0] {
            let exact = (-1.0 - (1.0 + 4.0 * b * b).sqrt()) / 2.0;
            assert!((ground_energy(s, b) - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn spin_twenty_interior_maximum() {
        let s = SpinQuantum::from_two_s(40);
        let b0 = s.critical_field();
        let rep = susceptibility_scan(s, (0.4 * b0, 1.3 * b0), 1e-3 * b0).unwrap();
        assert!(rep.boundary.is_none());
        assert!((0.3..=3.0).contains(&rep.gamma_estimate), "gamma {}", rep.gamma_estimate);
        assert!(rep.b_star < b0);
        assert!(rep.chi_values.iter().all(|&c| c > 0.0));
    }

    #[test]
    fn range_validation() {
        let s = SpinQuantum::from_two_s(4);
        assert!(susceptibility_scan(s, (0.0, 2.0), 0.01).is_err());
        assert!(susceptibility_scan(s, (1.0, 9.99), 0.01).is_err());
        assert!(susceptibility_scan(s, (1.0, 2.0), -0.01).is_err());
    }
}
