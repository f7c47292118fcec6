use num_complex::Complex64;

use super::coherent::sqrt_binomials;
use super::{SpinComponent, SpinQuantum};
use crate::linalg::{CMatrix, I};

/// Exact polynomial `<xi|A|xi> = sum_{p,q} c[p][q] conj(xi)^p xi^q` of an
/// operator in unnormalized coherent states, `0 <= p, q <= 2S`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolPolynomial {
    pub s: SpinQuantum,
    /// `coeffs[(p, q)]` multiplies `conj(xi)^p xi^q`.
    pub coeffs: CMatrix,
}

impl SymbolPolynomial {
    pub fn zeros(s: SpinQuantum) -> Self {
        Self {
            s,
            coeffs: CMatrix::zeros(s.dim(), s.dim()),
        }
    }

    pub fn evaluate(&self, xi: Complex64) -> Complex64 {
        let n = self.s.dim();
        let xc = xi.conj();
        let mut acc = Complex64::new(0.0, 0.0);
        // Horner in conj(xi) over rows of Horner in xi
        for p in (0..n).rev() {
            let mut row = Complex64::new(0.0, 0.0);
            for q in (0..n).rev() {
                row = row * xi + self.coeffs[(p, q)];
            }
            acc = acc * xc + row;
        }
        acc
    }

    /// Largest `|c[p][q] - conj(c[q][p])|`; zero for Hermitian operators.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.s.dim();
        let mut worst = 0.0f64;
        for p in 0..n {
            for q in 0..n {
                worst = worst.max((self.coeffs[(p, q)] - self.coeffs[(q, p)].conj()).norm());
            }
        }
        worst
    }

    pub fn max_abs_difference(&self, other: &SymbolPolynomial) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn map_pairs(&self, f: impl Fn(&mut CMatrix, usize, usize, Complex64)) -> SymbolPolynomial {
        let n = self.s.dim();
        let mut out = SymbolPolynomial::zeros(self.s);
        for p in 0..n {
            for q in 0..n {
                f(&mut out.coeffs, p, q, self.coeffs[(p, q)]);
            }
        }
        out
    }

    fn raise(&self) -> SymbolPolynomial {
        // d / d conj(xi)
        self.map_pairs(|out, p, q, c| {
            if p > 0 {
                out[(p - 1, q)] += c * p as f64;
            }
        })
    }

    fn lower(&self) -> SymbolPolynomial {
        // 2S conj(xi) - conj(xi)^2 d/d conj(xi); the p = 2S term cancels exactly
        let two_s = self.s.two_s() as usize;
        self.map_pairs(|out, p, q, c| {
            if p < two_s {
                out[(p + 1, q)] += c * (two_s - p) as f64;
            }
        })
    }

    fn weight(&self) -> SymbolPolynomial {
        // S - conj(xi) d/d conj(xi)
        let j = self.s.value();
        self.map_pairs(|out, p, q, c| out[(p, q)] += c * (j - p as f64))
    }
}

/// Coefficients of `<xi|A|xi>`: `c[i][k] = sqrt(C_i C_k) A[i][k]` with
/// `C_i = binomial(2S, i)` (row `i` is `sigma = S - i`).
pub fn polynomial_symbol(a: &CMatrix) -> SymbolPolynomial {
    let s = SpinQuantum::from_two_s(a.nrows() as u32 - 1);
    let w = sqrt_binomials(s);
    SymbolPolynomial {
        s,
        coeffs: CMatrix::from_fn(a.nrows(), a.ncols(), |i, k| a[(i, k)] * (w[i] * w[k])),
    }
}

/// Polynomial of `<xi|S_c A|xi>` from the polynomial of `<xi|A|xi>`, using
///
/// ```text
/// S_+ -> d/d xi*,   S_z -> S - xi* d/d xi*,   S_- -> 2S xi* - xi*^2 d/d xi*
/// ```
///
/// The c-number parts `S` and `2S xi*` are required for the identity to
/// hold; dropping them breaks agreement with the matrix product.
pub fn apply_xi_representation(component: SpinComponent, p: &SymbolPolynomial) -> SymbolPolynomial {
    match component {
        SpinComponent::Plus => p.raise(),
        SpinComponent::Minus => p.lower(),
        SpinComponent::Z => p.weight(),
        SpinComponent::X => {
            let (a, b) = (p.raise(), p.lower());
            SymbolPolynomial {
                s: p.s,
                coeffs: (a.coeffs + b.coeffs) * Complex64::new(0.5, 0.0),
            }
        }
        SpinComponent::Y => {
            let (a, b) = (p.raise(), p.lower());
            SymbolPolynomial {
                s: p.s,
                coeffs: (a.coeffs - b.coeffs) / (2.0 * I),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_hermitian;
    use crate::spin::{covariant_symbol, CoherentPoint, SpinOperatorSet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn binomial(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn identity_gives_binomials() {
        for two_s in 0..7u32 {
            let s = SpinQuantum::from_two_s(two_s);
            let p = polynomial_symbol(&CMatrix::identity(s.dim(), s.dim()));
            for i in 0..s.dim() {
                for k in 0..s.dim() {
                    let expect = if i == k { binomial(two_s as u64, i as u64) } else { 0.0 };
                    assert!((p.coeffs[(i, k)].re - expect).abs() < 1e-12 * expect.max(1.0));
                }
            }
        }
    }

    #[test]
    fn sz_spin_half_coefficients() {
        let ops = SpinOperatorSet::new(SpinQuantum::from_two_s(1));
        let p = polynomial_symbol(&ops.sz);
        assert!((p.coeffs[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((p.coeffs[(1, 1)].re + 0.5).abs() < 1e-15);
        assert!(p.coeffs[(0, 1)].norm() < 1e-15 && p.coeffs[(1, 0)].norm() < 1e-15);
    }

    #[test]
    fn evaluation_matches_normalized_symbol() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for two_s in [1u32, 2, 5] {
            let s = SpinQuantum::from_two_s(two_s);
            let a = random_hermitian(s.dim(), &mut rng);
            let p = polynomial_symbol(&a);
            let pt = CoherentPoint::new(1.3, 0.6);
            let xi = pt.xi().unwrap();
            let lhs = p.evaluate(xi);
            let rhs = covariant_symbol(&a, &pt) * (1.0 + xi.norm_sqr()).powi(two_s as i32);
            assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
            assert!(p.hermitian_defect() < 1e-14);
        }
    }

    #[test]
    fn sz_on_identity_symbol() {
        // <xi|S_z|xi> = S (1 - |xi|^2)(1 + |xi|^2)^(2S-1)
        for two_s in 1..6u32 {
            let s = SpinQuantum::from_two_s(two_s);
            let ops = SpinOperatorSet::new(s);
            let id = polynomial_symbol(&ops.identity());
            let got = apply_xi_representation(SpinComponent::Z, &id);
            assert!(got.max_abs_difference(&polynomial_symbol(&ops.sz)) < 1e-12);
            let xi = Complex64::new(0.4, -0.9);
            let r = xi.norm_sqr();
            let closed = s.value() * (1.0 - r) * (1.0 + r).powi(two_s as i32 - 1);
            assert!((got.evaluate(xi).re - closed).abs() < 1e-12 * closed.abs().max(1.0));
        }
    }

    #[test]
    fn raising_on_identity_spin_half() {
        let s = SpinQuantum::from_two_s(1);
        let ops = SpinOperatorSet::new(s);
        let got = apply_xi_representation(SpinComponent::Plus, &polynomial_symbol(&ops.identity()));
        assert!((got.coeffs[(0, 1)].re - 1.0).abs() < 1e-15);
        assert!(got.max_abs_difference(&polynomial_symbol(&ops.splus)) < 1e-15);
    }

    #[test]
    fn representation_carries_commutator() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let s = SpinQuantum::from_two_s(4);
        let p = polynomial_symbol(&random_hermitian(s.dim(), &mut rng));
        use SpinComponent::*;
        let pm = apply_xi_representation(Plus, &apply_xi_representation(Minus, &p));
        let mp = apply_xi_representation(Minus, &apply_xi_representation(Plus, &p));
        let z2 = apply_xi_representation(Z, &p);
        let lhs = SymbolPolynomial {
            s,
            coeffs: pm.coeffs - mp.coeffs,
        };
        let rhs = SymbolPolynomial {
            s,
            coeffs: z2.coeffs * Complex64::new(2.0, 0.0),
        };
        assert!(lhs.max_abs_difference(&rhs) < 1e-11);
    }

    #[test]
    fn printed_forms_without_c_numbers_fail() {
        // Regression pin: S_z -> -xi* d/dxi* alone does not reproduce <xi|S_z A|xi>.
        let s = SpinQuantum::from_two_s(2);
        let ops = SpinOperatorSet::new(s);
        let id = polynomial_symbol(&ops.identity());
        let full = apply_xi_representation(SpinComponent::Z, &id);
        let mut derivative_only = full.clone();
        for p in 0..s.dim() {
            for q in 0..s.dim() {
                derivative_only.coeffs[(p, q)] -= id.coeffs[(p, q)] * s.value();
            }
        }
        let truth = polynomial_symbol(&ops.sz);
        assert!(full.max_abs_difference(&truth) < 1e-13);
        assert!(derivative_only.max_abs_difference(&truth) > 0.5);
    }
}
