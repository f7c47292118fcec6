use num_complex::Complex64;

use super::{CoherentPoint, SpinComponent, SpinQuantum};
use crate::error::{Error, Result};
use crate::linalg::I;

/// A complex function sampled on the sphere in `(theta, phi)` coordinates.
pub trait SphereFunction {
    fn eval(&self, theta: f64, phi: f64) -> Complex64;
}

impl<F: Fn(f64, f64) -> Complex64> SphereFunction for F {
    fn eval(&self, theta: f64, phi: f64) -> Complex64 {
        self(theta, phi)
    }
}

fn check_chart(point: &CoherentPoint, h: f64) -> Result<()> {
    if !(h > 0.0) {
        return Err(Error::invalid(format!("finite-difference step must be positive, got {h}")));
    }
    if point.theta <= h || point.theta >= std::f64::consts::PI - h {
        return Err(Error::PoleSingularity {
            theta: point.theta,
            reach: h,
        });
    }
    Ok(())
}

/// Tangential gradient `grad F = e_theta dF/dtheta + e_phi (1/sin theta) dF/dphi`
/// by second-order central differences with step `h` in both angles.
pub fn sphere_gradient<F: SphereFunction + ?Sized>(
    f: &F,
    point: &CoherentPoint,
    h: f64,
) -> Result<[Complex64; 3]> {
    check_chart(point, h)?;
    let (t, p) = (point.theta, point.phi);
    let d_theta = (f.eval(t + h, p) - f.eval(t - h, p)) / (2.0 * h);
    let d_phi = (f.eval(t, p + h) - f.eval(t, p - h)) / (2.0 * h * t.sin());
    let (e_t, e_p) = point.tangent_frame();
    Ok([0, 1, 2].map(|k| d_theta * e_t[k] + d_phi * e_p[k]))
}

/// `S_c F` in the normalized coherent representation,
///
/// ```text
/// S = S n + (a - i b) / 2,   b = n x grad,   a = -n x b = grad (tangential)
/// ```
///
/// evaluated at `point` with central differences of step `h` (error
/// `O(h^2)`). The point must be farther than `h` from both poles.
pub fn apply_sphere_representation<F: SphereFunction + ?Sized>(
    s: SpinQuantum,
    component: SpinComponent,
    f: &F,
    point: &CoherentPoint,
    h: f64,
) -> Result<Complex64> {
    let grad = sphere_gradient(f, point, h)?;
    let n = point.unit_vector();
    let value = f.eval(point.theta, point.phi);
    let b = cross(n, grad);
    let cart: [Complex64; 3] =
        [0, 1, 2].map(|k| value * (s.value() * n[k]) + 0.5 * (grad[k] - I * b[k]));
    Ok(match component {
        SpinComponent::X => cart[0],
        SpinComponent::Y => cart[1],
        SpinComponent::Z => cart[2],
        SpinComponent::Plus => cart[0] + I * cart[1],
        SpinComponent::Minus => cart[0] - I * cart[1],
    })
}

fn cross(n: [f64; 3], v: [Complex64; 3]) -> [Complex64; 3] {
    [
        v[2] * n[1] - v[1] * n[2],
        v[0] * n[2] - v[2] * n[0],
        v[1] * n[0] - v[0] * n[1],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_hermitian;
    use crate::spin::{covariant_symbol, SpinOperatorSet};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_function_gives_classical_part() {
        let s = SpinQuantum::from_two_s(3);
        let one = |_: f64, _: f64| Complex64::new(1.0, 0.0);
        let p = CoherentPoint::new(0.9, 1.7);
        let got = apply_sphere_representation(s, SpinComponent::Z, &one, &p, 1e-3).unwrap();
        assert!((got.re - 1.5 * 0.9f64.cos()).abs() < 1e-14);
    }

    #[test]
    fn sz_on_sz_symbol() {
        for two_s in [1u32, 2, 5] {
            let s = SpinQuantum::from_two_s(two_s);
            let ops = SpinOperatorSet::new(s);
            let sz = ops.sz.clone();
            let g = move |t: f64, p: f64| covariant_symbol(&sz, &CoherentPoint::new(t, p));
            let pt = CoherentPoint::new(1.1, 0.3);
            let got = apply_sphere_representation(s, SpinComponent::Z, &g, &pt, 1e-4).unwrap();
            let j = s.value();
            let (st, ct) = pt.theta.sin_cos();
            let closed = j * j * ct * ct + 0.5 * j * st * st;
            assert!((got.re - closed).abs() < 1e-6, "{} vs {}", got.re, closed);
        }
    }

    #[test]
    fn pole_is_rejected() {
        let s = SpinQuantum::from_two_s(2);
        let one = |_: f64, _: f64| Complex64::new(1.0, 0.0);
        let err = apply_sphere_representation(s, SpinComponent::X, &one, &CoherentPoint::new(1e-4, 0.0), 1e-3);
        assert!(matches!(err, Err(Error::PoleSingularity { .. })));
    }

    #[test]
    fn identity_converges_at_second_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let s = SpinQuantum::from_two_s(4);
        let ops = SpinOperatorSet::new(s);
        let a = random_hermitian(s.dim(), &mut rng);
        let pt = CoherentPoint::new(1.2, 2.2);
        for c in [SpinComponent::X, SpinComponent::Y, SpinComponent::Z, SpinComponent::Plus] {
            let exact = covariant_symbol(&(ops.component(c) * &a), &pt);
            let g = |t: f64, p: f64| covariant_symbol(&a, &CoherentPoint::new(t, p));
            let e1 = (apply_sphere_representation(s, c, &g, &pt, 0.02).unwrap() - exact).norm();
            let e2 = (apply_sphere_representation(s, c, &g, &pt, 0.01).unwrap() - exact).norm();
            let ratio = e1 / e2;
            assert!((3.5..4.5).contains(&ratio), "{c:?}: ratio {ratio}");
        }
    }
}
