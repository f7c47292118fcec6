use super::UniaxialModel;
use crate::spin::SpinQuantum;

/// A one-dimensional potential `U(x)`.
pub trait Potential: Sync {
    fn value(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64 + Sync> Potential for F {
    fn value(&self, x: f64) -> f64 {
        self(x)
    }
}

/// `U(x) = (B^2/4) sinh^2 x - B (S + 1/2) cosh x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectivePotentialModel {
    pub s: SpinQuantum,
    pub b_field: f64,
}

impl EffectivePotentialModel {
    pub fn evaluate(&self, x: f64) -> f64 {
        let b = self.b_field;
        let sh = x.sinh();
        0.25 * b * b * sh * sh - b * (self.s.value() + 0.5) * x.cosh()
    }

    /// Smallest `x >= 0` with `U(x) >= level`.
    pub fn turning_point_above(&self, level: f64) -> f64 {
        let mut hi = 1.0;
        while self.evaluate(hi) < level {
            hi *= 2.0;
        }
        let mut lo = 0.0;
        if self.evaluate(lo) >= level {
            return 0.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.evaluate(mid) < level {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    /// Taylor coefficients `(c0, c2, c4)` of `U` about `x = 0`.
    pub fn taylor(&self) -> [f64; 3] {
        let b = self.b_field;
        let two_s_plus_one = self.s.critical_field();
        [
            -b * (self.s.value() + 0.5),
            0.25 * b * (b - two_s_plus_one),
            b * b / 12.0 - b * two_s_plus_one / 48.0,
        ]
    }
}

impl Potential for EffectivePotentialModel {
    fn value(&self, x: f64) -> f64 {
        self.evaluate(x)
    }
}

pub fn effective_potential(m: &UniaxialModel) -> EffectivePotentialModel {
    EffectivePotentialModel {
        s: m.s,
        b_field: m.b_field,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialShape {
    SingleWell,
    DoubleWell,
    /// `B = B_0`: the quadratic term vanishes and the minimum is quartic.
    QuarticMinimum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialShapeReport {
    pub shape: PotentialShape,
    pub minima: Vec<f64>,
    /// `(c0, c2, c4)`.
    pub taylor: [f64; 3],
}

/// Relative tolerance for treating `B` as equal to `B_0`.
pub const DEFAULT_TIE_TOLERANCE: f64 = 1e-9;

/// Shape of `U` from the sign of `B - B_0`. Minima come from
/// `U'(x) = sinh x ((B^2/2) cosh x - B (S + 1/2))`, i.e. `cosh x* = B_0 / B`.
///
/// `|B - B_0| <= tie_tol * B_0` is classified as [`PotentialShape::QuarticMinimum`].
pub fn classify_potential(m: &UniaxialModel, tie_tol: f64) -> PotentialShapeReport {
    let pot = effective_potential(m);
    let b0 = m.b0();
    let b = m.b_field;
    let taylor = pot.taylor();
    if (b - b0).abs() <= tie_tol * b0 {
        PotentialShapeReport {
            shape: PotentialShape::QuarticMinimum,
            minima: vec![0.0],
            taylor,
        }
    } else if b > b0 {
        PotentialShapeReport {
            shape: PotentialShape::SingleWell,
            minima: vec![0.0],
            taylor,
        }
    } else {
        let x_star = (b0 / b).acosh();
        PotentialShapeReport {
            shape: PotentialShape::DoubleWell,
            minima: vec![-x_star, x_star],
            taylor,
        }
    }
}
