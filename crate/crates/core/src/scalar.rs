//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Converts an index or count.
    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Lossy conversion used for error messages and reports.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `ln(exp(a) + exp(b))` without overflow.
#[inline]
pub(crate) fn log_add_exp<T: Real>(a: T, b: T) -> T {
    if a == T::neg_infinity() {
        return b;
    }
    if b == T::neg_infinity() {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Surface measure of the unit sphere S^{n-1} in R^n.
pub fn unit_sphere_area<T: Real>(dimension: usize) -> T {
    // 2 pi^{n/2} / Gamma(n/2), with Gamma at half-integers by recurrence.
    let half = T::lit(0.5);
    let mut gamma = if dimension.is_multiple_of(2) {
        T::one()
    } else {
        T::PI().sqrt()
    };
    let mut x = if dimension.is_multiple_of(2) {
        T::one()
    } else {
        half
    };
    let target = T::from_usize_lossy(dimension) * half;
    while x < target - T::lit(0.25) {
        gamma *= x;
        x += T::one();
    }
    T::lit(2.0) * T::PI().powf(target) / gamma
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_areas() {
        assert!((unit_sphere_area::<f64>(2) - 2.0 * std::f64::consts::PI).abs() < 1e-14);
        assert!((unit_sphere_area::<f64>(3) - 4.0 * std::f64::consts::PI).abs() < 1e-13);
        let s3 = 2.0 * std::f64::consts::PI.powi(2);
        assert!((unit_sphere_area::<f64>(4) - s3).abs() < 1e-12);
        let s4 = 8.0 * std::f64::consts::PI.powi(2) / 3.0;
        assert!((unit_sphere_area::<f64>(5) - s4).abs() < 1e-12);
    }

    #[test]
    fn log_add_exp_is_stable() {
        let v: f64 = log_add_exp(1000.0, 1000.0);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 3.0), 3.0);
    }
}
