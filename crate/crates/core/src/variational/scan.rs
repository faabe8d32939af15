//! Trial-function scans on growing domains.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::quadrature::integrate;
use crate::numerics::search::golden_max;
use crate::scalar::log_add_exp;
use crate::weighted::WeightMeasure;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FailurePoint<T> {
    pub r_domain: T,
    /// Smallest ‖g′‖_{2,w}/‖g‖_{p,w} found over the trapezoid family.
    pub ratio: T,
    /// g = 1 on [0, plateau].
    pub plateau: T,
    /// g = 0 beyond `support` ≤ r_domain.
    pub support: T,
}

/// ln of ‖g′‖_{2,w}/‖g‖_{p,w} for g = 1 on [0, a], linear down to 0 at b.
fn log_trapezoid_ratio<T: Real>(weight: &WeightMeasure<T>, p: T, a: T, b: T) -> T {
    let lwb = weight.log_cumulative(b);
    let lwa = weight.log_cumulative(a);
    // ln(W(b) − W(a))
    let shell = lwb + (-(lwa - lwb).exp()).ln_1p();
    let log_grad = (shell - T::lit(2.0) * (b - a).ln()) * T::lit(0.5);
    let ref_log = weight.log_weight(b);
    let ramp = integrate(
        T::zero(),
        T::one(),
        T::zero(),
        T::lit(1e-10),
        200,
        |s: T| {
            let r = a + (b - a) * s;
            (p * (T::one() - s).ln() + weight.log_weight(r) - ref_log).exp()
        },
    );
    let log_ramp = ref_log + (b - a).ln() + ramp.ln();
    let log_p = if a > T::zero() {
        log_add_exp(lwa, log_ramp)
    } else {
        log_ramp
    };
    log_grad - log_p / p
}

fn best_trapezoid<T: Real>(weight: &WeightMeasure<T>, p: T, r_domain: T) -> FailurePoint<T> {
    let lo = (r_domain * T::lit(1e-3)).ln();
    let hi = r_domain.ln();
    let theta_max = T::lit(0.995);
    // Best plateau fraction for a given support.
    let inner = |lb: T| -> (T, T) {
        let b = lb.exp();
        let f = |th: T| -log_trapezoid_ratio(weight, p, th * b, b);
        let coarse = (0..16)
            .map(|i| theta_max * T::from_usize_lossy(i) / T::lit(15.0))
            .map(|th| (th, f(th)))
            .fold((T::zero(), T::neg_infinity()), |acc, v| {
                if v.1 > acc.1 {
                    v
                } else {
                    acc
                }
            });
        let step = theta_max / T::lit(15.0);
        let (th, v, _) = golden_max(
            (coarse.0 - step).max(T::zero()),
            (coarse.0 + step).min(theta_max),
            T::lit(1e-6),
            80,
            f,
        );
        if v >= coarse.1 {
            (th, v)
        } else {
            coarse
        }
    };
    let samples = 24;
    let coarse = (0..samples)
        .map(|i| lo + (hi - lo) * T::from_usize_lossy(i) / T::from_usize_lossy(samples - 1))
        .map(|lb| (lb, inner(lb).1))
        .fold(
            (hi, T::neg_infinity()),
            |acc, v| if v.1 > acc.1 { v } else { acc },
        );
    let step = (hi - lo) / T::from_usize_lossy(samples - 1);
    let (lb, v, _) = golden_max(
        (coarse.0 - step).max(lo),
        (coarse.0 + step).min(hi),
        T::lit(1e-8),
        80,
        |lb| inner(lb).1,
    );
    let lb = if v >= coarse.1 { lb } else { coarse.0 };
    let (th, v) = inner(lb);
    let b = lb.exp();
    FailurePoint {
        r_domain,
        ratio: (-v).exp(),
        plateau: th * b,
        support: b,
    }
}

/// For each R, the smallest Rayleigh ratio over the trapezoids
/// g = min(1, (b − r)/(b − a))₊ with 0 ≤ a < b ≤ R.
///
/// Decreasing ratios along growing R witness the failure of the inequality;
/// bounded ones are consistent with a finite constant. Radii beyond the model
/// grid use the classified tail.
pub fn quasi_euclidean_failure_scan<T: Real>(
    weight: &WeightMeasure<T>,
    p: T,
    radii: &[T],
) -> Result<Vec<FailurePoint<T>>> {
    if !(p >= T::lit(2.0)) || !p.is_finite() {
        return Err(Error::InvalidExponent {
            p: p.as_f64(),
            range: "[2, inf)",
        });
    }
    if let Some(r) = radii.iter().find(|r| !(**r > T::zero()) || !r.is_finite()) {
        return Err(Error::OutOfDomain {
            r: r.as_f64(),
            r_max: f64::INFINITY,
        });
    }
    Ok(radii
        .par_iter()
        .map(|r| best_trapezoid(weight, p, *r))
        .collect())
}
