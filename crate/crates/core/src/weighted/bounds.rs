//! Closed-form bounds: explicit constants for sub-hyperbolic and
//! quasi-Euclidean weights, critical exponents and McKean-type bounds.

use crate::error::{invalid, Error, Result};
use crate::Real;

/// Sobolev exponent 2N/(N−2); infinite for N = 2.
pub fn sobolev_exponent<T: Real>(dimension: usize) -> T {
    if dimension <= 2 {
        T::infinity()
    } else {
        let n = T::from_usize_lossy(dimension);
        T::lit(2.0) * n / (n - T::lit(2.0))
    }
}

/// 2N − (N−2)p, which equals (N−2)(2* − p) for N ≥ 3 and 4 for N = 2.
fn cap_exponent<T: Real>(dimension: usize, p: T) -> T {
    let n = T::from_usize_lossy(dimension);
    T::lit(2.0) * n - (n - T::lit(2.0)) * p
}

fn check_dimension(dimension: usize) -> Result<()> {
    if dimension < 2 {
        return Err(invalid(
            "n",
            dimension as f64,
            "dimension must be at least 2",
        ));
    }
    Ok(())
}

fn positive<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(invalid(name, v.as_f64(), "must be positive and finite"))
    }
}

/// Explicit upper bound on B(w, p) for weights with ψ ≥ r, ψ′ ≥ 0 and
/// ψ′/ψ ≥ c r^{−α} on [r0, ∞), valid for p ∈ (2, 2*).
///
/// Assembled from the critical-point reduction
/// sup Q ≤ (p/2)^{1/2} sup ψ^{1−N} W^{(p+2)/(2p)}, split at r0.
pub fn lemma41_bound<T: Real>(dimension: usize, alpha: T, c: T, r0: T, p: T) -> Result<T> {
    check_dimension(dimension)?;
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(invalid("alpha", alpha.as_f64(), "must lie in (0, 1)"));
    }
    positive("c", c)?;
    positive("r0", r0)?;
    let two = T::lit(2.0);
    if !(p > two && p < sobolev_exponent(dimension)) {
        return Err(Error::InvalidExponent {
            p: p.as_f64(),
            range: "(2, 2*)",
        });
    }
    let one = T::one();
    let n1 = T::from_usize_lossy(dimension - 1);
    let e2 = cap_exponent(dimension, p);
    let s2 = r0.powf(e2 / (two * p));
    let beta = alpha / (one - alpha);
    let cn = c * n1;
    let log_coef = beta * (alpha * (p + two)).ln()
        - cn.ln() / (one - alpha)
        - beta * (p - two).ln()
        - n1 * (p - two) / (p + two) * r0.ln()
        + cn * (p - two) * r0.powf(one - alpha) / ((p + two) * (one - alpha))
        - beta;
    let s3 = (r0.powf(e2 / (p + two)) + log_coef.exp()).powf((p + two) / (two * p));
    Ok((p / two).sqrt() * s2.max(s3))
}

/// Explicit upper bound on B(w, p) for weights with ψ ≥ r, ψ′ ≥ 0 and
/// ψ′/ψ ≥ c/r − c′/r^q on [r0, ∞), valid for p ∈ [2Ñ/(Ñ−2), 2*) with
/// Ñ = c(N−1) + 1. Grows like √p.
pub fn lemma42_bound<T: Real>(dimension: usize, c: T, c_prime: T, q: T, r0: T, p: T) -> Result<T> {
    check_dimension(dimension)?;
    let one = T::one();
    let two = T::lit(2.0);
    if !(c > one) || !c.is_finite() {
        return Err(invalid("c", c.as_f64(), "must exceed 1"));
    }
    positive("c_prime", c_prime)?;
    if !(q > one) || !q.is_finite() {
        return Err(invalid("q", q.as_f64(), "must exceed 1"));
    }
    positive("r0", r0)?;
    let n1 = T::from_usize_lossy(dimension - 1);
    let n_tilde = c * n1 + one;
    let critical = two * n_tilde / (n_tilde - two);
    if !p.is_finite() || p < critical * (one - T::lit(1e-12)) {
        return Err(Error::BelowCriticalExponent {
            p: p.as_f64(),
            critical: critical.as_f64(),
        });
    }
    if p >= sobolev_exponent(dimension) {
        return Err(Error::InvalidExponent {
            p: p.as_f64(),
            range: "[2N~/(N~-2), 2*)",
        });
    }
    let r_hat = r0.max((two * c_prime / (c - one)).powf(one / (q - one)));
    let log_kappa = (one - c) * r0.ln() - c_prime * r0.powf(one - q) / (q - one);
    let e2 = cap_exponent(dimension, p);
    let s2 = r_hat.powf(e2 / (two * p));
    let decay = one - c * n1 * (p - two) / (p + two);
    let s3_tail = two * (-n1 * (p - two) / (p + two) * log_kappa).exp() * r_hat.powf(decay)
        / ((c + one) * n1);
    let s3 = (r_hat.powf(e2 / (p + two)) + s3_tail).powf((p + two) / (two * p));
    let n2 = T::from_usize_lossy(dimension - 2);
    let tail_w = (one + two / ((c + one) * n1)).powf(one / p);
    let tail_t = two
        * (-n1 * (p - two) / p * log_kappa).exp()
        * r_hat.powf(((p + two) - c * n1 * (p - two)) / p)
        / ((c - one) * n1 + two * n2);
    let tail = tail_w * tail_t.sqrt();
    Ok(((p / two).sqrt() * s2.max(s3)).max(tail))
}

/// (Ñ, 2̃) with Ñ = (N + 1 + √(1+4C₁)(N−1))/2 and 2̃ = 2Ñ/(Ñ−2).
pub fn critical_exponents<T: Real>(dimension: usize, c1: T) -> Result<(T, T)> {
    check_dimension(dimension)?;
    if !(c1 >= T::zero() && c1.is_finite()) {
        return Err(invalid("c1", c1.as_f64(), "must be nonnegative and finite"));
    }
    let n = T::from_usize_lossy(dimension);
    let two = T::lit(2.0);
    let n_tilde = (n + T::one() + (T::one() + T::lit(4.0) * c1).sqrt() * (n - T::one())) / two;
    let two_tilde = if n_tilde <= two {
        T::infinity()
    } else {
        two * n_tilde / (n_tilde - two)
    };
    Ok((n_tilde, two_tilde))
}

/// Bounds under Sect ≤ −k: (sup Q ≤ 1/(√k(N−1)), Poincaré constant
/// 2/(√k(N−1)), spectral gap k(N−1)²/4).
pub fn mckean_bounds<T: Real>(dimension: usize, k: T) -> Result<(T, T, T)> {
    check_dimension(dimension)?;
    positive("k", k)?;
    let n1 = T::from_usize_lossy(dimension - 1);
    let s = k.sqrt() * n1;
    Ok((T::one() / s, T::lit(2.0) / s, s * s / T::lit(4.0)))
}

/// Converts a reduced one-dimensional constant to the constant of the
/// inequality on the manifold, C_M = C ω_{N−1}^{1/p − 1/2}.
pub fn manifold_constant<T: Real>(reduced: T, p: T, dimension: usize) -> T {
    let omega: T = crate::unit_sphere_area(dimension);
    reduced * omega.powf(T::one() / p - T::lit(0.5))
}
