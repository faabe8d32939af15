//! Smoothing-rate fits, analytic envelopes and the Moser iteration constants.

use serde::Serialize;

use super::solver::PmeState;
use crate::error::{invalid, Error, Result};
use crate::weighted::fit_line;
use crate::Real;

/// Minimal span of a fit window, in decades of t.
pub const MIN_DECADES: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ModelClass<T> {
    /// sup ≈ K t^s with s free.
    PowerOnly,
    /// sup ≈ K [ln(t M^{m−1} + e)]^γ t^{−1/(m−1)} with γ = (2+β)/((m−1)(2−β))
    /// fixed and M the mass carried by each state.
    PowerWithLog { beta: T, m: T },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothingFit<T> {
    pub class: ModelClass<T>,
    /// d ln sup / d ln t; fixed at −1/(m−1) for the log model.
    pub power_exponent: T,
    pub log_correction_exponent: Option<T>,
    pub k_fit: T,
    pub window: (T, T),
    /// Euclidean norm of the residuals in ln sup.
    pub residual_norm: T,
    pub points: usize,
}

/// Exponent of ln t in the upper envelope: (2+β)/((m−1)(2−β)).
pub fn log_exponent<T: Real>(beta: T, m: T) -> T {
    let two = T::lit(2.0);
    (two + beta) / ((m - T::one()) * (two - beta))
}

fn check_beta_m<T: Real>(beta: T, m: T) -> Result<()> {
    if !(beta >= T::zero() && beta < T::lit(2.0)) {
        return Err(invalid("beta", beta.as_f64(), "must lie in [0, 2)"));
    }
    if !(m > T::one()) || !m.is_finite() {
        return Err(invalid("m", m.as_f64(), "must exceed 1"));
    }
    Ok(())
}

/// Fits sup(t) over `window`, by default the last 1.5 decades of output.
pub fn fit_smoothing<T: Real>(
    states: &[PmeState<T>],
    class: ModelClass<T>,
    window: Option<(T, T)>,
) -> Result<SmoothingFit<T>> {
    let t_last = states.iter().map(|s| s.t).fold(T::zero(), T::max);
    // The default window opens at the last output no later than 1.5 decades
    // before the end, so it spans at least that much when outputs allow.
    let (lo, hi) = window.unwrap_or_else(|| {
        let start = t_last * T::lit(10f64.powf(-MIN_DECADES));
        let lo = states
            .iter()
            .map(|s| s.t)
            .filter(|t| *t <= start)
            .fold(T::neg_infinity(), T::max);
        (if lo > T::zero() { lo } else { start }, t_last)
    });
    let pts: Vec<(T, T, T)> = states
        .iter()
        .filter(|s| {
            s.t >= lo * (T::one() - T::lit(1e-12))
                && s.t <= hi
                && s.t > T::one()
                && s.sup > T::zero()
        })
        .map(|s| (s.t, s.sup, s.mass))
        .collect();
    let decades = if pts.len() >= 2 {
        (pts[pts.len() - 1].0 / pts[0].0).log10()
    } else {
        T::zero()
    };
    if pts.len() < 3 || decades < T::lit(MIN_DECADES) * (T::one() - T::lit(1e-9)) {
        return Err(Error::InsufficientWindow {
            decades: decades.as_f64(),
            needed: MIN_DECADES,
        });
    }
    let x: Vec<T> = pts.iter().map(|p| p.0.ln()).collect();
    let y: Vec<T> = pts.iter().map(|p| p.1.ln()).collect();
    let window = (pts[0].0, pts[pts.len() - 1].0);
    match class {
        ModelClass::PowerOnly => {
            let (slope, intercept, residual_norm, _) = fit_line(&x, &y)?;
            Ok(SmoothingFit {
                class,
                power_exponent: slope,
                log_correction_exponent: None,
                k_fit: intercept.exp(),
                window,
                residual_norm,
                points: pts.len(),
            })
        }
        ModelClass::PowerWithLog { beta, m } => {
            check_beta_m(beta, m)?;
            let gamma = log_exponent(beta, m);
            let power = -T::one() / (m - T::one());
            let z: Vec<T> = pts
                .iter()
                .map(|&(t, sup, mass)| {
                    let log_factor = (t * mass.powf(m - T::one()) + T::E()).ln();
                    sup.ln() - power * t.ln() - gamma * log_factor.ln()
                })
                .collect();
            let log_k = z.iter().copied().sum::<T>() / T::from_usize_lossy(z.len());
            let residual_norm = z.iter().map(|v| (*v - log_k).powi(2)).sum::<T>().sqrt();
            Ok(SmoothingFit {
                class,
                power_exponent: power,
                log_correction_exponent: Some(gamma),
                k_fit: log_k.exp(),
                window,
                residual_norm,
                points: pts.len(),
            })
        }
    }
}

/// Upper envelope K [ln(t M^{m−1} + e)]^γ t^{−1/(m−1)}; `None` at t ≤ 0,
/// where it blows up.
pub fn reference_curves<T: Real>(
    beta: T,
    m: T,
    k: T,
    mass: T,
    times: &[T],
) -> Result<Vec<Option<T>>> {
    check_beta_m(beta, m)?;
    let gamma = log_exponent(beta, m);
    let scale = mass.powf(m - T::one());
    Ok(times
        .iter()
        .map(|&t| {
            (t > T::zero()).then(|| {
                k * (t * scale + T::E()).ln().powf(gamma) * t.powf(-T::one() / (m - T::one()))
            })
        })
        .collect())
}

/// Lower envelope [K̂ (ln t)^{(2+β)/(2−β)}/t]^{1/(m−1)}; `None` at t ≤ 1.
pub fn lower_curve<T: Real>(k_hat: T, beta: T, m: T, times: &[T]) -> Result<Vec<Option<T>>> {
    check_beta_m(beta, m)?;
    let two = T::lit(2.0);
    let gamma = (two + beta) / (two - beta);
    Ok(times
        .iter()
        .map(|&t| {
            (t > T::one()).then(|| (k_hat * t.ln().powf(gamma) / t).powf(T::one() / (m - T::one())))
        })
        .collect())
}

/// Smallest K and largest K̂ for which the two envelopes enclose sup(t) on
/// the window (times t > 1 only).
pub fn envelope_amplitudes<T: Real>(
    states: &[PmeState<T>],
    beta: T,
    m: T,
    mass: T,
    window: (T, T),
) -> Result<(T, T)> {
    let pts: Vec<&PmeState<T>> = states
        .iter()
        .filter(|s| s.t >= window.0 && s.t <= window.1 && s.t > T::one() && s.sup > T::zero())
        .collect();
    if pts.is_empty() {
        return Err(Error::InsufficientWindow {
            decades: 0.0,
            needed: MIN_DECADES,
        });
    }
    let times: Vec<T> = pts.iter().map(|s| s.t).collect();
    let upper = reference_curves(beta, m, T::one(), mass, &times)?;
    let lower = lower_curve(T::one(), beta, m, &times)?;
    let mut k = T::zero();
    let mut k_hat = T::infinity();
    for ((s, up), low) in pts.iter().zip(upper).zip(lower) {
        let (up, low) = (up.expect("t > 0"), low.expect("t > 1"));
        k = k.max(s.sup / up);
        // lower = K̂^{1/(m−1)} · (shape at K̂ = 1)
        k_hat = k_hat.min((s.sup / low).powf(m - T::one()));
    }
    Ok((k, k_hat))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MoserChain<T> {
    /// C_σ = C (2σ)^{(2+β)/(2(2−β))} / (2σ−2)^{β/(2−β)}.
    pub c_sigma: T,
    /// σ(q+m)² C_σ² / (4m(q+1)(σm−1)).
    pub bracket: T,
    /// Power of the bracket in the L^{q+1} decay: σq/((q+1)(σm−1)).
    pub lq_exponent: T,
    /// bracket^{lq_exponent}.
    pub lq_prefactor: T,
    /// Power of the bracket in the L^∞ bound.
    pub linf_exponent: T,
    /// bracket^{linf_exponent}.
    pub linf_prefactor: T,
    /// Exponent of t in the L^∞ bound.
    pub t_exponent: T,
}

/// Constants of one step of the L^{q+1} → L^∞ smoothing chain at fixed σ
/// and q, given the Sobolev-type constant C at exponent 2σ₀.
pub fn moser_chain_constant<T: Real>(
    sigma: T,
    sigma0: T,
    q: T,
    m: T,
    beta: T,
    c: T,
) -> Result<MoserChain<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    let out = |name, v: T, reason| Error::ParameterOutOfRange {
        name,
        value: v.as_f64(),
        reason,
    };
    if !(m > one) || !m.is_finite() {
        return Err(out("m", m, "must exceed 1"));
    }
    if !(beta >= T::zero() && beta < two) {
        return Err(out("beta", beta, "must lie in [0, 2)"));
    }
    if !(sigma0 > one) || !sigma0.is_finite() {
        return Err(out("sigma0", sigma0, "must exceed 1"));
    }
    if !(sigma > one && sigma < sigma0) {
        return Err(out(
            "sigma",
            sigma,
            "must lie in the open interval (1, sigma0)",
        ));
    }
    if !(q > T::zero()) || !q.is_finite() {
        return Err(out("q", q, "must be positive"));
    }
    if !(c > T::zero()) || !c.is_finite() {
        return Err(out("c", c, "must be positive"));
    }
    let p = two * sigma;
    let c_sigma =
        c * p.powf((two + beta) / (two * (two - beta))) / (p - two).powf(beta / (two - beta));
    let sm1 = sigma * m - one;
    let bracket = sigma * (q + m).powi(2) * c_sigma * c_sigma / (T::lit(4.0) * m * (q + one) * sm1);
    let lq_exponent = sigma * q / ((q + one) * sm1);
    let denom = sm1 * ((sigma0 - one) * (q + one) + sigma0 * (m - one));
    let linf_exponent = sigma * q * (sigma0 - one) / denom;
    let t_exponent = -(sigma0 * sm1 + sigma * q * (sigma0 - one)) / denom;
    Ok(MoserChain {
        c_sigma,
        bracket,
        lq_exponent,
        lq_prefactor: bracket.powf(lq_exponent),
        linf_exponent,
        linf_prefactor: bracket.powf(linf_exponent),
        t_exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(f64) -> f64) -> Vec<PmeState<f64>> {
        super::super::solver::log_spaced(10.0, 1e4, 40)
            .into_iter()
            .map(|t| PmeState {
                t,
                u: vec![],
                mass: 1.0,
                sup: f(t),
                support_edge: 1.0,
            })
            .collect()
    }

    #[test]
    fn recovers_planted_power() {
        let fit = fit_smoothing(&synthetic(|t| 3.0 / t), ModelClass::PowerOnly, None).unwrap();
        assert!((fit.power_exponent + 1.0).abs() < 1e-12);
        assert!((fit.k_fit - 3.0).abs() < 1e-9);
    }

    #[test]
    fn recovers_planted_log_amplitude() {
        let states = synthetic(|t| 0.5 * (t + std::f64::consts::E).ln().powi(3) / t);
        let class = ModelClass::PowerWithLog { beta: 1.0, m: 2.0 };
        let fit = fit_smoothing(&states, class, None).unwrap();
        assert!((fit.k_fit - 0.5).abs() < 1e-12 && fit.residual_norm < 1e-12);
        let free = fit_smoothing(&states, ModelClass::PowerOnly, None).unwrap();
        assert!(free.residual_norm > fit.residual_norm);
    }

    #[test]
    fn short_window_rejected() {
        let states = synthetic(|t| 1.0 / t);
        let r = fit_smoothing(&states, ModelClass::PowerOnly, Some((100.0, 1000.0)));
        assert!(matches!(r, Err(Error::InsufficientWindow { .. })));
    }
}
