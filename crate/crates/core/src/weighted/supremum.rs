//! The Kufner–Opic supremum B(w, p) = sup_r W(r)^{1/p} T(r)^{1/2}.

use rayon::prelude::*;
use serde::Serialize;

use super::measure::{TailKind, WeightMeasure};
use crate::error::{Error, Result};
use crate::numerics::search::{bisect, golden_max};
use crate::Real;

/// Where the supremum is attained or approached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Maximizer<T> {
    Interior { r: T },
    AtOrigin,
    AtInfinity,
    Divergent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupremumReport<T> {
    pub p: T,
    /// B(w, p); +∞ when divergent.
    pub b: T,
    pub maximizer: Maximizer<T>,
    /// (1 + p/2)^{1/p} (1 + 2/p)^{1/2} B.
    pub sandwich_upper: T,
    /// Number of Q evaluations.
    pub evaluations: usize,
    /// Range extensions plus refinement iterations of the winning candidate.
    pub refinement_depth: usize,
    /// |1 − pW/(2ψ^{2(N−1)}T)| at an interior maximizer.
    pub identity_residual: Option<T>,
}

impl<T: Real> SupremumReport<T> {
    pub fn r_bar(&self) -> Option<T> {
        match self.maximizer {
            Maximizer::Interior { r } => Some(r),
            _ => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self.maximizer, Maximizer::Divergent)
    }
}

/// Best-constant enclosure [B, (1+p/2)^{1/p}(1+2/p)^{1/2} B].
pub fn sandwich<T: Real>(b: T, p: T) -> (T, T) {
    (b, b * sandwich_factor(p))
}

pub fn sandwich_factor<T: Real>(p: T) -> T {
    let half = T::lit(0.5);
    (T::one() + p * half).powf(T::one() / p) * (T::one() + T::lit(2.0) / p).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Limit<T> {
    Zero,
    Finite(T),
    Infinite,
}

impl<T: Real> Limit<T> {
    fn value(self) -> T {
        match self {
            Limit::Zero => T::zero(),
            Limit::Finite(v) => v,
            Limit::Infinite => T::infinity(),
        }
    }
}

fn exponent_tol<T: Real>() -> T {
    T::lit(1e-10).max(T::epsilon() * T::lit(1e3))
}

/// lim_{r→0} Q(r): ψ ∼ r gives W ∼ r^N/N and T ∼ r^{2−N}/(N−2).
fn limit_at_origin<T: Real>(dimension: usize, p: T) -> Limit<T> {
    if dimension == 2 {
        return Limit::Zero;
    }
    let nn = T::from_usize_lossy(dimension);
    let n2 = nn - T::lit(2.0);
    let e0 = nn / p - n2 * T::lit(0.5);
    if e0.abs() <= exponent_tol() {
        Limit::Finite(nn.powf(-T::one() / p) / n2.sqrt())
    } else if e0 > T::zero() {
        Limit::Zero
    } else {
        Limit::Infinite
    }
}

/// lim_{r→∞} Q(r) from the tail class of the weight.
fn limit_at_infinity<T: Real>(dimension: usize, p: T, tail: TailKind<T>) -> Limit<T> {
    let n1 = T::from_usize_lossy(dimension - 1);
    let half = T::lit(0.5);
    match tail {
        TailKind::Divergent => Limit::Infinite,
        TailKind::Power {
            exponent,
            log_amplitude,
        } => {
            let a = exponent * n1;
            let e = (a + T::one()) / p + (T::one() - a) * half;
            if e.abs() <= exponent_tol() {
                let log_an = n1 * log_amplitude;
                let w = log_an - (a + T::one()).ln();
                let t = -log_an - (a - T::one()).ln();
                Limit::Finite((w / p + t * half).exp())
            } else if e < T::zero() {
                Limit::Zero
            } else {
                Limit::Infinite
            }
        }
        TailKind::Exponential { rate, power, .. } => {
            let two = T::lit(2.0);
            if (p - two).abs() <= exponent_tol() {
                if (power - T::one()).abs() <= exponent_tol() {
                    Limit::Finite(T::one() / (n1 * rate))
                } else {
                    Limit::Infinite
                }
            } else if p > two {
                Limit::Zero
            } else {
                Limit::Infinite
            }
        }
    }
}

const SCAN_POINTS: usize = 512;
const MAX_CANDIDATES: usize = 32;
const MAX_EXTENSIONS: usize = 8;

fn log_spaced<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * T::from_usize_lossy(i) / T::from_usize_lossy(n - 1)).exp())
        .collect()
}

/// Global supremum of Q over (0, ∞).
///
/// A 512-point log-spaced scan locates every local maximum; each is refined
/// by golden section and then polished by bisection on the sign of Q′. The
/// analytic limits at 0 and ∞ are compared against the interior maxima.
/// Divergence is a result, not an error.
pub fn supremum_b<T: Real>(weight: &WeightMeasure<T>, p: T) -> Result<SupremumReport<T>> {
    if !(p.is_finite() && p > T::zero()) {
        return Err(Error::InvalidExponent {
            p: p.as_f64(),
            range: "(0, inf)",
        });
    }
    let dimension = weight.dimension();
    let at0 = limit_at_origin(dimension, p);
    let at_inf = limit_at_infinity(dimension, p, weight.tail_kind());
    let divergent = || SupremumReport {
        p,
        b: T::infinity(),
        maximizer: Maximizer::Divergent,
        sandwich_upper: T::infinity(),
        evaluations: 0,
        refinement_depth: 0,
        identity_residual: None,
    };
    if at0 == Limit::Infinite || at_inf == Limit::Infinite {
        return Ok(divergent());
    }
    let grid = weight.model().grid();
    let r1 = grid[0];
    let mut r_lo = r1 * T::lit(1e-2);
    if dimension == 2 {
        r_lo = r_lo.min((-p * T::lit(0.5)).exp());
    }
    let mut r_hi = weight.model().r_max() * T::lit(100.0);
    let mut evaluations = 0usize;
    let mut extensions = 0usize;
    let (radii, values) = loop {
        let radii = log_spaced(r_lo, r_hi, SCAN_POINTS);
        let values: Vec<T> = radii.par_iter().map(|&r| weight.log_q(p, r)).collect();
        evaluations += SCAN_POINTS;
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::DivergentPoint { p: p.as_f64() });
        }
        if values.iter().any(|v| *v == T::infinity()) {
            return Ok(divergent());
        }
        let arg = argmax(&values);
        let last = SCAN_POINTS - 1;
        let edge_beats = |limit: Limit<T>, v: T| limit.value().ln() < v;
        if extensions < MAX_EXTENSIONS && arg == 0 && edge_beats(at0, values[0]) {
            r_lo *= T::lit(1e-4);
            extensions += 1;
            continue;
        }
        if extensions < MAX_EXTENSIONS && arg == last && edge_beats(at_inf, values[last]) {
            r_hi *= T::lit(1e4);
            extensions += 1;
            continue;
        }
        break (radii, values);
    };

    let mut candidates: Vec<usize> = (1..SCAN_POINTS - 1)
        .filter(|&i| values[i] >= values[i - 1] && values[i] > values[i + 1])
        .collect();
    if candidates.is_empty() {
        candidates.push(argmax(&values).clamp(1, SCAN_POINTS - 2));
    }
    candidates.sort_by(|a, b| {
        values[*b]
            .partial_cmp(&values[*a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    candidates.truncate(MAX_CANDIDATES);

    let refined: Vec<(T, T, usize, usize)> = candidates
        .par_iter()
        .map(|&i| refine(weight, p, radii[i - 1], radii[i + 1]))
        .collect();
    let (r_star, log_q_star, _, depth) =
        refined
            .iter()
            .copied()
            .fold((T::nan(), T::neg_infinity(), 0, 0), |best, c| {
                if c.1 > best.1 {
                    c
                } else {
                    best
                }
            });
    evaluations += refined.iter().map(|c| c.2).sum::<usize>();

    let q_star = log_q_star.exp();
    let factor = sandwich_factor(p);
    // A finite limit within a relative 1e-8 of the best interior value is a
    // tie. Ties go to the limit unless Q is flat over the whole scan, in
    // which case every radius is a maximizer.
    let tie = T::lit(1e-8).max(T::epsilon().sqrt());
    let (lo_scan, hi_scan) = values
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(a, b), v| {
            (a.min(*v), b.max(*v))
        });
    let flat = hi_scan - lo_scan <= tie;
    let limit_wins = |limit: Limit<T>| match limit {
        Limit::Finite(v) if v > q_star * (T::one() + tie) => Some(v),
        Limit::Finite(v) if v >= q_star * (T::one() - tie) && !flat => Some(v),
        _ => None,
    };
    let (b, maximizer) = match (limit_wins(at0), limit_wins(at_inf)) {
        (Some(v0), Some(vi)) if v0 >= vi => (v0, Maximizer::AtOrigin),
        (_, Some(vi)) => (vi, Maximizer::AtInfinity),
        (Some(v0), None) => (v0, Maximizer::AtOrigin),
        (None, None) => (q_star, Maximizer::Interior { r: r_star }),
    };
    let identity_residual = match maximizer {
        Maximizer::Interior { r } => Some(weight.critical_residual(p, r).abs()),
        _ => None,
    };
    Ok(SupremumReport {
        p,
        b,
        maximizer,
        sandwich_upper: b * factor,
        evaluations,
        refinement_depth: extensions + depth,
        identity_residual,
    })
}

fn argmax<T: Real>(v: &[T]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x > v[best] {
            best = i;
        }
    }
    best
}

/// Golden section on [a, b], then bisection on the sign of Q′ near the
/// golden-section estimate. Returns (r, ln Q, evaluations, iterations).
fn refine<T: Real>(weight: &WeightMeasure<T>, p: T, a: T, b: T) -> (T, T, usize, usize) {
    let tol = T::lit(1e-10).max(T::epsilon().sqrt() * T::lit(4.0));
    let mut evals = 0usize;
    let (r_g, lq_g, iters) = golden_max(a, b, tol, 200, |r| {
        evals += 1;
        weight.log_q(p, r)
    });
    let h = |r: T| weight.critical_residual(p, r);
    let mut delta = T::lit(1e-6);
    let mut polished = None;
    while r_g * (T::one() + delta) <= b * T::lit(1.0000001) {
        let lo = (r_g * (T::one() - delta)).max(a);
        let hi = (r_g * (T::one() + delta)).min(b);
        evals += 2;
        if h(lo) > T::zero() && h(hi) < T::zero() {
            polished = bisect(lo, hi, 200, |r| {
                evals += 1;
                h(r)
            });
            break;
        }
        delta *= T::lit(4.0);
    }
    match polished {
        Some(r) => {
            let lq = weight.log_q(p, r);
            evals += 1;
            if lq >= lq_g - T::lit(1e-12).max(T::epsilon() * T::lit(8.0)) {
                (r, lq.max(lq_g), evals, iters)
            } else {
                (r_g, lq_g, evals, iters)
            }
        }
        None => (r_g, lq_g, evals, iters),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_factor_values() {
        assert!((sandwich_factor(2.0f64) - 2.0).abs() < 1e-15);
        let f6 = sandwich_factor(6.0f64);
        assert!((f6 - 4f64.powf(1.0 / 6.0) * (4.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((sandwich_factor(1e9f64) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn origin_limit_at_sobolev_exponent() {
        match limit_at_origin::<f64>(3, 6.0) {
            Limit::Finite(v) => assert!((v - 3f64.powf(-1.0 / 6.0)).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        assert_eq!(limit_at_origin::<f64>(3, 7.0), Limit::Infinite);
        assert_eq!(limit_at_origin::<f64>(2, 70.0), Limit::Zero);
    }
}
