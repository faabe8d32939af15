//! Log-log regression of B(w, p) against p − 2 or p.

use rayon::prelude::*;
use serde::Serialize;

use super::measure::WeightMeasure;
use super::supremum::supremum_b;
use crate::error::{Error, Result};
use crate::numerics::lsq::least_squares;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMode {
    /// ln B against ln(p − 2).
    PToTwo,
    /// ln B against ln p.
    PLarge,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit<T> {
    pub slope: T,
    pub intercept: T,
    pub residual_norm: T,
    /// Largest absolute residual in ln B.
    pub max_residual: T,
    /// `(p, B)` for each input exponent, in input order.
    pub points: Vec<(T, T)>,
}

/// Least-squares line through (x_i, y_i).
pub fn fit_line<T: Real>(x: &[T], y: &[T]) -> Result<(T, T, T, T)> {
    if x.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: x.len(),
        });
    }
    let rows: Vec<Vec<T>> = x.iter().map(|v| vec![T::one(), *v]).collect();
    let (coef, resid) = least_squares(&rows, y).ok_or(Error::TooFewPoints { needed: 2, got: 1 })?;
    let max_res = x
        .iter()
        .zip(y)
        .map(|(a, b)| (*b - coef[0] - coef[1] * *a).abs())
        .fold(T::zero(), T::max);
    Ok((coef[1], coef[0], resid, max_res))
}

pub fn scaling_regression<T: Real>(
    weight: &WeightMeasure<T>,
    p_values: &[T],
    mode: ScalingMode,
) -> Result<RegressionFit<T>> {
    if p_values.len() < 5 {
        return Err(Error::TooFewPoints {
            needed: 5,
            got: p_values.len(),
        });
    }
    let reports: Vec<_> = p_values
        .par_iter()
        .map(|&p| supremum_b(weight, p))
        .collect::<Result<_>>()?;
    let mut x = Vec::with_capacity(reports.len());
    let mut y = Vec::with_capacity(reports.len());
    for rep in &reports {
        if !rep.b.is_finite() {
            return Err(Error::DivergentPoint { p: rep.p.as_f64() });
        }
        let xv = match mode {
            ScalingMode::PToTwo => (rep.p - T::lit(2.0)).ln(),
            ScalingMode::PLarge => rep.p.ln(),
        };
        if !xv.is_finite() {
            return Err(Error::InvalidExponent {
                p: rep.p.as_f64(),
                range: "(2, inf)",
            });
        }
        x.push(xv);
        y.push(rep.b.ln());
    }
    let (slope, intercept, residual_norm, max_residual) = fit_line(&x, &y)?;
    Ok(RegressionFit {
        slope,
        intercept,
        residual_norm,
        max_residual,
        points: reports.iter().map(|r| (r.p, r.b)).collect(),
    })
}
