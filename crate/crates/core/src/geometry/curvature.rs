//! Curvatures, Laplacian comparison checks and the Ricci uniformization
//! radius of a model manifold.

use serde::Serialize;

use super::model::ModelFunction;
use crate::error::{invalid, Error, Result};
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureReport<T> {
    pub r: T,
    /// −ψ″/ψ.
    pub sect_radial: T,
    /// −(N−1)ψ″/ψ.
    pub ric_radial: T,
    /// −ψ″/ψ − (N−2)(ψ′² − 1)/ψ².
    pub ric_tangential: T,
    /// (N−1)ψ′/ψ, the Laplacian of the distance from the pole.
    pub laplacian_density: T,
}

pub fn curvature_at<T: Real>(model: &ModelFunction<T>, r: T) -> Result<CurvatureReport<T>> {
    let l = model.local_checked(r)?;
    Ok(report(model.dimension(), r, l.ell, l.g, l.k))
}

fn report<T: Real>(dimension: usize, r: T, ell: T, g: T, k: T) -> CurvatureReport<T> {
    let n1 = T::from_usize_lossy(dimension - 1);
    let n2 = T::from_usize_lossy(dimension - 2);
    // (ψ′² − 1)/ψ² = g² − ψ^{−2}, evaluated in log form to survive huge ψ.
    // Factored so that the flat case g = 1/ψ cancels to zero exactly.
    let inv_psi = (-ell).exp();
    let diff = g - inv_psi;
    let tangential_excess = if diff.abs() <= T::epsilon() * T::lit(8.0) * g.abs() {
        T::zero()
    } else {
        diff * (g + inv_psi)
    };
    CurvatureReport {
        r,
        sect_radial: -k,
        ric_radial: -n1 * k,
        ric_tangential: -k - n2 * tangential_excess,
        laplacian_density: n1 * g,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HadamardCheck<T> {
    pub holds: bool,
    /// Smallest grid radius with K < 0.
    pub first_violation: Option<T>,
}

/// Whether ψ″ ≥ 0 at every grid node (both one-sided limits).
pub fn is_cartan_hadamard<T: Real>(model: &ModelFunction<T>) -> HadamardCheck<T> {
    let first_violation = model
        .grid()
        .iter()
        .zip(model.node_curvatures())
        .find(|(_, (kl, kr))| *kl < T::zero() || *kr < T::zero() || kl.is_nan() || kr.is_nan())
        .map(|(r, _)| *r);
    HadamardCheck {
        holds: first_violation.is_none(),
        first_violation,
    }
}

/// Lower bounds on the Laplacian density (or on ψ′/ψ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "bound", rename_all = "snake_case")]
pub enum ComparisonBound<T> {
    /// m(r) ≥ (N−1)/r.
    Euclidean,
    /// ψ′/ψ ≥ c r^{−β/2} for r ≥ r0.
    Lemma31 { c: T, r0: T, beta: T },
    /// ψ′/ψ ≥ √k.
    McKean { k: T },
    /// m(r) ≥ √(N−1) g(√(N−1) r), the weaker bound available under Ricci
    /// hypotheses only.
    RicciWeak,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport<T> {
    pub radii: Vec<T>,
    pub holds: Vec<bool>,
    pub all_hold: bool,
    /// Longest run of consecutive failing nodes, as `[first, last]`.
    pub largest_failure: Option<(T, T)>,
}

pub fn check_comparison<T: Real>(
    model: &ModelFunction<T>,
    bound: ComparisonBound<T>,
) -> ComparisonReport<T> {
    let n1 = T::from_usize_lossy(model.dimension() - 1);
    let slack = T::one() - T::lit(1e-10).max(T::epsilon() * T::lit(64.0));
    let radii = model.grid().to_vec();
    let holds: Vec<bool> = radii
        .iter()
        .map(|&r| {
            let g = model.local(r).g;
            match bound {
                ComparisonBound::Euclidean => n1 * g >= slack * n1 / r,
                ComparisonBound::Lemma31 { c, r0, beta } => {
                    r < r0 || g >= slack * c * r.powf(-beta * T::lit(0.5))
                }
                ComparisonBound::McKean { k } => g >= slack * k.sqrt(),
                ComparisonBound::RicciWeak => {
                    let s = n1.sqrt();
                    n1 * g >= slack * s * model.local(s * r).g
                }
            }
        })
        .collect();
    let mut best: Option<(usize, usize)> = None;
    let mut run_start = None;
    for i in 0..=holds.len() {
        let failing = i < holds.len() && !holds[i];
        match (failing, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                if best.is_none_or(|(a, b)| i - 1 - s > b - a) {
                    best = Some((s, i - 1));
                }
                run_start = None;
            }
            _ => {}
        }
    }
    ComparisonReport {
        all_hold: best.is_none(),
        largest_failure: best.map(|(a, b)| (radii[a], radii[b])),
        radii,
        holds,
    }
}

/// Constants (c, r0) with ψ′/ψ ≥ c r^{−β/2} for every grid r ≥ r0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lemma31Certificate<T> {
    pub c: T,
    pub r0: T,
    pub beta: T,
}

impl<T: Real> Lemma31Certificate<T> {
    pub fn bound(&self) -> ComparisonBound<T> {
        ComparisonBound::Lemma31 {
            c: self.c,
            r0: self.r0,
            beta: self.beta,
        }
    }

    /// κ in the lower bound ψ(r) ≥ κ exp(c r^{1−α}/(1−α)), α = β/2.
    pub fn kappa(&self) -> T {
        let one_m = T::one() - self.beta * T::lit(0.5);
        self.r0 * (-(self.c / one_m) * self.r0.powf(one_m)).exp()
    }
}

/// Certifies the power-law Laplacian comparison: c is half the infimum of
/// (ψ′/ψ)·r^{β/2} over grid nodes in [tail start, r_max], and r0 the smallest
/// node of that range beyond which the bound holds.
pub fn certify_lemma31<T: Real>(
    model: &ModelFunction<T>,
    beta: T,
) -> Result<Lemma31Certificate<T>> {
    if !(beta > T::zero() && beta < T::lit(2.0)) {
        return Err(invalid("beta", beta.as_f64(), "must lie in (0, 2)"));
    }
    let start = model.profile().tail_start();
    let half_beta = beta * T::lit(0.5);
    let tail: Vec<(T, T)> = model
        .grid()
        .iter()
        .filter(|r| **r >= start)
        .map(|&r| (r, model.local(r).g * r.powf(half_beta)))
        .collect();
    if tail.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            got: tail.len(),
        });
    }
    let inf = tail.iter().map(|(_, v)| *v).fold(T::infinity(), T::min);
    let c = inf * T::lit(0.5);
    let mut r0 = tail.last().expect("nonempty").0;
    for (r, v) in tail.iter().rev() {
        if *v >= c {
            r0 = *r;
        } else {
            break;
        }
    }
    Ok(Lemma31Certificate { c, r0, beta })
}

/// Largest G with Ric ≥ −(N−1)/G² outside the ball of radius `radius`:
/// G = √((N−1)/Λ), Λ the supremum over r ≥ R of the larger of the negated
/// radial and tangential Ricci eigenvalues.
///
/// Fails with [`Error::CurvatureNotVanishing`] when that envelope does not
/// decay over the last octave of the grid, unless `allow_constant` is set.
pub fn ricci_uniformization<T: Real>(
    model: &ModelFunction<T>,
    radius: T,
    allow_constant: bool,
) -> Result<T> {
    if !(radius > T::zero()) || radius > model.r_max() {
        return Err(Error::OutOfDomain {
            r: radius.as_f64(),
            r_max: model.r_max().as_f64(),
        });
    }
    let envelope = |r: T| -> T {
        let l = model.local(r);
        let rep = report(model.dimension(), r, l.ell, l.g, l.k);
        (-rep.ric_radial).max(-rep.ric_tangential).max(T::zero())
    };
    let lambda = std::iter::once(radius)
        .chain(model.grid().iter().copied().filter(|r| *r > radius))
        .map(envelope)
        .fold(T::zero(), T::max);
    if lambda == T::zero() {
        return Err(Error::FlatProfile);
    }
    let r_max = model.r_max();
    let outer = envelope(r_max);
    let inner = envelope(r_max * T::lit(0.5));
    let decay = if inner > T::zero() {
        outer / inner
    } else {
        T::zero()
    };
    if !allow_constant && decay >= T::lit(2.0).powf(T::lit(-0.1)) {
        return Err(Error::CurvatureNotVanishing {
            decay_ratio: decay.as_f64(),
        });
    }
    Ok((T::from_usize_lossy(model.dimension() - 1) / lambda).sqrt())
}
