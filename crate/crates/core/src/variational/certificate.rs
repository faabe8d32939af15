//! Lower bounds on the constant of a nonradial Sobolev-type inequality on
//! models whose curvature vanishes at infinity.
//!
//! Far from the pole the manifold contains nearly Euclidean balls of radius
//! comparable to G(R). A bump f_R on such a ball has ‖f_R‖_p bounded below
//! and ‖∇f_R‖₂ bounded above by explicit powers of G; their ratio bounds
//! any admissible constant from below.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ricci_uniformization, ModelFunction};
use crate::numerics::quadrature::integrate;
use crate::weighted::sobolev_exponent;
use crate::{unit_sphere_area, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    Grows,
    Bounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateReport<T> {
    pub r: T,
    pub g: T,
    pub p: T,
    /// a_N = ∫₀¹ sinh^{N−1}.
    pub a_n: T,
    /// Lower bound on ‖f_R‖_p: (ω/(2^{p+N}N))^{1/p} G^{N/p}.
    pub f_lower: T,
    /// Upper bound on ‖∇f_R‖₂: (ω a_N G^{N−2})^{1/2}.
    pub grad_upper: T,
    pub lower_bound_on_c: T,
    /// Exponent of G in `lower_bound_on_c`: N/p − (N−2)/2.
    pub g_exponent: T,
    pub conclusion: Conclusion,
}

/// a_N = ∫₀¹ sinh(s)^{N−1} ds.
pub fn sinh_moment<T: Real>(dimension: usize) -> T {
    let n1 = (dimension - 1) as i32;
    integrate(T::zero(), T::one(), T::zero(), T::lit(1e-14), 64, |s: T| {
        s.sinh().powi(n1)
    })
}

/// Certificate at a single radius. `conclusion` is `Grows` when the
/// exponent of G is positive (G(R) → ∞ because the curvature vanishes at
/// infinity) and `Bounded` at p = 2*.
pub fn nonradial_certificate<T: Real>(
    model: &ModelFunction<T>,
    p: T,
    r: T,
) -> Result<CertificateReport<T>> {
    let dimension = model.dimension();
    let two = T::lit(2.0);
    let critical = sobolev_exponent::<T>(dimension);
    if !(p >= two) || !p.is_finite() || p > critical * (T::one() + T::lit(1e-12)) {
        return Err(Error::InvalidExponent {
            p: p.as_f64(),
            range: "[2, 2*]",
        });
    }
    let g = ricci_uniformization(model, r, false)?;
    let n = T::from_usize_lossy(dimension);
    let omega: T = unit_sphere_area(dimension);
    let a_n: T = sinh_moment(dimension);
    let log_f = ((omega.ln() - (p + n) * two.ln() - n.ln()) + n * g.ln()) / p;
    let log_grad = (omega.ln() + a_n.ln() + (n - two) * g.ln()) * T::lit(0.5);
    let g_exponent = n / p - (n - two) / two;
    let conclusion = if g_exponent > T::lit(1e-12) {
        Conclusion::Grows
    } else {
        Conclusion::Bounded
    };
    Ok(CertificateReport {
        r,
        g,
        p,
        a_n,
        f_lower: log_f.exp(),
        grad_upper: log_grad.exp(),
        lower_bound_on_c: (log_f - log_grad).exp(),
        g_exponent,
        conclusion,
    })
}

/// Certificates along increasing radii; the common conclusion is `Grows`
/// exactly when the lower bounds increase strictly along the sequence.
pub fn certificate_sequence<T: Real>(
    model: &ModelFunction<T>,
    p: T,
    radii: &[T],
) -> Result<(Vec<CertificateReport<T>>, Conclusion)> {
    let reports = radii
        .iter()
        .map(|r| nonradial_certificate(model, p, *r))
        .collect::<Result<Vec<_>>>()?;
    let grows = reports.len() >= 2
        && reports
            .windows(2)
            .all(|w| w[1].lower_bound_on_c > w[0].lower_bound_on_c);
    let conclusion = if grows {
        Conclusion::Grows
    } else {
        Conclusion::Bounded
    };
    let reports = reports
        .into_iter()
        .map(|rep| CertificateReport { conclusion, ..rep })
        .collect();
    Ok((reports, conclusion))
}
