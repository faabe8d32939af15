//! Declarative radial curvature laws and closed-form model functions.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::Real;

/// Explicit model functions ψ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum PsiForm<T> {
    /// ψ(r) = r.
    Euclidean,
    /// ψ(r) = sinh(√k r)/√k.
    Hyperbolic { k: T },
    /// ψ(r) = r on [0, r0] and a1 r^q1 + a2 r^q2 beyond, glued in C¹.
    Polynomial { a1: T, a2: T, q1: T, q2: T, r0: T },
    /// ψ(r) = r·exp(−c2 r^γ). Decays at infinity, so it is never Cartan–Hadamard.
    ExponentialPower { c2: T, gamma: T },
}

/// Radial curvature law: the radial sectional curvature is −K(r).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurvatureProfile<T> {
    /// K ≡ k. `k = 0` is flat space.
    Constant {
        k: T,
    },
    /// K = 0 on [0, r0) and c0 r^{−β} beyond.
    PowerLaw {
        c0: T,
        beta: T,
        r0: T,
    },
    /// K = 0 on [0, r0) and c1 r^{−2} beyond.
    QuasiEuclideanOptimal {
        c1: T,
        r0: T,
    },
    ExplicitPsi(PsiForm<T>),
}

/// Pointwise data of a model function: ℓ = ln ψ, g = ψ′/ψ and K = ψ″/ψ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Local<T> {
    pub ell: T,
    pub g: T,
    pub k: T,
}

/// Exponents and coefficients of the exact solution of ψ″ = c1 r^{−2} ψ
/// glued to ψ = r at r0.
pub fn quasi_euclidean_coefficients<T: Real>(c1: T, r0: T) -> (T, T, T, T) {
    let disc = (T::one() + T::lit(4.0) * c1).sqrt();
    let half = T::lit(0.5);
    let q1 = (T::one() + disc) * half;
    let q2 = (T::one() - disc) * half;
    let a1 = r0.powf(T::one() - q1) * (T::one() - q2) / (q1 - q2);
    let a2 = r0.powf(T::one() - q2) * (q1 - T::one()) / (q1 - q2);
    (a1, a2, q1, q2)
}

fn check_positive<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(invalid(name, v.as_f64(), "must be positive and finite"))
    }
}

impl<T: Real> PsiForm<T> {
    pub fn validate(&self) -> Result<()> {
        match *self {
            PsiForm::Euclidean => Ok(()),
            PsiForm::Hyperbolic { k } => check_positive("k", k),
            PsiForm::Polynomial { a1, a2, q1, q2, r0 } => {
                check_positive("a1", a1)?;
                check_positive("r0", r0)?;
                if !(q1 > q2) || !a2.is_finite() || !q2.is_finite() || !q1.is_finite() {
                    return Err(invalid("q1", q1.as_f64(), "need finite q1 > q2"));
                }
                let psi = a1 * r0.powf(q1) + a2 * r0.powf(q2);
                let dpsi = a1 * q1 * r0.powf(q1 - T::one()) + a2 * q2 * r0.powf(q2 - T::one());
                let tol = T::lit(1e-8).max(T::epsilon() * T::lit(64.0));
                if (psi - r0).abs() > tol * r0 || (dpsi - T::one()).abs() > tol {
                    return Err(invalid(
                        "a2",
                        a2.as_f64(),
                        "polynomial branch must match psi = r in C1 at r0",
                    ));
                }
                Ok(())
            }
            PsiForm::ExponentialPower { c2, gamma } => {
                check_positive("c2", c2)?;
                check_positive("gamma", gamma)
            }
        }
    }

    pub(crate) fn local(&self, r: T) -> Local<T> {
        let one = T::one();
        match *self {
            PsiForm::Euclidean => Local {
                ell: r.ln(),
                g: one / r,
                k: T::zero(),
            },
            PsiForm::Hyperbolic { k } => {
                let sk = k.sqrt();
                let s = sk * r;
                let ln_sinh = if s < T::lit(18.0) {
                    s.sinh().ln()
                } else {
                    s - T::LN_2() + (-(-(s + s)).exp()).ln_1p()
                };
                Local {
                    ell: ln_sinh - sk.ln(),
                    g: sk / s.tanh(),
                    k,
                }
            }
            PsiForm::Polynomial { a1, a2, q1, q2, r0 } => {
                if r <= r0 {
                    return Local {
                        ell: r.ln(),
                        g: one / r,
                        k: T::zero(),
                    };
                }
                let x = a2 / a1 * r.powf(q2 - q1);
                let ell = a1.ln() + q1 * r.ln() + x.ln_1p();
                let g = (q1 + q2 * x) / (r * (one + x));
                let k = (q1 * (q1 - one) + q2 * (q2 - one) * x) / (r * r * (one + x));
                Local { ell, g, k }
            }
            PsiForm::ExponentialPower { c2, gamma } => {
                let rg = r.powf(gamma);
                let g = one / r - c2 * gamma * rg / r;
                let dg = -one / (r * r) - c2 * gamma * (gamma - one) * rg / (r * r);
                Local {
                    ell: r.ln() - c2 * rg,
                    g,
                    k: dg + g * g,
                }
            }
        }
    }

    /// Curvature at the left end of an interval ending at `r`; only the
    /// polynomial glue point carries a jump.
    pub(crate) fn curvature_left(&self, r: T) -> T {
        match *self {
            PsiForm::Polynomial { r0, .. } if r <= r0 => T::zero(),
            _ => self.local(r).k,
        }
    }
}

impl<T: Real> CurvatureProfile<T> {
    /// Checks parameter ranges. Negative curvature laws are reported as
    /// [`Error::NonHadamardProfile`].
    pub fn validate(&self) -> Result<()> {
        match *self {
            CurvatureProfile::Constant { k } => {
                if !k.is_finite() {
                    return Err(invalid("k", k.as_f64(), "must be finite"));
                }
                if k < T::zero() {
                    return Err(Error::NonHadamardProfile {
                        r: 0.0,
                        k: k.as_f64(),
                    });
                }
                Ok(())
            }
            CurvatureProfile::PowerLaw { c0, beta, r0 } => {
                if !(beta > T::zero() && beta <= T::lit(2.0)) {
                    return Err(invalid("beta", beta.as_f64(), "must lie in (0, 2]"));
                }
                check_positive("r0", r0)?;
                if c0 < T::zero() {
                    return Err(Error::NonHadamardProfile {
                        r: r0.as_f64(),
                        k: c0.as_f64(),
                    });
                }
                check_positive("c0", c0)
            }
            CurvatureProfile::QuasiEuclideanOptimal { c1, r0 } => {
                check_positive("r0", r0)?;
                if c1 < T::zero() {
                    return Err(Error::NonHadamardProfile {
                        r: r0.as_f64(),
                        k: c1.as_f64(),
                    });
                }
                check_positive("c1", c1)
            }
            CurvatureProfile::ExplicitPsi(form) => form.validate(),
        }
    }

    /// Exact closed form of ψ when one exists.
    pub fn closed_form(&self) -> Option<PsiForm<T>> {
        match *self {
            CurvatureProfile::Constant { k } if k == T::zero() => Some(PsiForm::Euclidean),
            CurvatureProfile::Constant { k } => Some(PsiForm::Hyperbolic { k }),
            CurvatureProfile::QuasiEuclideanOptimal { c1, r0 } => Some(Self::quasi_form(c1, r0)),
            CurvatureProfile::PowerLaw { c0, beta, r0 } if beta == T::lit(2.0) => {
                Some(Self::quasi_form(c0, r0))
            }
            CurvatureProfile::PowerLaw { .. } => None,
            CurvatureProfile::ExplicitPsi(form) => Some(form),
        }
    }

    fn quasi_form(c1: T, r0: T) -> PsiForm<T> {
        let (a1, a2, q1, q2) = quasi_euclidean_coefficients(c1, r0);
        PsiForm::Polynomial { a1, a2, q1, q2, r0 }
    }

    /// Radius where the curvature law switches on, if any.
    pub fn breakpoint(&self) -> Option<T> {
        match *self {
            CurvatureProfile::PowerLaw { r0, .. }
            | CurvatureProfile::QuasiEuclideanOptimal { r0, .. } => Some(r0),
            CurvatureProfile::ExplicitPsi(PsiForm::Polynomial { r0, .. }) => Some(r0),
            _ => None,
        }
    }

    /// K(r) = ψ″/ψ, right-continuous at the breakpoint.
    pub fn curvature(&self, r: T) -> T {
        match *self {
            CurvatureProfile::Constant { k } => k,
            CurvatureProfile::PowerLaw { c0, beta, r0 } => {
                if r < r0 {
                    T::zero()
                } else {
                    c0 * r.powf(-beta)
                }
            }
            CurvatureProfile::QuasiEuclideanOptimal { c1, r0 } => {
                if r < r0 {
                    T::zero()
                } else {
                    c1 / (r * r)
                }
            }
            CurvatureProfile::ExplicitPsi(form) => form.local(r).k,
        }
    }

    /// K(r⁻), the left limit.
    pub fn curvature_left(&self, r: T) -> T {
        match *self {
            CurvatureProfile::PowerLaw { r0, .. }
            | CurvatureProfile::QuasiEuclideanOptimal { r0, .. }
                if r <= r0 =>
            {
                T::zero()
            }
            CurvatureProfile::ExplicitPsi(form) => form.curvature_left(r),
            _ => self.curvature(r),
        }
    }

    /// Where the "tail" used for comparison certificates starts.
    pub fn tail_start(&self) -> T {
        self.breakpoint().unwrap_or_else(T::one)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quasi_coefficients_for_c1_two() {
        let (a1, a2, q1, q2) = quasi_euclidean_coefficients(2.0f64, 1.0);
        assert!((q1 - 2.0).abs() < 1e-15 && (q2 + 1.0).abs() < 1e-15);
        assert!((a1 - 2.0 / 3.0).abs() < 1e-15 && (a2 - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn polynomial_glue_is_validated() {
        let good: PsiForm<f64> = PsiForm::Polynomial {
            a1: 2.0 / 3.0,
            a2: 1.0 / 3.0,
            q1: 2.0,
            q2: -1.0,
            r0: 1.0,
        };
        assert!(good.validate().is_ok());
        let bad: PsiForm<f64> = PsiForm::Polynomial {
            a1: 1.0,
            a2: 1.0,
            q1: 2.0,
            q2: -1.0,
            r0: 1.0,
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn hyperbolic_log_form_is_continuous_at_switch() {
        let f: PsiForm<f64> = PsiForm::Hyperbolic { k: 1.0 };
        let a = f.local(18.0 - 1e-12).ell;
        let b = f.local(18.0 + 1e-12).ell;
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn validation_rejects_bad_ranges() {
        let p = CurvatureProfile::PowerLaw {
            c0: 1.0f64,
            beta: 3.0,
            r0: 1.0,
        };
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParameter { name: "beta", .. })
        ));
        let p = CurvatureProfile::Constant { k: -1.0f64 };
        assert!(matches!(
            p.validate(),
            Err(Error::NonHadamardProfile { .. })
        ));
        let p = CurvatureProfile::QuasiEuclideanOptimal {
            c1: 0.0f64,
            r0: 1.0,
        };
        assert!(p.validate().is_err());
    }
}
