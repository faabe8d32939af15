//! Model functions ψ ∈ 𝒜: closed forms or ODE-sampled tables with a
//! classified growth law beyond the grid.

use serde::Serialize;

use super::grid::GridSpec;
use super::profile::{CurvatureProfile, Local, PsiForm};
use crate::error::{invalid, Error, Result};
use crate::numerics::lsq::least_squares;
use crate::numerics::ode::{integrate, OdeOptions};
use crate::Real;

/// Asymptotic growth of ψ, used for integrals beyond the grid and for the
/// limits of weighted quantities at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailModel<T> {
    /// ψ ≈ A r^q.
    Power { log_amplitude: T, exponent: T },
    /// ln ψ ≈ ln A + λ r^s + μ ln r.
    Exponential {
        log_amplitude: T,
        rate: T,
        power: T,
        log_coefficient: T,
    },
    /// ψ → 0: the tail integral of 1/ψ^{N−1} diverges.
    Decaying,
}

/// Fitted law ln ψ = a + b r^s + c ln r.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ExpFit<T> {
    a: T,
    b: T,
    s: T,
    c: T,
}

impl<T: Real> ExpFit<T> {
    fn local(&self, r: T, k: T) -> Local<T> {
        let rs = r.powf(self.s);
        Local {
            ell: self.a + self.b * rs + self.c * r.ln(),
            g: (self.b * self.s * rs + self.c) / r,
            k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Beyond<T> {
    Closed(PsiForm<T>),
    Fit(ExpFit<T>),
}

#[derive(Debug, Clone, PartialEq)]
struct Sampled<T> {
    ell: Vec<T>,
    g: Vec<T>,
    k_right: Vec<T>,
    k_left: Vec<T>,
    psi: Vec<T>,
    dpsi: Vec<T>,
    k0: T,
    beyond: Beyond<T>,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr<T> {
    Closed(PsiForm<T>),
    Sampled(Box<Sampled<T>>),
}

/// The geometry of a model manifold dr² + ψ(r)² dθ² in dimension N.
///
/// Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelFunction<T> {
    dimension: usize,
    r_max: T,
    profile: CurvatureProfile<T>,
    grid: Vec<T>,
    repr: Repr<T>,
    tail: TailModel<T>,
}

fn check_common<T: Real>(profile: &CurvatureProfile<T>, dimension: usize, r_max: T) -> Result<()> {
    profile.validate()?;
    if dimension < 2 {
        return Err(invalid(
            "n",
            dimension as f64,
            "dimension must be at least 2",
        ));
    }
    if !(r_max.is_finite() && r_max > T::zero()) {
        return Err(invalid(
            "r_max",
            r_max.as_f64(),
            "must be positive and finite",
        ));
    }
    if let Some(r0) = profile.breakpoint() {
        if r_max <= r0 {
            return Err(invalid(
                "r_max",
                r_max.as_f64(),
                "must exceed the profile radius r0",
            ));
        }
    }
    Ok(())
}

fn breakpoints<T: Real>(profile: &CurvatureProfile<T>) -> Vec<T> {
    profile.breakpoint().into_iter().collect()
}

/// Builds ψ for `profile`: closed form when one exists, ODE table otherwise.
pub fn build_model<T: Real>(
    profile: CurvatureProfile<T>,
    dimension: usize,
    r_max: T,
    grid: &GridSpec<T>,
) -> Result<ModelFunction<T>> {
    check_common(&profile, dimension, r_max)?;
    let nodes = grid.build(r_max, &breakpoints(&profile))?;
    match profile.closed_form() {
        Some(form) => {
            let model = ModelFunction {
                dimension,
                r_max,
                profile,
                grid: nodes,
                repr: Repr::Closed(form),
                tail: tail_of_form(form),
            };
            model.check_positive()?;
            Ok(model)
        }
        None => sampled_model(profile, dimension, r_max, nodes),
    }
}

/// Builds ψ by integrating ψ″ = Kψ even when a closed form exists.
pub fn build_model_sampled<T: Real>(
    profile: CurvatureProfile<T>,
    dimension: usize,
    r_max: T,
    grid: &GridSpec<T>,
) -> Result<ModelFunction<T>> {
    check_common(&profile, dimension, r_max)?;
    let nodes = grid.build(r_max, &breakpoints(&profile))?;
    sampled_model(profile, dimension, r_max, nodes)
}

fn tail_of_form<T: Real>(form: PsiForm<T>) -> TailModel<T> {
    match form {
        PsiForm::Euclidean => TailModel::Power {
            log_amplitude: T::zero(),
            exponent: T::one(),
        },
        PsiForm::Hyperbolic { k } => TailModel::Exponential {
            log_amplitude: -(T::lit(2.0) * k.sqrt()).ln(),
            rate: k.sqrt(),
            power: T::one(),
            log_coefficient: T::zero(),
        },
        PsiForm::Polynomial { a1, q1, .. } => TailModel::Power {
            log_amplitude: a1.ln(),
            exponent: q1,
        },
        PsiForm::ExponentialPower { .. } => TailModel::Decaying,
    }
}

fn ode_options<T: Real>() -> OdeOptions<T> {
    OdeOptions {
        rtol: T::lit(1e-12).max(T::epsilon() * T::lit(64.0)),
        atol: T::lit(1e-13).max(T::epsilon() * T::lit(16.0)),
        ..OdeOptions::default()
    }
}

fn series<T: Real>(r: T, k0: T) -> Local<T> {
    let r2 = r * r;
    let six = T::lit(6.0);
    Local {
        ell: r.ln() + (k0 * r2 / six).ln_1p(),
        g: (T::one() + k0 * r2 * T::lit(0.5)) / (r * (T::one() + k0 * r2 / six)),
        k: k0,
    }
}

/// Quintic Hermite interpolation of ℓ on one interval; returns (ℓ, ℓ′).
#[allow(clippy::too_many_arguments)]
fn quintic<T: Real>(r: T, r0: T, r1: T, l0: T, l1: T, g0: T, g1: T, c0: T, c1: T) -> (T, T) {
    let h = r1 - r0;
    let t = (r - r0) / h;
    let (t2, t3) = (t * t, t * t * t);
    let (t4, t5) = (t3 * t, t3 * t2);
    let lit = T::lit;
    let d0 = g0 * h;
    let d1 = g1 * h;
    let s0 = c0 * h * h;
    let s1 = c1 * h * h;
    let h0 = T::one() - lit(10.0) * t3 + lit(15.0) * t4 - lit(6.0) * t5;
    let h1 = t - lit(6.0) * t3 + lit(8.0) * t4 - lit(3.0) * t5;
    let h2 = lit(0.5) * t2 - lit(1.5) * t3 + lit(1.5) * t4 - lit(0.5) * t5;
    let h3 = lit(0.5) * t3 - t4 + lit(0.5) * t5;
    let h4 = -lit(4.0) * t3 + lit(7.0) * t4 - lit(3.0) * t5;
    let h5 = lit(10.0) * t3 - lit(15.0) * t4 + lit(6.0) * t5;
    let dh0 = -lit(30.0) * t2 + lit(60.0) * t3 - lit(30.0) * t4;
    let dh1 = T::one() - lit(18.0) * t2 + lit(32.0) * t3 - lit(15.0) * t4;
    let dh2 = t - lit(4.5) * t2 + lit(6.0) * t3 - lit(2.5) * t4;
    let dh3 = lit(1.5) * t2 - lit(4.0) * t3 + lit(2.5) * t4;
    let dh4 = -lit(12.0) * t2 + lit(28.0) * t3 - lit(15.0) * t4;
    let ell = l0 * h0 + d0 * h1 + s0 * h2 + s1 * h3 + d1 * h4 + l1 * h5;
    let dell = (l0 * dh0 + d0 * dh1 + s0 * dh2 + s1 * dh3 + d1 * dh4 - l1 * dh0) / h;
    (ell, dell)
}

fn sampled_model<T: Real>(
    profile: CurvatureProfile<T>,
    dimension: usize,
    r_max: T,
    grid: Vec<T>,
) -> Result<ModelFunction<T>> {
    let n = grid.len();
    let opts = ode_options::<T>();
    let k0 = profile.curvature(grid[0]);
    let start = series(grid[0], k0);
    let mut ell = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let mut mids = Vec::with_capacity(n);
    ell.push(start.ell);
    g.push(start.g);
    let mut y = [start.ell, start.g];
    let mut h = grid[0] * T::lit(0.01);
    for i in 0..n - 1 {
        let (a, b) = (grid[i], grid[i + 1]);
        let (kr, kl) = (profile.curvature(a), profile.curvature_left(b));
        let rhs = |t: T, y: &[T; 2]| {
            let k = if t >= b {
                kl
            } else if t <= a {
                kr
            } else {
                profile.curvature(t)
            };
            [y[1], k - y[1] * y[1]]
        };
        let mid = (a + b) * T::lit(0.5);
        let to_grid_error = |f: crate::numerics::ode::OdeFailure<T>| Error::GridTooCoarse {
            r: f.t.as_f64(),
            estimate: f.error_estimate.as_f64(),
            tolerance: opts.rtol.as_f64(),
        };
        let ym = integrate(rhs, a, y, mid, &mut h, &opts).map_err(to_grid_error)?;
        y = integrate(rhs, mid, ym, b, &mut h, &opts).map_err(to_grid_error)?;
        mids.push(ym[0]);
        ell.push(y[0]);
        g.push(y[1]);
    }
    let k_right: Vec<T> = grid.iter().map(|r| profile.curvature(*r)).collect();
    let mut k_left: Vec<T> = grid.iter().map(|r| profile.curvature_left(*r)).collect();
    k_left[0] = k_right[0];
    for i in 0..n - 1 {
        let mid = (grid[i] + grid[i + 1]) * T::lit(0.5);
        let (interp, _) = quintic(
            mid,
            grid[i],
            grid[i + 1],
            ell[i],
            ell[i + 1],
            g[i],
            g[i + 1],
            k_right[i] - g[i] * g[i],
            k_left[i + 1] - g[i + 1] * g[i + 1],
        );
        let tol = T::lit(1e-7).max(T::epsilon() * T::lit(256.0) * T::one().max(mids[i].abs()));
        let err = (interp - mids[i]).abs();
        if !(err <= tol) {
            return Err(Error::GridTooCoarse {
                r: mid.as_f64(),
                estimate: err.as_f64(),
                tolerance: tol.as_f64(),
            });
        }
    }
    let psi: Vec<T> = ell.iter().map(|l| l.exp()).collect();
    let dpsi: Vec<T> = psi.iter().zip(&g).map(|(p, g)| *p * *g).collect();
    let beyond = beyond_model(&profile, &grid, &ell)?;
    let tail = match beyond {
        Beyond::Closed(form) => tail_of_form(form),
        Beyond::Fit(f) => TailModel::Exponential {
            log_amplitude: f.a,
            rate: f.b,
            power: f.s,
            log_coefficient: f.c,
        },
    };
    let model = ModelFunction {
        dimension,
        r_max,
        profile,
        grid,
        repr: Repr::Sampled(Box::new(Sampled {
            ell,
            g,
            k_right,
            k_left,
            psi,
            dpsi,
            k0,
            beyond,
        })),
        tail,
    };
    model.check_positive()?;
    Ok(model)
}

/// Chooses the continuation beyond the last node. Sub-quadratic power laws
/// are fitted to ln ψ = a + b r^s + c ln r with s = 1 − β/2 over the last
/// decade of the grid.
fn beyond_model<T: Real>(
    profile: &CurvatureProfile<T>,
    grid: &[T],
    ell: &[T],
) -> Result<Beyond<T>> {
    if let Some(form) = profile.closed_form() {
        return Ok(Beyond::Closed(form));
    }
    let CurvatureProfile::PowerLaw { beta, .. } = *profile else {
        return Err(Error::TailUnclassifiable {
            residual: f64::INFINITY,
        });
    };
    let r_max = *grid.last().expect("grid is never empty");
    let s = T::one() - beta * T::lit(0.5);
    let lo = r_max * T::lit(0.1);
    let start = grid.partition_point(|r| *r < lo);
    let rs = &grid[start..];
    let ls = &ell[start..];
    if rs.len() < 8 {
        return Err(Error::TooFewPoints {
            needed: 8,
            got: rs.len(),
        });
    }
    let rows: Vec<Vec<T>> = rs
        .iter()
        .map(|r| vec![T::one(), r.powf(s), r.ln()])
        .collect();
    let Some((coef, resid)) = least_squares(&rows, ls) else {
        return Err(Error::TailUnclassifiable {
            residual: f64::INFINITY,
        });
    };
    let scale = ls.iter().map(|v| *v * *v).sum::<T>().sqrt();
    let rel = resid / scale;
    if !(rel < T::lit(1e-3)) {
        return Err(Error::TailUnclassifiable {
            residual: rel.as_f64(),
        });
    }
    let (b, c) = (coef[1], coef[2]);
    let a = *ell.last().expect("grid is never empty") - b * r_max.powf(s) - c * r_max.ln();
    Ok(Beyond::Fit(ExpFit { a, b, s, c }))
}

impl<T: Real> ModelFunction<T> {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn r_max(&self) -> T {
        self.r_max
    }

    pub fn profile(&self) -> &CurvatureProfile<T> {
        &self.profile
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn tail(&self) -> TailModel<T> {
        self.tail
    }

    pub fn is_closed_form(&self) -> bool {
        matches!(self.repr, Repr::Closed(_))
    }

    fn check_positive(&self) -> Result<()> {
        for &r in &self.grid {
            let l = self.local(r);
            if !l.ell.is_finite() || !l.g.is_finite() {
                return Err(invalid(
                    "psi",
                    l.ell.exp().as_f64(),
                    "model function must stay positive on the grid",
                ));
            }
        }
        Ok(())
    }

    /// ℓ, g, K at any r > 0, continuing past `r_max` with the tail law.
    pub(crate) fn local(&self, r: T) -> Local<T> {
        match &self.repr {
            Repr::Closed(form) => form.local(r),
            Repr::Sampled(s) => {
                if r <= self.grid[0] {
                    return series(r, s.k0);
                }
                if r > self.r_max {
                    return match s.beyond {
                        Beyond::Closed(form) => form.local(r),
                        Beyond::Fit(fit) => fit.local(r, self.profile.curvature(r)),
                    };
                }
                let idx = self.grid.partition_point(|x| *x <= r);
                let i = idx.saturating_sub(1).min(self.grid.len() - 2);
                let (ell, g) = quintic(
                    r,
                    self.grid[i],
                    self.grid[i + 1],
                    s.ell[i],
                    s.ell[i + 1],
                    s.g[i],
                    s.g[i + 1],
                    s.k_right[i] - s.g[i] * s.g[i],
                    s.k_left[i + 1] - s.g[i + 1] * s.g[i + 1],
                );
                Local {
                    ell,
                    g,
                    k: self.profile.curvature(r),
                }
            }
        }
    }

    pub(crate) fn local_checked(&self, r: T) -> Result<Local<T>> {
        if !(r > T::zero()) || r > self.r_max * (T::one() + T::lit(1e-12)) {
            return Err(Error::OutOfDomain {
                r: r.as_f64(),
                r_max: self.r_max.as_f64(),
            });
        }
        Ok(self.local(r))
    }

    pub fn psi(&self, r: T) -> Result<T> {
        Ok(self.local_checked(r)?.ell.exp())
    }

    pub fn dpsi(&self, r: T) -> Result<T> {
        let l = self.local_checked(r)?;
        Ok(l.g * l.ell.exp())
    }

    /// ψ″ = K ψ; never a numerical second difference.
    pub fn ddpsi(&self, r: T) -> Result<T> {
        let l = self.local_checked(r)?;
        Ok(l.k * l.ell.exp())
    }

    pub fn log_psi(&self, r: T) -> Result<T> {
        Ok(self.local_checked(r)?.ell)
    }

    /// ψ′/ψ.
    pub fn log_derivative(&self, r: T) -> Result<T> {
        Ok(self.local_checked(r)?.g)
    }

    /// K(r) = ψ″/ψ = −(radial sectional curvature).
    pub fn curvature(&self, r: T) -> Result<T> {
        Ok(self.local_checked(r)?.k)
    }

    /// Node values `(r, ψ, ψ′)`.
    pub fn node_table(&self) -> (Vec<T>, Vec<T>, Vec<T>) {
        match &self.repr {
            Repr::Sampled(s) => (self.grid.clone(), s.psi.clone(), s.dpsi.clone()),
            Repr::Closed(form) => {
                let (psi, dpsi) = self
                    .grid
                    .iter()
                    .map(|r| {
                        let l = form.local(*r);
                        let p = l.ell.exp();
                        (p, p * l.g)
                    })
                    .unzip();
                (self.grid.clone(), psi, dpsi)
            }
        }
    }

    /// One-sided curvatures `(K(r⁻), K(r⁺))` at every node.
    pub(crate) fn node_curvatures(&self) -> Vec<(T, T)> {
        match &self.repr {
            Repr::Sampled(s) => s
                .k_left
                .iter()
                .copied()
                .zip(s.k_right.iter().copied())
                .collect(),
            Repr::Closed(form) => self
                .grid
                .iter()
                .map(|r| (form.curvature_left(*r), form.local(*r).k))
                .collect(),
        }
    }

    /// Rebuilds a sampled model from tabulated `(r, ψ, ψ′)`.
    pub(crate) fn from_table(
        profile: CurvatureProfile<T>,
        dimension: usize,
        r: Vec<T>,
        psi: Vec<T>,
        dpsi: Vec<T>,
    ) -> Result<Self> {
        check_common(
            &profile,
            dimension,
            *r.last().ok_or_else(|| Error::Table("no rows".into()))?,
        )?;
        if r.len() < 2 {
            return Err(Error::TooFewPoints {
                needed: 2,
                got: r.len(),
            });
        }
        if !r.windows(2).all(|w| w[0] < w[1]) || !(r[0] > T::zero()) {
            return Err(Error::Table(
                "radii must be positive and strictly increasing".into(),
            ));
        }
        if !psi.iter().all(|p| *p > T::zero()) {
            return Err(Error::Table("psi must be positive".into()));
        }
        let ell: Vec<T> = psi.iter().map(|p| p.ln()).collect();
        let g: Vec<T> = psi.iter().zip(&dpsi).map(|(p, d)| *d / *p).collect();
        let k_right: Vec<T> = r.iter().map(|x| profile.curvature(*x)).collect();
        let mut k_left: Vec<T> = r.iter().map(|x| profile.curvature_left(*x)).collect();
        k_left[0] = k_right[0];
        let beyond = beyond_model(&profile, &r, &ell)?;
        let tail = match beyond {
            Beyond::Closed(form) => tail_of_form(form),
            Beyond::Fit(f) => TailModel::Exponential {
                log_amplitude: f.a,
                rate: f.b,
                power: f.s,
                log_coefficient: f.c,
            },
        };
        let r_max = *r.last().expect("checked above");
        Ok(Self {
            dimension,
            r_max,
            profile,
            repr: Repr::Sampled(Box::new(Sampled {
                ell,
                g,
                k0: k_right[0],
                k_right,
                k_left,
                psi,
                dpsi,
                beyond,
            })),
            grid: r,
            tail,
        })
    }
}
