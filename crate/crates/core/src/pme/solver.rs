//! Explicit conservative finite volumes for u_t = ψ^{1−N}(ψ^{N−1}(u^m)_r)_r.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geometry::ModelFunction;
use crate::numerics::quadrature::gauss_legendre_8;
use crate::{unit_sphere_area, Real};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialDatum<T> {
    /// `height` on [0, r_support).
    Characteristic { r_support: T, height: T },
    /// exp(−r²/scale²), cut off at half the domain.
    GaussianLike { scale: T },
    /// Piecewise-linear through `(r, u)` pairs, zero beyond the last.
    Custom(Vec<(T, T)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmeConfig<T> {
    pub m: T,
    pub r_domain: T,
    pub cells: usize,
    pub initial: InitialDatum<T>,
    pub t_end: T,
    /// Increasing positive times at which states are recorded.
    pub output_times: Vec<T>,
    /// Fraction of the monotonicity limit used as time step.
    pub safety: T,
    pub max_steps: usize,
}

impl<T: Real> PmeConfig<T> {
    pub fn new(
        m: T,
        r_domain: T,
        cells: usize,
        initial: InitialDatum<T>,
        t_end: T,
        outputs: usize,
    ) -> Self {
        let t0 = t_end * T::lit(1e-6);
        Self {
            m,
            r_domain,
            cells,
            initial,
            t_end,
            output_times: log_spaced(t0, t_end, outputs),
            safety: T::lit(0.9),
            max_steps: 200_000_000,
        }
    }
}

/// `count` points from `a` to `b` evenly spaced in ln t.
pub fn log_spaced<T: Real>(a: T, b: T, count: usize) -> Vec<T> {
    if count < 2 {
        return vec![b];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..count)
        .map(|i| (la + (lb - la) * T::from_usize_lossy(i) / T::from_usize_lossy(count - 1)).exp())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PmeState<T> {
    pub t: T,
    /// Cell averages.
    pub u: Vec<T>,
    /// ω_{N−1} Σ V_i u_i.
    pub mass: T,
    pub sup: T,
    /// Outer face of the last cell with u above the support threshold.
    pub support_edge: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PmeRun<T> {
    /// Cell centres.
    pub centers: Vec<T>,
    pub states: Vec<PmeState<T>>,
    /// Time at which the support reached the last cell; the run stops there.
    pub boundary_reached: Option<T>,
    pub steps: usize,
}

pub struct PmeSolver<T> {
    m: T,
    dr: T,
    omega: T,
    centers: Vec<T>,
    volumes: Vec<T>,
    // ψ^{N−1} at the inner faces 1..n−1
    areas: Vec<T>,
    // V_i dr / (A_{i−1/2} + A_{i+1/2})
    geometry: Vec<T>,
    threshold: T,
    u: Vec<T>,
    phi: Vec<T>,
    flux: Vec<T>,
    t: T,
}

fn check_positive<T: Real>(name: &'static str, v: T) -> Result<()> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(invalid(name, v.as_f64(), "must be positive and finite"))
    }
}

impl<T: Real> PmeSolver<T> {
    pub fn new(model: &ModelFunction<T>, config: &PmeConfig<T>) -> Result<Self> {
        if !(config.m > T::one()) || !config.m.is_finite() {
            return Err(invalid(
                "m",
                config.m.as_f64(),
                "porous-medium exponent must exceed 1",
            ));
        }
        check_positive("r_domain", config.r_domain)?;
        check_positive("t_end", config.t_end)?;
        if !(config.safety > T::zero() && config.safety <= T::one()) {
            return Err(invalid(
                "safety",
                config.safety.as_f64(),
                "must lie in (0, 1]",
            ));
        }
        if config.cells < 4 {
            return Err(invalid(
                "cells",
                config.cells as f64,
                "need at least 4 cells",
            ));
        }
        if config.output_times.windows(2).any(|w| !(w[1] > w[0]))
            || config.output_times.iter().any(|t| !(*t > T::zero()))
        {
            return Err(invalid(
                "output_times",
                f64::NAN,
                "must be positive and increasing",
            ));
        }
        let n = config.cells;
        let dr = config.r_domain / T::from_usize_lossy(n);
        let n1 = T::from_usize_lossy(model.dimension() - 1);
        let lw = |r: T| n1 * model.local(r).ell;
        let faces: Vec<T> = (0..=n).map(|i| dr * T::from_usize_lossy(i)).collect();
        let centers: Vec<T> = faces
            .windows(2)
            .map(|f| (f[0] + f[1]) * T::lit(0.5))
            .collect();
        let volumes: Vec<T> = faces
            .windows(2)
            .map(|f| {
                gauss_legendre_8(f[0], f[1])
                    .iter()
                    .map(|&(x, w)| w * lw(x).exp())
                    .sum()
            })
            .collect();
        let areas: Vec<T> = faces[1..n].iter().map(|r| lw(*r).exp()).collect();
        let geometry = (0..n)
            .map(|i| {
                let inner = if i == 0 { T::zero() } else { areas[i - 1] };
                let outer = if i + 1 == n { T::zero() } else { areas[i] };
                volumes[i] * dr / (inner + outer)
            })
            .collect();
        let half = config.r_domain * T::lit(0.5);
        let u: Vec<T> = centers
            .iter()
            .map(|&r| match &config.initial {
                InitialDatum::Characteristic { r_support, height } => {
                    if r < *r_support {
                        *height
                    } else {
                        T::zero()
                    }
                }
                InitialDatum::GaussianLike { scale } => {
                    if r < half {
                        (-(r / *scale).powi(2)).exp()
                    } else {
                        T::zero()
                    }
                }
                InitialDatum::Custom(table) => interpolate(table, r),
            })
            .collect();
        if u.iter().any(|v| !(*v >= T::zero()) || !v.is_finite()) {
            return Err(invalid(
                "initial",
                f64::NAN,
                "datum must be finite and nonnegative",
            ));
        }
        if centers
            .iter()
            .zip(&u)
            .any(|(r, v)| *r > half && *v > T::zero())
        {
            return Err(invalid(
                "initial",
                f64::NAN,
                "datum must be supported in [0, r_domain/2]",
            ));
        }
        let sup0 = u.iter().copied().fold(T::zero(), T::max);
        Ok(Self {
            m: config.m,
            dr,
            omega: unit_sphere_area(model.dimension()),
            centers,
            volumes,
            areas,
            geometry,
            threshold: sup0 * T::lit(1e-12),
            phi: vec![T::zero(); n],
            flux: vec![T::zero(); n - 1],
            u,
            t: T::zero(),
        })
    }

    pub fn time(&self) -> T {
        self.t
    }

    pub fn values(&self) -> &[T] {
        &self.u
    }

    pub fn centers(&self) -> &[T] {
        &self.centers
    }

    pub fn mass(&self) -> T {
        self.omega
            * self
                .u
                .iter()
                .zip(&self.volumes)
                .map(|(u, v)| *u * *v)
                .sum::<T>()
    }

    pub fn sup(&self) -> T {
        self.u.iter().copied().fold(T::zero(), T::max)
    }

    /// Index of the last cell above the support threshold.
    fn support_cell(&self) -> Option<usize> {
        self.u.iter().rposition(|v| *v > self.threshold)
    }

    pub fn support_edge(&self) -> T {
        self.support_cell()
            .map_or(T::zero(), |i| self.dr * T::from_usize_lossy(i + 1))
    }

    /// Largest step keeping the scheme monotone, times `safety`.
    pub fn stable_dt(&self, safety: T) -> T {
        let n = self.u.len();
        let mut dt = T::infinity();
        for i in 0..n {
            let lo = i.saturating_sub(1);
            let hi = (i + 1).min(n - 1);
            let umax = self.u[lo].max(self.u[i]).max(self.u[hi]);
            if umax > T::zero() {
                let speed = if self.m == T::lit(2.0) {
                    umax * T::lit(2.0)
                } else {
                    self.m * umax.powf(self.m - T::one())
                };
                dt = dt.min(self.geometry[i] / speed);
            }
        }
        dt * safety
    }

    /// One forward Euler step of size `dt`.
    pub fn step(&mut self, dt: T) -> Result<()> {
        let n = self.u.len();
        let m = self.m;
        let square = m == T::lit(2.0);
        for (p, u) in self.phi.iter_mut().zip(&self.u) {
            *p = if square { *u * *u } else { u.powf(m) };
        }
        for i in 0..n - 1 {
            self.flux[i] = self.areas[i] * (self.phi[i + 1] - self.phi[i]) / self.dr;
        }
        for i in 0..n {
            let inflow = if i + 1 < n { self.flux[i] } else { T::zero() };
            let outflow = if i > 0 { self.flux[i - 1] } else { T::zero() };
            let v = self.u[i] + dt * (inflow - outflow) / self.volumes[i];
            if !v.is_finite() || v < -self.threshold {
                return Err(Error::StabilityFailure { t: self.t.as_f64() });
            }
            self.u[i] = v.max(T::zero());
        }
        self.t += dt;
        Ok(())
    }

    pub fn state(&self) -> PmeState<T> {
        PmeState {
            t: self.t,
            u: self.u.clone(),
            mass: self.mass(),
            sup: self.sup(),
            support_edge: self.support_edge(),
        }
    }
}

fn interpolate<T: Real>(table: &[(T, T)], r: T) -> T {
    match table.iter().position(|(x, _)| *x >= r) {
        None => T::zero(),
        Some(0) => table[0].1,
        Some(j) => {
            let (x0, y0) = table[j - 1];
            let (x1, y1) = table[j];
            y0 + (y1 - y0) * (r - x0) / (x1 - x0)
        }
    }
}

/// Runs the solver to `t_end`, recording states at the output times (and at
/// t = 0). Stops early, flagging `boundary_reached`, once the support
/// touches the last cell.
pub fn pme_run<T: Real>(model: &ModelFunction<T>, config: &PmeConfig<T>) -> Result<PmeRun<T>> {
    let mut solver = PmeSolver::new(model, config)?;
    let mut states = vec![solver.state()];
    let mut targets: Vec<T> = config
        .output_times
        .iter()
        .copied()
        .filter(|t| *t <= config.t_end)
        .collect();
    if targets.last().is_none_or(|t| *t < config.t_end) {
        targets.push(config.t_end);
    }
    let last = solver.u.len() - 1;
    let mut steps = 0;
    let mut boundary_reached = None;
    if solver.sup() == T::zero() {
        for t in targets {
            solver.t = t;
            states.push(solver.state());
        }
        return Ok(PmeRun {
            centers: solver.centers.clone(),
            states,
            boundary_reached,
            steps,
        });
    }
    'outer: for target in targets {
        while solver.t < target {
            if steps >= config.max_steps {
                return Err(Error::StepLimit {
                    steps,
                    t: solver.t.as_f64(),
                });
            }
            let dt = solver.stable_dt(config.safety).min(target - solver.t);
            solver.step(dt)?;
            steps += 1;
            if solver.support_cell().is_some_and(|i| i >= last) {
                boundary_reached = Some(solver.t);
                break 'outer;
            }
            // Guard against the final step rounding just below the target.
            if target - solver.t <= target * T::epsilon() * T::lit(4.0) {
                solver.t = target;
            }
        }
        states.push(solver.state());
    }
    Ok(PmeRun {
        centers: solver.centers.clone(),
        states,
        boundary_reached,
        steps,
    })
}
