//! The weight w = ψ^{N−1} with its cumulative and tail integrals.

use serde::Serialize;

use crate::error::Result;
use crate::geometry::{ModelFunction, TailModel};
use crate::numerics::quadrature::{gauss_legendre_8, integrate_dyadic};
use crate::scalar::log_add_exp;
use crate::{unit_sphere_area, Real};

/// Growth class of the weight at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailKind<T> {
    /// ln ψ ≈ ln A + λ r^s + μ ln r.
    Exponential {
        rate: T,
        power: T,
        log_coefficient: T,
        log_amplitude: T,
    },
    /// ψ ≈ A r^q.
    Power { exponent: T, log_amplitude: T },
    /// ∫^∞ ψ^{1−N} = ∞.
    Divergent,
}

/// W(r) = ∫₀^r ψ^{N−1} and T(r) = ∫_r^∞ ψ^{1−N}, tabulated in log form on
/// the model grid.
#[derive(Debug, Clone)]
pub struct WeightMeasure<T> {
    model: ModelFunction<T>,
    n1: T,
    log_w_nodes: Vec<T>,
    log_t_nodes: Vec<T>,
    tail_kind: TailKind<T>,
}

/// ln ∫_a^b exp(f) on one short interval by 8-point Gauss–Legendre.
fn log_gl<T: Real, F: Fn(T) -> T>(a: T, b: T, f: F) -> T {
    let pts = gauss_legendre_8(a, b);
    let vals: Vec<(T, T)> = pts.iter().map(|&(x, w)| (f(x), w)).collect();
    let m = vals.iter().map(|v| v.0).fold(T::neg_infinity(), T::max);
    let s: T = vals.iter().map(|&(v, w)| w * (v - m).exp()).sum();
    m + s.ln()
}

fn integral_rel_tol<T: Real>() -> T {
    T::lit(1e-12).max(T::epsilon() * T::lit(16.0))
}

pub fn build_weight<T: Real>(model: &ModelFunction<T>) -> Result<WeightMeasure<T>> {
    let n1 = T::from_usize_lossy(model.dimension() - 1);
    let tail_kind = match model.tail() {
        TailModel::Decaying => TailKind::Divergent,
        TailModel::Power {
            log_amplitude,
            exponent,
        } => {
            if exponent * n1 <= T::one() {
                TailKind::Divergent
            } else {
                TailKind::Power {
                    exponent,
                    log_amplitude,
                }
            }
        }
        TailModel::Exponential {
            log_amplitude,
            rate,
            power,
            log_coefficient,
        } => TailKind::Exponential {
            rate,
            power,
            log_coefficient,
            log_amplitude,
        },
    };
    let grid = model.grid();
    let lw = |r: T| n1 * model.local(r).ell;
    let mut log_w_nodes = Vec::with_capacity(grid.len());
    log_w_nodes.push(log_gl(T::zero(), grid[0], lw));
    for i in 1..grid.len() {
        let piece = log_gl(grid[i - 1], grid[i], lw);
        log_w_nodes.push(log_add_exp(log_w_nodes[i - 1], piece));
    }
    let mut weight = WeightMeasure {
        model: model.clone(),
        n1,
        log_w_nodes,
        log_t_nodes: Vec::new(),
        tail_kind,
    };
    let mut log_t = vec![T::infinity(); grid.len()];
    if !matches!(tail_kind, TailKind::Divergent) {
        let last = grid.len() - 1;
        log_t[last] = weight.log_tail_beyond(grid[last]);
        let inv = |r: T| -n1 * model.local(r).ell;
        for i in (0..last).rev() {
            log_t[i] = log_add_exp(log_t[i + 1], log_gl(grid[i], grid[i + 1], inv));
        }
    }
    weight.log_t_nodes = log_t;
    Ok(weight)
}

impl<T: Real> WeightMeasure<T> {
    pub fn model(&self) -> &ModelFunction<T> {
        &self.model
    }

    pub fn tail_kind(&self) -> TailKind<T> {
        self.tail_kind
    }

    pub fn dimension(&self) -> usize {
        self.model.dimension()
    }

    pub(crate) fn log_weight(&self, r: T) -> T {
        self.n1 * self.model.local(r).ell
    }

    /// w(r) = ψ(r)^{N−1}.
    pub fn weight(&self, r: T) -> T {
        self.log_weight(r).exp()
    }

    /// ln ∫ exp(sign·ln w(s)) ds between `r` and `bound` (either side of
    /// `r`, possibly infinite). The variable is s = r e^{±x}, or for
    /// exponential tails s = r ± x/(N−1)g(r), so that the integrand decays
    /// from x = 0 at a unit rate.
    fn log_integral_from(&self, r: T, bound: T, sign: T, linear: bool) -> T {
        let base = sign * self.log_weight(r);
        let outward = bound > r;
        let tol = integral_rel_tol();
        if linear {
            let h = T::one() / (self.n1 * self.model.local(r).g.abs());
            let upper = (bound - r).abs() / h;
            let v = integrate_dyadic(upper, tol, 200, |x: T| {
                let s = if outward { r + x * h } else { r - x * h };
                (sign * self.log_weight(s) - base).exp()
            });
            base + h.ln() + v.ln()
        } else {
            let upper = (bound / r).ln().abs();
            let v = integrate_dyadic(upper, tol, 200, |x: T| {
                let (s, jac) = if outward {
                    (r * x.exp(), x)
                } else {
                    (r * (-x).exp(), -x)
                };
                (sign * self.log_weight(s) - base + jac).exp()
            });
            base + r.ln() + v.ln()
        }
    }

    fn exponential_tail(&self) -> bool {
        matches!(self.tail_kind, TailKind::Exponential { .. })
    }

    fn log_tail_beyond(&self, r: T) -> T {
        self.log_integral_from(r, T::infinity(), -T::one(), self.exponential_tail())
    }

    /// ln W(r).
    pub fn log_cumulative(&self, r: T) -> T {
        let grid = self.model.grid();
        if !(r > T::zero()) {
            return T::neg_infinity();
        }
        let lw = |s: T| self.log_weight(s);
        if r <= grid[0] {
            return log_gl(T::zero(), r, lw);
        }
        let last = grid.len() - 1;
        if r > grid[last] {
            let piece = self.log_integral_from(r, grid[last], T::one(), self.exponential_tail());
            return log_add_exp(self.log_w_nodes[last], piece);
        }
        let i = grid.partition_point(|x| *x <= r).saturating_sub(1);
        if r == grid[i] {
            return self.log_w_nodes[i];
        }
        log_add_exp(self.log_w_nodes[i], log_gl(grid[i], r, lw))
    }

    /// ln T(r); +∞ for divergent tails.
    pub fn log_tail(&self, r: T) -> T {
        if matches!(self.tail_kind, TailKind::Divergent) {
            return T::infinity();
        }
        let grid = self.model.grid();
        let last = grid.len() - 1;
        if r >= grid[last] {
            return if r == grid[last] {
                self.log_t_nodes[last]
            } else {
                self.log_tail_beyond(r)
            };
        }
        let inv = |s: T| -self.log_weight(s);
        if r < grid[0] {
            let piece = self.log_integral_from(r, grid[0], -T::one(), false);
            return log_add_exp(self.log_t_nodes[0], piece);
        }
        let i = grid.partition_point(|x| *x <= r).saturating_sub(1);
        if r == grid[i] {
            return self.log_t_nodes[i];
        }
        log_add_exp(self.log_t_nodes[i + 1], log_gl(r, grid[i + 1], inv))
    }

    /// W(r) = ∫₀^r ψ^{N−1}.
    pub fn cumulative(&self, r: T) -> T {
        self.log_cumulative(r).exp()
    }

    /// T(r) = ∫_r^∞ ψ^{1−N}.
    pub fn tail_integral(&self, r: T) -> T {
        self.log_tail(r).exp()
    }

    /// Volume of the geodesic ball of radius r: ω_{N−1} W(r).
    pub fn ball_volume(&self, r: T) -> T {
        unit_sphere_area::<T>(self.dimension()) * self.cumulative(r)
    }

    /// ln Q(r) = ln W / p + ln T / 2.
    pub fn log_q(&self, p: T, r: T) -> T {
        self.log_cumulative(r) / p + self.log_tail(r) * T::lit(0.5)
    }

    /// Q(r) = W(r)^{1/p} T(r)^{1/2}; +∞ when the tail diverges.
    pub fn q_at(&self, p: T, r: T) -> T {
        self.log_q(p, r).exp()
    }

    /// 1 − p W / (2 ψ^{2(N−1)} T): positive where Q increases, zero at
    /// critical points.
    pub fn critical_residual(&self, p: T, r: T) -> T {
        let lw = self.log_weight(r);
        let v = p.ln() + self.log_cumulative(r) - T::LN_2() - lw - lw - self.log_tail(r);
        T::one() - v.exp()
    }
}
