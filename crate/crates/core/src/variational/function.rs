//! Piecewise-linear radial functions and their weighted norms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::quadrature::gauss_legendre_8;
use crate::numerics::tridiag::SymTridiag;
use crate::weighted::WeightMeasure;
use crate::Real;

/// Piecewise-linear g on nodes 0 = r₀ < … < r_n with g(r_n) = 0, extended
/// by zero beyond r_n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteFunction<T> {
    nodes: Vec<T>,
    values: Vec<T>,
}

impl<T: Real> DiscreteFunction<T> {
    pub fn new(nodes: Vec<T>, values: Vec<T>) -> Result<Self> {
        if nodes.len() < 2 || nodes.len() != values.len() {
            return Err(Error::Table(format!(
                "need matching node and value lists of length at least 2, got {} and {}",
                nodes.len(),
                values.len()
            )));
        }
        if nodes[0] != T::zero() {
            return Err(Error::Table("first node must be r = 0".into()));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) || !nodes.iter().all(|r| r.is_finite()) {
            return Err(Error::Table(
                "nodes must be finite and strictly increasing".into(),
            ));
        }
        if !values.iter().all(|v| v.is_finite()) {
            return Err(Error::Table("values must be finite".into()));
        }
        if values[values.len() - 1] != T::zero() {
            return Err(Error::Table("function must vanish at the last node".into()));
        }
        Ok(Self { nodes, values })
    }

    /// Samples `f` on `nodes`, forcing the last value to zero.
    pub fn from_fn<F: FnMut(T) -> T>(nodes: Vec<T>, mut f: F) -> Result<Self> {
        let mut values: Vec<T> = nodes.iter().map(|r| f(*r)).collect();
        if let Some(last) = values.last_mut() {
            *last = T::zero();
        }
        Self::new(nodes, values)
    }

    /// g = 1 on [0, r̄] and g = (T(r) − T(R))/(T(r̄) − T(R)) on [r̄, R], on the
    /// model grid of [0, R]. Its ratio ‖g‖_{p,w}/‖g′‖_{2,w} tends to Q(r̄)
    /// as R → ∞.
    pub fn extremal_trial(weight: &WeightMeasure<T>, r_bar: T, r_cut: T) -> Result<Self> {
        if !(r_bar > T::zero() && r_bar < r_cut) {
            return Err(Error::OutOfDomain {
                r: r_bar.as_f64(),
                r_max: r_cut.as_f64(),
            });
        }
        let mut nodes = domain_nodes(weight, r_cut)?;
        let i = nodes.partition_point(|x| *x < r_bar);
        if nodes[i] != r_bar {
            nodes.insert(i, r_bar);
        }
        // Ratios of T taken in log form: T itself underflows on fast-growing models.
        let l_bar = weight.log_tail(r_bar);
        let cut = (weight.log_tail(r_cut) - l_bar).exp();
        Self::from_fn(nodes, |r| {
            if r <= r_bar {
                T::one()
            } else {
                (((weight.log_tail(r) - l_bar).exp() - cut) / (T::one() - cut)).max(T::zero())
            }
        })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Outer end of the support.
    pub fn support(&self) -> T {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn scaled(&self, c: T) -> Self {
        Self {
            nodes: self.nodes.clone(),
            values: self.values.iter().map(|v| *v * c).collect(),
        }
    }

    /// Linear interpolation; zero for r ≥ support.
    pub fn value_at(&self, r: T) -> T {
        if r >= self.support() || r < T::zero() {
            return T::zero();
        }
        let i = self.nodes.partition_point(|x| *x <= r).saturating_sub(1);
        let t = (r - self.nodes[i]) / (self.nodes[i + 1] - self.nodes[i]);
        self.values[i] * (T::one() - t) + self.values[i + 1] * t
    }

    /// (∫|g|^p w)^{1/p}.
    pub fn lp_norm(&self, weight: &WeightMeasure<T>, p: T) -> T {
        let mesh = Mesh::new(weight, self.nodes.clone());
        mesh.p_integral(&self.values, p).powf(T::one() / p)
    }

    /// (∫|g′|² w)^{1/2}.
    pub fn gradient_norm(&self, weight: &WeightMeasure<T>) -> T {
        let mesh = Mesh::new(weight, self.nodes.clone());
        mesh.dirichlet(&self.values).sqrt()
    }

    /// ‖g′‖_{2,w} / ‖g‖_{p,w}.
    pub fn rayleigh_ratio(&self, weight: &WeightMeasure<T>, p: T) -> T {
        let mesh = Mesh::new(weight, self.nodes.clone());
        mesh.dirichlet(&self.values).sqrt() / mesh.p_integral(&self.values, p).powf(T::one() / p)
    }
}

/// Nodes 0, the model grid nodes below `r_domain`, and `r_domain`.
pub(crate) fn domain_nodes<T: Real>(weight: &WeightMeasure<T>, r_domain: T) -> Result<Vec<T>> {
    let r_max = weight.model().r_max();
    if !(r_domain > T::zero()) || r_domain > r_max {
        return Err(Error::OutOfDomain {
            r: r_domain.as_f64(),
            r_max: r_max.as_f64(),
        });
    }
    let cut = r_domain * (T::one() - T::lit(1e-9));
    let mut nodes = vec![T::zero()];
    nodes.extend(weight.model().grid().iter().copied().filter(|r| *r < cut));
    nodes.push(r_domain);
    Ok(nodes)
}

/// Inserts the midpoint of every element.
pub(crate) fn refine_nodes<T: Real>(nodes: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(2 * nodes.len());
    for w in nodes.windows(2) {
        out.push(w[0]);
        out.push((w[0] + w[1]) * T::lit(0.5));
    }
    out.push(nodes[nodes.len() - 1]);
    out
}

/// P1 elements with 8-point Gauss–Legendre weights w(x)·ω cached per element.
pub(crate) struct Mesh<T> {
    pub(crate) nodes: Vec<T>,
    // (local coordinate in [0, 1], quadrature weight times w)
    quad: Vec<[(T, T); 8]>,
}

impl<T: Real> Mesh<T> {
    pub(crate) fn new(weight: &WeightMeasure<T>, nodes: Vec<T>) -> Self {
        let quad = nodes
            .windows(2)
            .map(|e| {
                let h = e[1] - e[0];
                let mut q = [(T::zero(), T::zero()); 8];
                for (slot, (x, w)) in q.iter_mut().zip(gauss_legendre_8(e[0], e[1])) {
                    *slot = ((x - e[0]) / h, w * weight.weight(x));
                }
                q
            })
            .collect();
        Self { nodes, quad }
    }

    fn h(&self, e: usize) -> T {
        self.nodes[e + 1] - self.nodes[e]
    }

    /// Stiffness and mass matrices restricted to the free nodes (all but
    /// the last, which carries the Dirichlet condition).
    pub(crate) fn matrices(&self) -> (SymTridiag<T>, SymTridiag<T>) {
        let n = self.nodes.len() - 1;
        let mut kd = vec![T::zero(); n + 1];
        let mut ko = vec![T::zero(); n];
        let mut md = vec![T::zero(); n + 1];
        let mut mo = vec![T::zero(); n];
        for (e, q) in self.quad.iter().enumerate() {
            let total: T = q.iter().map(|x| x.1).sum();
            let s = total / (self.h(e) * self.h(e));
            kd[e] += s;
            kd[e + 1] += s;
            ko[e] -= s;
            for &(t, c) in q {
                md[e] += c * (T::one() - t) * (T::one() - t);
                md[e + 1] += c * t * t;
                mo[e] += c * t * (T::one() - t);
            }
        }
        kd.pop();
        md.pop();
        ko.pop();
        mo.pop();
        (SymTridiag::new(kd, ko), SymTridiag::new(md, mo))
    }

    /// ∫|g′|² w.
    pub(crate) fn dirichlet(&self, g: &[T]) -> T {
        self.quad
            .iter()
            .enumerate()
            .map(|(e, q)| {
                let d = (g[e + 1] - g[e]) / self.h(e);
                d * d * q.iter().map(|x| x.1).sum::<T>()
            })
            .sum()
    }

    /// ∫|g|^p w.
    pub(crate) fn p_integral(&self, g: &[T], p: T) -> T {
        self.quad
            .iter()
            .enumerate()
            .map(|(e, q)| {
                q.iter()
                    .map(|&(t, c)| c * (g[e] * (T::one() - t) + g[e + 1] * t).abs().powf(p))
                    .sum::<T>()
            })
            .sum()
    }

    /// Gradient of ∫|g|^p w with respect to the nodal values.
    pub(crate) fn p_gradient(&self, g: &[T], p: T) -> Vec<T> {
        let mut out = vec![T::zero(); g.len()];
        for (e, q) in self.quad.iter().enumerate() {
            for &(t, c) in q {
                let v = g[e] * (T::one() - t) + g[e + 1] * t;
                let d = c * p * v.abs().powf(p - T::lit(2.0)) * v;
                out[e] += d * (T::one() - t);
                out[e + 1] += d * t;
            }
        }
        out
    }
}
