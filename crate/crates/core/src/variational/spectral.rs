//! Dirichlet eigenproblem for −(w g′)′ = λ w g and the p-Rayleigh quotient.

use serde::Serialize;

use super::function::{domain_nodes, refine_nodes, DiscreteFunction, Mesh};
use crate::error::{Error, Result};
use crate::numerics::tridiag::{smallest_generalized_eigen, SymTridiag};
use crate::weighted::{sobolev_exponent, WeightMeasure};
use crate::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoincareReport<T> {
    pub r_domain: T,
    pub lambda1: T,
    /// 1/√λ₁.
    pub best_constant: T,
    /// Relative change of λ₁ under mesh halving.
    pub refinement_change: T,
    /// M-normalized, positive at the origin; computed on the refined mesh.
    pub eigenfunction: DiscreteFunction<T>,
}

/// Largest relative change of λ₁ accepted under mesh halving.
const MESH_TOLERANCE: f64 = 0.01;

fn diagonal_scaling<T: Real>(m: &SymTridiag<T>) -> Vec<T> {
    m.diag.iter().map(|d| T::one() / d.sqrt()).collect()
}

fn scale<T: Real>(a: &SymTridiag<T>, s: &[T]) -> SymTridiag<T> {
    SymTridiag::new(
        a.diag.iter().zip(s).map(|(d, si)| *d * *si * *si).collect(),
        a.off
            .iter()
            .enumerate()
            .map(|(i, o)| *o * s[i] * s[i + 1])
            .collect(),
    )
}

fn eigen_on<T: Real>(weight: &WeightMeasure<T>, nodes: Vec<T>) -> Result<(T, DiscreteFunction<T>)> {
    let mesh = Mesh::new(weight, nodes);
    let (k, m) = mesh.matrices();
    let s = diagonal_scaling(&m);
    let tol = T::lit(1e-13).max(T::epsilon() * T::lit(64.0));
    let (lambda, y) = smallest_generalized_eigen(&scale(&k, &s), &scale(&m, &s), tol).ok_or(
        Error::GridTooCoarse {
            r: mesh.nodes[mesh.nodes.len() - 1].as_f64(),
            estimate: f64::INFINITY,
            tolerance: MESH_TOLERANCE,
        },
    )?;
    let mut values: Vec<T> = y.iter().zip(&s).map(|(a, b)| *a * *b).collect();
    values.push(T::zero());
    Ok((lambda, DiscreteFunction::new(mesh.nodes, values)?))
}

/// Smallest Dirichlet eigenvalue on [0, r_domain] by P1 finite elements on
/// the model grid, checked against one mesh halving.
pub fn poincare_eigen<T: Real>(
    weight: &WeightMeasure<T>,
    r_domain: T,
) -> Result<PoincareReport<T>> {
    let nodes = domain_nodes(weight, r_domain)?;
    let fine = refine_nodes(&nodes);
    let (coarse, _) = eigen_on(weight, nodes)?;
    let (lambda1, eigenfunction) = eigen_on(weight, fine)?;
    let change = ((lambda1 - coarse) / lambda1).abs();
    if !(change <= T::lit(MESH_TOLERANCE)) {
        return Err(Error::GridTooCoarse {
            r: r_domain.as_f64(),
            estimate: change.as_f64(),
            tolerance: MESH_TOLERANCE,
        });
    }
    Ok(PoincareReport {
        r_domain,
        lambda1,
        best_constant: T::one() / lambda1.sqrt(),
        refinement_change: change,
        eigenfunction,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayleighOptions<T> {
    pub max_iterations: usize,
    /// Stop once the relative decrease of ln(ratio) per step stays below
    /// this for three consecutive steps.
    pub tolerance: T,
}

impl<T: Real> Default for RayleighOptions<T> {
    fn default() -> Self {
        Self {
            max_iterations: 2000,
            tolerance: T::lit(1e-12).max(T::epsilon() * T::lit(64.0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RayleighReport<T> {
    pub p: T,
    /// ‖g′‖_{2,w}/‖g‖_{p,w} at the returned iterate.
    pub ratio: T,
    /// Normalized to ‖g‖_{p,w} = 1.
    pub minimizer: DiscreteFunction<T>,
    pub iterations: usize,
    pub converged: bool,
}

/// Local minimization of ‖g′‖_{2,w}/‖g‖_{p,w} over piecewise-linear g on
/// the model grid of [0, r_domain], starting from `init`.
///
/// Steps are Sobolev-preconditioned gradient steps with Armijo
/// backtracking, each followed by renormalization onto ‖g‖_{p,w} = 1. The
/// best iterate is returned with `converged = false` when the iteration
/// budget runs out.
pub fn rayleigh_minimize<T: Real>(
    weight: &WeightMeasure<T>,
    p: T,
    r_domain: T,
    init: &DiscreteFunction<T>,
    options: RayleighOptions<T>,
) -> Result<RayleighReport<T>> {
    let two = T::lit(2.0);
    if !(p >= two) || p > sobolev_exponent(weight.dimension()) || !p.is_finite() {
        return Err(Error::InvalidExponent {
            p: p.as_f64(),
            range: "[2, 2*]",
        });
    }
    let nodes = domain_nodes(weight, r_domain)?;
    let mesh = Mesh::new(weight, nodes);
    let n = mesh.nodes.len();
    let (k, m) = mesh.matrices();
    let s = diagonal_scaling(&m);

    let objective = |g: &[T]| -> (T, T, T) {
        let d = mesh.dirichlet(g);
        let pi = mesh.p_integral(g, p);
        (d.ln() * T::lit(0.5) - pi.ln() / p, d, pi)
    };
    let normalize = |g: &mut Vec<T>| {
        let c = mesh.p_integral(g, p).powf(-T::one() / p);
        g.iter_mut().for_each(|v| *v *= c);
    };

    let mut g: Vec<T> = mesh.nodes.iter().map(|r| init.value_at(*r)).collect();
    g[n - 1] = T::zero();
    if !(mesh.p_integral(&g, p) > T::zero()) {
        return Err(Error::Table(
            "initial function vanishes on the domain".into(),
        ));
    }
    normalize(&mut g);
    let (mut f, _, _) = objective(&g);
    let mut step = T::one();
    let mut quiet = 0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < options.max_iterations {
        iterations += 1;
        let (_, d, pi) = objective(&g);
        let free = &g[..n - 1];
        let kg = k.mul_vec(free);
        let pg = mesh.p_gradient(&g, p);
        let grad: Vec<T> = (0..n - 1).map(|i| kg[i] / d - pg[i] / (p * pi)).collect();
        // With K/D as metric a unit step is the inverse iteration g ← K⁻¹∇P.
        let precond = scale(&k, &s);
        let rhs: Vec<T> = grad.iter().zip(&s).map(|(a, b)| *a * *b * d).collect();
        let Some(y) = precond.solve(&rhs) else { break };
        let dir: Vec<T> = y.iter().zip(&s).map(|(a, b)| -*a * *b).collect();
        let slope: T = dir.iter().zip(&grad).map(|(a, b)| *a * *b).sum();
        if !(slope < T::zero()) {
            converged = true;
            break;
        }
        let mut accepted = None;
        let mut alpha = step;
        for _ in 0..60 {
            let mut trial: Vec<T> = free
                .iter()
                .zip(&dir)
                .map(|(a, b)| *a + alpha * *b)
                .collect();
            trial.push(T::zero());
            let (ft, _, _) = objective(&trial);
            if ft.is_finite() && ft <= f + T::lit(1e-4) * alpha * slope {
                accepted = Some((trial, ft));
                break;
            }
            alpha *= T::lit(0.5);
        }
        let Some((mut trial, ft)) = accepted else {
            converged = true;
            break;
        };
        step = (alpha * two).min(T::one());
        normalize(&mut trial);
        let decrease = f - ft;
        g = trial;
        f = ft;
        if decrease <= options.tolerance * f.abs().max(T::one()) {
            quiet += 1;
            if quiet >= 3 {
                converged = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(RayleighReport {
        p,
        ratio: f.exp(),
        minimizer: DiscreteFunction::new(mesh.nodes.clone(), g)?,
        iterations,
        converged,
    })
}
