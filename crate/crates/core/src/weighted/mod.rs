//! One-dimensional weighted inequalities for w = ψ^{N−1}.

mod bounds;
mod measure;
mod regression;
mod supremum;

pub use bounds::{
    critical_exponents, lemma41_bound, lemma42_bound, manifold_constant, mckean_bounds,
    sobolev_exponent,
};
pub use measure::{build_weight, TailKind, WeightMeasure};
pub use regression::{fit_line, scaling_regression, RegressionFit, ScalingMode};
pub use supremum::{sandwich, sandwich_factor, supremum_b, Maximizer, SupremumReport};
