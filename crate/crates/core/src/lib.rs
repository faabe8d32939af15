//! Numerical functional inequalities on Cartan–Hadamard model manifolds.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`); the aliases at the crate root fix `f64`.

// `!(x > 0)` style checks are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod geometry;
pub mod numerics;
pub mod pme;
mod scalar;
pub mod variational;
pub mod weighted;

pub use error::{Error, Result};
pub use scalar::{unit_sphere_area, Real};

pub type ModelFunction = geometry::ModelFunction<f64>;
pub type CurvatureProfile = geometry::CurvatureProfile<f64>;
pub type PsiForm = geometry::PsiForm<f64>;
pub type GridSpec = geometry::GridSpec<f64>;
pub type WeightMeasure = weighted::WeightMeasure<f64>;
pub type SupremumReport = weighted::SupremumReport<f64>;
pub type DiscreteFunction = variational::DiscreteFunction<f64>;
pub type PoincareReport = variational::PoincareReport<f64>;
pub type RayleighReport = variational::RayleighReport<f64>;
pub type CertificateReport = variational::CertificateReport<f64>;
pub type PmeConfig = pme::PmeConfig<f64>;
pub type PmeState = pme::PmeState<f64>;
pub type SmoothingFit = pme::SmoothingFit<f64>;
