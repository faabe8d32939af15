//! Cartan–Hadamard model manifolds built from radial curvature laws.

mod curvature;
mod grid;
mod io;
mod model;
mod profile;

pub use curvature::{
    certify_lemma31, check_comparison, curvature_at, is_cartan_hadamard, ricci_uniformization,
    ComparisonBound, ComparisonReport, CurvatureReport, HadamardCheck, Lemma31Certificate,
};
pub use grid::GridSpec;
pub use io::{model_from_csv, model_to_csv, parse_profile, profile_to_string};
pub use model::{build_model, build_model_sampled, ModelFunction, TailModel};
pub use profile::{quasi_euclidean_coefficients, CurvatureProfile, PsiForm};
