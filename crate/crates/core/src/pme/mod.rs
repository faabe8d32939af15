//! Radial porous-medium flow on model manifolds and its smoothing rate.

mod fit;
mod solver;

pub use fit::{
    envelope_amplitudes, fit_smoothing, log_exponent, lower_curve, moser_chain_constant,
    reference_curves, ModelClass, MoserChain, SmoothingFit, MIN_DECADES,
};
pub use solver::{log_spaced, pme_run, InitialDatum, PmeConfig, PmeRun, PmeSolver, PmeState};
