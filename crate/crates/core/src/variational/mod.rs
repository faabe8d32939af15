//! Direct estimates of best constants: the weighted Dirichlet eigenproblem,
//! Rayleigh-quotient minimization, trial-function scans and the nonradial
//! certificate.

mod certificate;
mod function;
mod scan;
mod spectral;

pub use certificate::{
    certificate_sequence, nonradial_certificate, sinh_moment, CertificateReport, Conclusion,
};
pub use function::DiscreteFunction;
pub use scan::{quasi_euclidean_failure_scan, FailurePoint};
pub use spectral::{
    poincare_eigen, rayleigh_minimize, PoincareReport, RayleighOptions, RayleighReport,
};
