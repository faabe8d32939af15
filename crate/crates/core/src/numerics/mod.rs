//! Self-contained numerical kernels, generic over [`crate::Real`].

pub mod lsq;
pub mod ode;
pub mod quadrature;
pub mod search;
pub mod tridiag;
