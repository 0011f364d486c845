//! Entanglement-based lower bounds on quantum circuit cost.
//!
//! This crate computes cut entanglement entropies, potential entangling
//! powers, and entangling rates for two families of systems, and uses them
//! to lower-bound circuit cost functionals:
//!
//! - **Spin chains** ([`spin`], [`cost`]): pure states on qudit chains,
//!   control paths over 2-local generator sets, Trotter synthesis of the
//!   generated unitary, and the small-incremental-entangling checks that
//!   turn per-layer entanglement increments into cost bounds.
//! - **Gaussian bosonic systems** ([`gaussian`]): covariance matrices,
//!   symplectic spectra, quadratic-Hamiltonian evolution, and the analytic
//!   entangling-rate machinery with its kernel-norm rate bound.
//! - **Quench experiments** ([`quench`]): transverse-field Ising and
//!   harmonic-chain dynamics producing entanglement growth curves, fitted
//!   growth slopes, and sum-vs-max bound scaling tables.
//!
//! [`dense`] holds the shared dense linear-algebra kernels (eigen
//! decompositions, matrix exponential/logarithm, partial trace), [`ensemble`]
//! the seeded random instance generators, and [`sweeps`] the deterministic
//! Monte-Carlo drivers behind the CLI and the acceptance suite.

pub mod cost;
pub mod dense;
pub mod ensemble;
pub mod gaussian;
pub mod policy;
pub mod quench;
pub mod spin;
pub mod sweeps;

// Force the link against the system BLAS/LAPACK.
extern crate blas_src as _blas;
extern crate openblas_src as _openblas;

pub use dense::{CMat, CVec, DenseError, RMat};
pub use policy::Tolerances;
