//! Coincidence statistics of two-photon interference in lossy
//! coupled-mode networks.
//!
//! The library models a network of optical modes with Hermitian coupling
//! and mode-selective linear loss. Scaling the loss tunes the effective
//! generator through an exceptional point where a pair of eigenvalues
//! coalesces; the observable signature is a crossing of the bosonic and
//! fermionic two-particle coincidence curves. Three independent routes to
//! those curves are implemented so each can check the others:
//!
//! * [`interference`]: scattering-matrix transmission, permanents for
//!   bosons and determinants for fermions;
//! * [`lindblad`]: density-matrix evolution in a truncated Fock space;
//! * [`lindblad::coupler`]: closed forms and a reduced real-variable
//!   system special to the two-mode coupler.
//!
//! [`matrix`] carries the dense complex kernels all of them share, and
//! [`validate`] wires the cross-checks into a runnable suite.

pub mod error;
pub mod interference;
pub mod lindblad;
pub mod matrix;
pub mod oracle;
pub mod system;
pub mod validate;

pub use error::{Error, Result};
pub use matrix::CMatrix;

pub use num_complex::Complex64;
