use thiserror::Error;

/// Failure modes shared across the library.
///
/// Variants split along the lines callers care about: bad input they can
/// fix (`Validation`, `Dimension`, `Capability`), numerics that did not
/// settle (`Convergence`, `Integration`, `Consistency`), and structural
/// "not found" outcomes of a search (`NoExceptionalPoint`, `NoCrossing`).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("capability limit: {0}")]
    Capability(String),

    #[error("{op} did not converge: residual {residual:.3e} after {iterations} iterations")]
    Convergence {
        op: &'static str,
        residual: f64,
        iterations: usize,
    },

    #[error("integrator did not converge: step-halving residual {residual:.3e} after {halvings} halvings (tolerance {tolerance:.3e})")]
    Integration {
        residual: f64,
        halvings: usize,
        tolerance: f64,
    },

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("no exceptional point in [{lo}, {hi}]: smallest eigenvalue gap {gap:.3e} at gamma = {gamma} exceeds {threshold:.3e}")]
    NoExceptionalPoint {
        lo: f64,
        hi: f64,
        gamma: f64,
        gap: f64,
        threshold: f64,
    },

    #[error("no crossing in [{lo}, {hi}]: p_boson - p_fermion has the same sign at both endpoints")]
    NoCrossing { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    ///
    /// 1 = rejected input, 2 = numerical failure, 3 = searched-for feature
    /// absent. Exit 0 is reserved for success.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Dimension(_) | Error::Capability(_) => 1,
            Error::Convergence { .. } | Error::Integration { .. } | Error::Consistency(_) => 2,
            Error::NoExceptionalPoint { .. } | Error::NoCrossing { .. } => 3,
        }
    }
}
