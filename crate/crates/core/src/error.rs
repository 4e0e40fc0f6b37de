use core::fmt;

use crate::mesh::MeshSpec;

/// Failure modes shared across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input violated a documented precondition.
    InvalidInput(&'static str),
    /// Root refinement for mesh point `index` did not converge.
    RootRefinement { index: usize },
    /// The symmetric eigensolver did not converge.
    Eigensolver { spec: Option<MeshSpec> },
    /// A matrix expected to be positive definite was not.
    NotPositiveDefinite { pivot: usize },
    /// Coefficient vector is not normalized; carries `Σ c_i²`.
    NotNormalized(f64),
    /// A bracket did not contain the requested sign change.
    Bracketing { lo: f64, hi: f64 },
    /// The requested level does not exist.
    MissingLevel { n: usize, ell: u32 },
    /// The least-squares design matrix is too ill-conditioned.
    IllConditioned(f64),
    /// Overlap matrix of a superposition is numerically singular.
    DegenerateSuperposition(f64),
    /// A variance came out negative beyond rounding.
    NegativeVariance(f64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::RootRefinement { index } => {
                write!(f, "mesh root refinement failed at index {index}")
            }
            Error::Eigensolver { spec } => match spec {
                Some(s) => write!(f, "eigensolver failed for mesh {s:?}"),
                None => write!(f, "eigensolver failed"),
            },
            Error::NotPositiveDefinite { pivot } => {
                write!(f, "matrix not positive definite at pivot {pivot}")
            }
            Error::NotNormalized(s) => write!(f, "coefficients not normalized (sum of squares {s})"),
            Error::Bracketing { lo, hi } => write!(f, "no sign change in bracket [{lo}, {hi}]"),
            Error::MissingLevel { n, ell } => write!(f, "level (n={n}, l={ell}) not bound"),
            Error::IllConditioned(c) => write!(f, "design matrix ill-conditioned (cond {c:.3e})"),
            Error::DegenerateSuperposition(c) => {
                write!(f, "overlap matrix degenerate (cond {c:.3e})")
            }
            Error::NegativeVariance(v) => write!(f, "negative variance {v:.3e}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
