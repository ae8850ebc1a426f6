use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An iterative decomposition did not converge within its sweep cap.
    #[error("numerical failure: {0}")]
    NumericalFailure(&'static str),
    /// Input violates a documented precondition (shape, symmetry, range).
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// Operand shapes are incompatible.
    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },
    /// A scalar function was evaluated at (or within tolerance of) a singularity.
    #[error("domain error: {0}")]
    Domain(String),
    /// The geodesic left the chart: a singular value of `t·B` sits on a `tan` pole.
    #[error("geodesic escapes the chart: singular value {sigma} is at a tan pole")]
    ChartEscape { sigma: f64 },
    /// The plane has a nonzero intersection with `O⊥` and has no chart coordinates.
    #[error("plane is not in the chart around O (it meets the polar divisor)")]
    NotInChart,
    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),
}

impl Error {
    /// `true` for errors caused by the input itself rather than the numerics.
    pub fn is_bad_input(&self) -> bool {
        matches!(self, Error::Precondition(_) | Error::ShapeMismatch { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
