use thiserror::Error;

/// Errors raised by the numerical kernels and the physics modules built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A function evaluation returned NaN or an infinity.
    #[error("function evaluation at x = {x} returned the non-finite value {value}")]
    NonFinite { x: f64, value: f64 },

    /// Root refinement ran out of iterations.
    #[error(
        "root refinement stopped after {iterations} iterations, best estimate {estimate} (bracket width {width:e})"
    )]
    Convergence {
        estimate: f64,
        width: f64,
        iterations: usize,
    },

    /// Adaptive quadrature could not meet the requested tolerance.
    #[error("quadrature reached maximum depth: estimate {estimate}, error {achieved:e} > tolerance {requested:e}")]
    Quadrature {
        estimate: f64,
        achieved: f64,
        requested: f64,
    },

    /// A series tail bound stayed above tolerance up to the term cap.
    #[error("series tail bound {bound:e} still above tolerance {requested:e} after {terms} terms")]
    SeriesCap { terms: u64, bound: f64, requested: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The positive-energy scan did not reach the requested number of eigenvalues.
    #[error(
        "incomplete spectrum: found {found} of {requested} positive eigenvalues below s = {ceiling} (roots: {roots:?})"
    )]
    IncompleteSpectrum {
        requested: usize,
        found: usize,
        ceiling: f64,
        roots: Vec<f64>,
    },

    /// A computed root disagrees with an independent closed form.
    #[error("closed-form cross-check failed: {0}")]
    CrossCheck(String),

    /// The supplied value is not an eigenvalue of the extension.
    #[error("invalid root {value}: boundary residual {residual:e}")]
    InvalidRoot { value: f64, residual: f64 },

    /// The doubling-cutoff integrability test could not decide.
    #[error("inconclusive square-integrability test: tail fraction {tail_fraction:e} at cutoff {cutoff}")]
    InconclusiveGrowth { tail_fraction: f64, cutoff: f64 },

    /// The physical model admits no solution on the requested branch.
    #[error("model inconsistency: {0}")]
    Model(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
