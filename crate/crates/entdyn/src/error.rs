//! Error types shared across the crate.
//!
//! Every fallible public operation returns [`Result`]. The variants separate
//! *caller* mistakes (bad parameters, out-of-domain inputs) from *internal*
//! failures (an algorithm could not meet its accuracy contract) so that a
//! front end can map them to distinct exit codes.

use num_complex::Complex64;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by this crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// The input lies outside the mathematical domain of the operation
    /// (negative rates, probabilities outside `[0, 1]`, non-positive-definite
    /// density matrices, evaluation at `t <= 0`, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural precondition on the input was violated (improper transfer
    /// function, non-Hermitian matrix where a Hermitian one is required, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An iterative algorithm failed to reach its documented accuracy target.
    #[error("numerical failure: {0}")]
    Numerics(String),

    /// Denominator roots too close to separate reliably: the partial-fraction
    /// step detected a cluster but could not resolve it into a well-conditioned
    /// multiple pole. Carries the offending root cluster for diagnostics.
    #[error("clustered poles could not be resolved: {cluster:?}")]
    ClusteredPoles { cluster: Vec<Complex64> },

    /// The requested transfer function has a pole in the closed right half
    /// plane (other than a simple pole at the origin), so no finite
    /// stationary value exists.
    #[error("no stationary value: {0}")]
    NoStationaryValue(String),

    /// A set of basis states failed to span the required space.
    #[error("basis does not span: {0}")]
    BasisSpan(String),

    /// A sampled signal changed faster than the grid can resolve, so interval
    /// detection on it would be unreliable. Carries the largest observed jump.
    #[error("sampling too coarse: largest step-to-step change {max_jump:.3e} exceeds the resolvable threshold")]
    Resolution { max_jump: f64 },

    /// Two independently computed values that must agree did not.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}
