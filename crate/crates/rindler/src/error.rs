//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
///
/// The CLI maps these onto its exit codes: configuration problems
/// ([`Error::Config`], [`Error::NonPhysical`]) exit with 1, failures inside
/// the numeric kernels exit with 2.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Matrix shapes do not line up with what an operation expects.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A matrix or state entry is NaN or infinite.
    #[error("non-finite entry at position {index}")]
    NonFinite { index: usize },

    /// The symmetry precondition of the Hermitian eigensolver failed.
    #[error("matrix is not Hermitian: max |a - a^H| entry {deviation:.3e} exceeds tolerance {tol:.3e}")]
    NotHermitian { deviation: f64, tol: f64 },

    /// An iterative spectral kernel ran out of sweeps before reaching its
    /// off-diagonal tolerance.
    #[error("spectral kernel did not converge within {sweeps} sweeps (tolerance {tol:.3e})")]
    ConvergenceFailure { sweeps: usize, tol: f64 },

    /// A pure state's amplitudes do not square-sum to one.
    #[error("state is not normalized: sum of |amplitude|^2 is {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    /// A density matrix failed its positivity check.
    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    /// A party index points past the end of the system.
    #[error("party {party} out of range for a {parties}-party system")]
    InvalidParty { party: usize, parties: usize },

    /// An operation is only defined for a fixed number of parties.
    #[error("expected a {expected}-party state, got {actual} parties")]
    WrongPartyCount { expected: usize, actual: usize },

    /// A pair of parties must name two distinct subsystems.
    #[error("party pair must name two distinct parties, got {0} twice")]
    DuplicateParty(usize),

    /// Physical inputs outside their valid domain (negative frequency,
    /// acceleration parameter past the infinite-acceleration limit, ...).
    #[error("non-physical input: {0}")]
    NonPhysical(String),

    /// Bad sweep or CLI configuration.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// An operation that needs data received none.
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
}

impl Error {
    /// True for errors that indicate a numeric-kernel failure rather than a
    /// caller mistake. The CLI uses this to pick its exit code.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian { .. }
                | Error::ConvergenceFailure { .. }
                | Error::NotPositive { .. }
                | Error::NonFinite { .. }
        )
    }
}
