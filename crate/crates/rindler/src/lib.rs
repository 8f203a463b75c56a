//! Entanglement of GHZ states seen by uniformly accelerated observers.
//!
//! The crate builds three-qubit GHZ states, pushes chosen parties through
//! the fermionic Unruh channel (the single-mode Rindler expansion followed
//! by tracing out the hidden wedge), and quantifies what entanglement
//! survives:
//!
//! * negativities and the pi-tangle, built on the partial transpose,
//! * realignment quantities for pairs and for pairs-inside-triples, built
//!   on matrix realignment and the trace norm.
//!
//! Everything runs on a self-contained dense complex linear-algebra core
//! with two independent spectral kernels (Jacobi eigenvalues, one-sided
//! Jacobi singular values) that cross-check each other. Published
//! closed-form curves for the realignment quantities are transcribed in
//! [`reference`] and audited against the numerics by [`sweep`].
//!
//! ```
//! use rindler::measures::q_tripartite;
//! use rindler::{apply_unruh, Accel, AccelMap, Party, PureState};
//!
//! // Saturate party C's acceleration and realign the accelerated pair.
//! let map = AccelMap::inertial().with(Party(2), Accel::new(std::f64::consts::FRAC_PI_4)?);
//! let rho = apply_unruh(&PureState::ghz3(), &map)?;
//! let q = q_tripartite(&rho, (Party(1), Party(2)))?;
//! assert!((q - (3.0 * 2.0f64.sqrt() - 2.0) / 4.0).abs() < 1e-10);
//! # Ok::<(), rindler::Error>(())
//! ```

pub mod error;
pub mod linalg;
pub mod measures;
pub mod reference;
pub mod selftest;
pub mod state;
pub mod sweep;
pub mod unruh;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HERMITICITY_TOL, SPECTRAL_TOL};
pub use measures::{negativity, pi_tangle, q_bipartite, q_tripartite, PiTangleBreakdown};
pub use reference::ClosedForm;
pub use selftest::{run_selftest, SelftestReport, SuiteResult};
pub use state::{transpose_party, DensityMatrix, Party, PureState};
pub use sweep::{compare_report, run_sweep, CompareReport, Scenario, SweepConfig, SweepRecord};
pub use unruh::{apply_unruh, rindler_expand, Accel, AccelMap};
