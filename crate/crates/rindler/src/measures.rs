//! Entanglement quantifiers built on the partial transpose and the
//! realignment maps.
//!
//! * Negativity across a cut: `N = || rho^{T_X} ||_1 - 1`, the trace-norm
//!   excess of the partial transpose. Positive only when the partial
//!   transpose is indefinite.
//! * pi-tangle: the negativity-based residual tangle of a three-party
//!   state. With one-tangles `N_X = N_{X(YZ)}` and two-tangles `N_XY`
//!   (negativities of the two-party marginals),
//!   `pi_X = N_X^2 - N_XY^2 - N_XZ^2` and `pi = (pi_A + pi_B + pi_C) / 3`.
//! * Realignment quantity: `Q = || R(rho) ||_1 - 1` for the bipartite
//!   realignment, and the analogous trace-norm excess of the pair
//!   realignment for three parties. `Q > 0` certifies entanglement;
//!   `Q <= 0` is reported as computed, without clamping, because the decay
//!   of `Q` toward and below zero is part of the signal being studied.
//!
//! All trace norms go through the singular-value route
//! ([`ComplexMatrix::trace_norm`]); the Hermitian eigensolver is reserved
//! for validity checks and cross-checks so the two spectral kernels stay
//! independent witnesses of each other.
//!
//! [`ComplexMatrix::trace_norm`]: crate::linalg::ComplexMatrix::trace_norm

use crate::error::{Error, Result};
use crate::linalg::SPECTRAL_TOL;
use crate::state::{DensityMatrix, Party};

/// Negativity of `rho` across the cut separating `party` from everything
/// else: `|| rho^{T_party} ||_1 - 1`. Zero up to kernel noise on states
/// whose partial transpose is positive.
pub fn negativity(rho: &DensityMatrix, party: Party) -> Result<f64> {
    let pt = rho.partial_transpose(party)?;
    Ok(pt.trace_norm(SPECTRAL_TOL)? - 1.0)
}

/// One-tangle of a three-party state: the negativity of the `party` versus
/// rest bipartition.
pub fn one_tangle(rho: &DensityMatrix, party: Party) -> Result<f64> {
    if rho.parties() != 3 {
        return Err(Error::WrongPartyCount { expected: 3, actual: rho.parties() });
    }
    negativity(rho, party)
}

/// Two-tangle of a three-party state: the negativity of the two-party
/// marginal obtained by tracing out the spectator, floored at zero.
///
/// The floor matters because the marginals of the states studied here have
/// positive partial transposes, so the raw value is a kernel-noise hair
/// below zero and would otherwise leak sign errors into the squared terms
/// of the residual tangles.
pub fn two_tangle(rho: &DensityMatrix, pair: (Party, Party)) -> Result<f64> {
    if rho.parties() != 3 {
        return Err(Error::WrongPartyCount { expected: 3, actual: rho.parties() });
    }
    let (Party(f), Party(g)) = pair;
    for p in [f, g] {
        if p >= 3 {
            return Err(Error::InvalidParty { party: p, parties: 3 });
        }
    }
    if f == g {
        return Err(Error::DuplicateParty(f));
    }
    let spectator = 3 - f - g;
    let marginal = rho.partial_trace(&[Party(spectator)])?;
    Ok(negativity(&marginal, Party(0))?.max(0.0))
}

/// The pi-tangle of a three-party state, with all intermediate quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiTangleBreakdown {
    /// One-tangles `(N_A, N_B, N_C)`.
    pub one_tangles: [f64; 3],
    /// Two-tangles `(N_AB, N_AC, N_BC)`, each floored at zero.
    pub two_tangles: [f64; 3],
    /// Residual tangles `(pi_A, pi_B, pi_C)`.
    pub residuals: [f64; 3],
    /// The pi-tangle: the mean of the three residuals.
    pub pi: f64,
}

/// Computes the pi-tangle of a three-party state.
pub fn pi_tangle(rho: &DensityMatrix) -> Result<PiTangleBreakdown> {
    if rho.parties() != 3 {
        return Err(Error::WrongPartyCount { expected: 3, actual: rho.parties() });
    }
    let n_a = one_tangle(rho, Party(0))?;
    let n_b = one_tangle(rho, Party(1))?;
    let n_c = one_tangle(rho, Party(2))?;
    let n_ab = two_tangle(rho, (Party(0), Party(1)))?;
    let n_ac = two_tangle(rho, (Party(0), Party(2)))?;
    let n_bc = two_tangle(rho, (Party(1), Party(2)))?;
    let pi_a = n_a * n_a - n_ab * n_ab - n_ac * n_ac;
    let pi_b = n_b * n_b - n_ab * n_ab - n_bc * n_bc;
    let pi_c = n_c * n_c - n_ac * n_ac - n_bc * n_bc;
    Ok(PiTangleBreakdown {
        one_tangles: [n_a, n_b, n_c],
        two_tangles: [n_ab, n_ac, n_bc],
        residuals: [pi_a, pi_b, pi_c],
        pi: (pi_a + pi_b + pi_c) / 3.0,
    })
}

/// Realignment quantity of a two-party state: `|| R(rho) ||_1 - 1`.
/// Positive values certify entanglement; negative values are reported as is.
pub fn q_bipartite(rho: &DensityMatrix) -> Result<f64> {
    let realigned = rho.realign_bipartite()?;
    Ok(realigned.trace_norm(SPECTRAL_TOL)? - 1.0)
}

/// Realignment quantity of a three-party state for one realigned pair, the
/// third party riding along as a spectator: trace-norm excess of
/// [`DensityMatrix::realign_pair`].
pub fn q_tripartite(rho: &DensityMatrix, pair: (Party, Party)) -> Result<f64> {
    let realigned = rho.realign_pair(pair)?;
    Ok(realigned.trace_norm(SPECTRAL_TOL)? - 1.0)
}
