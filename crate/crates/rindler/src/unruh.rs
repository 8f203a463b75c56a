//! The fermionic Unruh channel: how a uniformly accelerated observer sees a
//! qubit carried by a single field mode.
//!
//! In the single-mode approximation, the observer's Rindler wedge (region I)
//! and the causally disconnected wedge behind the horizon (region II) split
//! each Minkowski basis state into a two-slot state:
//!
//! ```text
//! |0>  ->  cos r |0>_I |0>_II  +  sin r |1>_I |1>_II
//! |1>  ->  |1>_I |0>_II
//! ```
//!
//! The mixing angle is set by the mode frequency `omega`, the speed of light
//! `c` and the proper acceleration `a` through
//!
//! ```text
//! cos r = ( exp(-2 pi omega c / a) + 1 )^(-1/2),
//! ```
//!
//! which confines `r` to `[0, pi/4]`: `r = 0` for an inertial observer and
//! `r -> pi/4` in the infinite-acceleration limit. Pauli exclusion caps the
//! excitation pumped into each mode, which is why the fermionic angle
//! saturates instead of diverging.
//!
//! Region II is unobservable, so after expanding every accelerated party the
//! channel projects back to the accessible slots by tracing those modes out.
//! The result is mixed for any `r > 0`.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{index_digits, index_flatten, DensityMatrix, Party, PureState};

/// Acceleration of one observer, stored as the Unruh mixing angle
/// `r` in `[0, pi/4]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Accel {
    r: f64,
}

impl Accel {
    /// An observer at rest: `r = 0`, the identity channel.
    pub const INERTIAL: Accel = Accel { r: 0.0 };

    /// Wraps a mixing angle, rejecting values outside `[0, pi/4]`.
    pub fn new(r: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_4).contains(&r) {
            return Err(Error::NonPhysical(format!(
                "mixing angle {r} outside [0, pi/4]"
            )));
        }
        Ok(Self { r })
    }

    /// Converts physical parameters to the mixing angle via
    /// `cos r = (exp(-2 pi omega c / a) + 1)^(-1/2)`.
    ///
    /// `omega` and `c` must be positive and `a` nonnegative; `a = 0` gives
    /// the inertial observer and `a = +inf` the saturation angle `pi/4`.
    pub fn from_physical(omega: f64, a: f64, c: f64) -> Result<Self> {
        if omega.is_nan() || a.is_nan() || c.is_nan() || omega <= 0.0 || c <= 0.0 || a < 0.0 {
            return Err(Error::NonPhysical(format!(
                "need omega > 0, c > 0, a >= 0; got omega = {omega}, a = {a}, c = {c}"
            )));
        }
        // a = 0 sends the exponent to -inf and exp to 0 without special
        // casing. The clamp guards the r = pi/4 endpoint against the acos
        // rounding one ulp past FRAC_PI_4.
        let cos_r = ((-2.0 * std::f64::consts::PI * omega * c / a).exp() + 1.0).sqrt().recip();
        let r = cos_r.min(1.0).acos().clamp(0.0, FRAC_PI_4);
        Ok(Self { r })
    }

    /// The mixing angle in radians.
    pub fn r(&self) -> f64 {
        self.r
    }
}

/// Assignment of accelerations to parties. Parties without an entry are
/// inertial and are left untouched by [`apply_unruh`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AccelMap {
    map: BTreeMap<usize, Accel>,
}

impl AccelMap {
    /// No accelerated parties at all.
    pub fn inertial() -> Self {
        Self::default()
    }

    /// Builder-style insertion.
    pub fn with(mut self, party: Party, accel: Accel) -> Self {
        self.set(party, accel);
        self
    }

    pub fn set(&mut self, party: Party, accel: Accel) {
        self.map.insert(party.0, accel);
    }

    /// The acceleration assigned to `party`, defaulting to inertial.
    pub fn get(&self, party: Party) -> Accel {
        self.map.get(&party.0).copied().unwrap_or(Accel::INERTIAL)
    }

    /// Entries in ascending party order.
    pub fn iter(&self) -> impl Iterator<Item = (Party, Accel)> + '_ {
        self.map.iter().map(|(&p, &a)| (Party(p), a))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Expands one two-dimensional party into its (region I, region II) pair,
/// inserting the region-II slot directly after the party. The state picks up
/// one extra party and stays normalized.
pub fn rindler_expand(state: &PureState, party: Party, accel: Accel) -> Result<PureState> {
    let dims = state.dims();
    if party.0 >= dims.len() {
        return Err(Error::InvalidParty { party: party.0, parties: dims.len() });
    }
    if dims[party.0] != 2 {
        return Err(Error::Dimension(format!(
            "party {} has dimension {}, only qubits can be expanded",
            party.0, dims[party.0]
        )));
    }
    let mut out_dims = dims.to_vec();
    out_dims.insert(party.0 + 1, 2);
    let out_total: usize = out_dims.iter().product();

    let (sin_r, cos_r) = accel.r.sin_cos();
    let mut out = vec![Complex64::new(0.0, 0.0); out_total];
    for (index, &amp) in state.amplitudes().iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut d = index_digits(index, dims);
        let digit = d[party.0];
        d.insert(party.0 + 1, 0);
        // Write the (region I, region II) digit pair over the party's slot.
        let mut emit = |region_i: usize, region_ii: usize, weight: f64| {
            d[party.0] = region_i;
            d[party.0 + 1] = region_ii;
            out[index_flatten(&d, &out_dims)] += amp * weight;
        };
        if digit == 0 {
            emit(0, 0, cos_r);
            emit(1, 1, sin_r);
        } else {
            emit(1, 0, 1.0);
        }
    }
    Ok(PureState::from_parts(out_dims, out))
}

/// Runs every accelerated party through the Unruh expansion, forms the
/// density matrix, and traces out all region-II slots. Parties keep their
/// original order; the output has the same party count as the input.
pub fn apply_unruh(state: &PureState, accels: &AccelMap) -> Result<DensityMatrix> {
    let n_parties = state.parties();
    for (Party(p), _) in accels.iter() {
        if p >= n_parties {
            return Err(Error::InvalidParty { party: p, parties: n_parties });
        }
    }
    let mut expanded = state.clone();
    let mut hidden = Vec::with_capacity(accels.len());
    // Ascending order: each insertion shifts every later party one slot right.
    for (offset, (Party(p), accel)) in accels.iter().enumerate() {
        let pos = p + offset;
        expanded = rindler_expand(&expanded, Party(pos), accel)?;
        hidden.push(Party(pos + 1));
    }
    let rho = DensityMatrix::from_pure(&expanded)?;
    if hidden.is_empty() {
        return Ok(rho);
    }
    rho.partial_trace(&hidden)
}
