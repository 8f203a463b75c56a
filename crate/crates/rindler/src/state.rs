//! Multi-party pure states and density matrices, plus the index-reshuffling
//! maps the entanglement quantifiers are built from: partial trace, partial
//! transpose, and the two realignment maps.
//!
//! Index convention: party 0 owns the most significant digit of a composite
//! basis index, so a qubit basis label reads left-to-right like a ket --
//! |abc> sits at flat index 4a + 2b + c. All maps below are pure index
//! shuffles (entries are moved or summed, never otherwise recomputed), which
//! keeps them exact in floating point.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Tolerance on the squared norm of a pure state's amplitude vector.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Tolerance for density-matrix validity checks: Hermiticity (max entry),
/// trace deviation from one, and how far below zero the smallest eigenvalue
/// may sit before the state is rejected.
pub const DENSITY_TOL: f64 = 1e-10;

/// Zero-based label of one subsystem (one tensor slot).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Party(pub usize);

impl std::fmt::Display for Party {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Decomposes a flat basis index into per-party digits (party 0 first).
pub(crate) fn index_digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (slot, &d) in dims.iter().enumerate().rev() {
        out[slot] = index % d;
        index /= d;
    }
    out
}

/// Recombines per-party digits into a flat basis index.
pub(crate) fn index_flatten(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Normalized state vector over an explicit list of party dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: Vec<usize>,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Builds a state, rejecting shape mismatches, non-finite amplitudes and
    /// vectors whose squared norm strays from 1 by more than
    /// [`NORMALIZATION_TOL`].
    pub fn new(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Dimension(
                "state needs at least one party, all with nonzero dimension".into(),
            ));
        }
        let total: usize = dims.iter().product();
        if amps.len() != total {
            return Err(Error::Dimension(format!(
                "dims {dims:?} call for {total} amplitudes, got {}",
                amps.len()
            )));
        }
        if let Some(index) = amps.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self { dims, amps })
    }

    /// Like [`PureState::new`] but rescales the vector to unit norm first.
    pub fn normalized(dims: Vec<usize>, amps: Vec<Complex64>) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if !norm_sq.is_finite() || norm_sq == 0.0 {
            return Err(Error::NotNormalized { norm_sq });
        }
        let scale = norm_sq.sqrt().recip();
        let amps = amps.into_iter().map(|z| z * scale).collect();
        Self::new(dims, amps)
    }

    /// Computational basis state |index> of the given system.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total: usize = dims.iter().product();
        if index >= total {
            return Err(Error::Dimension(format!(
                "basis index {index} out of range for dimension {total}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); total];
        amps[index] = Complex64::new(1.0, 0.0);
        Self::new(dims, amps)
    }

    /// Three-qubit GHZ state (|000> + |111>) / sqrt 2.
    pub fn ghz3() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[0] = h;
        amps[7] = h;
        Self { dims: vec![2, 2, 2], amps }
    }

    /// Three-qubit W state (|001> + |010> + |100>) / sqrt 3.
    pub fn w3() -> Self {
        let t = Complex64::new(1.0 / 3.0f64.sqrt(), 0.0);
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        amps[1] = t;
        amps[2] = t;
        amps[4] = t;
        Self { dims: vec![2, 2, 2], amps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Internal constructor for states that are normalized by construction.
    pub(crate) fn from_parts(dims: Vec<usize>, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), amps.len());
        Self { dims, amps }
    }
}

/// Density matrix over an explicit list of party dimensions.
///
/// Instances produced by this crate are valid by construction (projectors of
/// normalized states and partial traces thereof). [`DensityMatrix::validate`]
/// re-checks the defining properties -- Hermiticity, unit trace, positivity
/// -- within [`DENSITY_TOL`] and is what the randomized self-tests call.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    /// Projector |s><s| of a normalized pure state.
    pub fn from_pure(state: &PureState) -> Result<Self> {
        let norm_sq = state.norm_sq();
        if (norm_sq - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        let n = state.amps.len();
        let mut mat = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                mat[(r, c)] = state.amps[r] * state.amps[c].conj();
            }
        }
        Ok(Self { dims: state.dims.clone(), mat })
    }

    /// Builds a density matrix from raw parts after running the full
    /// validity check.
    pub fn try_new(dims: Vec<usize>, mat: ComplexMatrix) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.contains(&0) || mat.rows() != total || mat.cols() != total {
            return Err(Error::Dimension(format!(
                "dims {dims:?} call for a {total} x {total} matrix, got {} x {}",
                mat.rows(),
                mat.cols()
            )));
        }
        let rho = Self { dims, mat };
        rho.validate()?;
        Ok(rho)
    }

    /// Internal constructor for outputs that are valid by construction.
    pub(crate) fn from_parts(dims: Vec<usize>, mat: ComplexMatrix) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>().max(1), mat.rows());
        debug_assert!(mat.is_square());
        Self { dims, mat }
    }

    /// Re-checks Hermiticity, unit trace and positivity within
    /// [`DENSITY_TOL`].
    pub fn validate(&self) -> Result<()> {
        let dev = self.mat.hermiticity_deviation();
        if dev > DENSITY_TOL {
            return Err(Error::NotHermitian { deviation: dev, tol: DENSITY_TOL });
        }
        let tr = self.mat.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::NotNormalized { norm_sq: tr.re });
        }
        let eigs = self.mat.hermitian_eigenvalues(DENSITY_TOL)?;
        let min = eigs.last().copied().unwrap_or(0.0);
        if min < -DENSITY_TOL {
            return Err(Error::NotPositive { min_eigenvalue: min });
        }
        Ok(())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    /// tr(rho^2), computed as the squared Frobenius norm (the two agree for
    /// Hermitian matrices). 1 for pure states, 1/dim for the maximally mixed.
    pub fn purity(&self) -> f64 {
        self.mat.frobenius_sq()
    }

    /// Traces out the listed parties, keeping the rest in their original
    /// order. Tracing out everything leaves a 1 x 1 matrix holding the trace.
    pub fn partial_trace(&self, parties: &[Party]) -> Result<DensityMatrix> {
        if parties.is_empty() {
            return Err(Error::EmptyInput("partial_trace needs at least one party"));
        }
        let n_parties = self.dims.len();
        let mut traced = vec![false; n_parties];
        for &Party(p) in parties {
            if p >= n_parties {
                return Err(Error::InvalidParty { party: p, parties: n_parties });
            }
            if traced[p] {
                return Err(Error::DuplicateParty(p));
            }
            traced[p] = true;
        }
        let kept: Vec<usize> = (0..n_parties).filter(|&p| !traced[p]).collect();
        let kept_dims: Vec<usize> = kept.iter().map(|&p| self.dims[p]).collect();
        let out_dim: usize = kept_dims.iter().product::<usize>().max(1);

        let mut out = ComplexMatrix::zeros(out_dim, out_dim);
        let total = self.dim();
        for r in 0..total {
            let rd = index_digits(r, &self.dims);
            for c in 0..total {
                let cd = index_digits(c, &self.dims);
                if (0..n_parties).any(|p| traced[p] && rd[p] != cd[p]) {
                    continue;
                }
                let or: Vec<usize> = kept.iter().map(|&p| rd[p]).collect();
                let oc: Vec<usize> = kept.iter().map(|&p| cd[p]).collect();
                out[(index_flatten(&or, &kept_dims), index_flatten(&oc, &kept_dims))] += self.mat[(r, c)];
            }
        }
        Ok(DensityMatrix::from_parts(kept_dims, out))
    }

    /// Transposes the indices of a single party, leaving the rest alone.
    /// The result is Hermitian but in general not positive, so it comes back
    /// as a plain matrix.
    pub fn partial_transpose(&self, party: Party) -> Result<ComplexMatrix> {
        if party.0 >= self.dims.len() {
            return Err(Error::InvalidParty { party: party.0, parties: self.dims.len() });
        }
        Ok(transpose_party(&self.mat, &self.dims, party.0))
    }

    /// Two-party realignment: out[(i, m), (j, n)] = rho[(i, j), (m, n)],
    /// where i, j index the row digits of the two parties and m, n the
    /// column digits. The output has d1^2 rows and d2^2 columns; its trace
    /// norm compared against 1 is the realignment separability quantity.
    pub fn realign_bipartite(&self) -> Result<ComplexMatrix> {
        if self.dims.len() != 2 {
            return Err(Error::WrongPartyCount { expected: 2, actual: self.dims.len() });
        }
        let (d1, d2) = (self.dims[0], self.dims[1]);
        Ok(self.mat.reshuffle((d1, d2), (d1, d2)))
    }

    /// Three-party partial realignment of `pair`, leaving the remaining
    /// party as an untouched spectator.
    ///
    /// The paired parties are realigned exactly as in the two-party map: the
    /// first of the pair contributes its row and column digits to the output
    /// row group, the second contributes its digits to the output column
    /// group. Within the two pair slots (taken in ascending slot order) the
    /// row group holds (first's row digit, first's column digit) and the
    /// column group holds (second's row digit, second's column digit). The
    /// spectator keeps its row digit in the row group and its column digit
    /// in the column group, in its original slot.
    pub fn realign_pair(&self, pair: (Party, Party)) -> Result<ComplexMatrix> {
        if self.dims.len() != 3 {
            return Err(Error::WrongPartyCount { expected: 3, actual: self.dims.len() });
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
        let (lo, hi) = (f.min(g), f.max(g));

        // Per-slot dimensions of the output's row and column groups.
        let mut row_dims = [0usize; 3];
        let mut col_dims = [0usize; 3];
        row_dims[spectator] = self.dims[spectator];
        col_dims[spectator] = self.dims[spectator];
        row_dims[lo] = self.dims[f];
        row_dims[hi] = self.dims[f];
        col_dims[lo] = self.dims[g];
        col_dims[hi] = self.dims[g];

        let out_rows: usize = row_dims.iter().product();
        let out_cols: usize = col_dims.iter().product();
        let mut out = ComplexMatrix::zeros(out_rows, out_cols);
        let total = self.dim();
        for r in 0..total {
            let rd = index_digits(r, &self.dims);
            for c in 0..total {
                let cd = index_digits(c, &self.dims);
                let mut orow = [0usize; 3];
                let mut ocol = [0usize; 3];
                orow[spectator] = rd[spectator];
                ocol[spectator] = cd[spectator];
                orow[lo] = rd[f];
                orow[hi] = cd[f];
                ocol[lo] = rd[g];
                ocol[hi] = cd[g];
                out[(index_flatten(&orow, &row_dims), index_flatten(&ocol, &col_dims))] = self.mat[(r, c)];
            }
        }
        Ok(out)
    }
}

/// Raw single-party transpose on a square matrix with the given party
/// dimensions. Exposed separately from [`DensityMatrix::partial_transpose`]
/// so the involution can be exercised on matrices that are not states.
pub fn transpose_party(mat: &ComplexMatrix, dims: &[usize], party: usize) -> ComplexMatrix {
    let total: usize = dims.iter().product();
    assert!(party < dims.len(), "party {party} out of range for dims {dims:?}");
    assert!(
        mat.rows() == total && mat.cols() == total,
        "matrix shape {} x {} does not match dims {dims:?}",
        mat.rows(),
        mat.cols()
    );
    let mut out = ComplexMatrix::zeros(total, total);
    for r in 0..total {
        let rd = index_digits(r, dims);
        for c in 0..total {
            let mut nrd = rd.clone();
            let mut ncd = index_digits(c, dims);
            std::mem::swap(&mut nrd[party], &mut ncd[party]);
            out[(index_flatten(&nrd, dims), index_flatten(&ncd, dims))] = mat[(r, c)];
        }
    }
    out
}
