//! Dense complex matrices and the spectral kernels built on top of them.
//!
//! Every operator in this crate is tiny (at most 32 x 32: a three-qubit
//! state expanded into five Rindler slots), so the implementations favour
//! clarity and numerical robustness over asymptotic cleverness. Eigenvalues
//! of Hermitian matrices come from a cyclic complex Jacobi iteration and
//! singular values from a one-sided Jacobi orthogonalization; both converge
//! quadratically and run to a fixed off-diagonal tolerance. The trace norm
//! `||O|| = tr sqrt(O O^H)` is the sum of singular values, which is what the
//! negativity and realignment quantifiers are made of.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Convergence tolerance of the iterative spectral kernels, measured on the
/// relative off-diagonal mass they are driving to zero.
pub const SPECTRAL_TOL: f64 = 1e-13;

/// Default tolerance for Hermiticity checks (max-entry deviation).
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Hard cap on Jacobi sweeps. Both kernels converge quadratically, so even
/// 32 x 32 inputs settle in a handful of sweeps; hitting this cap means the
/// input (or the requested tolerance) is pathological.
const MAX_SWEEPS: usize = 100;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting shape mismatches
    /// and non-finite values.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix must have at least one row and column, got {rows} x {cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows} x {cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(index) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix must have at least one row and column");
        Self { rows, cols, entries: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)];
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    /// Kronecker product; the left factor owns the most significant block
    /// index, matching the party ordering used by the state types.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self[(r1, c1)];
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * other[(r2, c2)];
                    }
                }
            }
        }
        out
    }

    /// Matrix product. Panics on incompatible shapes (programmer error).
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matmul shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..other.cols {
                    out[(r, c)] += a * other[(k, c)];
                }
            }
        }
        out
    }

    /// Scales every entry by `z`.
    pub fn scale(&self, z: Complex64) -> Self {
        let entries = self.entries.iter().map(|e| e * z).collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Squared Frobenius norm, i.e. the sum of |entry|^2. For a Hermitian
    /// matrix this equals tr(M^2).
    pub fn frobenius_sq(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-entry deviation from Hermitian symmetry, max |a_ij - conj(a_ji)|.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square(), "hermiticity of a non-square matrix");
        let mut dev: f64 = 0.0;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    /// Regroups the row and column indices of a matrix viewed as a 4-index
    /// tensor: with rows factored as (a, b) of sizes `row_split` and columns
    /// as (c, d) of sizes `col_split`,
    ///
    ///   out[(a, c), (b, d)] = self[(a, b), (c, d)].
    ///
    /// This is the index shuffle underneath operator realignment. Applying
    /// it twice (with the output's own splits) restores the input exactly:
    /// entries are moved, never recomputed.
    pub fn reshuffle(&self, row_split: (usize, usize), col_split: (usize, usize)) -> Self {
        let (a, b) = row_split;
        let (c, d) = col_split;
        assert_eq!(a * b, self.rows, "row split {a}x{b} does not factor {} rows", self.rows);
        assert_eq!(c * d, self.cols, "col split {c}x{d} does not factor {} cols", self.cols);
        let mut out = Self::zeros(a * c, b * d);
        for ia in 0..a {
            for ib in 0..b {
                for ic in 0..c {
                    for id in 0..d {
                        out[(ia * c + ic, ib * d + id)] = self[(ia * b + ib, ic * d + id)];
                    }
                }
            }
        }
        out
    }

    /// Eigenvalues of a Hermitian matrix, sorted in descending order.
    ///
    /// `tol` bounds the accepted max-entry deviation from exact symmetry;
    /// inputs further away are rejected with [`Error::NotHermitian`]. The
    /// iteration itself is a cyclic complex Jacobi diagonalization run on
    /// the Hermitian average (self + self^H)/2 until the off-diagonal mass
    /// falls below [`SPECTRAL_TOL`] relative to the Frobenius norm.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "eigenvalues of a non-square {} x {} matrix",
                self.rows, self.cols
            )));
        }
        let deviation = self.hermiticity_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation, tol });
        }

        let n = self.rows;
        // Work on the exactly-Hermitian average so the bounded asymmetry
        // cannot leak into the rotations.
        let mut a = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                a[(r, c)] = (self[(r, c)] + self[(c, r)].conj()) * 0.5;
            }
        }

        let frob = a.frobenius_sq().sqrt();
        if frob == 0.0 {
            return Ok(vec![0.0; n]);
        }

        for _ in 0..MAX_SWEEPS {
            let off_sq: f64 = {
                let mut s = 0.0;
                for p in 0..n {
                    for q in (p + 1)..n {
                        s += a[(p, q)].norm_sqr();
                    }
                }
                2.0 * s
            };
            if off_sq.sqrt() <= SPECTRAL_TOL * frob {
                let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
                eigs.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
                return Ok(eigs);
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    let mag = apq.norm();
                    if mag == 0.0 {
                        continue;
                    }
                    // Unitary plane rotation U on (p, q) with phase e^{i phi}
                    // = a_pq / |a_pq| chosen so that (U^H A U)_pq = 0.
                    let phase = apq / mag;
                    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // Column update A <- A U: col_p' = c col_p - s e^{-i phi} col_q,
                    // col_q' = s e^{i phi} col_p + c col_q.
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = akp * c - akq * phase.conj() * s;
                        a[(k, q)] = akp * phase * s + akq * c;
                    }
                    // Row update A <- U^H A: row_p' = c row_p - s e^{i phi} row_q,
                    // row_q' = s e^{-i phi} row_p + c row_q.
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = apk * c - aqk * phase * s;
                        a[(q, k)] = apk * phase.conj() * s + aqk * c;
                    }
                }
            }
        }
        Err(Error::ConvergenceFailure { sweeps: MAX_SWEEPS, tol: SPECTRAL_TOL })
    }

    /// Singular values, sorted in descending order.
    ///
    /// One-sided (Hestenes) Jacobi: the columns of the matrix (or of its
    /// adjoint, whichever orientation is tall) are repeatedly rotated in
    /// pairs until all of them are mutually orthogonal relative to `tol`;
    /// the singular values are then the column norms. This route never forms
    /// O O^H, so it stays independent of [`Self::hermitian_eigenvalues`] and
    /// the two can serve as cross-checks of one another.
    pub fn singular_values(&self, tol: f64) -> Result<Vec<f64>> {
        let work = if self.rows >= self.cols { self.clone() } else { self.adjoint() };
        let (m, n) = (work.rows, work.cols);

        // Column-major copy: the iteration only ever touches whole columns.
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|c| (0..m).map(|r| work[(r, c)]).collect())
            .collect();

        // Columns whose squared norm falls below this are numerical zeros
        // (rank deficiency plus rounding). They are frozen rather than
        // rotated: two noise-level columns can stay mutually "parallel"
        // forever under the relative orthogonality test, which would spin
        // the sweep loop without ever converging.
        let negligible = m as f64 * f64::EPSILON * f64::EPSILON * work.frobenius_sq();

        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                    let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                    if alpha <= negligible || beta <= negligible {
                        continue;
                    }
                    let gamma: Complex64 = cols[p]
                        .iter()
                        .zip(&cols[q])
                        .map(|(u, v)| u.conj() * v)
                        .sum();
                    let mag = gamma.norm();
                    if mag * mag <= tol * tol * alpha * beta {
                        continue;
                    }
                    rotated = true;
                    // Absorb the phase of <p|q> into column q, then apply the
                    // real rotation that zeroes the (now real) inner product.
                    let phase_conj = (gamma / mag).conj();
                    let tau = (beta - alpha) / (2.0 * mag);
                    let t = if tau >= 0.0 {
                        1.0 / (tau + (1.0 + tau * tau).sqrt())
                    } else {
                        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let (head, tail) = cols.split_at_mut(q);
                    for (up, uq) in head[p].iter_mut().zip(tail[0].iter_mut()) {
                        let ukp = *up;
                        let ukq = *uq * phase_conj;
                        *up = ukp * c - ukq * s;
                        *uq = ukp * s + ukq * c;
                    }
                }
            }
            if !rotated {
                let mut sv: Vec<f64> = cols
                    .iter()
                    .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
                    .collect();
                sv.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
                return Ok(sv);
            }
        }
        Err(Error::ConvergenceFailure { sweeps: MAX_SWEEPS, tol })
    }

    /// Trace norm ||O|| = tr sqrt(O O^H): the sum of singular values.
    pub fn trace_norm(&self, tol: f64) -> Result<f64> {
        Ok(self.singular_values(tol)?.iter().sum())
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, entries }
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        ComplexMatrix { rows: self.rows, cols: self.cols, entries }
    }
}
