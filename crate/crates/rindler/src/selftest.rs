//! Seeded randomized cross-checks of the numerical core, exposed through
//! the CLI so a deployment can re-verify the kernels on its own hardware.
//!
//! Each suite draws random inputs from a ChaCha stream cipher seeded by the
//! caller (same seed, same verdict, on any platform) and checks one
//! implementation against an independent route to the same answer:
//!
//! * both realignment maps against brute-force index loops (must agree
//!   exactly, since realignment only moves entries),
//! * the realignment map applied twice against the identity,
//! * the singular-value trace norm of a Hermitian matrix against the sum of
//!   eigenvalue magnitudes from the separate Hermitian kernel,
//! * Unruh channel outputs against the density-matrix axioms,
//! * the partial transpose against its defining symmetries.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, HERMITICITY_TOL, SPECTRAL_TOL};
use crate::state::{transpose_party, DensityMatrix, Party, PureState};
use crate::unruh::{apply_unruh, Accel, AccelMap};

/// Outcome of one suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    /// Worst deviation observed across all cases.
    pub max_deviation: f64,
    /// Largest deviation the suite accepts.
    pub tolerance: f64,
    pub passed: bool,
}

/// Outcome of a full selftest run.
#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }
}

impl std::fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "selftest (seed {})", self.seed)?;
        for s in &self.suites {
            writeln!(
                f,
                "  [{}] {:<28} {:>4} cases, max deviation {:.3e} (tolerance {:.1e})",
                if s.passed { "ok" } else { "FAIL" },
                s.name,
                s.cases,
                s.max_deviation,
                s.tolerance,
            )?;
        }
        writeln!(
            f,
            "selftest {}",
            if self.passed() { "passed" } else { "FAILED" }
        )
    }
}

fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            m[(r, c)] = random_complex(rng);
        }
    }
    m
}

/// Full-rank random density matrix: G G^dagger normalized to unit trace.
fn random_density<R: Rng>(rng: &mut R, dims: Vec<usize>) -> Result<DensityMatrix> {
    let d: usize = dims.iter().product();
    let g = random_matrix(rng, d, d);
    let gram = g.matmul(&g.adjoint());
    let trace = gram.trace().re;
    DensityMatrix::try_new(dims, gram.scale(Complex64::new(trace.recip(), 0.0)))
}

fn random_pure<R: Rng>(rng: &mut R, dims: Vec<usize>) -> Result<PureState> {
    let d: usize = dims.iter().product();
    let amps: Vec<Complex64> = (0..d).map(|_| random_complex(rng)).collect();
    PureState::normalized(dims, amps)
}

/// Two-party realignment written as four explicit index loops, sharing no
/// code with the production map.
fn brute_realign_bipartite(m: &ComplexMatrix, d1: usize, d2: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(d1 * d1, d2 * d2);
    for i in 0..d1 {
        for j in 0..d2 {
            for k in 0..d1 {
                for n in 0..d2 {
                    out[(i * d1 + k, j * d2 + n)] = m[(i * d2 + j, k * d2 + n)];
                }
            }
        }
    }
    out
}

/// Pair realignment of a three-qubit matrix written as six explicit index
/// loops with hard-coded strides.
fn brute_realign_pair(m: &ComplexMatrix, f: usize, g: usize) -> ComplexMatrix {
    let s = 3 - f - g;
    let (lo, hi) = if f < g { (f, g) } else { (g, f) };
    let mut out = ComplexMatrix::zeros(8, 8);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for a2 in 0..2 {
                    for b2 in 0..2 {
                        for c2 in 0..2 {
                            let rd = [a, b, c];
                            let cd = [a2, b2, c2];
                            let mut orow = [0usize; 3];
                            let mut ocol = [0usize; 3];
                            orow[s] = rd[s];
                            ocol[s] = cd[s];
                            orow[lo] = rd[f];
                            orow[hi] = cd[f];
                            ocol[lo] = rd[g];
                            ocol[hi] = cd[g];
                            out[(
                                orow[0] * 4 + orow[1] * 2 + orow[2],
                                ocol[0] * 4 + ocol[1] * 2 + ocol[2],
                            )] = m[(a * 4 + b * 2 + c, a2 * 4 + b2 * 2 + c2)];
                        }
                    }
                }
            }
        }
    }
    out
}

struct Suite {
    name: &'static str,
    tolerance: f64,
    max_deviation: f64,
    cases: usize,
}

impl Suite {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, tolerance, max_deviation: 0.0, cases: 0 }
    }

    fn record(&mut self, deviation: f64) {
        self.cases += 1;
        if deviation > self.max_deviation || deviation.is_nan() {
            self.max_deviation = deviation;
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            passed: self.max_deviation <= self.tolerance,
            max_deviation: self.max_deviation,
            tolerance: self.tolerance,
        }
    }
}

/// Runs every suite with `cases` random draws each.
pub fn run_selftest(seed: u64, cases: usize) -> Result<SelftestReport> {
    if cases == 0 {
        return Err(Error::Config("selftest needs at least one case".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suites = Vec::new();

    // Realignment of a two-party state against the brute-force loops.
    // Index shuffles move entries without arithmetic, so agreement must be
    // exact, including on unequal party dimensions.
    let mut suite = Suite::new("realign-bipartite-brute-force", 0.0);
    for case in 0..cases {
        let [d1, d2] = [[2, 2], [2, 3], [3, 2], [3, 3]][case % 4];
        let rho = random_density(&mut rng, vec![d1, d2])?;
        let fast = rho.realign_bipartite()?;
        let brute = brute_realign_bipartite(rho.matrix(), d1, d2);
        suite.record((&fast - &brute).max_abs_entry());
    }
    suites.push(suite.finish());

    // Pair realignment of a three-qubit state, every ordered pair.
    let mut suite = Suite::new("realign-pair-brute-force", 0.0);
    for _ in 0..cases {
        let rho = random_density(&mut rng, vec![2, 2, 2])?;
        for (f, g) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
            let fast = rho.realign_pair((Party(f), Party(g)))?;
            let brute = brute_realign_pair(rho.matrix(), f, g);
            suite.record((&fast - &brute).max_abs_entry());
        }
    }
    suites.push(suite.finish());

    // Applying the two-party realignment twice is the identity, exactly,
    // even on matrices that are not states.
    let mut suite = Suite::new("realign-involution", 0.0);
    for case in 0..cases {
        let [d1, d2] = [[2, 2], [2, 3], [3, 2]][case % 3];
        let m = random_matrix(&mut rng, d1 * d2, d1 * d2);
        let twice = m.reshuffle((d1, d2), (d1, d2)).reshuffle((d1, d1), (d2, d2));
        suite.record((&twice - &m).max_abs_entry());
    }
    suites.push(suite.finish());

    // The singular-value kernel against the Hermitian eigenvalue kernel:
    // for Hermitian input the trace norm equals the sum of |eigenvalue|.
    let mut suite = Suite::new("tracenorm-vs-eigensum", 1e-10);
    for case in 0..cases {
        let d = 2 + case % 7;
        let g = random_matrix(&mut rng, d, d);
        let herm = (&g + &g.adjoint()).scale(Complex64::new(0.5, 0.0));
        let tn = herm.trace_norm(SPECTRAL_TOL)?;
        let eigsum: f64 = herm
            .hermitian_eigenvalues(HERMITICITY_TOL)?
            .iter()
            .map(|e| e.abs())
            .sum();
        suite.record((tn - eigsum).abs());
    }
    suites.push(suite.finish());

    // Unruh channel outputs must satisfy the density-matrix axioms for any
    // input state and any mixing angles.
    let mut suite = Suite::new("unruh-output-validity", 1e-10);
    for _ in 0..cases {
        let state = random_pure(&mut rng, vec![2, 2, 2])?;
        let mut map = AccelMap::inertial();
        for p in 1..3 {
            if rng.gen_bool(0.75) {
                let r = rng.gen_range(0.0..=std::f64::consts::FRAC_PI_4);
                map.set(Party(p), Accel::new(r)?);
            }
        }
        let rho = apply_unruh(&state, &map)?;
        match rho.validate() {
            Ok(()) => suite.record((rho.matrix().trace().re - 1.0).abs()),
            Err(_) => suite.record(f64::INFINITY),
        }
    }
    suites.push(suite.finish());

    // Partial transpose: exactly an involution and exactly trace-preserving.
    let mut suite = Suite::new("partial-transpose-symmetries", 0.0);
    for _ in 0..cases {
        let rho = random_density(&mut rng, vec![2, 2])?;
        let party = Party(rng.gen_range(0..2));
        let pt = rho.partial_transpose(party)?;
        let back = transpose_party(&pt, &[2, 2], party.0);
        suite.record((&back - rho.matrix()).max_abs_entry());
        suite.record((pt.trace() - rho.matrix().trace()).norm());
    }
    suites.push(suite.finish());

    Ok(SelftestReport { seed, suites })
}
