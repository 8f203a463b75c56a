//! Acceptance gate: one test per shipped guarantee, each printing a
//! `[PASS]`/`[FAIL]` line (visible with `--nocapture`, and always on
//! failure). The guarantees cover reproduction of the published closed
//! forms where they are correct, explicit flagging where they are not, and
//! randomized equivalence of the numeric kernels against brute-force
//! references.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rindler::measures::two_tangle;
use rindler::sweep::{compare_report, run_sweep, Scenario, SweepConfig, SweepRecord};
use rindler::{
    apply_unruh, Accel, AccelMap, ClosedForm, ComplexMatrix, DensityMatrix, Party, PureState,
    HERMITICITY_TOL, SPECTRAL_TOL,
};

const GRID: usize = 201;

fn criterion(number: usize, description: &str, check: impl FnOnce() -> Result<(), String>) {
    match check() {
        Ok(()) => println!("[PASS] {number:02} {description}"),
        Err(msg) => {
            println!("[FAIL] {number:02} {description}\n       {msg}");
            panic!("acceptance criterion {number:02} failed: {msg}");
        }
    }
}

fn one_observer() -> Vec<SweepRecord> {
    run_sweep(&SweepConfig { scenario: Scenario::OneObserver, grid: GRID })
        .expect("one-observer sweep")
}

fn two_observers() -> Vec<SweepRecord> {
    run_sweep(&SweepConfig { scenario: Scenario::TwoObservers, grid: GRID })
        .expect("two-observer sweep")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[test]
fn acceptance_01_one_observer_accelerated_pair_matches_closed_form() {
    criterion(
        1,
        "one-observer Q of the accelerated pair tracks its closed form to 1e-9",
        || {
            let records = one_observer();
            let max = records
                .iter()
                .map(|r| r.d_one_tri_accel.unwrap())
                .fold(0.0f64, f64::max);
            ensure(max <= 1e-9, || format!("max deviation {max:.3e} exceeds 1e-9"))?;
            let start = records.first().unwrap().q_tri_bc;
            ensure((start - 1.0).abs() <= 1e-9, || {
                format!("Q at r = 0 should be 1, got {start:.17}")
            })?;
            let end = records.last().unwrap().q_tri_bc;
            let expected = (3.0 * 2.0f64.sqrt() - 2.0) / 4.0;
            ensure((end - expected).abs() <= 1e-9, || {
                format!("Q at r = pi/4 should be {expected:.17}, got {end:.17}")
            })
        },
    );
}

#[test]
fn acceptance_02_one_observer_inertial_pair_is_cos_r() {
    criterion(2, "one-observer Q of the inertial pair equals cos r to 1e-9", || {
        let records = one_observer();
        let max = records
            .iter()
            .map(|r| r.d_one_tri_inertial.unwrap())
            .fold(0.0f64, f64::max);
        ensure(max <= 1e-9, || format!("max deviation {max:.3e} exceeds 1e-9"))?;
        let end = records.last().unwrap().q_tri_ab;
        ensure((end - FRAC_1_SQRT_2).abs() <= 1e-9, || {
            format!("Q at r = pi/4 should be sqrt(2)/2, got {end:.17}")
        })
    });
}

#[test]
fn acceptance_03_one_observer_accelerated_pairs_agree() {
    criterion(
        3,
        "one-observer Q agrees between the two pairs containing the accelerated party",
        || {
            for rec in &one_observer() {
                let gap = (rec.q_tri_ac - rec.q_tri_bc).abs();
                ensure(gap <= 1e-10, || {
                    format!("|Q_AC - Q_BC| = {gap:.3e} at r = {}", rec.rc)
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_04_two_observer_pair_invariance() {
    criterion(
        4,
        "two-observer Q is pair-independent per grid point and stays above 0.2 at saturation",
        || {
            let records = two_observers();
            let end = records.last().unwrap();

            // The saturation values themselves are healthy: the doubly
            // accelerated pair lands on 1/4 and every pair stays above 0.2.
            ensure((end.q_tri_bc - 0.25).abs() <= 1e-9, || {
                format!("Q_BC at r = pi/4 should be 0.25, got {:.17}", end.q_tri_bc)
            })?;
            for (name, q) in [
                ("Q_BC", end.q_tri_bc),
                ("Q_AC", end.q_tri_ac),
                ("Q_AB", end.q_tri_ab),
            ] {
                ensure(q > 0.2, || format!("{name} at r = pi/4 is {q:.17}, not above 0.2"))?;
            }

            // The audit must flag the published pair-independent curve.
            let report = compare_report(&one_observer(), &records).expect("report");
            let two_tri = report
                .rows
                .iter()
                .find(|row| row.form == ClosedForm::TwoObsTripartite)
                .expect("two_tri row");
            ensure(two_tri.discrepant, || {
                "the audit fails to flag the pair-independent curve as DISCREPANT".into()
            })?;

            // The published claim under test: all three pair choices give
            // the same Q at every grid point.
            let mut worst = 0.0f64;
            let mut worst_r = 0.0f64;
            for rec in &records {
                let spread = (rec.q_tri_ab - rec.q_tri_bc)
                    .abs()
                    .max((rec.q_tri_ab - rec.q_tri_ac).abs())
                    .max((rec.q_tri_ac - rec.q_tri_bc).abs());
                if spread > worst {
                    worst = spread;
                    worst_r = rec.rc;
                }
            }
            ensure(worst <= 1e-10, || {
                format!(
                    "pair invariance does not hold numerically: max pairwise spread \
                     {worst:.17} at r = {worst_r:.17}. The singular-value ground truth \
                     gives Q_AB = Q_AC != Q_BC for r > 0; at r = pi/4, Q_AB = Q_AC = \
                     (sqrt(2) + sqrt(26))/8 - 1/2 = {:.17} while Q_BC = {:.17}. The \
                     published equal-Q claim holds only under a block evaluation that \
                     drops cross-block couplings of the realigned matrix, which is why \
                     the audit reports the pair-independent curve as DISCREPANT.",
                    (2.0f64.sqrt() + 26.0f64.sqrt()) / 8.0 - 0.5,
                    records.last().unwrap().q_tri_bc,
                )
            })
        },
    );
}

#[test]
fn acceptance_05_no_bipartite_realignment_entanglement() {
    criterion(
        5,
        "every two-party marginal stays below the realignment threshold in both scenarios",
        || {
            for (label, records) in [("one", one_observer()), ("two", two_observers())] {
                for rec in &records {
                    for (name, q) in [
                        ("Q_AB", rec.q_bi_ab),
                        ("Q_AC", rec.q_bi_ac),
                        ("Q_BC", rec.q_bi_bc),
                    ] {
                        ensure(q <= 1e-10, || {
                            format!(
                                "{name} = {q:.3e} at r = {} ({label}-observer) exceeds 1e-10",
                                rec.rc
                            )
                        })?;
                    }
                }
                let start = &records[0];
                for q in [start.q_bi_ab, start.q_bi_ac, start.q_bi_bc] {
                    ensure(q.abs() <= 1e-10, || {
                        format!("marginal Q at r = 0 should vanish, got {q:.3e} ({label}-observer)")
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_06_two_tangles_vanish() {
    criterion(6, "all two-tangles vanish across both scenario grids", || {
        let ghz = PureState::ghz3();
        for two_obs in [false, true] {
            for k in 0..GRID {
                let r = FRAC_PI_4 * (k as f64 / (GRID - 1) as f64);
                let accel = Accel::new(r).map_err(|e| e.to_string())?;
                let mut map = AccelMap::inertial().with(Party(2), accel);
                if two_obs {
                    map.set(Party(1), accel);
                }
                let rho = apply_unruh(&ghz, &map).map_err(|e| e.to_string())?;
                for pair in [(0, 1), (0, 2), (1, 2)] {
                    let t = two_tangle(&rho, (Party(pair.0), Party(pair.1)))
                        .map_err(|e| e.to_string())?;
                    ensure(t <= 1e-10, || {
                        format!("two-tangle of pair {pair:?} is {t:.3e} at r = {r}")
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn acceptance_07_pi_tangle_profile() {
    criterion(
        7,
        "pi-tangle starts at 1, stays positive, decreases, and is dominated by Q_BC",
        || {
            for (label, records) in [("one", one_observer()), ("two", two_observers())] {
                let start = records[0].pi;
                ensure((start - 1.0).abs() <= 1e-9, || {
                    format!("pi at r = 0 should be 1, got {start:.17} ({label}-observer)")
                })?;
                let end = records.last().unwrap().pi;
                ensure(end > 0.0, || {
                    format!("pi at r = pi/4 should stay positive, got {end:.17} ({label}-observer)")
                })?;
                for pair in records.windows(2) {
                    ensure(pair[1].pi <= pair[0].pi + 1e-12, || {
                        format!(
                            "pi rises from {:.17} to {:.17} near r = {} ({label}-observer)",
                            pair[0].pi, pair[1].pi, pair[1].rc
                        )
                    })?;
                }
                for rec in &records {
                    ensure(rec.q_tri_bc >= rec.pi - 1e-12, || {
                        format!(
                            "Q_BC = {:.17} dips below pi = {:.17} at r = {} ({label}-observer)",
                            rec.q_tri_bc, rec.pi, rec.rc
                        )
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_08_monotonicity_and_scenario_ordering() {
    criterion(
        8,
        "tripartite Q decreases with r, and faster with two accelerated observers",
        || {
            let one = one_observer();
            let two = two_observers();
            for (label, records) in [("one", &one), ("two", &two)] {
                for pair in records.windows(2) {
                    for (name, a, b) in [
                        ("Q_BC", pair[0].q_tri_bc, pair[1].q_tri_bc),
                        ("Q_AC", pair[0].q_tri_ac, pair[1].q_tri_ac),
                        ("Q_AB", pair[0].q_tri_ab, pair[1].q_tri_ab),
                    ] {
                        ensure(b <= a + 1e-12, || {
                            format!(
                                "{name} rises from {a:.17} to {b:.17} near r = {} \
                                 ({label}-observer)",
                                pair[1].rc
                            )
                        })?;
                    }
                }
            }
            for (a, b) in one.iter().zip(&two).skip(1) {
                ensure(b.q_tri_bc <= a.q_tri_bc + 1e-12, || {
                    format!(
                        "two-observer Q_BC = {:.17} exceeds one-observer Q_BC = {:.17} \
                         at r = {}",
                        b.q_tri_bc, a.q_tri_bc, a.rc
                    )
                })?;
            }
            Ok(())
        },
    );
}

/// Two-party realignment written as direct stride arithmetic.
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

/// Pair realignment of a three-qubit matrix written as six explicit loops.
fn brute_realign_pair(m: &ComplexMatrix, f: usize, g: usize) -> ComplexMatrix {
    let s = 3 - f - g;
    let (lo, hi) = if f < g { (f, g) } else { (g, f) };
    let mut out = ComplexMatrix::zeros(8, 8);
    for a in 0..2usize {
        for b in 0..2usize {
            for c in 0..2usize {
                for a2 in 0..2usize {
                    for b2 in 0..2usize {
                        for c2 in 0..2usize {
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

fn random_density(rng: &mut ChaCha8Rng, dims: Vec<usize>) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let mut g = ComplexMatrix::zeros(d, d);
    for r in 0..d {
        for c in 0..d {
            g[(r, c)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let gram = g.matmul(&g.adjoint());
    let trace = gram.trace().re;
    DensityMatrix::try_new(dims, gram.scale(Complex64::new(trace.recip(), 0.0)))
        .expect("Gram matrices are valid densities")
}

#[test]
fn acceptance_09_kernel_equivalence_on_random_states() {
    criterion(
        9,
        "realignment, trace norm, and involution agree with brute-force references \
         on 1200 random densities",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0901);
            for case in 0..600 {
                let rho = random_density(&mut rng, vec![2, 2]);
                let fast = rho.realign_bipartite().map_err(|e| e.to_string())?;
                let brute = brute_realign_bipartite(rho.matrix(), 2, 2);
                ensure(fast == brute, || {
                    format!("bipartite realignment mismatch on case {case}")
                })?;
                let back = fast.reshuffle((2, 2), (2, 2));
                ensure(&back == rho.matrix(), || {
                    format!("bipartite realignment is not an involution on case {case}")
                })?;
                let tn = rho.matrix().trace_norm(SPECTRAL_TOL).map_err(|e| e.to_string())?;
                let eigsum: f64 = rho
                    .matrix()
                    .hermitian_eigenvalues(HERMITICITY_TOL)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|e| e.abs())
                    .sum();
                ensure((tn - eigsum).abs() <= 1e-10, || {
                    format!("trace norm {tn:.17} vs eigenvalue sum {eigsum:.17} on case {case}")
                })?;
            }
            for case in 0..600 {
                let rho = random_density(&mut rng, vec![2, 2, 2]);
                for (f, g) in [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)] {
                    let fast = rho
                        .realign_pair((Party(f), Party(g)))
                        .map_err(|e| e.to_string())?;
                    let brute = brute_realign_pair(rho.matrix(), f, g);
                    ensure(fast == brute, || {
                        format!("pair ({f}, {g}) realignment mismatch on case {case}")
                    })?;
                }
                let tn = rho.matrix().trace_norm(SPECTRAL_TOL).map_err(|e| e.to_string())?;
                let eigsum: f64 = rho
                    .matrix()
                    .hermitian_eigenvalues(HERMITICITY_TOL)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|e| e.abs())
                    .sum();
                ensure((tn - eigsum).abs() <= 1e-10, || {
                    format!("trace norm {tn:.17} vs eigenvalue sum {eigsum:.17} on case {case}")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_10_channel_validity_on_random_inputs() {
    criterion(
        10,
        "the Unruh channel keeps 1000 random pure states valid at 11 angles each, \
         and is exactly the identity at r = 0",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1001);
            for case in 0..1000 {
                let amps: Vec<Complex64> = (0..8)
                    .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let state =
                    PureState::normalized(vec![2, 2, 2], amps).map_err(|e| e.to_string())?;
                for j in 0..11 {
                    let r = FRAC_PI_4 * (j as f64 / 10.0);
                    let accel = Accel::new(r).map_err(|e| e.to_string())?;
                    let map = if case % 2 == 0 {
                        AccelMap::inertial().with(Party(2), accel)
                    } else {
                        AccelMap::inertial().with(Party(1), accel).with(Party(2), accel)
                    };
                    let rho = apply_unruh(&state, &map).map_err(|e| e.to_string())?;
                    rho.validate().map_err(|e| {
                        format!("invalid channel output on case {case} at r = {r}: {e}")
                    })?;
                    if j == 0 {
                        let direct = DensityMatrix::from_pure(&state).map_err(|e| e.to_string())?;
                        ensure(rho.matrix() == direct.matrix(), || {
                            format!("r = 0 output differs from the projector on case {case}")
                        })?;
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_11_audit_report_flags_the_expected_forms() {
    criterion(
        11,
        "the audit passes the two faithful closed forms and freezes the four discrepancies",
        || {
            let report = compare_report(&one_observer(), &two_observers())
                .map_err(|e| e.to_string())?;
            // (form, expected max delta; None = must PASS at 1e-9)
            let expectations = [
                (ClosedForm::OneObsTriAccelPair, None),
                (ClosedForm::OneObsTriInertialPair, None),
                (ClosedForm::OneObsBipartite, Some(0.06298397555117913)),
                (ClosedForm::TwoObsBipartiteMixedPair, Some(0.06298397555117913)),
                (ClosedForm::TwoObsBipartiteAccelPair, Some(0.06415413449573526)),
                (ClosedForm::TwoObsTripartite, Some(0.10355339059327412)),
            ];
            for (form, expected) in expectations {
                let row = report
                    .rows
                    .iter()
                    .find(|row| row.form == form)
                    .ok_or_else(|| format!("no audit row for {form}"))?;
                match expected {
                    None => ensure(!row.discrepant, || {
                        format!("{form} should PASS, max delta {:.3e}", row.max_delta)
                    })?,
                    Some(frozen) => {
                        ensure(row.discrepant, || format!("{form} should be DISCREPANT"))?;
                        ensure((row.max_delta - frozen).abs() <= 1e-9, || {
                            format!(
                                "{form} max delta {:.17} deviates from frozen {frozen:.17}",
                                row.max_delta
                            )
                        })?;
                        ensure((row.argmax_r - FRAC_PI_4).abs() <= 1e-12, || {
                            format!("{form} peak at r = {:.17}, expected pi/4", row.argmax_r)
                        })?;
                    }
                }
            }
            Ok(())
        },
    );
}
