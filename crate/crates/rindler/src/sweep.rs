//! Deterministic parameter sweeps over the Unruh mixing angle, and the
//! audit report that compares the numerically computed quantities against
//! the published closed forms.
//!
//! A sweep walks `r` over an inclusive uniform grid on `[0, pi/4]`
//! (`r_k = (pi/4) * k / (grid - 1)`, so both endpoints are hit exactly),
//! builds the GHZ state, pushes it through the Unruh channel for the chosen
//! scenario, and records every quantifier per grid point. The pipeline is
//! pure floating-point arithmetic with no randomness, so reruns are
//! byte-identical.
//!
//! CSV output prints every value with 17 significant digits, enough for a
//! bit-exact `f64` round trip; undefined cells (a closed form that does not
//! apply to the scenario) stay empty.

use std::f64::consts::FRAC_PI_4;
use std::io;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::measures::{pi_tangle, q_bipartite, q_tripartite};
use crate::reference::ClosedForm;
use crate::state::{DensityMatrix, Party, PureState};
use crate::unruh::{apply_unruh, Accel, AccelMap};

/// Deviations up to this are reported PASS in the closed-form audit;
/// anything larger is flagged DISCREPANT.
pub const REPORT_PASS_TOL: f64 = 1e-9;

/// Which observers accelerate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    /// Only party C accelerates; A and B stay inertial.
    OneObserver,
    /// Parties B and C accelerate with equal mixing angles.
    TwoObservers,
    /// Parties B and C accelerate with independently chosen fixed angles;
    /// produces a single record instead of a grid.
    Custom { rb: f64, rc: f64 },
}

/// Sweep parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub scenario: Scenario,
    /// Number of grid points, endpoints included. Ignored by
    /// [`Scenario::Custom`].
    pub grid: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self { scenario: Scenario::OneObserver, grid: 201 }
    }
}

/// Every quantity computed at one grid point.
///
/// `q_tri_xy` is the three-party realignment quantity with pair `xy`
/// realigned, `q_bi_xy` the two-party one on the marginal of `xy`, `pi` the
/// pi-tangle, and `na_bc`/`nb_ac`/`nc_ab` the one-tangles (negativity of
/// one party against the other two). `cf_*` columns carry the closed forms
/// that apply to the scenario and `d_*` the absolute deviation of the
/// matching numeric column; both stay empty otherwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    /// Common mixing angle of the grid; absent for custom angle pairs.
    pub r: Option<f64>,
    pub rb: f64,
    pub rc: f64,
    pub q_tri_bc: f64,
    pub q_tri_ac: f64,
    pub q_tri_ab: f64,
    pub q_bi_ab: f64,
    pub q_bi_ac: f64,
    pub q_bi_bc: f64,
    pub pi: f64,
    pub na_bc: f64,
    pub nb_ac: f64,
    pub nc_ab: f64,
    pub cf_one_bi: Option<f64>,
    pub cf_one_tri_inertial: Option<f64>,
    pub cf_one_tri_accel: Option<f64>,
    pub cf_two_bi_accel: Option<f64>,
    pub cf_two_bi_mixed: Option<f64>,
    pub cf_two_tri: Option<f64>,
    pub d_one_bi: Option<f64>,
    pub d_one_tri_inertial: Option<f64>,
    pub d_one_tri_accel: Option<f64>,
    pub d_two_bi_accel: Option<f64>,
    pub d_two_bi_mixed: Option<f64>,
    pub d_two_tri: Option<f64>,
}

/// Column order of [`write_csv`].
pub const CSV_HEADER: &str = "r,rb,rc,q_tri_bc,q_tri_ac,q_tri_ab,q_bi_ab,q_bi_ac,q_bi_bc,\
pi,na_bc,nb_ac,nc_ab,cf_one_bi,cf_one_tri_inertial,cf_one_tri_accel,cf_two_bi_accel,\
cf_two_bi_mixed,cf_two_tri,d_one_bi,d_one_tri_inertial,d_one_tri_accel,d_two_bi_accel,\
d_two_bi_mixed,d_two_tri";

const ONE_OBSERVER_FORMS: &[ClosedForm] = &[
    ClosedForm::OneObsBipartite,
    ClosedForm::OneObsTriInertialPair,
    ClosedForm::OneObsTriAccelPair,
];

const TWO_OBSERVER_FORMS: &[ClosedForm] = &[
    ClosedForm::TwoObsBipartiteAccelPair,
    ClosedForm::TwoObsBipartiteMixedPair,
    ClosedForm::TwoObsTripartite,
];

impl SweepRecord {
    /// Looks up a numeric column by its CSV name.
    pub fn numeric_value(&self, column: &str) -> Option<f64> {
        Some(match column {
            "q_tri_bc" => self.q_tri_bc,
            "q_tri_ac" => self.q_tri_ac,
            "q_tri_ab" => self.q_tri_ab,
            "q_bi_ab" => self.q_bi_ab,
            "q_bi_ac" => self.q_bi_ac,
            "q_bi_bc" => self.q_bi_bc,
            "pi" => self.pi,
            "na_bc" => self.na_bc,
            "nb_ac" => self.nb_ac,
            "nc_ab" => self.nc_ab,
            _ => return None,
        })
    }

    /// The recorded deviation for one closed form, if the sweep carried it.
    pub fn delta(&self, form: ClosedForm) -> Option<f64> {
        match form {
            ClosedForm::OneObsBipartite => self.d_one_bi,
            ClosedForm::OneObsTriInertialPair => self.d_one_tri_inertial,
            ClosedForm::OneObsTriAccelPair => self.d_one_tri_accel,
            ClosedForm::TwoObsBipartiteAccelPair => self.d_two_bi_accel,
            ClosedForm::TwoObsBipartiteMixedPair => self.d_two_bi_mixed,
            ClosedForm::TwoObsTripartite => self.d_two_tri,
        }
    }
}

/// Runs the sweep described by `config`. Standard scenarios return one
/// record per grid point; custom angle pairs return a single record.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    match config.scenario {
        Scenario::Custom { rb, rc } => {
            let accel_b = Accel::new(rb)
                .map_err(|e| Error::Config(format!("custom scenario, rb: {e}")))?;
            let accel_c = Accel::new(rc)
                .map_err(|e| Error::Config(format!("custom scenario, rc: {e}")))?;
            let map = AccelMap::inertial().with(Party(1), accel_b).with(Party(2), accel_c);
            Ok(vec![grid_point(&map, None, rb, rc, &[])?])
        }
        scenario => {
            if config.grid < 2 {
                return Err(Error::Config(format!(
                    "grid needs at least 2 points, got {}",
                    config.grid
                )));
            }
            let mut records = Vec::with_capacity(config.grid);
            for k in 0..config.grid {
                let r = FRAC_PI_4 * (k as f64 / (config.grid - 1) as f64);
                let accel = Accel::new(r)?;
                let (map, rb, forms) = match scenario {
                    Scenario::OneObserver => (
                        AccelMap::inertial().with(Party(2), accel),
                        0.0,
                        ONE_OBSERVER_FORMS,
                    ),
                    Scenario::TwoObservers => (
                        AccelMap::inertial().with(Party(1), accel).with(Party(2), accel),
                        r,
                        TWO_OBSERVER_FORMS,
                    ),
                    Scenario::Custom { .. } => unreachable!("handled above"),
                };
                records.push(grid_point(&map, Some(r), rb, r, forms)?);
            }
            Ok(records)
        }
    }
}

/// Computes every quantifier for one channel configuration.
fn grid_point(
    map: &AccelMap,
    r: Option<f64>,
    rb: f64,
    rc: f64,
    forms: &[ClosedForm],
) -> Result<SweepRecord> {
    let rho = apply_unruh(&PureState::ghz3(), map)?;
    let marginal = |spectator: usize| -> Result<DensityMatrix> {
        rho.partial_trace(&[Party(spectator)])
    };
    let breakdown = pi_tangle(&rho)?;
    let mut record = SweepRecord {
        r,
        rb,
        rc,
        q_tri_bc: q_tripartite(&rho, (Party(1), Party(2)))?,
        q_tri_ac: q_tripartite(&rho, (Party(0), Party(2)))?,
        q_tri_ab: q_tripartite(&rho, (Party(0), Party(1)))?,
        q_bi_ab: q_bipartite(&marginal(2)?)?,
        q_bi_ac: q_bipartite(&marginal(1)?)?,
        q_bi_bc: q_bipartite(&marginal(0)?)?,
        pi: breakdown.pi,
        na_bc: breakdown.one_tangles[0],
        nb_ac: breakdown.one_tangles[1],
        nc_ab: breakdown.one_tangles[2],
        cf_one_bi: None,
        cf_one_tri_inertial: None,
        cf_one_tri_accel: None,
        cf_two_bi_accel: None,
        cf_two_bi_mixed: None,
        cf_two_tri: None,
        d_one_bi: None,
        d_one_tri_inertial: None,
        d_one_tri_accel: None,
        d_two_bi_accel: None,
        d_two_bi_mixed: None,
        d_two_tri: None,
    };
    if let Some(angle) = r {
        for &form in forms {
            let cf = form.eval(angle);
            let numeric = record
                .numeric_value(form.numeric_column())
                .expect("closed forms map to numeric columns");
            let delta = (numeric - cf).abs();
            match form {
                ClosedForm::OneObsBipartite => {
                    record.cf_one_bi = Some(cf);
                    record.d_one_bi = Some(delta);
                }
                ClosedForm::OneObsTriInertialPair => {
                    record.cf_one_tri_inertial = Some(cf);
                    record.d_one_tri_inertial = Some(delta);
                }
                ClosedForm::OneObsTriAccelPair => {
                    record.cf_one_tri_accel = Some(cf);
                    record.d_one_tri_accel = Some(delta);
                }
                ClosedForm::TwoObsBipartiteAccelPair => {
                    record.cf_two_bi_accel = Some(cf);
                    record.d_two_bi_accel = Some(delta);
                }
                ClosedForm::TwoObsBipartiteMixedPair => {
                    record.cf_two_bi_mixed = Some(cf);
                    record.d_two_bi_mixed = Some(delta);
                }
                ClosedForm::TwoObsTripartite => {
                    record.cf_two_tri = Some(cf);
                    record.d_two_tri = Some(delta);
                }
            }
        }
    }
    Ok(record)
}

/// Formats a float with 17 significant digits (bit-exact round trip).
fn format_cell(x: f64) -> String {
    format!("{x:.16e}")
}

fn format_opt(x: Option<f64>) -> String {
    x.map(format_cell).unwrap_or_default()
}

/// Writes records as CSV with the [`CSV_HEADER`] column order.
pub fn write_csv<W: io::Write>(records: &[SweepRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for rec in records {
        let cells = [
            format_opt(rec.r),
            format_cell(rec.rb),
            format_cell(rec.rc),
            format_cell(rec.q_tri_bc),
            format_cell(rec.q_tri_ac),
            format_cell(rec.q_tri_ab),
            format_cell(rec.q_bi_ab),
            format_cell(rec.q_bi_ac),
            format_cell(rec.q_bi_bc),
            format_cell(rec.pi),
            format_cell(rec.na_bc),
            format_cell(rec.nb_ac),
            format_cell(rec.nc_ab),
            format_opt(rec.cf_one_bi),
            format_opt(rec.cf_one_tri_inertial),
            format_opt(rec.cf_one_tri_accel),
            format_opt(rec.cf_two_bi_accel),
            format_opt(rec.cf_two_bi_mixed),
            format_opt(rec.cf_two_tri),
            format_opt(rec.d_one_bi),
            format_opt(rec.d_one_tri_inertial),
            format_opt(rec.d_one_tri_accel),
            format_opt(rec.d_two_bi_accel),
            format_opt(rec.d_two_bi_mixed),
            format_opt(rec.d_two_tri),
        ];
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

/// Writes records as a pretty-printed JSON array.
pub fn write_json<W: io::Write>(records: &[SweepRecord], mut w: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, records).map_err(io::Error::from)?;
    writeln!(w)
}

fn serialize_form_label<S: Serializer>(form: &ClosedForm, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(form.label())
}

/// Audit result for one closed form.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    #[serde(serialize_with = "serialize_form_label")]
    pub form: ClosedForm,
    /// Numeric sweep column the form was compared against.
    pub numeric_column: &'static str,
    pub max_delta: f64,
    pub mean_delta: f64,
    /// Mixing angle where the deviation peaks.
    pub argmax_r: f64,
    /// True when `max_delta` exceeds [`REPORT_PASS_TOL`].
    pub discrepant: bool,
}

/// Full closed-form audit over both standard scenarios.
#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub pass_tol: f64,
    pub one_observer_points: usize,
    pub two_observer_points: usize,
    pub rows: Vec<ReportRow>,
}

impl CompareReport {
    /// True when every form stayed within tolerance.
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|row| !row.discrepant)
    }
}

impl std::fmt::Display for CompareReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "closed-form audit: {} one-observer / {} two-observer grid points, \
             pass tolerance {:.1e}",
            self.one_observer_points, self.two_observer_points, self.pass_tol
        )?;
        writeln!(
            f,
            "{:<17} {:<10} {:<11} {:<23} {:<9} max|delta|",
            "form", "column", "status", "mean|delta|", "argmax r"
        )?;
        for row in &self.rows {
            writeln!(
                f,
                "{:<17} {:<10} {:<11} {:<23.16e} {:<9.6} {:.16e}",
                row.form.label(),
                row.numeric_column,
                if row.discrepant { "DISCREPANT" } else { "PASS" },
                row.mean_delta,
                row.argmax_r,
                row.max_delta,
            )?;
        }
        Ok(())
    }
}

/// Builds the audit from one sweep per standard scenario. Every form is
/// scored against the scenario it describes; rows are flagged DISCREPANT
/// when the worst deviation exceeds [`REPORT_PASS_TOL`].
pub fn compare_report(
    one_observer: &[SweepRecord],
    two_observers: &[SweepRecord],
) -> Result<CompareReport> {
    if one_observer.is_empty() || two_observers.is_empty() {
        return Err(Error::EmptyInput("compare_report needs records for both scenarios"));
    }
    let mut rows = Vec::with_capacity(ClosedForm::ALL.len());
    for form in ClosedForm::ALL {
        let records = if form.two_observer() { two_observers } else { one_observer };
        let mut max_delta = f64::NEG_INFINITY;
        let mut argmax_r = f64::NAN;
        let mut sum = 0.0;
        let mut count = 0usize;
        for rec in records {
            let Some(delta) = rec.delta(form) else { continue };
            sum += delta;
            count += 1;
            if delta > max_delta {
                max_delta = delta;
                argmax_r = rec.r.unwrap_or(rec.rc);
            }
        }
        if count == 0 {
            return Err(Error::EmptyInput("sweep records carry no closed-form deltas"));
        }
        rows.push(ReportRow {
            form,
            numeric_column: form.numeric_column(),
            max_delta,
            mean_delta: sum / count as f64,
            argmax_r,
            discrepant: max_delta > REPORT_PASS_TOL,
        });
    }
    Ok(CompareReport {
        pass_tol: REPORT_PASS_TOL,
        one_observer_points: one_observer.len(),
        two_observer_points: two_observers.len(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "expected {b}, got {a} (delta {})", (a - b).abs());
    }

    #[test]
    fn one_observer_endpoints() {
        let config = SweepConfig { scenario: Scenario::OneObserver, grid: 2 };
        let records = run_sweep(&config).unwrap();
        assert_eq!(records.len(), 2);

        let start = &records[0];
        assert_eq!(start.r, Some(0.0));
        assert_eq!(start.rb, 0.0);
        assert_close(start.q_tri_bc, 1.0, 1e-12);
        assert_close(start.q_tri_ab, 1.0, 1e-12);
        assert_close(start.pi, 1.0, 1e-12);
        assert_close(start.q_bi_bc, 0.0, 1e-12);
        assert!(start.d_one_tri_accel.unwrap() < 1e-12);
        assert!(start.cf_two_tri.is_none());

        let end = &records[1];
        assert_eq!(end.r, Some(FRAC_PI_4));
        assert_close(end.q_tri_bc, (3.0 * 2.0f64.sqrt() - 2.0) / 4.0, 1e-12);
        assert_close(end.q_tri_ab, std::f64::consts::FRAC_1_SQRT_2, 1e-12);
        assert_close(end.q_bi_bc, (5.0f64 / 8.0).sqrt() - 1.0, 1e-12);
        assert_close(end.pi, 5.0 / 12.0, 1e-12);
        assert_close(end.na_bc, std::f64::consts::FRAC_1_SQRT_2, 1e-12);
        assert_close(end.nc_ab, 0.5, 1e-12);
        // The tripartite closed forms track the numerics; the bipartite one
        // deviates by a fixed offset at saturation.
        assert!(end.d_one_tri_accel.unwrap() < 1e-11);
        assert!(end.d_one_tri_inertial.unwrap() < 1e-11);
        assert_close(end.d_one_bi.unwrap(), 0.06298397555117913, 1e-11);
    }

    #[test]
    fn two_observer_endpoint_values() {
        let config = SweepConfig { scenario: Scenario::TwoObservers, grid: 2 };
        let records = run_sweep(&config).unwrap();
        let end = &records[1];
        assert_eq!(end.rb, FRAC_PI_4);
        assert_eq!(end.rc, FRAC_PI_4);
        assert_close(end.q_tri_bc, 0.25, 1e-12);
        let mixed_pair = (2.0f64.sqrt() + 26.0f64.sqrt()) / 8.0 - 0.5;
        assert_close(end.q_tri_ab, mixed_pair, 1e-12);
        assert_close(end.q_tri_ac, mixed_pair, 1e-12);
        assert_close(end.pi, (9.0 - 17.0f64.sqrt()) / 32.0, 1e-12);
        // The published pair-independent curve sits at sqrt(2)/4 here, far
        // from the doubly accelerated pair's 1/4.
        assert_close(end.d_two_tri.unwrap(), 2.0f64.sqrt() / 4.0 - 0.25, 1e-11);
        assert_close(end.d_two_bi_accel.unwrap(), 0.06415413449573526, 1e-11);
        assert!(end.cf_one_bi.is_none());
    }

    #[test]
    fn custom_scenario_yields_single_unaudited_record() {
        let config = SweepConfig {
            scenario: Scenario::Custom { rb: 0.3, rc: 0.6 },
            grid: 999,
        };
        let records = run_sweep(&config).unwrap();
        assert_eq!(records.len(), 1);
        let rec = &records[0];
        assert_eq!(rec.r, None);
        assert_eq!(rec.rb, 0.3);
        assert_eq!(rec.rc, 0.6);
        assert!(rec.cf_one_bi.is_none() && rec.d_two_tri.is_none());
        assert!(rec.q_tri_bc > 0.0 && rec.q_tri_bc < 1.0);
    }

    #[test]
    fn custom_scenario_rejects_out_of_range_angles() {
        let config = SweepConfig {
            scenario: Scenario::Custom { rb: 0.0, rc: FRAC_PI_4 + 1e-6 },
            grid: 10,
        };
        assert!(matches!(run_sweep(&config), Err(Error::Config(_))));
    }

    #[test]
    fn undersized_grid_is_rejected() {
        let config = SweepConfig { scenario: Scenario::OneObserver, grid: 1 };
        assert!(matches!(run_sweep(&config), Err(Error::Config(_))));
    }

    #[test]
    fn csv_round_trips_bit_exactly() {
        let config = SweepConfig { scenario: Scenario::TwoObservers, grid: 5 };
        let records = run_sweep(&config).unwrap();
        let mut buf = Vec::new();
        write_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(CSV_HEADER.split(',').count(), 25);
        for (line, rec) in lines.zip(&records) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells.len(), 25);
            let parsed: f64 = cells[0].parse().unwrap();
            assert_eq!(parsed.to_bits(), rec.r.unwrap().to_bits());
            let parsed: f64 = cells[3].parse().unwrap();
            assert_eq!(parsed.to_bits(), rec.q_tri_bc.to_bits());
            let parsed: f64 = cells[24].parse().unwrap();
            assert_eq!(parsed.to_bits(), rec.d_two_tri.unwrap().to_bits());
            // One-observer cells stay empty in a two-observer sweep.
            assert_eq!(cells[13], "");
        }
    }

    #[test]
    fn sweeps_are_deterministic() {
        let config = SweepConfig { scenario: Scenario::OneObserver, grid: 7 };
        let first = run_sweep(&config).unwrap();
        let second = run_sweep(&config).unwrap();
        assert_eq!(first, second);
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&first, &mut a).unwrap();
        write_csv(&second, &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn json_output_parses_back() {
        let config = SweepConfig { scenario: Scenario::OneObserver, grid: 3 };
        let records = run_sweep(&config).unwrap();
        let mut buf = Vec::new();
        write_json(&records, &mut buf).unwrap();
        let parsed: Vec<SweepRecord> = serde_json::from_slice(&buf).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn report_flags_the_expected_forms() {
        let one = run_sweep(&SweepConfig { scenario: Scenario::OneObserver, grid: 21 }).unwrap();
        let two = run_sweep(&SweepConfig { scenario: Scenario::TwoObservers, grid: 21 }).unwrap();
        let report = compare_report(&one, &two).unwrap();
        assert_eq!(report.rows.len(), 6);
        assert!(!report.all_pass());
        for row in &report.rows {
            match row.form {
                ClosedForm::OneObsTriInertialPair | ClosedForm::OneObsTriAccelPair => {
                    assert!(!row.discrepant, "{} should pass, max {}", row.form, row.max_delta);
                }
                _ => {
                    assert!(row.discrepant, "{} should be discrepant", row.form);
                    assert_close(row.argmax_r, FRAC_PI_4, 1e-12);
                }
            }
        }
        let text = report.to_string();
        assert!(text.contains("DISCREPANT"));
        assert!(text.contains("one_tri_accel"));

        assert!(matches!(compare_report(&[], &two), Err(Error::EmptyInput(_))));
    }
}
