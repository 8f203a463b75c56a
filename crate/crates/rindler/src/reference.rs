//! Published closed-form curves for the realignment quantity of the GHZ
//! state under the Unruh channel, as functions of the mixing angle `r`.
//!
//! These are the analytic predictions the sweep audits: each form names the
//! scenario (how many observers accelerate) and the cut it describes. The
//! audit recomputes the same quantities from the density matrix with the
//! singular-value kernel and reports the deviation per grid point; the
//! forms are transcribed here exactly as published, so a systematic
//! deviation indicts the transcription source, not the transcription.

/// One closed-form reference curve. `eval` returns the predicted
/// realignment quantity `Q` at mixing angle `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// Two-party marginal of the accelerated pair, one observer
    /// accelerated: `Q = (-2 + sqrt(3 + cos 4r)) / 4`.
    OneObsBipartite,
    /// Three-party quantity, realigning the inertial pair, one observer
    /// accelerated: `Q = cos r`.
    OneObsTriInertialPair,
    /// Three-party quantity, realigning a pair containing the accelerated
    /// party: `Q = (-2 + 4 cos r + sqrt(3 + cos 4r)) / 4`.
    OneObsTriAccelPair,
    /// Two-party marginal of the doubly accelerated pair, two observers
    /// accelerated: `Q = (-4 + cos^2 r sqrt(3 + cos 4r)
    /// + 2 sqrt(cos^4 r sin^4 r + (1 + sin^4 r)^2)) / 4`.
    TwoObsBipartiteAccelPair,
    /// Two-party marginal of a mixed inertial/accelerated pair, two
    /// observers accelerated; published identical to the one-observer
    /// bipartite curve.
    TwoObsBipartiteMixedPair,
    /// Three-party quantity, two observers accelerated (published as
    /// independent of which pair is realigned):
    /// `Q = (-2 + 4 cos^2 r + sqrt(3 + cos 4r)) / 4`.
    TwoObsTripartite,
}

impl ClosedForm {
    /// Every form, in report order.
    pub const ALL: [ClosedForm; 6] = [
        ClosedForm::OneObsBipartite,
        ClosedForm::OneObsTriInertialPair,
        ClosedForm::OneObsTriAccelPair,
        ClosedForm::TwoObsBipartiteAccelPair,
        ClosedForm::TwoObsBipartiteMixedPair,
        ClosedForm::TwoObsTripartite,
    ];

    /// Evaluates the curve at mixing angle `r`.
    pub fn eval(self, r: f64) -> f64 {
        let root = (3.0 + (4.0 * r).cos()).sqrt();
        match self {
            ClosedForm::OneObsBipartite | ClosedForm::TwoObsBipartiteMixedPair => {
                (-2.0 + root) / 4.0
            }
            ClosedForm::OneObsTriInertialPair => r.cos(),
            ClosedForm::OneObsTriAccelPair => (-2.0 + 4.0 * r.cos() + root) / 4.0,
            ClosedForm::TwoObsBipartiteAccelPair => {
                let c2 = r.cos().powi(2);
                let s4 = r.sin().powi(4);
                let c4 = c2 * c2;
                (-4.0 + c2 * root + 2.0 * (c4 * s4 + (1.0 + s4).powi(2)).sqrt()) / 4.0
            }
            ClosedForm::TwoObsTripartite => (-2.0 + 4.0 * r.cos().powi(2) + root) / 4.0,
        }
    }

    /// Short machine-friendly name used in CSV headers and reports.
    pub fn label(self) -> &'static str {
        match self {
            ClosedForm::OneObsBipartite => "one_bi",
            ClosedForm::OneObsTriInertialPair => "one_tri_inertial",
            ClosedForm::OneObsTriAccelPair => "one_tri_accel",
            ClosedForm::TwoObsBipartiteAccelPair => "two_bi_accel",
            ClosedForm::TwoObsBipartiteMixedPair => "two_bi_mixed",
            ClosedForm::TwoObsTripartite => "two_tri",
        }
    }

    /// Name of the numerically computed sweep column this form predicts.
    pub fn numeric_column(self) -> &'static str {
        match self {
            ClosedForm::OneObsBipartite => "q_bi_bc",
            ClosedForm::OneObsTriInertialPair => "q_tri_ab",
            ClosedForm::OneObsTriAccelPair => "q_tri_bc",
            ClosedForm::TwoObsBipartiteAccelPair => "q_bi_bc",
            ClosedForm::TwoObsBipartiteMixedPair => "q_bi_ab",
            ClosedForm::TwoObsTripartite => "q_tri_bc",
        }
    }

    /// True for the curves that describe the two-observer scenario.
    pub fn two_observer(self) -> bool {
        matches!(
            self,
            ClosedForm::TwoObsBipartiteAccelPair
                | ClosedForm::TwoObsBipartiteMixedPair
                | ClosedForm::TwoObsTripartite
        )
    }
}

impl std::fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}
