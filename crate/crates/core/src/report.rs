//! Verification outcomes shared by the exact and numeric checkers.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::scalar::{format_rational, Rational};
use crate::series::Biseries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Formula,
    Identity,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// First disagreeing coefficient in graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub m: usize,
    pub n: usize,
    pub lhs: String,
    pub rhs: String,
    pub difference: String,
}

impl Mismatch {
    pub fn total_degree(&self) -> usize {
        self.m + self.n
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericOutcome {
    pub max_rel_error: f64,
    pub worst_point: (f64, f64),
    pub tolerance: f64,
    pub points: usize,
    /// Series value and integral value at the worst point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst_values: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub start_level: u32,
    pub max_level: u32,
    pub tol: f64,
    /// Deepest level reached over all points.
    pub levels_used: u32,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Settings {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<String>,
    /// `as-printed` or `overlay` for catalog checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureSettings>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub target: TargetKind,
    pub id: String,
    pub mode: CheckMode,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeric: Option<NumericOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub settings: Settings,
    pub duration_ms: f64,
}

impl VerificationReport {
    /// Exact comparison of two triangles of equal degree.
    pub fn exact(target: TargetKind, id: &str, lhs: &Biseries<Rational>, rhs: &Biseries<Rational>, settings: Settings, started: Instant) -> Self {
        let mismatch = lhs.first_mismatch(rhs).map(|(m, n)| {
            let a = lhs.get(m, n);
            let b = rhs.get(m, n);
            Mismatch {
                m,
                n,
                lhs: format_rational(&a),
                rhs: format_rational(&b),
                difference: format_rational(&(a - b)),
            }
        });
        VerificationReport {
            target,
            id: id.to_string(),
            mode: CheckMode::Exact,
            status: if mismatch.is_none() { Status::Pass } else { Status::Fail },
            mismatch,
            numeric: None,
            error: None,
            settings,
            duration_ms: elapsed_ms(started),
        }
    }

    pub fn numeric(target: TargetKind, id: &str, outcome: NumericOutcome, settings: Settings, started: Instant) -> Self {
        let status = if outcome.max_rel_error < outcome.tolerance { Status::Pass } else { Status::Fail };
        VerificationReport {
            target,
            id: id.to_string(),
            mode: CheckMode::Numeric,
            status,
            mismatch: None,
            numeric: Some(outcome),
            error: None,
            settings,
            duration_ms: elapsed_ms(started),
        }
    }

    pub fn failed(target: TargetKind, id: &str, mode: CheckMode, err: &Error, settings: Settings, started: Instant) -> Self {
        VerificationReport {
            target,
            id: id.to_string(),
            mode,
            status: Status::Error,
            mismatch: None,
            numeric: None,
            error: Some(err.to_string()),
            settings,
            duration_ms: elapsed_ms(started),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        let variant = self.settings.variant.as_deref().map(|v| format!(" [{v}]")).unwrap_or_default();
        let detail = if let Some(m) = &self.mismatch {
            format!(" first mismatch at (m, n) = ({}, {}): lhs {} rhs {}", m.m, m.n, m.lhs, m.rhs)
        } else if let Some(n) = &self.numeric {
            format!(
                " max rel err {:.3e} at ({}, {}), tol {:e}",
                n.max_rel_error, n.worst_point.0, n.worst_point.1, n.tolerance
            )
        } else if let Some(e) = &self.error {
            format!(" {e}")
        } else {
            String::new()
        };
        let target = match self.target {
            TargetKind::Formula => "formula",
            TargetKind::Identity => "identity",
            TargetKind::Integral => "integral",
        };
        format!("{target} {}{variant}: {status}{detail}", self.id)
    }
}

pub(crate) fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}

/// Orders dotted ids numerically: `2.9 < 2.10 < 2.36`.
pub fn id_key(id: &str) -> Vec<u64> {
    id.split('.').map(|p| p.parse().unwrap_or(u64::MAX)).collect()
}

/// Sorts reports by target kind, then id, then variant.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| {
        (a.target, id_key(&a.id), &a.settings.variant).cmp(&(b.target, id_key(&b.id), &b.settings.variant))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn exact_report_carries_witness() {
        let a = Biseries::from_fn(3, |m, n| ratio((m + n) as i64, 1));
        let mut b = a.clone();
        b.set(1, 1, ratio(7, 3));
        let r = VerificationReport::exact(TargetKind::Formula, "x", &a, &b, Settings::default(), Instant::now());
        assert_eq!(r.status, Status::Fail);
        let m = r.mismatch.as_ref().unwrap();
        assert_eq!((m.m, m.n, m.lhs.as_str(), m.rhs.as_str(), m.difference.as_str()), (1, 1, "2", "7/3", "-1/3"));
        let text = r.to_json_line();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        let pass = VerificationReport::exact(TargetKind::Identity, "y", &a, &a, Settings::default(), Instant::now());
        assert!(pass.passed() && pass.mismatch.is_none());
    }

    #[test]
    fn numeric_report_round_trips() {
        let out = NumericOutcome {
            max_rel_error: 1.234_567_890_123_4e-9,
            worst_point: (0.05, 0.35),
            tolerance: 1e-8,
            points: 9,
            worst_values: Some((1.1, 1.1000000001)),
        };
        let settings = Settings {
            quadrature: Some(QuadratureSettings { start_level: 6, max_level: 12, tol: 1e-10, levels_used: 9 }),
            ..Default::default()
        };
        let r = VerificationReport::numeric(TargetKind::Integral, "4.1", out, settings, Instant::now());
        assert!(r.passed());
        let back: VerificationReport = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn ids_sort_numerically() {
        let mut ids = vec!["2.10", "2.9", "2.36", "2.4"];
        ids.sort_by_key(|s| id_key(s));
        assert_eq!(ids, vec!["2.4", "2.9", "2.10", "2.36"]);
    }
}
