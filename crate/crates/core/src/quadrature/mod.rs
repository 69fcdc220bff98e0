//! Euler-type integral representations evaluated by tanh-sinh
//! quadrature and compared with the series of their left sides.

pub mod reps;
pub mod tanh_sinh;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use reps::{integral_by_id, integral_catalog, Env, Ex, Factor, IntegralRep};
pub use tanh_sinh::{beta_fn, integrate, BetaKernel, Integrand, Point, QuadDiagnostics, QuadratureSpec};

use crate::error::Result;
use crate::params::{ParameterMap, Symbol};
use crate::report::{CheckMode, NumericOutcome, QuadratureSettings, Settings, TargetKind, VerificationReport};
use crate::series::Kind;

/// Tolerance for the left-side series evaluation.
const SERIES_TOL: f64 = 1e-15;

/// Value of one representation at one point.
pub fn eval_integral(rep: &IntegralRep, params: &ParameterMap, x: f64, y: f64, spec: &QuadratureSpec) -> Result<(f64, QuadDiagnostics)> {
    let integrand = rep.bind(params, x, y, spec.tol / 10.0)?;
    let pre = rep.prefactor(params)?;
    let (value, diag) = integrate(&integrand, spec)?;
    Ok((pre * value, diag))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointCheck {
    pub x: f64,
    pub y: f64,
    pub series: f64,
    pub integral: f64,
    pub rel_error: f64,
    pub quadrature: QuadDiagnostics,
}

/// Per-point detail behind a cross-check report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub report: VerificationReport,
    pub points: Vec<PointCheck>,
}

/// `n x n` grid on `[lo, hi]^2`.
pub fn square_grid(n: usize, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    let ticks: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
    ticks.iter().flat_map(|x| ticks.iter().map(move |y| (*x, *y))).collect()
}

/// The default cross-check grid: 3 x 3 on `[0.05, 0.35]^2`.
pub fn default_grid() -> Vec<(f64, f64)> {
    square_grid(3, 0.05, 0.35)
}

/// Diagonal of the default grid, for the base representations.
pub fn diagonal_points() -> Vec<(f64, f64)> {
    vec![(0.05, 0.05), (0.2, 0.2), (0.35, 0.35)]
}

fn point_check(rep: &IntegralRep, params: &ParameterMap, (x, y): (f64, f64), spec: &QuadratureSpec) -> Result<PointCheck> {
    let series = rep.lhs_value(params, x, y, SERIES_TOL)?;
    let (integral, quadrature) = eval_integral(rep, params, x, y, spec)?;
    let rel_error = ((integral - series) / series).abs();
    Ok(PointCheck { x, y, series, integral, rel_error, quadrature })
}

/// Compares a representation against its left side on a grid.
pub fn cross_check_rep(
    rep: &IntegralRep,
    params: &ParameterMap,
    grid: &[(f64, f64)],
    tol: f64,
    spec: &QuadratureSpec,
) -> Result<CrossCheck> {
    let started = Instant::now();
    let points: Vec<PointCheck> = grid.iter().map(|pt| point_check(rep, params, *pt, spec)).collect::<Result<_>>()?;
    let worst = points
        .iter()
        .max_by(|a, b| a.rel_error.total_cmp(&b.rel_error))
        .ok_or_else(|| crate::error::Error::Parse("empty grid".into()))?;
    let outcome = NumericOutcome {
        max_rel_error: worst.rel_error,
        worst_point: (worst.x, worst.y),
        tolerance: tol,
        points: points.len(),
        worst_values: Some((worst.series, worst.integral)),
    };
    let settings = Settings {
        variant: Some(variant_name(rep).to_string()),
        quadrature: Some(quadrature_settings(spec, &points)),
        ..Default::default()
    };
    let report = VerificationReport::numeric(TargetKind::Integral, &rep.id, outcome, settings, started);
    Ok(CrossCheck { report, points })
}

fn variant_name(rep: &IntegralRep) -> &'static str {
    if rep.note.is_some() {
        "corrected"
    } else {
        "as-printed"
    }
}

fn quadrature_settings(spec: &QuadratureSpec, points: &[PointCheck]) -> QuadratureSettings {
    QuadratureSettings {
        start_level: spec.start_level,
        max_level: spec.max_level,
        tol: spec.tol,
        levels_used: points.iter().map(|p| p.quadrature.levels_used).max().unwrap_or(spec.start_level),
    }
}

/// Cross-check by id; errors become `error` reports.
pub fn cross_check(id: &str, params: &ParameterMap, grid: &[(f64, f64)], tol: f64) -> Result<VerificationReport> {
    let rep = integral_by_id(id)?;
    cross_check_rep(rep, params, grid, tol, &QuadratureSpec::default()).map(|c| c.report)
}

/// Report for one representation, turning evaluation errors into
/// `error` reports.
pub fn check_or_report(rep: &IntegralRep, params: &ParameterMap, grid: &[(f64, f64)], tol: f64, spec: &QuadratureSpec) -> VerificationReport {
    let started = Instant::now();
    match cross_check_rep(rep, params, grid, tol, spec) {
        Ok(c) => c.report,
        Err(e) => {
            let settings = Settings { variant: Some(variant_name(rep).to_string()), ..Default::default() };
            VerificationReport::failed(TargetKind::Integral, &rep.id, CheckMode::Numeric, &e, settings, started)
        }
    }
}

/// Comparison tolerance for a representation: the base five are held to
/// 1e-8, the derived ones to 1e-7.
pub fn default_tolerance(id: &str) -> f64 {
    let k: u32 = id.strip_prefix("4.").and_then(|s| s.parse().ok()).unwrap_or(0);
    if (1..=5).contains(&k) {
        1e-8
    } else {
        1e-7
    }
}

/// Default grid for a representation.
pub fn default_points(id: &str) -> Vec<(f64, f64)> {
    if default_tolerance(id) < 1e-7 {
        diagonal_points()
    } else {
        default_grid()
    }
}

/// Corrected variants of representations that fail as printed.
pub fn integral_corrections() -> Vec<IntegralRep> {
    use reps::Factor::Hyper;
    let mut out = Vec::new();

    // Inner Phi2 lower parameter shifted by the two auxiliary parameters.
    let mut r = integral_by_id("4.14").expect("present").clone();
    for f in &mut r.factors {
        if let Hyper { function, .. } = f {
            if function.kind == Kind::Phi2 {
                function.params.insert(Symbol::Gamma, crate::expr::ParamExpr::parse("gamma - eps1 - eps2").expect("valid"));
            }
        }
    }
    r.note = Some("inner Phi2 lower parameter gamma - eps1 - eps2".into());
    out.push(r);

    // Inner 1F1 argument carries the factor eta.
    let mut r = integral_by_id("4.15").expect("present").clone();
    for f in &mut r.factors {
        if let Hyper { function, args } = f {
            if function.kind == Kind::Kummer1F1 {
                args[0] = Ex::Y * Ex::Eta / (Ex::X * Ex::Xi - Ex::One);
            }
        }
    }
    r.note = Some("inner 1F1 argument y eta / (x xi - 1)".into());
    out.push(r);
    out
}

/// Every as-printed representation, in parallel, sorted by id.
pub fn check_all(params_for: impl Fn(&str) -> ParameterMap + Sync, spec: &QuadratureSpec, with_corrections: bool) -> Vec<VerificationReport> {
    let mut reps: Vec<IntegralRep> = integral_catalog().to_vec();
    if with_corrections {
        reps.extend(integral_corrections());
    }
    let mut out: Vec<VerificationReport> = reps
        .par_iter()
        .map(|rep| check_or_report(rep, &params_for(&rep.id), &default_points(&rep.id), default_tolerance(&rep.id), spec))
        .collect();
    crate::report::sort_reports(&mut out);
    out
}
