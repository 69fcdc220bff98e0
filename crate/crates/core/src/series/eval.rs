//! Floating-point summation of the defining series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Symbol;
use crate::series::kinds::{FunctionRef, Run};

/// Default relative tolerance used when callers have no preference.
pub const DEFAULT_TOL: f64 = 1e-16;
/// Default cap on the number of diagonals (or terms) summed.
pub const DEFAULT_MAX_DIAGONAL: usize = 4000;

/// Number of consecutive negligible diagonals required to stop.
const QUIET_RUN: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesDiagnostics {
    /// Highest total degree (or term index) included in the sum.
    pub diagonals: usize,
    /// Sum of absolute values of the last diagonal's terms.
    pub last_magnitude: f64,
}

/// Per-kind multiplicative steps of the coefficient recurrence.
struct Recurrence {
    num: Vec<(f64, Run)>,
    den: Vec<(f64, Run)>,
    single: bool,
}

impl Recurrence {
    fn new(f: &FunctionRef) -> Self {
        let shape = f.kind().shape();
        let value = |sym: Symbol| {
            f.float_params().into_iter().find(|(s, _)| *s == sym).map(|(_, v)| v).expect("bound")
        };
        Recurrence {
            num: shape.numerator.iter().map(|(s, r)| (value(*s), *r)).collect(),
            den: shape.denominator.iter().map(|(s, r)| (value(*s), *r)).collect(),
            single: f.kind().is_single_variable(),
        }
    }

    /// `c(m, n+1) / c(m, n)`.
    fn y_step(&self, m: usize, n: usize) -> Result<f64> {
        if self.single {
            return Ok(0.0);
        }
        self.step(|run| match run {
            Run::M => None,
            Run::N => Some(n),
            Run::Sum => Some(m + n),
        }, n)
    }

    /// `c(m+1, n) / c(m, n)`.
    fn x_step(&self, m: usize, n: usize) -> Result<f64> {
        self.step(|run| match run {
            Run::M => Some(m),
            Run::N => None,
            Run::Sum => Some(m + n),
        }, m)
    }

    fn step(&self, shift: impl Fn(Run) -> Option<usize>, own: usize) -> Result<f64> {
        let mut r = 1.0 / (own as f64 + 1.0);
        for (a, run) in &self.num {
            if let Some(k) = shift(*run) {
                r *= a + k as f64;
            }
        }
        for (b, run) in &self.den {
            if let Some(k) = shift(*run) {
                let d = b + k as f64;
                if d == 0.0 {
                    return Err(Error::Pole(format!("denominator parameter {b} + {k} vanishes")));
                }
                r /= d;
            }
        }
        Ok(r)
    }
}

/// Sums the double series in order of increasing total degree.
///
/// Stops once three consecutive diagonals each contribute less than
/// `tol * |partial sum|`.
pub fn eval_double_series(
    f: &FunctionRef,
    x: f64,
    y: f64,
    tol: f64,
    max_diagonal: usize,
) -> Result<(f64, SeriesDiagnostics)> {
    let kind = f.kind();
    if !kind.in_domain(x, y) {
        return Err(Error::Domain { kind: kind.to_string(), x, y });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
    }
    let rec = Recurrence::new(f);
    let y = if kind.is_single_variable() { 0.0 } else { y };

    // coeffs[m] = c(m, k - m) for the current diagonal k.
    let mut coeffs = vec![1.0];
    let mut xp = vec![1.0];
    let mut yp = vec![1.0];
    let mut sum = 1.0;
    let mut quiet = 0;
    let mut k = 0;
    let mut last = 1.0;
    while quiet < QUIET_RUN {
        if k >= max_diagonal {
            return Err(Error::NoConvergence { limit: max_diagonal, unit: "diagonals" });
        }
        k += 1;
        let mut next = Vec::with_capacity(k + 1);
        for (m, c) in coeffs.iter().enumerate() {
            next.push(if *c == 0.0 { 0.0 } else { c * rec.y_step(m, k - 1 - m)? });
        }
        let edge = coeffs[k - 1];
        next.push(if edge == 0.0 { 0.0 } else { edge * rec.x_step(k - 1, 0)? });
        coeffs = next;
        xp.push(xp[k - 1] * x);
        yp.push(yp[k - 1] * y);

        let mut diag = 0.0;
        let mut magnitude = 0.0;
        for (m, c) in coeffs.iter().enumerate() {
            let t = c * xp[m] * yp[k - m];
            diag += t;
            magnitude += t.abs();
        }
        if !diag.is_finite() || !magnitude.is_finite() {
            return Err(Error::NoConvergence { limit: k, unit: "diagonals (overflow)" });
        }
        sum += diag;
        last = magnitude;
        if magnitude <= tol * sum.abs() {
            quiet += 1;
        } else {
            quiet = 0;
        }
    }
    Ok((sum, SeriesDiagnostics { diagonals: k, last_magnitude: last }))
}

/// Term-recurrence summation of a single-variable series with the same
/// three-consecutive-terms stopping rule.
pub fn eval_single_series(f: &FunctionRef, x: f64, tol: f64, max_terms: usize) -> Result<(f64, SeriesDiagnostics)> {
    let kind = f.kind();
    if !kind.is_single_variable() {
        return Err(Error::Signature {
            kind: kind.to_string(),
            detail: "not a single-variable function".into(),
        });
    }
    if !kind.in_domain(x, 0.0) {
        return Err(Error::Domain { kind: kind.to_string(), x, y: 0.0 });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Parse(format!("tolerance must be positive, got {tol}")));
    }
    let rec = Recurrence::new(f);
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut quiet = 0;
    let mut m = 0;
    while quiet < QUIET_RUN {
        if m >= max_terms {
            return Err(Error::NoConvergence { limit: max_terms, unit: "terms" });
        }
        term *= rec.x_step(m, 0)? * x;
        m += 1;
        if !term.is_finite() {
            return Err(Error::NoConvergence { limit: m, unit: "terms (overflow)" });
        }
        sum += term;
        if term.abs() <= tol * sum.abs() {
            quiet += 1;
        } else {
            quiet = 0;
        }
    }
    Ok((sum, SeriesDiagnostics { diagonals: m, last_magnitude: term.abs() }))
}

/// Dispatches to the single- or double-series evaluator.
pub fn eval_function(f: &FunctionRef, x: f64, y: f64, tol: f64) -> Result<f64> {
    if f.kind().is_single_variable() {
        eval_single_series(f, x, tol, DEFAULT_MAX_DIAGONAL).map(|r| r.0)
    } else {
        eval_double_series(f, x, y, tol, DEFAULT_MAX_DIAGONAL).map(|r| r.0)
    }
}
