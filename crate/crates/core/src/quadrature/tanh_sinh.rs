//! Double-exponential quadrature on (0,1) and its tensor square.
//!
//! The map is `u = 1 / (1 + exp(-pi sinh t))`, so `1 - u` is available
//! without cancellation and endpoint singularities `u^(a-1)` are
//! handled in log space.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `|pi sinh t|` kept; `exp(-700)` is still a normal double.
const MAX_EXPONENT: f64 = 700.0;
/// 1D weights below this fraction of the largest one are dropped.
const PRUNE: f64 = 1e-22;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub start_level: u32,
    pub max_level: u32,
    /// Target for the successive-level relative change.
    pub tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { start_level: 6, max_level: 12, tol: 1e-10 }
    }
}

impl QuadratureSpec {
    /// Step size at a level; level 3 is the unit step.
    pub fn step(level: u32) -> f64 {
        8.0 / f64::powi(2.0, level as i32)
    }

    fn validate(&self) -> Result<()> {
        if self.start_level > self.max_level || self.max_level > 30 || self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Parse(format!("invalid quadrature spec {self:?}")));
        }
        Ok(())
    }
}

/// A point in (0,1) carried with its complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub u: f64,
    /// `1 - u`, computed directly.
    pub v: f64,
}

impl Point {
    pub fn new(u: f64) -> Self {
        Point { u, v: 1.0 - u }
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    p: Point,
    ln_u: f64,
    ln_v: f64,
    /// `ln(du/dt)`.
    ln_jac: f64,
}

fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

fn node(t: f64) -> Node {
    let s = PI * t.sinh();
    let ln_u = -softplus(-s);
    let ln_v = -softplus(s);
    Node {
        p: Point { u: ln_u.exp(), v: ln_v.exp() },
        ln_u,
        ln_v,
        ln_jac: (PI * t.cosh()).ln() + ln_u + ln_v,
    }
}

fn t_max() -> f64 {
    (MAX_EXPONENT / PI).asinh()
}

/// Abscissae first used at `level`: all of them at the start level,
/// the odd multiples of the step afterwards.
fn new_nodes(level: u32, first: bool) -> Vec<Node> {
    let h = QuadratureSpec::step(level);
    let k_max = (t_max() / h).floor() as i64;
    (-k_max..=k_max)
        .filter(|k| first || k.rem_euclid(2) == 1)
        .map(|k| node(k as f64 * h))
        .collect()
}

/// An integrand on (0,1)^dim split into its endpoint part and the rest.
pub trait Integrand: Sync {
    fn dim(&self) -> usize;

    /// `(a-1) ln u + (b-1) ln(1-u)` for integration variable `k`.
    fn log_endpoint(&self, k: usize, ln_u: f64, ln_v: f64) -> f64;

    /// The remaining factors at a point of the cube.
    fn rest(&self, pts: &[Point]) -> Result<f64>;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadDiagnostics {
    pub levels_used: u32,
    /// Final `|I_L - I_{L-1}| / |I_L|`.
    pub estimate: f64,
    /// One estimate per refinement, in level order.
    pub history: Vec<f64>,
    pub evaluations: usize,
}

impl QuadDiagnostics {
    /// Estimates never grow once they have dropped below `threshold`.
    pub fn monotone_below(&self, threshold: f64) -> bool {
        let tail: Vec<f64> = self.history.iter().copied().skip_while(|e| *e >= threshold).collect();
        tail.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Weighted 1D nodes of one integration variable, pruned.
struct Axis {
    nodes: Vec<(Point, f64)>,
    peak: f64,
}

impl Axis {
    fn extend<F: Integrand + ?Sized>(&mut self, f: &F, k: usize, fresh: &[Node]) -> Vec<(Point, f64)> {
        let weighted: Vec<(Point, f64)> = fresh
            .iter()
            .map(|n| (n.p, (n.ln_jac + f.log_endpoint(k, n.ln_u, n.ln_v)).exp()))
            .collect();
        self.peak = weighted.iter().map(|(_, w)| *w).fold(self.peak, f64::max);
        let kept: Vec<(Point, f64)> =
            weighted.into_iter().filter(|(_, w)| w.is_finite() && *w >= PRUNE * self.peak).collect();
        self.nodes.extend(&kept);
        kept
    }
}

/// Integrates over (0,1) or (0,1)^2, refining until the relative change
/// between levels drops below `spec.tol`.
pub fn integrate<F: Integrand + ?Sized>(f: &F, spec: &QuadratureSpec) -> Result<(f64, QuadDiagnostics)> {
    spec.validate()?;
    let dim = f.dim();
    if dim != 1 && dim != 2 {
        return Err(Error::Parse(format!("unsupported dimension {dim}")));
    }
    let mut axes: Vec<Axis> = (0..dim).map(|_| Axis { nodes: Vec::new(), peak: 0.0 }).collect();
    let mut raw = 0.0;
    let mut previous: Option<f64> = None;
    let mut diag = QuadDiagnostics { levels_used: spec.start_level, estimate: f64::INFINITY, history: Vec::new(), evaluations: 0 };
    for level in spec.start_level..=spec.max_level {
        let fresh = new_nodes(level, level == spec.start_level);
        if dim == 1 {
            let added = axes[0].extend(f, 0, &fresh);
            let parts: Result<Vec<f64>> = added.par_iter().map(|(p, w)| Ok(w * f.rest(&[*p])?)).collect();
            raw += parts?.iter().sum::<f64>();
            diag.evaluations += added.len();
        } else {
            let old_x = axes[0].nodes.clone();
            let new_x = axes[0].extend(f, 0, &fresh);
            let new_y = axes[1].extend(f, 1, &fresh);
            let all_y = axes[1].nodes.clone();
            // New rows against every column, then old rows against new columns.
            let rows: Vec<(&(Point, f64), &[(Point, f64)])> = new_x
                .iter()
                .map(|r| (r, all_y.as_slice()))
                .chain(old_x.iter().map(|r| (r, new_y.as_slice())))
                .collect();
            let parts: Result<Vec<f64>> = rows
                .par_iter()
                .map(|((px, wx), cols)| {
                    let mut s = 0.0;
                    for (py, wy) in cols.iter() {
                        s += wx * wy * f.rest(&[*px, *py])?;
                    }
                    Ok(s)
                })
                .collect();
            raw += parts?.iter().sum::<f64>();
            diag.evaluations += new_x.len() * all_y.len() + old_x.len() * new_y.len();
        }
        let value = raw * QuadratureSpec::step(level).powi(dim as i32);
        if !value.is_finite() {
            return Err(Error::NonConvergence { level, estimate: f64::INFINITY });
        }
        diag.levels_used = level;
        if let Some(prev) = previous {
            let est = if value == 0.0 { (value - prev).abs() } else { ((value - prev) / value).abs() };
            diag.history.push(est);
            diag.estimate = est;
            if est < spec.tol {
                return Ok((value, diag));
            }
        }
        previous = Some(value);
    }
    Err(Error::NonConvergence { level: spec.max_level, estimate: diag.estimate })
}

/// `u^(a-1) (1-u)^(b-1)` on (0,1).
pub struct BetaKernel {
    pub a: f64,
    pub b: f64,
}

impl Integrand for BetaKernel {
    fn dim(&self) -> usize {
        1
    }

    fn log_endpoint(&self, _k: usize, ln_u: f64, ln_v: f64) -> f64 {
        (self.a - 1.0) * ln_u + (self.b - 1.0) * ln_v
    }

    fn rest(&self, _pts: &[Point]) -> Result<f64> {
        Ok(1.0)
    }
}

/// `Gamma(a) Gamma(b) / Gamma(a + b)` for positive arguments.
pub fn beta_fn(a: f64, b: f64) -> f64 {
    use statrs::function::gamma::ln_gamma;
    (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_are_nested_and_symmetric() {
        let coarse: Vec<Point> = new_nodes(4, true).iter().map(|n| n.p).collect();
        let fine: Vec<Point> = new_nodes(5, false).iter().map(|n| n.p).collect();
        assert_eq!(coarse.len() % 2, 1);
        assert!(fine.iter().all(|u| !coarse.contains(u)));
        for n in new_nodes(4, true) {
            assert!(n.p.u > 0.0 && n.p.v > 0.0);
            assert!((n.p.u + n.p.v - 1.0).abs() < 1e-15);
        }
        let mid = &new_nodes(4, true)[coarse.len() / 2];
        assert_eq!(mid.p, Point::new(0.5));
    }

    #[test]
    fn beta_suite() {
        let vals = [0.25, 0.5, 1.0, 1.5, 2.5];
        let spec = QuadratureSpec { tol: 1e-13, ..Default::default() };
        for a in vals {
            for b in vals {
                let (v, d) = integrate(&BetaKernel { a, b }, &spec).unwrap();
                let exact = beta_fn(a, b);
                assert!(((v - exact) / exact).abs() < 1e-12, "B({a},{b}) = {v} vs {exact}");
                assert!(d.monotone_below(1e-4), "{:?}", d.history);
            }
        }
    }

    struct Square;
    impl Integrand for Square {
        fn dim(&self) -> usize {
            2
        }
        fn log_endpoint(&self, k: usize, ln_u: f64, _ln_v: f64) -> f64 {
            if k == 0 { -0.5 * ln_u } else { 0.0 }
        }
        fn rest(&self, p: &[Point]) -> Result<f64> {
            Ok((p[0].u * p[1].u).exp())
        }
    }

    #[test]
    fn tensor_product_matches_series() {
        // Integral of u^(-1/2) exp(u w) = sum_k B(k + 1/2, 1) / (k + 1)!.
        let (v, _) = integrate(&Square, &QuadratureSpec::default()).unwrap();
        let mut exact = 0.0;
        let mut fact = 1.0;
        for k in 0..30 {
            fact *= (k + 1) as f64;
            exact += 1.0 / ((k as f64 + 0.5) * fact);
        }
        assert!(((v - exact) / exact).abs() < 1e-11, "{v} vs {exact}");
    }

    #[test]
    fn max_level_is_reported() {
        let spec = QuadratureSpec { start_level: 2, max_level: 3, tol: 1e-15 };
        let err = integrate(&BetaKernel { a: 0.25, b: 0.25 }, &spec).unwrap_err();
        assert!(matches!(err, Error::NonConvergence { level: 3, .. }));
        assert!(integrate(&BetaKernel { a: 1.0, b: 1.0 }, &QuadratureSpec { start_level: 5, max_level: 4, tol: 1e-3 }).is_err());
    }
}
