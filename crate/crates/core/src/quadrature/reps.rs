//! Euler-type integral representations as products of factors.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use statrs::function::gamma::ln_gamma;

use super::tanh_sinh::Point;
use crate::error::{Error, Result};
use crate::expr::{FunctionSpec, ParamExpr};
use crate::params::{ParameterMap, Symbol};
use crate::scalar::{Rational, Scalar};
use crate::series::{eval_function, FunctionRef, Kind};

/// Rational expression in the variables `x, y` and the integration
/// variables `xi, eta`.
#[derive(Debug, Clone, PartialEq)]
pub enum Ex {
    One,
    X,
    Y,
    Xi,
    OneMinusXi,
    Eta,
    OneMinusEta,
    Neg(Box<Ex>),
    Add(Box<Ex>, Box<Ex>),
    Sub(Box<Ex>, Box<Ex>),
    Mul(Box<Ex>, Box<Ex>),
    Div(Box<Ex>, Box<Ex>),
}

/// Evaluation point: outer variables and up to two integration points.
#[derive(Debug, Clone, Copy)]
pub struct Env<'a> {
    pub x: f64,
    pub y: f64,
    pub pts: &'a [Point],
}

impl Ex {
    pub fn eval(&self, env: &Env<'_>) -> f64 {
        match self {
            Ex::One => 1.0,
            Ex::X => env.x,
            Ex::Y => env.y,
            Ex::Xi => env.pts[0].u,
            Ex::OneMinusXi => env.pts[0].v,
            Ex::Eta => env.pts[1].u,
            Ex::OneMinusEta => env.pts[1].v,
            Ex::Neg(a) => -a.eval(env),
            Ex::Add(a, b) => a.eval(env) + b.eval(env),
            Ex::Sub(a, b) => a.eval(env) - b.eval(env),
            Ex::Mul(a, b) => a.eval(env) * b.eval(env),
            Ex::Div(a, b) => a.eval(env) / b.eval(env),
        }
    }

    fn uses_eta(&self) -> bool {
        match self {
            Ex::Eta | Ex::OneMinusEta => true,
            Ex::Neg(a) => a.uses_eta(),
            Ex::Add(a, b) | Ex::Sub(a, b) | Ex::Mul(a, b) | Ex::Div(a, b) => a.uses_eta() || b.uses_eta(),
            _ => false,
        }
    }
}

impl fmt::Display for Ex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ex::One => f.write_str("1"),
            Ex::X => f.write_str("x"),
            Ex::Y => f.write_str("y"),
            Ex::Xi => f.write_str("xi"),
            Ex::OneMinusXi => f.write_str("(1-xi)"),
            Ex::Eta => f.write_str("eta"),
            Ex::OneMinusEta => f.write_str("(1-eta)"),
            Ex::Neg(a) => write!(f, "-{a}"),
            Ex::Add(a, b) => write!(f, "({a} + {b})"),
            Ex::Sub(a, b) => write!(f, "({a} - {b})"),
            Ex::Mul(a, b) => write!(f, "{a}*{b}"),
            Ex::Div(a, b) => write!(f, "{a}/{b}"),
        }
    }
}

macro_rules! ex_binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl $tr for Ex {
            type Output = Ex;
            fn $method(self, rhs: Ex) -> Ex {
                Ex::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}
ex_binop!(Add, add, Add);
ex_binop!(Sub, sub, Sub);
ex_binop!(Mul, mul, Mul);
ex_binop!(Div, div, Div);

impl Neg for Ex {
    type Output = Ex;
    fn neg(self) -> Ex {
        Ex::Neg(Box::new(self))
    }
}

/// One factor of an integrand.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    /// `u^(a-1)` or `(1-u)^(a-1)` for integration variable `var`.
    Endpoint { var: usize, at_one: bool, a: ParamExpr },
    Exp(Ex),
    /// `base^exponent`; the base must stay positive.
    Power { base: Ex, exponent: ParamExpr },
    /// Inner hypergeometric function at transformed arguments.
    Hyper { function: FunctionSpec, args: Vec<Ex> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralRep {
    pub id: String,
    pub lhs: FunctionSpec,
    pub dim: usize,
    pub gamma_num: Vec<ParamExpr>,
    pub gamma_den: Vec<ParamExpr>,
    /// Printed constraints, each meaning `expr > 0`.
    pub constraints: Vec<ParamExpr>,
    pub factors: Vec<Factor>,
    /// Set on corrected variants.
    pub note: Option<String>,
}

/// A factor after parameter substitution.
#[derive(Debug, Clone)]
enum Bound {
    Exp(Ex),
    Power { base: Ex, exponent: f64 },
    Hyper { f: FunctionRef, args: Vec<Ex> },
}

/// Integrand with every parameter bound, ready for quadrature.
pub struct BoundIntegrand {
    dim: usize,
    x: f64,
    y: f64,
    /// `[(a-1, b-1)]` per integration variable.
    endpoints: Vec<(f64, f64)>,
    factors: Vec<Bound>,
    inner_tol: f64,
}

impl super::tanh_sinh::Integrand for BoundIntegrand {
    fn dim(&self) -> usize {
        self.dim
    }

    fn log_endpoint(&self, k: usize, ln_u: f64, ln_v: f64) -> f64 {
        let (a, b) = self.endpoints[k];
        let mut s = 0.0;
        if a != 0.0 {
            s += a * ln_u;
        }
        if b != 0.0 {
            s += b * ln_v;
        }
        s
    }

    fn rest(&self, pts: &[Point]) -> Result<f64> {
        let env = Env { x: self.x, y: self.y, pts };
        let mut v = 1.0;
        for factor in &self.factors {
            v *= match factor {
                Bound::Exp(e) => e.eval(&env).exp(),
                Bound::Power { base, exponent } => {
                    let b = base.eval(&env);
                    if b.is_nan() || b <= 0.0 {
                        return Err(Error::Domain { kind: format!("power base {base}"), x: self.x, y: self.y });
                    }
                    b.powf(*exponent)
                }
                Bound::Hyper { f, args } => {
                    let u = args[0].eval(&env);
                    let w = args.get(1).map(|a| a.eval(&env)).unwrap_or(0.0);
                    if !f.kind().in_domain(u, w) {
                        return Err(Error::Domain { kind: f.kind().to_string(), x: u, y: w });
                    }
                    eval_function(f, u, w, self.inner_tol)?
                }
            };
        }
        Ok(v)
    }
}

impl IntegralRep {
    /// Checks the printed constraints and the endpoint exponents exactly.
    pub fn check_constraints(&self, params: &ParameterMap) -> Result<()> {
        let zero = Rational::zero();
        for c in &self.constraints {
            if c.eval(params, 0, 0)? <= zero {
                return Err(Error::ConstraintViolation(format!("{} > 0 fails for {}", c.source(), self.id)));
            }
        }
        for f in &self.factors {
            if let Factor::Endpoint { a, .. } = f {
                if a.eval(params, 0, 0)? <= zero {
                    return Err(Error::ConstraintViolation(format!(
                        "endpoint exponent {} - 1 needs {} > 0 in {}",
                        a.source(),
                        a.source(),
                        self.id
                    )));
                }
            }
        }
        for g in self.gamma_num.iter().chain(&self.gamma_den) {
            if g.eval(params, 0, 0)? <= zero {
                return Err(Error::ConstraintViolation(format!("Gamma({}) needs a positive argument in {}", g.source(), self.id)));
            }
        }
        Ok(())
    }

    /// `prod Gamma(num) / prod Gamma(den)`.
    pub fn prefactor(&self, params: &ParameterMap) -> Result<f64> {
        let mut log = 0.0;
        for g in &self.gamma_num {
            log += ln_gamma(g.eval(params, 0, 0)?.to_f64());
        }
        for g in &self.gamma_den {
            log -= ln_gamma(g.eval(params, 0, 0)?.to_f64());
        }
        Ok(log.exp())
    }

    pub fn bind(&self, params: &ParameterMap, x: f64, y: f64, inner_tol: f64) -> Result<BoundIntegrand> {
        self.check_constraints(params)?;
        let mut endpoints = vec![(0.0, 0.0); self.dim];
        let mut factors = Vec::new();
        for f in &self.factors {
            match f {
                Factor::Endpoint { var, at_one, a } => {
                    let e = a.eval(params, 0, 0)?.to_f64() - 1.0;
                    if *at_one {
                        endpoints[*var].1 += e;
                    } else {
                        endpoints[*var].0 += e;
                    }
                }
                Factor::Exp(e) => factors.push(Bound::Exp(e.clone())),
                Factor::Power { base, exponent } => {
                    factors.push(Bound::Power { base: base.clone(), exponent: exponent.eval(params, 0, 0)?.to_f64() })
                }
                Factor::Hyper { function, args } => {
                    factors.push(Bound::Hyper { f: function.resolve(params, 0, 0)?, args: args.clone() })
                }
            }
        }
        Ok(BoundIntegrand { dim: self.dim, x, y, endpoints, factors, inner_tol })
    }

    /// The left side evaluated by its series.
    pub fn lhs_value(&self, params: &ParameterMap, x: f64, y: f64, tol: f64) -> Result<f64> {
        eval_function(&self.lhs.resolve(params, 0, 0)?, x, y, tol)
    }

    fn validate_shape(&self) -> bool {
        let eta = self.factors.iter().any(|f| match f {
            Factor::Endpoint { var, .. } => *var == 1,
            Factor::Exp(e) | Factor::Power { base: e, .. } => e.uses_eta(),
            Factor::Hyper { args, .. } => args.iter().any(Ex::uses_eta),
        });
        eta == (self.dim == 2)
    }
}

fn x() -> Ex {
    Ex::X
}
fn y() -> Ex {
    Ex::Y
}
fn xi() -> Ex {
    Ex::Xi
}
fn cxi() -> Ex {
    Ex::OneMinusXi
}
fn eta() -> Ex {
    Ex::Eta
}
fn ceta() -> Ex {
    Ex::OneMinusEta
}
fn one() -> Ex {
    Ex::One
}

fn p(src: &str) -> ParamExpr {
    ParamExpr::parse(src).expect("valid parameter expression")
}

fn ps(srcs: &[&str]) -> Vec<ParamExpr> {
    srcs.iter().map(|s| p(s)).collect()
}

fn func(kind: Kind, params: &[(Symbol, &str)]) -> FunctionSpec {
    let map: BTreeMap<Symbol, ParamExpr> = params.iter().map(|(s, e)| (*s, p(e))).collect();
    FunctionSpec { kind, params: map }
}

fn hyper(kind: Kind, params: &[(Symbol, &str)], args: Vec<Ex>) -> Factor {
    Factor::Hyper { function: func(kind, params), args }
}

fn xi_pow(a: &str) -> Factor {
    Factor::Endpoint { var: 0, at_one: false, a: p(a) }
}
fn cxi_pow(a: &str) -> Factor {
    Factor::Endpoint { var: 0, at_one: true, a: p(a) }
}
fn eta_pow(a: &str) -> Factor {
    Factor::Endpoint { var: 1, at_one: false, a: p(a) }
}
fn ceta_pow(a: &str) -> Factor {
    Factor::Endpoint { var: 1, at_one: true, a: p(a) }
}
fn power(base: Ex, exponent: &str) -> Factor {
    Factor::Power { base, exponent: p(exponent) }
}

struct Builder(IntegralRep);

impl Builder {
    fn new(id: &str, lhs: FunctionSpec, dim: usize) -> Self {
        Builder(IntegralRep {
            id: id.to_string(),
            lhs,
            dim,
            gamma_num: Vec::new(),
            gamma_den: Vec::new(),
            constraints: Vec::new(),
            factors: Vec::new(),
            note: None,
        })
    }
    fn gamma(mut self, num: &[&str], den: &[&str]) -> Self {
        self.0.gamma_num = ps(num);
        self.0.gamma_den = ps(den);
        self
    }
    fn positive(mut self, exprs: &[&str]) -> Self {
        self.0.constraints = ps(exprs);
        self
    }
    fn factors(mut self, factors: Vec<Factor>) -> Self {
        self.0.factors = factors;
        self
    }
    fn done(self) -> IntegralRep {
        debug_assert!(self.0.validate_shape(), "{}", self.0.id);
        self.0
    }
}

use Symbol::*;

fn phi1() -> FunctionSpec {
    func(Kind::Phi1, &[(Alpha, "alpha"), (Beta, "beta"), (Gamma, "gamma")])
}
fn phi2() -> FunctionSpec {
    func(Kind::Phi2, &[(Beta1, "beta1"), (Beta2, "beta2"), (Gamma, "gamma")])
}
fn psi1() -> FunctionSpec {
    func(Kind::Psi1, &[(Alpha, "alpha"), (Beta, "beta"), (Gamma1, "gamma1"), (Gamma2, "gamma2")])
}
fn xi1() -> FunctionSpec {
    func(Kind::Xi1, &[(Alpha1, "alpha1"), (Alpha2, "alpha2"), (Beta, "beta"), (Gamma, "gamma")])
}
fn xi2() -> FunctionSpec {
    func(Kind::Xi2, &[(Alpha, "alpha"), (Beta, "beta"), (Gamma, "gamma")])
}

/// `x xi + y (1 - xi) eta`, the exponent shared by the two-sided kernels.
fn simplex_exp() -> Ex {
    x() * xi() + y() * cxi() * eta()
}

fn kummer(a: &str, b: &str, arg: Ex) -> Factor {
    hyper(Kind::Kummer1F1, &[(Alpha, a), (Gamma, b)], vec![arg])
}

fn bessel(b: &str, arg: Ex) -> Factor {
    hyper(Kind::Bessel0F1, &[(Gamma, b)], vec![arg])
}

fn build_catalog() -> Vec<IntegralRep> {
    let mut out = Vec::new();

    out.push(
        Builder::new("4.1", phi1(), 1)
            .gamma(&["gamma"], &["alpha", "gamma - alpha"])
            .positive(&["alpha", "gamma - alpha"])
            .factors(vec![Factor::Exp(y() * xi()), xi_pow("alpha"), cxi_pow("gamma - alpha"), power(one() - x() * xi(), "-beta")])
            .done(),
    );
    out.push(
        Builder::new("4.2", phi2(), 2)
            .gamma(&["gamma"], &["beta1", "beta2", "gamma - beta1 - beta2"])
            .positive(&["beta1", "beta2", "gamma - beta1 - beta2"])
            .factors(vec![
                Factor::Exp(simplex_exp()),
                xi_pow("beta1"),
                eta_pow("beta2"),
                cxi_pow("gamma - beta1"),
                ceta_pow("gamma - beta1 - beta2"),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.3", psi1(), 2)
            .gamma(&["gamma1", "gamma2"], &["alpha", "beta", "gamma1 - beta", "gamma2 - alpha"])
            .positive(&["alpha", "beta", "gamma1 - beta", "gamma2 - alpha"])
            .factors(vec![
                Factor::Exp(y() * eta() / (one() - x() * xi())),
                xi_pow("beta"),
                eta_pow("alpha"),
                cxi_pow("gamma1 - beta"),
                ceta_pow("gamma2 - alpha"),
                power(one() - x() * xi(), "-alpha"),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.4", xi1(), 2)
            .gamma(&["gamma"], &["alpha1", "alpha2", "gamma - alpha1 - alpha2"])
            .positive(&["alpha1", "alpha2", "gamma - alpha1 - alpha2"])
            .factors(vec![
                Factor::Exp(y() * cxi() * eta()),
                xi_pow("alpha1"),
                eta_pow("alpha2"),
                cxi_pow("gamma - alpha1"),
                ceta_pow("gamma - alpha1 - alpha2"),
                power(one() - x() * xi(), "-beta"),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.5", xi2(), 1)
            .gamma(&["gamma"], &["alpha", "gamma - alpha"])
            .positive(&["alpha", "gamma - alpha"])
            .factors(vec![
                xi_pow("alpha"),
                cxi_pow("gamma - alpha"),
                power(one() - x() * xi(), "-beta"),
                bessel("gamma - alpha", cxi() * y()),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.6", phi1(), 1)
            .gamma(&["gamma"], &["eps", "gamma - eps"])
            .positive(&["gamma - eps", "eps"])
            .factors(vec![
                Factor::Exp(y() * xi()),
                xi_pow("eps"),
                cxi_pow("gamma - eps"),
                power(one() - x() * xi(), "-beta"),
                hyper(
                    Kind::Phi1,
                    &[(Alpha, "eps - alpha"), (Beta, "beta"), (Gamma, "eps")],
                    vec![x() * xi() / (x() * xi() - one()), -(y() * xi())],
                ),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.7", phi1(), 1)
            .gamma(&["gamma"], &["eps", "gamma - eps"])
            .positive(&["gamma - eps", "eps"])
            .factors(vec![
                Factor::Exp(y() * xi()),
                xi_pow("eps"),
                cxi_pow("gamma - eps"),
                power(one() - x() * xi(), "-beta"),
                hyper(
                    Kind::Phi1,
                    &[(Alpha, "alpha - eps"), (Beta, "beta"), (Gamma, "gamma - eps")],
                    vec![x() * cxi() / (one() - x() * xi()), y() * cxi()],
                ),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.8", phi1(), 2)
            .gamma(&["gamma"], &["alpha", "gamma - eps", "eps - alpha"])
            .positive(&["gamma - eps", "eps", "eps - alpha", "alpha"])
            .factors(vec![
                Factor::Exp(y() * xi() * eta()),
                xi_pow("eps"),
                eta_pow("alpha"),
                cxi_pow("gamma - eps"),
                ceta_pow("eps - alpha"),
                power(one() - x() * xi() * eta(), "-beta"),
            ])
            .done(),
    );
    // xi + eta - xi eta = 1 - (1 - xi)(1 - eta).
    let joint = || one() - cxi() * ceta();
    out.push(
        Builder::new("4.9", phi1(), 2)
            .gamma(&["gamma"], &["eps", "alpha - eps", "gamma - alpha"])
            .positive(&["gamma - alpha", "alpha", "alpha - eps", "eps"])
            .factors(vec![
                Factor::Exp(y() * joint()),
                xi_pow("eps"),
                eta_pow("alpha - eps"),
                cxi_pow("gamma - eps"),
                ceta_pow("gamma - alpha"),
                power(one() - x() * joint(), "-beta"),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.10", phi2(), 2)
            .gamma(&["eps"], &["beta1", "beta2", "eps - beta1 - beta2"])
            .positive(&["eps - beta1 - beta2", "beta1", "beta2"])
            .factors(vec![
                Factor::Exp(simplex_exp()),
                xi_pow("beta1"),
                eta_pow("beta2"),
                cxi_pow("eps - beta1"),
                ceta_pow("eps - beta1 - beta2"),
                kummer("gamma - eps", "gamma", -simplex_exp()),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.11", phi2(), 2)
            .gamma(&["gamma"], &["eps1", "beta2", "gamma - eps1 - beta2"])
            .positive(&["gamma - eps1 - beta2", "eps1", "beta2"])
            .factors(vec![
                Factor::Exp(simplex_exp()),
                xi_pow("eps1"),
                eta_pow("beta2"),
                cxi_pow("gamma - eps1"),
                ceta_pow("gamma - eps1 - beta2"),
                kummer("eps1 - beta1", "eps1", -(x() * xi())),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.12", phi2(), 2)
            .gamma(&["gamma"], &["eps1", "beta2", "gamma - eps1 - beta2"])
            .positive(&["gamma - eps1 - beta2", "eps1", "beta2"])
            .factors(vec![
                Factor::Exp(simplex_exp()),
                xi_pow("eps1"),
                eta_pow("beta2"),
                cxi_pow("gamma - eps1"),
                ceta_pow("gamma - eps1 - beta2"),
                kummer("beta1 - eps1", "gamma - eps1 - beta2", x() * cxi() * ceta()),
            ])
            .done(),
    );
    let two_sided = |id: &str, lhs: FunctionSpec, inner: Vec<Factor>, exp: Option<Ex>| {
        let mut factors: Vec<Factor> = exp.map(Factor::Exp).into_iter().collect();
        factors.extend([xi_pow("eps1"), eta_pow("eps2"), cxi_pow("gamma - eps1"), ceta_pow("gamma - eps1 - eps2")]);
        factors.extend(inner);
        Builder::new(id, lhs, 2)
            .gamma(&["gamma"], &["eps1", "eps2", "gamma - eps1 - eps2"])
            .positive(&["gamma - eps1 - eps2", "eps1", "eps2"])
            .factors(factors)
            .done()
    };
    out.push(two_sided(
        "4.13",
        phi2(),
        vec![kummer("eps1 - beta1", "eps1", -(x() * xi())), kummer("eps2 - beta2", "eps2", -(y() * cxi() * eta()))],
        Some(simplex_exp()),
    ));
    out.push(two_sided(
        "4.14",
        phi2(),
        vec![hyper(
            Kind::Phi2,
            &[(Beta1, "beta1 - eps1"), (Beta2, "beta2 - eps2"), (Gamma, "gamma")],
            vec![x() * cxi() * ceta(), y() * cxi() * ceta()],
        )],
        Some(simplex_exp()),
    ));
    out.push(
        Builder::new("4.15", psi1(), 2)
            .gamma(&["gamma1", "eps"], &["alpha", "beta", "gamma1 - beta", "eps - alpha"])
            .positive(&["gamma1 - beta", "beta", "eps - alpha", "alpha"])
            .factors(vec![
                Factor::Exp(y() * eta() / (one() - x() * xi())),
                xi_pow("beta"),
                eta_pow("alpha"),
                cxi_pow("gamma1 - beta"),
                ceta_pow("eps - alpha"),
                power(one() - x() * xi(), "-alpha"),
                kummer("gamma2 - eps", "gamma2", y() / (x() * xi() - one())),
            ])
            .done(),
    );
    out.push(two_sided(
        "4.16",
        xi1(),
        vec![
            power(one() - x() * xi(), "-beta"),
            hyper(
                Kind::Xi1,
                &[(Alpha1, "alpha1 - eps1"), (Alpha2, "alpha2 - eps2"), (Beta, "beta"), (Gamma, "gamma - eps1 - eps2")],
                vec![x() * cxi() * ceta() / (one() - x() * xi()), y() * cxi() * ceta()],
            ),
        ],
        Some(y() * cxi() * eta()),
    ));
    out.push(two_sided(
        "4.17",
        xi1(),
        vec![
            hyper(Kind::Gauss2F1, &[(Alpha, "alpha1"), (Beta, "beta"), (Gamma, "eps1")], vec![x() * xi()]),
            kummer("eps2 - alpha2", "eps2", -(y() * cxi() * eta())),
        ],
        Some(y() * cxi() * eta()),
    ));
    out.push(
        Builder::new("4.18", xi2(), 1)
            .gamma(&["gamma"], &["eps1", "gamma - eps1"])
            .positive(&["gamma - eps1", "eps1"])
            .factors(vec![
                xi_pow("eps1"),
                cxi_pow("gamma - eps1"),
                hyper(Kind::Gauss2F1, &[(Alpha, "alpha"), (Beta, "beta"), (Gamma, "eps1")], vec![x() * xi()]),
                bessel("gamma - eps1", y() * cxi()),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.19", xi2(), 2)
            .gamma(&["gamma"], &["alpha", "eps1 - alpha", "gamma - eps1"])
            .positive(&["gamma - eps1", "eps1 - alpha", "alpha"])
            .factors(vec![
                xi_pow("eps1"),
                eta_pow("alpha"),
                cxi_pow("gamma - eps1"),
                ceta_pow("eps1 - alpha"),
                power(one() - x() * xi() * eta(), "-beta"),
                bessel("gamma - eps1", y() * cxi()),
            ])
            .done(),
    );
    out.push(
        Builder::new("4.20", xi2(), 2)
            .gamma(&["gamma"], &["beta", "gamma - eps1", "eps1 - beta"])
            .positive(&["gamma - eps1", "eps1 - beta", "beta"])
            .factors(vec![
                xi_pow("eps1"),
                eta_pow("beta"),
                cxi_pow("gamma - eps1"),
                ceta_pow("eps1 - beta"),
                power(one() - x() * xi() * eta(), "-alpha"),
                bessel("gamma - eps1", y() * cxi()),
            ])
            .done(),
    );
    out
}

/// The twenty representations as printed.
pub fn integral_catalog() -> &'static [IntegralRep] {
    static CATALOG: OnceLock<Vec<IntegralRep>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

pub fn integral_by_id(id: &str) -> Result<&'static IntegralRep> {
    integral_catalog().iter().find(|r| r.id == id).ok_or_else(|| Error::UnknownIntegral(id.to_string()))
}
