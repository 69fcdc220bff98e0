use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{ParameterMap, Symbol};
use crate::scalar::{factorial, pochhammer_table, Rational, Scalar};
use crate::series::biseries::Biseries;

/// The ten supported hypergeometric functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "phi1")]
    Phi1,
    #[serde(rename = "phi2")]
    Phi2,
    #[serde(rename = "phi3")]
    Phi3,
    #[serde(rename = "psi1")]
    Psi1,
    #[serde(rename = "psi2")]
    Psi2,
    #[serde(rename = "xi1")]
    Xi1,
    #[serde(rename = "xi2")]
    Xi2,
    #[serde(rename = "2f1")]
    Gauss2F1,
    #[serde(rename = "1f1")]
    Kummer1F1,
    #[serde(rename = "0f1")]
    Bessel0F1,
}

/// Which running index a Pochhammer factor of the coefficient uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Run {
    M,
    N,
    Sum,
}

impl Run {
    #[inline]
    pub fn of(self, m: usize, n: usize) -> usize {
        match self {
            Run::M => m,
            Run::N => n,
            Run::Sum => m + n,
        }
    }
}

/// Coefficient of `x^m y^n` is `prod (a)_run / prod (b)_run / (m! n!)`.
#[derive(Debug, Clone, Copy)]
pub struct Shape {
    pub numerator: &'static [(Symbol, Run)],
    pub denominator: &'static [(Symbol, Run)],
}

use Run::{Sum, M, N};
use Symbol::*;

impl Kind {
    pub const ALL: [Kind; 10] = [
        Kind::Phi1,
        Kind::Phi2,
        Kind::Phi3,
        Kind::Psi1,
        Kind::Psi2,
        Kind::Xi1,
        Kind::Xi2,
        Kind::Gauss2F1,
        Kind::Kummer1F1,
        Kind::Bessel0F1,
    ];

    pub const HUMBERT: [Kind; 7] =
        [Kind::Phi1, Kind::Phi2, Kind::Phi3, Kind::Psi1, Kind::Psi2, Kind::Xi1, Kind::Xi2];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Phi1 => "phi1",
            Kind::Phi2 => "phi2",
            Kind::Phi3 => "phi3",
            Kind::Psi1 => "psi1",
            Kind::Psi2 => "psi2",
            Kind::Xi1 => "xi1",
            Kind::Xi2 => "xi2",
            Kind::Gauss2F1 => "2f1",
            Kind::Kummer1F1 => "1f1",
            Kind::Bessel0F1 => "0f1",
        }
    }

    pub fn is_single_variable(self) -> bool {
        matches!(self, Kind::Gauss2F1 | Kind::Kummer1F1 | Kind::Bessel0F1)
    }

    pub fn shape(self) -> Shape {
        let (numerator, denominator): (&'static [(Symbol, Run)], &'static [(Symbol, Run)]) = match self {
            Kind::Phi1 => (&[(Alpha, Sum), (Beta, M)], &[(Gamma, Sum)]),
            Kind::Phi2 => (&[(Beta1, M), (Beta2, N)], &[(Gamma, Sum)]),
            Kind::Phi3 => (&[(Beta, M)], &[(Gamma, Sum)]),
            Kind::Psi1 => (&[(Alpha, Sum), (Beta, M)], &[(Gamma1, M), (Gamma2, N)]),
            Kind::Psi2 => (&[(Alpha, Sum)], &[(Gamma1, M), (Gamma2, N)]),
            Kind::Xi1 => (&[(Alpha1, M), (Alpha2, N), (Beta, M)], &[(Gamma, Sum)]),
            Kind::Xi2 => (&[(Alpha, M), (Beta, M)], &[(Gamma, Sum)]),
            Kind::Gauss2F1 => (&[(Alpha, M), (Beta, M)], &[(Gamma, M)]),
            Kind::Kummer1F1 => (&[(Alpha, M)], &[(Gamma, M)]),
            Kind::Bessel0F1 => (&[], &[(Gamma, M)]),
        };
        Shape { numerator, denominator }
    }

    /// Exactly the symbols a [`FunctionRef`] of this kind must bind.
    pub fn signature(self) -> Vec<Symbol> {
        let shape = self.shape();
        let mut out: Vec<Symbol> =
            shape.numerator.iter().chain(shape.denominator).map(|(s, _)| *s).collect();
        out.sort();
        out.dedup();
        out
    }

    /// True when the kind is only defined for `|x| < 1`.
    pub fn needs_unit_x(self) -> bool {
        matches!(self, Kind::Phi1 | Kind::Psi1 | Kind::Xi1 | Kind::Xi2 | Kind::Gauss2F1)
    }

    /// Convergence-region predicate. No analytic continuation is attempted.
    pub fn in_domain(self, x: f64, y: f64) -> bool {
        if !x.is_finite() || !y.is_finite() {
            return false;
        }
        !self.needs_unit_x() || x.abs() < 1.0
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let k = match lower.as_str() {
            "phi1" => Kind::Phi1,
            "phi2" => Kind::Phi2,
            "phi3" => Kind::Phi3,
            "psi1" => Kind::Psi1,
            "psi2" => Kind::Psi2,
            "xi1" => Kind::Xi1,
            "xi2" => Kind::Xi2,
            "2f1" | "gauss2f1" => Kind::Gauss2F1,
            "1f1" | "kummer1f1" => Kind::Kummer1F1,
            "0f1" | "bessel0f1" => Kind::Bessel0F1,
            _ => return Err(Error::Parse(format!("unknown function kind `{s}`"))),
        };
        Ok(k)
    }
}

/// A function kind together with exactly the parameters its signature needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionRef {
    kind: Kind,
    params: ParameterMap,
}

impl FunctionRef {
    /// Validates signature completeness and the denominator pole guard.
    pub fn new(kind: Kind, params: ParameterMap) -> Result<Self> {
        let sig = kind.signature();
        let missing: Vec<_> = sig.iter().filter(|s| !params.contains(**s)).map(|s| s.name()).collect();
        let extra: Vec<_> = params.symbols().filter(|s| !sig.contains(s)).map(|s| s.name()).collect();
        if !missing.is_empty() || !extra.is_empty() {
            return Err(Error::Signature {
                kind: kind.to_string(),
                detail: format!("missing {missing:?}, unexpected {extra:?}"),
            });
        }
        for (sym, _) in kind.shape().denominator {
            params.check_denominator(*sym)?;
        }
        Ok(FunctionRef { kind, params })
    }

    /// Picks the kind's signature out of a larger map.
    pub fn from_superset(kind: Kind, params: &ParameterMap) -> Result<Self> {
        Self::new(kind, params.restrict(&kind.signature())?)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn params(&self) -> &ParameterMap {
        &self.params
    }

    fn value<S: Scalar>(&self, sym: Symbol) -> S {
        S::from_rational(self.params.get(sym).expect("signature validated"))
    }

    /// Coefficient of `x^m y^n` computed from scratch.
    pub fn coefficient<S: Scalar>(&self, m: usize, n: usize) -> Result<S> {
        if self.kind.is_single_variable() && n > 0 {
            return Ok(S::zero());
        }
        let shape = self.kind.shape();
        let mut num = S::one();
        for (sym, run) in shape.numerator {
            num = num * crate::scalar::pochhammer(&self.value::<S>(*sym), run.of(m, n));
        }
        let mut den = factorial::<S>(m) * factorial::<S>(n);
        for (sym, run) in shape.denominator {
            den = den * crate::scalar::pochhammer(&self.value::<S>(*sym), run.of(m, n));
        }
        if den.is_zero() {
            return Err(Error::Pole(format!("{} coefficient ({m}, {n}) has a zero denominator", self.kind)));
        }
        Ok(num / den)
    }

    /// Full degree-`degree` triangle of the defining series.
    pub fn truncated_series<S: Scalar>(&self, degree: usize) -> Result<Biseries<S>> {
        let shape = self.kind.shape();
        let tables = |list: &[(Symbol, Run)]| -> Vec<(Vec<S>, Run)> {
            list.iter().map(|(sym, run)| (pochhammer_table(&self.value::<S>(*sym), degree), *run)).collect()
        };
        let num = tables(shape.numerator);
        let den = tables(shape.denominator);
        let facts = pochhammer_table(&S::one(), degree);
        let single = self.kind.is_single_variable();
        Biseries::try_from_fn(degree, |m, n| {
            if single && n > 0 {
                return Ok(S::zero());
            }
            let mut top = S::one();
            for (t, run) in &num {
                top = top * t[run.of(m, n)].clone();
            }
            let mut bottom = facts[m].clone() * facts[n].clone();
            for (t, run) in &den {
                bottom = bottom * t[run.of(m, n)].clone();
            }
            if bottom.is_zero() {
                return Err(Error::Pole(format!("{} coefficient ({m}, {n}) has a zero denominator", self.kind)));
            }
            Ok(top / bottom)
        })
    }

    /// Parameter values converted to `f64`, in signature order.
    pub fn float_params(&self) -> Vec<(Symbol, f64)> {
        self.kind.signature().into_iter().map(|s| (s, self.value::<f64>(s))).collect()
    }

    pub fn rational(&self, sym: Symbol) -> Option<&Rational> {
        self.params.get(sym)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{pochhammer, ratio};

    fn phi1(a: Rational, b: Rational, c: Rational) -> FunctionRef {
        FunctionRef::new(Kind::Phi1, ParameterMap::new().with(Alpha, a).with(Beta, b).with(Gamma, c)).unwrap()
    }

    #[test]
    fn coefficient_examples() {
        let f = phi1(ratio(1, 1), ratio(1, 1), ratio(2, 1));
        assert_eq!(f.coefficient::<Rational>(1, 1).unwrap(), ratio(1, 3));
        for kind in Kind::ALL {
            let params: ParameterMap = kind.signature().into_iter().map(|s| (s, ratio(3, 7))).collect();
            let f = FunctionRef::new(kind, params).unwrap();
            assert_eq!(f.coefficient::<Rational>(0, 0).unwrap(), ratio(1, 1));
        }
        let xi2 = FunctionRef::new(
            Kind::Xi2,
            ParameterMap::new().with(Alpha, ratio(1, 2)).with(Beta, ratio(1, 3)).with(Gamma, ratio(3, 4)),
        )
        .unwrap();
        let expect = pochhammer(&ratio(1, 2), 2) * pochhammer(&ratio(1, 3), 2)
            / (pochhammer(&ratio(3, 4), 3) * ratio(2, 1));
        assert_eq!(xi2.coefficient::<Rational>(2, 1).unwrap(), expect);
    }

    #[test]
    fn signature_enforced() {
        let short = ParameterMap::new().with(Alpha, ratio(1, 2)).with(Beta, ratio(1, 3));
        assert!(matches!(FunctionRef::new(Kind::Phi1, short.clone()), Err(Error::Signature { .. })));
        let long = short.clone().with(Gamma, ratio(2, 1)).with(Eps, ratio(1, 5));
        assert!(matches!(FunctionRef::new(Kind::Phi1, long.clone()), Err(Error::Signature { .. })));
        assert!(FunctionRef::from_superset(Kind::Phi1, &long).is_ok());
        let pole = short.with(Gamma, ratio(-3, 1));
        assert!(matches!(FunctionRef::new(Kind::Phi1, pole), Err(Error::Pole(_))));
    }

    #[test]
    fn degree_zero_and_collapsed_alpha() {
        let phi3 = FunctionRef::new(Kind::Phi3, ParameterMap::new().with(Beta, ratio(2, 5)).with(Gamma, ratio(7, 3)))
            .unwrap();
        let s = phi3.truncated_series::<Rational>(0).unwrap();
        assert_eq!(s.degree(), 0);
        assert_eq!(s.get(0, 0), ratio(1, 1));

        // alpha = gamma leaves (beta)_m / (m! n!).
        let beta = ratio(1, 3);
        let f = phi1(ratio(5, 4), beta.clone(), ratio(5, 4));
        let t = f.truncated_series::<Rational>(7).unwrap();
        for (m, n, c) in t.iter() {
            let expect = pochhammer(&beta, m) / (factorial::<Rational>(m) * factorial::<Rational>(n));
            assert_eq!(c, &expect);
        }
    }

    #[test]
    fn phi2_triangle_matches_independent_loop() {
        let (b1, b2, g) = (ratio(1, 2), ratio(1, 3), ratio(5, 4));
        let f = FunctionRef::new(
            Kind::Phi2,
            ParameterMap::new().with(Beta1, b1.clone()).with(Beta2, b2.clone()).with(Gamma, g.clone()),
        )
        .unwrap();
        let t = f.truncated_series::<Rational>(6).unwrap();
        for m in 0..=6usize {
            for n in 0..=(6 - m) {
                // Independent product of factors, no tables.
                let mut num = ratio(1, 1);
                for k in 0..m {
                    num *= b1.clone() + ratio(k as i64, 1);
                }
                for k in 0..n {
                    num *= b2.clone() + ratio(k as i64, 1);
                }
                let mut den = ratio(1, 1);
                for k in 0..(m + n) {
                    den *= g.clone() + ratio(k as i64, 1);
                }
                for k in 1..=m {
                    den *= ratio(k as i64, 1);
                }
                for k in 1..=n {
                    den *= ratio(k as i64, 1);
                }
                assert_eq!(t.get(m, n), num / den, "slot ({m}, {n})");
            }
        }
    }

    #[test]
    fn triangle_agrees_with_pointwise_rule() {
        for kind in Kind::ALL {
            let params: ParameterMap =
                kind.signature().into_iter().enumerate().map(|(i, s)| (s, ratio(2 * i as i64 + 1, 3 + i as i64))).collect();
            let f = FunctionRef::new(kind, params).unwrap();
            let t = f.truncated_series::<Rational>(6).unwrap();
            for (m, n, c) in t.iter() {
                assert_eq!(c, &f.coefficient::<Rational>(m, n).unwrap());
            }
        }
    }

    #[test]
    fn domain_predicate() {
        assert!(!Kind::Phi1.in_domain(1.5, 0.0));
        assert!(Kind::Phi1.in_domain(0.5, 100.0));
        assert!(Kind::Phi2.in_domain(50.0, -30.0));
        assert!(!Kind::Phi3.in_domain(f64::NAN, 0.0));
        assert!(!Kind::Gauss2F1.in_domain(-1.0, 0.0));
        assert!(Kind::Kummer1F1.in_domain(-10.0, 0.0));
    }
}
