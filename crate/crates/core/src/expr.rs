//! Declarative expressions: function terms with elementary prefactors and
//! argument substitutions, and Pochhammer-weighted expansion sums over
//! parameter-shifted inner functions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{ParameterMap, Symbol};
use crate::scalar::{factorial, parse_rational, pochhammer, Rational, Scalar};
use crate::series::{binomial_x, compose, eval_function, exp_y_scaled, ArgTransform, Biseries, FunctionRef, Kind};

/// Affine combination of parameter symbols and the summation indices
/// `i`, `j`, e.g. `eps - alpha` or `gamma + i + j`.
///
/// Keeps its source text so catalog files round-trip byte for byte.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamExpr {
    source: String,
    constant: Rational,
    symbols: BTreeMap<Symbol, Rational>,
    i: i64,
    j: i64,
}

impl ParamExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad parameter expression `{text}`: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut out = ParamExpr {
            source: text.to_string(),
            constant: Rational::zero(),
            symbols: BTreeMap::new(),
            i: 0,
            j: 0,
        };
        // Split into signed terms.
        let mut terms = Vec::new();
        let mut current = String::new();
        let mut sign = 1i64;
        for (pos, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && pos > 0 && !current.ends_with(['e', 'E', '*']) {
                terms.push((sign, std::mem::take(&mut current)));
                sign = if ch == '-' { -1 } else { 1 };
            } else if (ch == '+' || ch == '-') && pos == 0 {
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                current.push(ch);
            }
        }
        terms.push((sign, current));
        for (sign, term) in terms {
            if term.is_empty() {
                return Err(bad("dangling operator"));
            }
            let (coef, atom) = match term.split_once('*') {
                Some((c, a)) => (parse_rational(c).map_err(|_| bad("bad coefficient"))?, a.to_string()),
                None => (Rational::one(), term.clone()),
            };
            let coef = if sign < 0 { -coef } else { coef };
            match atom.as_str() {
                "i" | "j" => {
                    if !coef.is_integer() {
                        return Err(bad("index coefficients must be integers"));
                    }
                    let c: i64 = coef.to_integer().try_into().map_err(|_| bad("index coefficient too large"))?;
                    if atom == "i" {
                        out.i += c;
                    } else {
                        out.j += c;
                    }
                }
                _ if atom.starts_with(|c: char| c.is_ascii_alphabetic()) => {
                    let sym: Symbol = atom.parse().map_err(|_| bad(&format!("unknown symbol `{atom}`")))?;
                    let entry = out.symbols.entry(sym).or_insert_with(Rational::zero);
                    *entry += coef;
                }
                _ => {
                    if term.contains('*') {
                        return Err(bad("numeric atom after `*`"));
                    }
                    out.constant += coef * parse_rational(&atom).map_err(|_| bad(&format!("bad term `{atom}`")))?;
                }
            }
        }
        out.symbols.retain(|_, v| !Scalar::is_zero(v));
        Ok(out)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Symbols with a non-zero coefficient.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.symbols.keys().copied()
    }

    pub fn uses_indices(&self) -> bool {
        self.i != 0 || self.j != 0
    }

    pub fn eval(&self, params: &ParameterMap, i: usize, j: usize) -> Result<Rational> {
        let mut v = self.constant.clone();
        for (sym, c) in &self.symbols {
            v += c * params.require(*sym)?;
        }
        v += Rational::from_i64(self.i * i as i64 + self.j * j as i64);
        Ok(v)
    }

    /// The same expression plus a constant, with source text to match.
    pub fn shifted(&self, delta: i64) -> ParamExpr {
        let text = if delta >= 0 {
            format!("{} + {}", self.source, delta)
        } else {
            format!("{} - {}", self.source, -delta)
        };
        ParamExpr::parse(&text).expect("shifted expression parses")
    }
}

impl fmt::Debug for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamExpr({:?})", self.source)
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

impl FromStr for ParamExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ParamExpr::parse(s)
    }
}

impl Serialize for ParamExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.source)
    }
}

impl<'de> Deserialize<'de> for ParamExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        ParamExpr::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Running index of a Pochhammer factor in an expansion coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexExpr {
    #[serde(rename = "i")]
    I,
    #[serde(rename = "j")]
    J,
    #[serde(rename = "i+j")]
    IJ,
}

impl IndexExpr {
    pub fn of(self, i: usize, j: usize) -> usize {
        match self {
            IndexExpr::I => i,
            IndexExpr::J => j,
            IndexExpr::IJ => i + j,
        }
    }
}

/// `(param)_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PochFactor {
    pub param: ParamExpr,
    pub index: IndexExpr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignRule {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "(-1)^i")]
    AltI,
    #[serde(rename = "(-1)^j")]
    AltJ,
    #[serde(rename = "(-1)^(i+j)")]
    AltIJ,
}

impl SignRule {
    pub fn negative(self, i: usize, j: usize) -> bool {
        let e = match self {
            SignRule::Plus => 0,
            SignRule::AltI => i,
            SignRule::AltJ => j,
            SignRule::AltIJ => i + j,
        };
        e % 2 == 1
    }
}

/// Which summation indices run; the other one is pinned at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexSet {
    #[serde(rename = "i,j")]
    Double,
    #[serde(rename = "i")]
    OnlyI,
    #[serde(rename = "j")]
    OnlyJ,
}

impl IndexSet {
    /// All `(i, j)` with `i + j <= bound`.
    pub fn points(self, bound: usize) -> Vec<(usize, usize)> {
        match self {
            IndexSet::Double => crate::series::graded_lex(bound).collect(),
            IndexSet::OnlyI => (0..=bound).map(|i| (i, 0)).collect(),
            IndexSet::OnlyJ => (0..=bound).map(|j| (0, j)).collect(),
        }
    }
}

/// A function kind whose parameters are affine expressions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionSpec {
    pub kind: Kind,
    pub params: BTreeMap<Symbol, ParamExpr>,
}

impl FunctionSpec {
    pub fn resolve(&self, params: &ParameterMap, i: usize, j: usize) -> Result<FunctionRef> {
        let mut bound = ParameterMap::new();
        for (sym, e) in &self.params {
            bound.set(*sym, e.eval(params, i, j)?);
        }
        FunctionRef::new(self.kind, bound)
    }
}

/// `exp(c y) * (1 - x)^p * f(args)`; every part optional.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FunctionTerm {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp_y: Option<ParamExpr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub binomial_x: Option<ParamExpr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<FunctionSpec>,
    /// Arguments of `function`; empty means the plain variables.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub args: Vec<ArgTransform>,
}

impl FunctionTerm {
    fn arg_pair(&self) -> Result<(ArgTransform, ArgTransform)> {
        let single = self.function.as_ref().map(|f| f.kind.is_single_variable()).unwrap_or(false);
        match (self.args.as_slice(), single) {
            ([], _) => Ok((ArgTransform::X, ArgTransform::Y)),
            ([a], true) => Ok((*a, ArgTransform::Y)),
            ([a, b], false) => Ok((*a, *b)),
            _ => Err(Error::Parse(format!("wrong number of arguments: {:?}", self.args))),
        }
    }

    /// Exact (or float-coefficient) triangle of the term.
    pub fn assemble<S: Scalar>(&self, params: &ParameterMap, i: usize, j: usize, degree: usize) -> Result<Biseries<S>> {
        let mut out = match &self.function {
            Some(spec) => {
                let f = spec.resolve(params, i, j)?;
                let base = f.truncated_series::<S>(degree)?;
                let (tx, ty) = self.arg_pair()?;
                if tx == ArgTransform::X && ty == ArgTransform::Y {
                    base
                } else {
                    compose(&base, &tx.series(degree), &ty.series(degree))
                }
            }
            None => Biseries::one(degree),
        };
        if let Some(c) = &self.exp_y {
            let c = S::from_rational(&c.eval(params, i, j)?);
            out = out.mul(&exp_y_scaled(&c, degree));
        }
        if let Some(p) = &self.binomial_x {
            let p = S::from_rational(&p.eval(params, i, j)?);
            out = out.mul(&binomial_x(&p, degree));
        }
        Ok(out)
    }

    /// Float value at a point, evaluating the function by its series.
    pub fn eval_f64(&self, params: &ParameterMap, x: f64, y: f64, tol: f64) -> Result<f64> {
        let mut v = 1.0;
        if let Some(spec) = &self.function {
            let f = spec.resolve(params, 0, 0)?;
            let (tx, ty) = self.arg_pair()?;
            v = eval_function(&f, tx.eval(x, y), ty.eval(x, y), tol)?;
        }
        if let Some(c) = &self.exp_y {
            v *= (c.eval(params, 0, 0)?.to_f64() * y).exp();
        }
        if let Some(p) = &self.binomial_x {
            v *= (1.0 - x).powf(p.eval(params, 0, 0)?.to_f64());
        }
        Ok(v)
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        for e in self.exp_y.iter().chain(&self.binomial_x) {
            out.extend(e.symbols());
        }
        if let Some(f) = &self.function {
            for e in f.params.values() {
                out.extend(e.symbols());
            }
        }
    }
}

/// `sum sign * prod (a)_idx / prod (b)_idx / (i! j!) * x^i y^j * inner(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionSum {
    pub indices: IndexSet,
    pub sign: SignRule,
    #[serde(default)]
    pub num: Vec<PochFactor>,
    #[serde(default)]
    pub den: Vec<PochFactor>,
    pub inner: FunctionTerm,
}

impl ExpansionSum {
    /// Outer coefficient for the index pair, without the monomial weight.
    pub fn coefficient<S: Scalar>(&self, params: &ParameterMap, i: usize, j: usize) -> Result<S> {
        let mut top = S::one();
        for f in &self.num {
            top = top * pochhammer(&S::from_rational(&f.param.eval(params, i, j)?), f.index.of(i, j));
        }
        if top.is_zero() {
            return Ok(S::zero());
        }
        let mut bottom = factorial::<S>(i) * factorial::<S>(j);
        for f in &self.den {
            bottom = bottom * pochhammer(&S::from_rational(&f.param.eval(params, i, j)?), f.index.of(i, j));
        }
        if bottom.is_zero() {
            return Err(Error::Pole(format!(
                "expansion coefficient at (i, j) = ({i}, {j}) has a vanishing denominator Pochhammer"
            )));
        }
        let c = top / bottom;
        Ok(if self.sign.negative(i, j) { -c } else { c })
    }

    /// Assembly with an explicit outer bound on `i + j`.
    pub fn assemble_bounded<S: Scalar>(&self, params: &ParameterMap, degree: usize, outer: usize) -> Result<Biseries<S>> {
        let mut out = Biseries::zero(degree);
        for (i, j) in self.indices.points(outer) {
            let c = self.coefficient::<S>(params, i, j)?;
            if c.is_zero() || i + j > degree {
                continue;
            }
            let inner = self.inner.assemble::<S>(params, i, j, degree - i - j).map_err(|e| match e {
                Error::Pole(msg) => Error::Pole(format!("inner function at (i, j) = ({i}, {j}): {msg}")),
                other => other,
            })?;
            out.add_shifted(&inner, &c, i, j);
        }
        Ok(out)
    }

    /// Number of outer terms with non-zero coefficient up to `bound`.
    pub fn surviving_terms(&self, params: &ParameterMap, bound: usize) -> Result<usize> {
        let mut count = 0;
        for (i, j) in self.indices.points(bound) {
            if !self.coefficient::<Rational>(params, i, j)?.is_zero() {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Either side of an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Expression {
    Term(FunctionTerm),
    Expansion(ExpansionSum),
}

impl Expression {
    /// Triangle of the expression to total degree `degree`.
    pub fn assemble<S: Scalar>(&self, params: &ParameterMap, degree: usize) -> Result<Biseries<S>> {
        match self {
            Expression::Term(t) => t.assemble(params, 0, 0, degree),
            Expression::Expansion(e) => e.assemble_bounded(params, degree, degree),
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        match self {
            Expression::Term(t) => t.collect_symbols(&mut out),
            Expression::Expansion(e) => {
                for f in e.num.iter().chain(&e.den) {
                    out.extend(f.param.symbols());
                }
                e.inner.collect_symbols(&mut out);
            }
        }
        out
    }
}

/// Convenience: the bare function `kind(params...)` at the plain variables.
pub fn plain_function(kind: Kind, params: &[(Symbol, &str)]) -> Result<FunctionTerm> {
    let mut map = BTreeMap::new();
    for (s, e) in params {
        map.insert(*s, ParamExpr::parse(e)?);
    }
    Ok(FunctionTerm { function: Some(FunctionSpec { kind, params: map }), ..Default::default() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use Symbol::*;

    fn profile() -> ParameterMap {
        ParameterMap::new()
            .with(Alpha, ratio(1, 2))
            .with(Beta, ratio(1, 3))
            .with(Gamma, ratio(5, 4))
            .with(Eps, ratio(3, 7))
            .with(Gamma1, ratio(6, 5))
            .with(Gamma2, ratio(10, 9))
    }

    #[test]
    fn param_expr_parsing() {
        let p = profile();
        let e = ParamExpr::parse("eps - alpha").unwrap();
        assert_eq!(e.eval(&p, 0, 0).unwrap(), ratio(3, 7) - ratio(1, 2));
        let e = ParamExpr::parse("gamma + i + j").unwrap();
        assert_eq!(e.eval(&p, 2, 3).unwrap(), ratio(5, 4) + ratio(5, 1));
        let e = ParamExpr::parse("-2*beta + 1/2 + i - 3").unwrap();
        assert_eq!(e.eval(&p, 1, 0).unwrap(), ratio(-2, 3) + ratio(1, 2) - ratio(2, 1));
        assert_eq!(ParamExpr::parse("1 - gamma").unwrap().eval(&p, 0, 0).unwrap(), ratio(-1, 4));
        assert!(ParamExpr::parse("zeta + 1").is_err());
        assert!(ParamExpr::parse("alpha +").is_err());
        assert!(ParamExpr::parse("").is_err());
        assert!(matches!(ParamExpr::parse("h").unwrap().eval(&p, 0, 0), Err(Error::UnboundSymbol(_))));
        let s = ParamExpr::parse("beta + i").unwrap().shifted(1);
        assert_eq!(s.source(), "beta + i + 1");
        assert_eq!(s.eval(&p, 2, 0).unwrap(), ratio(1, 3) + ratio(3, 1));
    }

    #[test]
    fn term_with_prefactors_matches_phi1_at_alpha_equal_gamma() {
        // (1-x)^{-beta} e^y is the series of Phi1(gamma, beta; gamma).
        let p = profile();
        let elementary = FunctionTerm {
            exp_y: Some(ParamExpr::parse("1").unwrap()),
            binomial_x: Some(ParamExpr::parse("-beta").unwrap()),
            ..Default::default()
        };
        let lhs = elementary.assemble::<Rational>(&p, 0, 0, 7).unwrap();
        let phi = plain_function(Kind::Phi1, &[(Alpha, "gamma"), (Beta, "beta"), (Gamma, "gamma")]).unwrap();
        let rhs = phi.assemble::<Rational>(&p, 0, 0, 7).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn expansion_outer_bound_beyond_degree_is_inert() {
        let p = profile();
        let e = ExpansionSum {
            indices: IndexSet::Double,
            sign: SignRule::AltIJ,
            num: vec![
                PochFactor { param: "eps - alpha".parse().unwrap(), index: IndexExpr::IJ },
                PochFactor { param: "beta".parse().unwrap(), index: IndexExpr::I },
            ],
            den: vec![PochFactor { param: "gamma".parse().unwrap(), index: IndexExpr::IJ }],
            inner: plain_function(Kind::Phi1, &[(Alpha, "eps + i + j"), (Beta, "beta + i"), (Gamma, "gamma + i + j")])
                .unwrap(),
        };
        let a = e.assemble_bounded::<Rational>(&p, 6, 6).unwrap();
        let b = e.assemble_bounded::<Rational>(&p, 6, 8).unwrap();
        assert_eq!(a, b);
        let p_alpha = p.clone().with(Eps, ratio(1, 2));
        assert_eq!(e.surviving_terms(&p_alpha, 6).unwrap(), 1);
    }

    #[test]
    fn kummer_in_geometric_argument() {
        // (1-x)^{-alpha} 1F1(alpha; g2; y/(1-x)) = sum (alpha)_{m+n} / ((g2)_n m! n!) x^m y^n
        let p = profile();
        let t = FunctionTerm {
            binomial_x: Some("-alpha".parse().unwrap()),
            function: Some(FunctionSpec {
                kind: Kind::Kummer1F1,
                params: [(Alpha, "alpha".parse().unwrap()), (Gamma, "gamma2".parse().unwrap())].into_iter().collect(),
            }),
            args: vec![ArgTransform::YOverOneMinusX],
            ..Default::default()
        };
        let s = t.assemble::<Rational>(&p, 0, 0, 6).unwrap();
        let a = ratio(1, 2);
        let g2 = ratio(10, 9);
        for (m, n, c) in s.iter() {
            let expect = pochhammer(&a, m + n) / (pochhammer(&g2, n) * factorial::<Rational>(m) * factorial::<Rational>(n));
            assert_eq!(c, &expect, "({m}, {n})");
        }
        let v = t.eval_f64(&p, 0.3, 0.2, 1e-16).unwrap();
        let deep = t.assemble::<f64>(&p, 0, 0, 40).unwrap();
        assert!((v - deep.eval_f64(0.3, 0.2)).abs() < 1e-12);
    }

    #[test]
    fn serde_shapes() {
        let e = Expression::Expansion(ExpansionSum {
            indices: IndexSet::OnlyJ,
            sign: SignRule::AltJ,
            num: vec![PochFactor { param: "alpha".parse().unwrap(), index: IndexExpr::J }],
            den: vec![],
            inner: plain_function(Kind::Psi2, &[(Alpha, "alpha + j"), (Gamma1, "gamma1"), (Gamma2, "eps2 + j")]).unwrap(),
        });
        let text = serde_json::to_string(&e).unwrap();
        assert!(text.contains(r#""type":"expansion""#));
        assert!(text.contains(r#""indices":"j""#));
        assert!(text.contains(r#""sign":"(-1)^j""#));
        let back: Expression = serde_json::from_str(&text).unwrap();
        assert_eq!(back, e);
        let syms = e.symbols();
        assert!(syms.contains(&Eps2) && syms.contains(&Gamma1) && !syms.contains(&Beta));
        let bad = r#"{"type":"term","function":{"kind":"phi1","params":{}},"args":["x^2","y"]}"#;
        assert!(serde_json::from_str::<Expression>(bad).is_err());
    }
}
