//! Named parameter symbols and their bindings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Every parameter symbol that appears in a function, operator or formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symbol {
    Alpha,
    Beta,
    Gamma,
    Gamma1,
    Gamma2,
    Beta1,
    Beta2,
    Alpha1,
    Alpha2,
    Eps,
    Eps1,
    Eps2,
    H,
    G,
}

impl Symbol {
    pub const ALL: [Symbol; 14] = [
        Symbol::Alpha,
        Symbol::Beta,
        Symbol::Gamma,
        Symbol::Gamma1,
        Symbol::Gamma2,
        Symbol::Beta1,
        Symbol::Beta2,
        Symbol::Alpha1,
        Symbol::Alpha2,
        Symbol::Eps,
        Symbol::Eps1,
        Symbol::Eps2,
        Symbol::H,
        Symbol::G,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Alpha => "alpha",
            Symbol::Beta => "beta",
            Symbol::Gamma => "gamma",
            Symbol::Gamma1 => "gamma1",
            Symbol::Gamma2 => "gamma2",
            Symbol::Beta1 => "beta1",
            Symbol::Beta2 => "beta2",
            Symbol::Alpha1 => "alpha1",
            Symbol::Alpha2 => "alpha2",
            Symbol::Eps => "eps",
            Symbol::Eps1 => "eps1",
            Symbol::Eps2 => "eps2",
            Symbol::H => "h",
            Symbol::G => "g",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let alias = match s {
            "epsilon" => "eps",
            "epsilon1" => "eps1",
            "epsilon2" => "eps2",
            other => other,
        };
        Symbol::ALL
            .iter()
            .copied()
            .find(|sym| sym.name() == alias)
            .ok_or_else(|| Error::Parse(format!("unknown parameter symbol `{s}`")))
    }
}

/// Bindings `symbol -> exact rational`.
///
/// Parameters are always stored exactly; float evaluation converts on use.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParameterMap {
    values: BTreeMap<Symbol, Rational>,
}

impl ParameterMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, sym: Symbol, value: Rational) -> Self {
        self.values.insert(sym, value);
        self
    }

    pub fn set(&mut self, sym: Symbol, value: Rational) {
        self.values.insert(sym, value);
    }

    pub fn get(&self, sym: Symbol) -> Option<&Rational> {
        self.values.get(&sym)
    }

    pub fn require(&self, sym: Symbol) -> Result<&Rational> {
        self.values.get(&sym).ok_or_else(|| Error::UnboundSymbol(sym.to_string()))
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        self.values.contains_key(&sym)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, &Rational)> {
        self.values.iter().map(|(s, v)| (*s, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Copy of `self` with the entries of `other` layered on top.
    pub fn overlaid(&self, other: &ParameterMap) -> ParameterMap {
        let mut out = self.clone();
        for (s, v) in other.iter() {
            out.set(s, v.clone());
        }
        out
    }

    /// Sub-map restricted to `symbols`; fails on the first unbound one.
    pub fn restrict(&self, symbols: &[Symbol]) -> Result<ParameterMap> {
        let mut out = ParameterMap::new();
        for &s in symbols {
            out.set(s, self.require(s)?.clone());
        }
        Ok(out)
    }

    /// Rejects a binding that sits on a Pochhammer-denominator pole.
    pub fn check_denominator(&self, sym: Symbol) -> Result<()> {
        let v = self.require(sym)?;
        if v.is_nonpositive_integer() {
            return Err(Error::Pole(format!(
                "denominator parameter {sym} = {v} is a non-positive integer"
            )));
        }
        Ok(())
    }
}

impl FromIterator<(Symbol, Rational)> for ParameterMap {
    fn from_iter<I: IntoIterator<Item = (Symbol, Rational)>>(iter: I) -> Self {
        ParameterMap { values: iter.into_iter().collect() }
    }
}

impl Serialize for ParameterMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let as_text: BTreeMap<Symbol, String> =
            self.values.iter().map(|(k, v)| (*k, format_rational(v))).collect();
        as_text.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ParameterMap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(deserializer)?;
        let mut out = ParameterMap::new();
        for (k, v) in raw {
            let sym: Symbol = k.parse().map_err(serde::de::Error::custom)?;
            let val = parse_rational(&v).map_err(serde::de::Error::custom)?;
            out.set(sym, val);
        }
        Ok(out)
    }
}
