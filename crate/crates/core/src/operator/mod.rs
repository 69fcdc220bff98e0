//! Symbolic operators realized as diagonal actions on truncated series.
//!
//! Every operator here scales `x^m y^n` by a multiplier depending only on
//! `(m, n)`. The finite operator sums are kept as an alternative mode so
//! the eigenvalue form can be checked against the defining sums.

mod identities;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{factorial, pochhammer, pochhammer_table, Scalar};
use crate::series::Biseries;

pub use identities::{identity_catalog, verify_operator_identity, IdentitySpec, OperatorStep};

/// Which Euler operator an action is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
}

impl Var {
    fn index(self, m: usize, n: usize) -> usize {
        match self {
            Var::X => m,
            Var::Y => n,
        }
    }
}

/// Variables an `H` or `H-bar` operator acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Vars {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "xy")]
    XY,
}

impl Vars {
    /// Eigenvalue of `delta_1 + ... ` on `x^m y^n` restricted to these variables.
    pub fn degree(self, m: usize, n: usize) -> usize {
        match self {
            Vars::X => m,
            Vars::Y => n,
            Vars::XY => m + n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    ClosedForm,
    DoubleSum,
}

type Rule<S> = dyn Fn(usize, usize) -> Result<S> + Send + Sync;

/// A multiplier `lambda(m, n)` applied slotwise.
#[derive(Clone)]
pub struct DiagonalAction<S> {
    label: String,
    rule: Arc<Rule<S>>,
}

impl<S: Scalar> DiagonalAction<S> {
    pub fn new(label: impl Into<String>, rule: impl Fn(usize, usize) -> Result<S> + Send + Sync + 'static) -> Self {
        DiagonalAction { label: label.into(), rule: Arc::new(rule) }
    }

    pub fn identity() -> Self {
        Self::new("1", |_, _| Ok(S::one()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn multiplier(&self, m: usize, n: usize) -> Result<S> {
        (self.rule)(m, n)
    }

    /// Pointwise product of multipliers; `self` is applied after `inner`.
    pub fn then(&self, inner: &DiagonalAction<S>) -> DiagonalAction<S> {
        let (a, b) = (self.rule.clone(), inner.rule.clone());
        DiagonalAction::new(format!("{} . {}", self.label, inner.label), move |m, n| Ok(a(m, n)? * b(m, n)?))
    }

    pub fn apply(&self, s: &Biseries<S>) -> Result<Biseries<S>> {
        Biseries::try_from_fn(s.degree(), |m, n| {
            let c = s.coeff(m, n);
            if c.is_zero() {
                // Still run the rule so poles are reported regardless of sparsity.
                (self.rule)(m, n)?;
                return Ok(S::zero());
            }
            Ok(c.clone() * (self.rule)(m, n)?)
        })
    }
}

impl<S> fmt::Debug for DiagonalAction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagonalAction({})", self.label)
    }
}

fn pole(what: impl fmt::Display, m: usize, n: usize) -> Error {
    Error::Pole(format!("{what} vanishes at slot ({m}, {n})"))
}

/// `(-delta)_k`: multiplies `c[m,n]` by `(-m)_k` or `(-n)_k`.
pub fn delta_pochhammer_action<S: Scalar>(s: &Biseries<S>, which: Var, k: usize) -> Biseries<S> {
    s.map_slots(|m, n, c| c.clone() * pochhammer(&-S::from_i64(which.index(m, n) as i64), k))
}

/// `(delta + a)_k`: multiplies `c[m,n]` by `(m + a)_k` or `(n + a)_k`.
pub fn shifted_delta_action<S: Scalar>(s: &Biseries<S>, which: Var, k: usize, a: &S) -> Biseries<S> {
    s.map_slots(|m, n, c| c.clone() * pochhammer(&(S::from_i64(which.index(m, n) as i64) + a.clone()), k))
}

/// Eigenvalue `(a)_d / (b)_d` of `H(a, b)` with `d` the degree in `vars`.
pub fn h_action<S: Scalar + 'static>(a: S, b: S, vars: Vars) -> DiagonalAction<S> {
    let label = format!("H_{vars:?}");
    DiagonalAction::new(label, move |m, n| {
        let d = vars.degree(m, n);
        let den = pochhammer(&b, d);
        if den.is_zero() {
            return Err(pole("H denominator Pochhammer", m, n));
        }
        Ok(pochhammer(&a, d) / den)
    })
}

/// Eigenvalue `(b)_d / (a)_d` of `H-bar(a, b)`.
pub fn h_bar_action<S: Scalar + 'static>(a: S, b: S, vars: Vars) -> DiagonalAction<S> {
    let label = format!("Hbar_{vars:?}");
    DiagonalAction::new(label, move |m, n| {
        let d = vars.degree(m, n);
        let den = pochhammer(&a, d);
        if den.is_zero() {
            return Err(pole("H-bar denominator Pochhammer", m, n));
        }
        Ok(pochhammer(&b, d) / den)
    })
}

/// Finite operator sum for `H` / `H-bar` on one slot.
///
/// `den0` is the base of the denominator Pochhammer: `b` for `H`, and
/// `1 - a - d` for `H-bar`.
fn operator_sum<S: Scalar>(a: &S, b: &S, vars: Vars, m: usize, n: usize, den0: &S) -> Result<S> {
    let diff = b.clone() - a.clone();
    let (k1_max, k2_max) = match vars {
        Vars::X => (m, 0),
        Vars::Y => (0, n),
        Vars::XY => (m, n),
    };
    let diff_t = pochhammer_table(&diff, k1_max + k2_max);
    let den_t = pochhammer_table(den0, k1_max + k2_max);
    let m_t = pochhammer_table(&-S::from_i64(m as i64), k1_max);
    let n_t = pochhammer_table(&-S::from_i64(n as i64), k2_max);
    let fact = pochhammer_table(&S::one(), k1_max.max(k2_max));
    let mut total = S::zero();
    for k1 in 0..=k1_max {
        for k2 in 0..=k2_max {
            let k = k1 + k2;
            let top = diff_t[k].clone() * m_t[k1].clone() * n_t[k2].clone();
            if top.is_zero() {
                continue;
            }
            let den = den_t[k].clone() * fact[k1].clone() * fact[k2].clone();
            if den.is_zero() {
                return Err(pole("operator-sum denominator", m, n));
            }
            total = total + top / den;
        }
    }
    Ok(total)
}

/// `H(a, b)` applied to `s` in the requested mode.
pub fn apply_h<S: Scalar + 'static>(s: &Biseries<S>, a: &S, b: &S, vars: Vars, mode: Mode) -> Result<Biseries<S>> {
    match mode {
        Mode::ClosedForm => h_action(a.clone(), b.clone(), vars).apply(s),
        Mode::DoubleSum => {
            if (0..=s.degree()).any(|d| pochhammer(b, d).is_zero()) {
                return Err(Error::Pole(format!("H lower parameter is a non-positive integer within degree {}", s.degree())));
            }
            Biseries::try_from_fn(s.degree(), |m, n| Ok(s.coeff(m, n).clone() * operator_sum(a, b, vars, m, n, b)?))
        }
    }
}

/// `H-bar(a, b)` applied to `s` in the requested mode.
pub fn apply_h_bar<S: Scalar + 'static>(s: &Biseries<S>, a: &S, b: &S, vars: Vars, mode: Mode) -> Result<Biseries<S>> {
    match mode {
        Mode::ClosedForm => h_bar_action(a.clone(), b.clone(), vars).apply(s),
        Mode::DoubleSum => Biseries::try_from_fn(s.degree(), |m, n| {
            let d = vars.degree(m, n);
            if pochhammer(a, d).is_zero() {
                return Err(pole("H-bar eigenvalue denominator", m, n));
            }
            let den0 = S::one() - a.clone() - S::from_i64(d as i64);
            Ok(s.coeff(m, n).clone() * operator_sum(a, b, vars, m, n, &den0)?)
        }),
    }
}

/// Multiplier `(h)_{m+n} / ((h)_m (h)_n)` of the nabla operator.
pub fn nabla_action<S: Scalar + 'static>(h: S) -> DiagonalAction<S> {
    DiagonalAction::new("nabla", move |m, n| {
        let den = pochhammer(&h, m) * pochhammer(&h, n);
        if den.is_zero() {
            return Err(pole("nabla denominator", m, n));
        }
        Ok(pochhammer(&h, m + n) / den)
    })
}

/// Multiplier `(h)_m (h)_n / (h)_{m+n}` of the Delta operator.
pub fn delta_op_action<S: Scalar + 'static>(h: S) -> DiagonalAction<S> {
    DiagonalAction::new("Delta", move |m, n| {
        let den = pochhammer(&h, m + n);
        if den.is_zero() {
            return Err(pole("Delta denominator", m, n));
        }
        Ok(pochhammer(&h, m) * pochhammer(&h, n) / den)
    })
}

pub fn apply_nabla<S: Scalar + 'static>(s: &Biseries<S>, h: &S) -> Result<Biseries<S>> {
    nabla_action(h.clone()).apply(s)
}

pub fn apply_delta_op<S: Scalar + 'static>(s: &Biseries<S>, h: &S) -> Result<Biseries<S>> {
    delta_op_action(h.clone()).apply(s)
}

/// First sum form of nabla on one slot: `sum (-m)_k (-n)_k / ((h)_k k!)`.
pub fn nabla_sum<S: Scalar>(h: &S, m: usize, n: usize) -> Result<S> {
    k_sum(m, n, |k| pochhammer(h, k))
}

/// First sum form of Delta: `sum (-m)_k (-n)_k / ((1 - h - m - n)_k k!)`.
pub fn delta_op_sum<S: Scalar>(h: &S, m: usize, n: usize) -> Result<S> {
    let base = S::one() - h.clone() - S::from_i64((m + n) as i64);
    k_sum(m, n, |k| pochhammer(&base, k))
}

/// Composite `nabla(h) Delta(g)` by its k-sum:
/// `sum (h - g)_k (-m)_k (-n)_k / ((h)_k (1 - g - m - n)_k k!)`.
pub fn nabla_delta_sum<S: Scalar>(h: &S, g: &S, m: usize, n: usize) -> Result<S> {
    let base = S::one() - g.clone() - S::from_i64((m + n) as i64);
    let diff = h.clone() - g.clone();
    let mut total = S::zero();
    for k in 0..=m.min(n) {
        let top = pochhammer(&diff, k)
            * pochhammer(&-S::from_i64(m as i64), k)
            * pochhammer(&-S::from_i64(n as i64), k);
        if top.is_zero() {
            continue;
        }
        let den = pochhammer(h, k) * pochhammer(&base, k) * factorial::<S>(k);
        if den.is_zero() {
            return Err(pole("nabla-Delta k-sum denominator", m, n));
        }
        total = total + top / den;
    }
    Ok(total)
}

fn k_sum<S: Scalar>(m: usize, n: usize, den: impl Fn(usize) -> S) -> Result<S> {
    let mut total = S::zero();
    for k in 0..=m.min(n) {
        let top = pochhammer(&-S::from_i64(m as i64), k) * pochhammer(&-S::from_i64(n as i64), k);
        let d = den(k) * factorial::<S>(k);
        if d.is_zero() {
            return Err(pole("k-sum denominator", m, n));
        }
        total = total + top / d;
    }
    Ok(total)
}

/// `nabla(h) Delta(g)` applied to `s`.
pub fn apply_nabla_delta<S: Scalar + 'static>(s: &Biseries<S>, h: &S, g: &S, mode: Mode) -> Result<Biseries<S>> {
    match mode {
        Mode::ClosedForm => nabla_action(h.clone()).then(&delta_op_action(g.clone())).apply(s),
        Mode::DoubleSum => {
            Biseries::try_from_fn(s.degree(), |m, n| Ok(s.coeff(m, n).clone() * nabla_delta_sum(h, g, m, n)?))
        }
    }
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::scalar::{ratio, Rational};
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..13).prop_map(|(p, q)| ratio(p, q))
    }

    fn generic() -> impl Strategy<Value = Rational> {
        // Avoids non-positive integers so denominators stay pole-free.
        rational().prop_filter("not a non-positive integer", |r| !Scalar::is_nonpositive_integer(r))
    }

    fn triangle(degree: usize) -> impl Strategy<Value = Biseries<Rational>> {
        proptest::collection::vec(rational(), crate::series::biseries::triangle_len(degree)).prop_map(move |v| {
            let mut it = v.into_iter();
            Biseries::from_fn(degree, |_, _| it.next().unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn h_modes_agree(a in rational(), b in generic()) {
            let s = Biseries::from_fn(12, |m, n| ratio((m * 13 + n) as i64 + 1, 1));
            prop_assert_eq!(
                apply_h(&s, &a, &b, Vars::XY, Mode::ClosedForm).unwrap(),
                apply_h(&s, &a, &b, Vars::XY, Mode::DoubleSum).unwrap()
            );
        }

        #[test]
        fn inverse_pairs(a in generic(), b in generic(), s in triangle(8)) {
            let there = apply_h(&s, &a, &b, Vars::XY, Mode::ClosedForm).unwrap();
            prop_assert_eq!(apply_h_bar(&there, &a, &b, Vars::XY, Mode::ClosedForm).unwrap(), s.clone());
            let back = apply_h_bar(&s, &a, &b, Vars::XY, Mode::ClosedForm).unwrap();
            prop_assert_eq!(apply_h(&back, &a, &b, Vars::XY, Mode::ClosedForm).unwrap(), s.clone());
            let nd = apply_nabla(&apply_delta_op(&s, &a).unwrap(), &a).unwrap();
            prop_assert_eq!(nd, s);
        }
    }
}
