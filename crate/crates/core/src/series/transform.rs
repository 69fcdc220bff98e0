//! Elementary series and the closed list of argument substitutions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{factorial, pochhammer, Scalar};
use crate::series::biseries::Biseries;

/// `exp(c y) = sum c^n y^n / n!` on the pure-y edge.
pub fn exp_y_scaled<S: Scalar>(c: &S, degree: usize) -> Biseries<S> {
    let mut s = Biseries::zero(degree);
    let mut power = S::one();
    for n in 0..=degree {
        s.set(0, n, power.clone() / factorial::<S>(n));
        power = power * c.clone();
    }
    s
}

/// `(1 - x)^p = sum (-p)_m x^m / m!` on the pure-x edge.
pub fn binomial_x<S: Scalar>(p: &S, degree: usize) -> Biseries<S> {
    let neg = -p.clone();
    let mut s = Biseries::zero(degree);
    for m in 0..=degree {
        s.set(m, 0, pochhammer(&neg, m) / factorial::<S>(m));
    }
    s
}

/// An argument of a function term, drawn from the closed list of
/// substitutions that map the origin to itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArgTransform {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "y")]
    Y,
    #[serde(rename = "-x")]
    NegX,
    #[serde(rename = "-y")]
    NegY,
    /// `x / (x - 1) = -sum_{k>=1} x^k`
    #[serde(rename = "x/(x-1)")]
    MoebiusX,
    /// `y / (1 - x) = y sum_{k>=0} x^k`
    #[serde(rename = "y/(1-x)")]
    YOverOneMinusX,
}

impl ArgTransform {
    pub const ALL: [ArgTransform; 6] = [
        ArgTransform::X,
        ArgTransform::Y,
        ArgTransform::NegX,
        ArgTransform::NegY,
        ArgTransform::MoebiusX,
        ArgTransform::YOverOneMinusX,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ArgTransform::X => "x",
            ArgTransform::Y => "y",
            ArgTransform::NegX => "-x",
            ArgTransform::NegY => "-y",
            ArgTransform::MoebiusX => "x/(x-1)",
            ArgTransform::YOverOneMinusX => "y/(1-x)",
        }
    }

    /// The argument as a truncated series in `(x, y)`.
    pub fn series<S: Scalar>(self, degree: usize) -> Biseries<S> {
        match self {
            ArgTransform::X => Biseries::monomial(degree, 1, 0, S::one()),
            ArgTransform::Y => Biseries::monomial(degree, 0, 1, S::one()),
            ArgTransform::NegX => Biseries::monomial(degree, 1, 0, -S::one()),
            ArgTransform::NegY => Biseries::monomial(degree, 0, 1, -S::one()),
            ArgTransform::MoebiusX => Biseries::from_fn(degree, |m, n| {
                if n == 0 && m >= 1 {
                    -S::one()
                } else {
                    S::zero()
                }
            }),
            ArgTransform::YOverOneMinusX => {
                Biseries::from_fn(degree, |_, n| if n == 1 { S::one() } else { S::zero() })
            }
        }
    }

    /// Float value of the argument at `(x, y)`.
    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            ArgTransform::X => x,
            ArgTransform::Y => y,
            ArgTransform::NegX => -x,
            ArgTransform::NegY => -y,
            ArgTransform::MoebiusX => x / (x - 1.0),
            ArgTransform::YOverOneMinusX => y / (1.0 - x),
        }
    }
}

impl fmt::Display for ArgTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ArgTransform {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        ArgTransform::ALL
            .iter()
            .copied()
            .find(|t| t.name() == compact)
            .ok_or_else(|| Error::UnsupportedTransform(s.to_string()))
    }
}

/// Truncated composition `s(u(x,y), v(x,y))` where `u`, `v` vanish at the origin.
pub fn compose<S: Scalar>(s: &Biseries<S>, u: &Biseries<S>, v: &Biseries<S>) -> Biseries<S> {
    let degree = s.degree();
    debug_assert!(u.get(0, 0).is_zero() && v.get(0, 0).is_zero());
    let powers = |base: &Biseries<S>| {
        let mut out = vec![Biseries::one(degree)];
        for k in 1..=degree {
            let next = out[k - 1].mul(base);
            out.push(next);
        }
        out
    };
    let up = powers(u);
    let vp = powers(v);
    let mut out = Biseries::zero(degree);
    for (m, n, c) in s.iter() {
        if c.is_zero() {
            continue;
        }
        let term = up[m].mul(&vp[n]);
        out.add_shifted(&term, c, 0, 0);
    }
    out
}

/// `s(tx(x, y), ty(x, y))` truncated to `s.degree()`.
pub fn substitute_args<S: Scalar>(s: &Biseries<S>, tx: ArgTransform, ty: ArgTransform) -> Biseries<S> {
    if tx == ArgTransform::X && ty == ArgTransform::Y {
        return s.clone();
    }
    let degree = s.degree();
    compose(s, &tx.series(degree), &ty.series(degree))
}
