use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// Bivariate power series `sum c[m,n] x^m y^n` truncated to total degree
/// `m + n <= degree`.
///
/// Coefficients are stored densely in graded-lex order: degree 0, then
/// `x, y`, then `x^2, xy, y^2`, and so on. Slot `(m, n)` lives at
/// `k(k+1)/2 + n` with `k = m + n`.
#[derive(Clone, PartialEq)]
pub struct Biseries<S> {
    degree: usize,
    coeffs: Vec<S>,
}

#[inline]
fn slot(m: usize, n: usize) -> usize {
    let k = m + n;
    k * (k + 1) / 2 + n
}

/// Number of stored coefficients for a degree bound.
pub fn triangle_len(degree: usize) -> usize {
    (degree + 1) * (degree + 2) / 2
}

/// Graded-lex iterator over every `(m, n)` with `m + n <= degree`.
pub fn graded_lex(degree: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=degree).flat_map(|k| (0..=k).map(move |n| (k - n, n)))
}

impl<S: Scalar> Biseries<S> {
    pub fn zero(degree: usize) -> Self {
        Biseries { degree, coeffs: vec![S::zero(); triangle_len(degree)] }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(degree, 0, 0, S::one())
    }

    /// `c x^m y^n`, or zero if the monomial lies outside the triangle.
    pub fn monomial(degree: usize, m: usize, n: usize, c: S) -> Self {
        let mut s = Self::zero(degree);
        if m + n <= degree {
            s.coeffs[slot(m, n)] = c;
        }
        s
    }

    /// Builds a triangle from a coefficient rule.
    pub fn from_fn(degree: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let coeffs = graded_lex(degree).map(|(m, n)| f(m, n)).collect();
        Biseries { degree, coeffs }
    }

    pub fn try_from_fn(degree: usize, mut f: impl FnMut(usize, usize) -> Result<S>) -> Result<Self> {
        let coeffs = graded_lex(degree).map(|(m, n)| f(m, n)).collect::<Result<Vec<_>>>()?;
        Ok(Biseries { degree, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `x^m y^n`; zero outside the triangle.
    pub fn get(&self, m: usize, n: usize) -> S {
        if m + n <= self.degree {
            self.coeffs[slot(m, n)].clone()
        } else {
            S::zero()
        }
    }

    pub fn coeff(&self, m: usize, n: usize) -> &S {
        &self.coeffs[slot(m, n)]
    }

    pub fn set(&mut self, m: usize, n: usize, c: S) {
        assert!(m + n <= self.degree, "slot ({m}, {n}) outside degree {}", self.degree);
        self.coeffs[slot(m, n)] = c;
    }

    /// `(m, n, c)` for every slot in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        graded_lex(self.degree).zip(self.coeffs.iter()).map(|((m, n), c)| (m, n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Same series cut (or zero-padded) to another degree bound.
    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_fn(degree, |m, n| self.get(m, n))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_degree(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Biseries { degree: self.degree, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_degree(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Biseries { degree: self.degree, coeffs }
    }

    pub fn scale(&self, c: &S) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Biseries { degree: self.degree, coeffs }
    }

    /// `self += c * x^i y^j * other`, dropping everything above the degree bound.
    pub fn add_shifted(&mut self, other: &Self, c: &S, i: usize, j: usize) {
        if c.is_zero() || i + j > self.degree {
            return;
        }
        let room = self.degree - i - j;
        for (m, n, a) in other.iter() {
            if m + n > room {
                break;
            }
            if a.is_zero() {
                continue;
            }
            let idx = slot(m + i, n + j);
            self.coeffs[idx] = self.coeffs[idx].clone() + c.clone() * a.clone();
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_degree(other);
        let mut out = Self::zero(self.degree);
        for (m, n, a) in self.iter() {
            if a.is_zero() {
                continue;
            }
            out.add_shifted(other, a, m, n);
        }
        out
    }

    /// Multiplies every slot by `f(m, n)`.
    pub fn map_slots(&self, mut f: impl FnMut(usize, usize, &S) -> S) -> Self {
        let coeffs = self.iter().map(|(m, n, c)| f(m, n, c)).collect();
        Biseries { degree: self.degree, coeffs }
    }

    /// Float evaluation of the truncated polynomial at `(x, y)`.
    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut xp = vec![1.0; self.degree + 1];
        let mut yp = vec![1.0; self.degree + 1];
        for k in 1..=self.degree {
            xp[k] = xp[k - 1] * x;
            yp[k] = yp[k - 1] * y;
        }
        // Sum high degrees first so the small tail is not swamped.
        let mut total = 0.0;
        for k in (0..=self.degree).rev() {
            let mut diag = 0.0;
            for n in 0..=k {
                diag += self.coeffs[slot(k - n, n)].to_f64() * xp[k - n] * yp[n];
            }
            total += diag;
        }
        total
    }

    pub fn to_f64_series(&self) -> Biseries<f64> {
        Biseries { degree: self.degree, coeffs: self.coeffs.iter().map(Scalar::to_f64).collect() }
    }

    /// First slot in graded-lex order where the two triangles differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<(usize, usize)> {
        self.check_degree(other);
        graded_lex(self.degree)
            .zip(self.coeffs.iter().zip(&other.coeffs))
            .find(|(_, (a, b))| a != b)
            .map(|(mn, _)| mn)
    }

    fn check_degree(&self, other: &Self) {
        assert_eq!(self.degree, other.degree, "degree bounds differ");
    }
}

impl<S: Scalar> fmt::Debug for Biseries<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        write!(f, "Biseries[N={}](", self.degree)?;
        for (m, n, c) in self.iter() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) x^{m} y^{n}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

/// JSON form of an exact triangle: `{"degree": N, "coeffs": [[m, n, "p/q"], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangleJson {
    pub degree: usize,
    pub coeffs: Vec<(usize, usize, String)>,
}

impl From<&Biseries<Rational>> for TriangleJson {
    fn from(s: &Biseries<Rational>) -> Self {
        TriangleJson {
            degree: s.degree,
            coeffs: s.iter().map(|(m, n, c)| (m, n, format_rational(c))).collect(),
        }
    }
}

impl TryFrom<&TriangleJson> for Biseries<Rational> {
    type Error = Error;

    fn try_from(t: &TriangleJson) -> Result<Self> {
        let mut s = Biseries::zero(t.degree);
        for (m, n, text) in &t.coeffs {
            if m + n > t.degree {
                return Err(Error::Parse(format!("slot ({m}, {n}) exceeds degree {}", t.degree)));
            }
            s.set(*m, *n, parse_rational(text)?);
        }
        Ok(s)
    }
}

impl Biseries<Rational> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&TriangleJson::from(self)).expect("triangle serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let t: TriangleJson = serde_json::from_str(text)?;
        Biseries::try_from(&t)
    }
}
