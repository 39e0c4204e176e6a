//! Exact truncated formal power series in one variable `t`.
//!
//! A series carries an explicit truncation order `N`: coefficients of
//! `t^0 ..= t^N` are known exactly, everything above is unknown (not zero).
//! Binary operations truncate to the smaller order of their operands.

mod invert;
mod lagrange;
mod text;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{precondition, Result};

pub use invert::StridedInverter;
pub use lagrange::{lagrange_coefficient, SparseTrinomial};
pub use text::{parse_polynomial, SeriesJson};

/// Truncated power series with arbitrary-precision rational coefficients.
///
/// Invariant: `coeffs.len() == order + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactSeries {
    coeffs: Vec<BigRational>,
}

impl ExactSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// The series `t`, known to `order`.
    pub fn identity(order: usize) -> Self {
        Self::from_int_terms(order, &[(1, 1)])
    }

    pub fn from_int_terms(order: usize, terms: &[(usize, i64)]) -> Self {
        Self::from_terms(order, terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    /// Builds a series from `(exponent, coefficient)` pairs; exponents above
    /// `order` are dropped and repeated exponents accumulate.
    pub fn from_terms<C, I>(order: usize, terms: I) -> Self
    where
        C: Into<BigRational>,
        I: IntoIterator<Item = (usize, C)>,
    {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            if e <= order {
                s.coeffs[e] += c.into();
            }
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return precondition("a series needs at least the constant coefficient");
        }
        Ok(Self { coeffs })
    }

    pub fn from_integers<I: IntoIterator<Item = BigInt>>(coeffs: I) -> Result<Self> {
        Self::from_coeffs(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `t^k`.
    ///
    /// # Panics
    /// If `k` exceeds the truncation order; such coefficients are unknown.
    pub fn coeff(&self, k: usize) -> &BigRational {
        assert!(
            k <= self.order(),
            "coefficient t^{k} is beyond the truncation order {}",
            self.order()
        );
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coeffs.iter().map(|c| c.to_integer()).collect())
    }

    /// `g(0) = 0` and `g'(0) != 0`.
    pub fn is_invertible(&self) -> bool {
        self.coeffs[0].is_zero() && self.order() >= 1 && !self.coeffs[1].is_zero()
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when the series equals `t` up to its order.
    pub fn is_identity(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| if k == 1 { c.is_one() } else { c.is_zero() })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        if let (Some(a), Some(b)) = (self.integer_coeffs(), other.integer_coeffs()) {
            let prod = convolve(&a[..=order], &b[..=order], order);
            return Self {
                coeffs: prod.into_iter().map(BigRational::from_integer).collect(),
            };
        }
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// `self(inner(t))` by Horner evaluation, truncated at the smaller order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return precondition("composition needs an inner series with zero constant term");
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// The compositional inverse of a series `t + O(t^2)`.
    ///
    /// Solves `self(f(t)) = t` degree by degree. Integer inputs stay in the
    /// integers throughout.
    pub fn invert(&self) -> Result<Self> {
        invert::invert(self)
    }

    /// Operadic desuspension on generating series: `-g(-t)`.
    pub fn desuspend(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { -c } else { c.clone() })
                .collect(),
        }
    }

    /// Polynomial text without the `O(...)` tail, e.g. `t - t^4 + 3 t^7`.
    pub fn to_polynomial_string(&self) -> String {
        text::format_polynomial(self)
    }

    pub fn parse(text: &str, order: Option<usize>) -> Result<Self> {
        text::parse_series(text, order)
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson::from(self)
    }

    /// Index of the first strictly negative coefficient, if any.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.is_negative())
    }
}

impl fmt::Display for ExactSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = self.to_polynomial_string();
        if poly == "0" {
            write!(f, "O(t^{})", self.order() + 1)
        } else {
            write!(f, "{poly} + O(t^{})", self.order() + 1)
        }
    }
}

impl fmt::Debug for ExactSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactSeries({self})")
    }
}

impl Add for &ExactSeries {
    type Output = ExactSeries;
    fn add(self, rhs: Self) -> ExactSeries {
        ExactSeries::add(self, rhs)
    }
}

impl Sub for &ExactSeries {
    type Output = ExactSeries;
    fn sub(self, rhs: Self) -> ExactSeries {
        ExactSeries::sub(self, rhs)
    }
}

impl Mul for &ExactSeries {
    type Output = ExactSeries;
    fn mul(self, rhs: Self) -> ExactSeries {
        ExactSeries::mul(self, rhs)
    }
}

impl Neg for &ExactSeries {
    type Output = ExactSeries;
    fn neg(self) -> ExactSeries {
        ExactSeries::neg(self)
    }
}

fn convolve(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().take(order + 1 - i).enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Parity of the generator degree; only this affects dimensions and signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(d: i64) -> Self {
        if d.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

/// Generating series of the totally associative operad in closed form:
/// `t + t^n + t^{2n-1} + ...` for even degree, `t - t^n + t^{2n-1}` for odd.
pub fn tass_closed_form(n: usize, parity: Parity, order: usize) -> Result<ExactSeries> {
    if n < 2 {
        return precondition(format!("arity must be at least 2, got {n}"));
    }
    let terms = (0..)
        .map(|p| p * (n - 1) + 1)
        .take_while(|&e| e <= order)
        .enumerate()
        .filter_map(|(p, e)| match parity {
            Parity::Even => Some((e, BigRational::one())),
            Parity::Odd if p <= 2 => {
                let sign = if p % 2 == 0 { 1 } else { -1 };
                Some((e, BigRational::from_integer(sign.into())))
            }
            Parity::Odd => None,
        });
    Ok(ExactSeries::from_terms(order, terms))
}
