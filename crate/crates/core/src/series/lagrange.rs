//! Single coefficients of a compositional inverse via Lagrange inversion,
//! `[t^m] g^{-1} = (1/m) [w^{m-1}] (w / g(w))^m`.
//!
//! This path never runs the degree-by-degree inversion, so it serves as an
//! independent check on it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactSeries;
use crate::combinat::binomial;
use crate::error::{precondition, Result};

/// The trinomial `t - t^n + t^{2n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparseTrinomial {
    n: usize,
}

impl SparseTrinomial {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return precondition(format!("trinomial arity must be at least 2, got {n}"));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(exponent, coefficient)` for the three terms.
    pub fn terms(&self) -> [(usize, i64); 3] {
        [(1, 1), (self.n, -1), (2 * self.n - 1, 1)]
    }

    pub fn to_series(&self, order: usize) -> ExactSeries {
        ExactSeries::from_int_terms(order, &self.terms())
    }

    /// `[t^m]` of the inverse in closed form.
    ///
    /// With `v = w^{n-1}`, `w/g(w) = 1/(1 - v + v^2) = (1 + v)/(1 + v^3)`, so
    /// for `m = 1 + p(n-1)` the coefficient is
    /// `(1/m) sum_b (-1)^b C(m+b-1, b) C(m, p-3b)`, and zero for other `m`.
    pub fn inverse_coefficient(&self, m: usize) -> Result<BigInt> {
        if m == 0 {
            return precondition("coefficient index must be at least 1");
        }
        let s = self.n - 1;
        if !(m - 1).is_multiple_of(s) {
            return Ok(BigInt::zero());
        }
        let p = (m - 1) / s;
        let mut sum = BigInt::zero();
        for b in 0..=p / 3 {
            let term = BigInt::from(binomial(m + b - 1, b)) * BigInt::from(binomial(m, p - 3 * b));
            if b % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let m = BigInt::from(m);
        debug_assert!((&sum % &m).is_zero());
        Ok(sum / m)
    }
}

/// `[t^m]` of the compositional inverse of `g`, by Lagrange inversion.
///
/// Requires `g(0) = 0`, `g'(0) = 1` and `g` known to order at least `m`.
pub fn lagrange_coefficient(g: &ExactSeries, m: usize) -> Result<BigRational> {
    if m == 0 {
        return precondition("coefficient index must be at least 1");
    }
    if !g.coeff(0).is_zero() || g.order() < 1 || !g.coeff(1).is_one() {
        return precondition("Lagrange inversion needs g(0) = 0 and g'(0) = 1");
    }
    if g.order() < m {
        return precondition(format!(
            "series known to order {} cannot determine coefficient {m} of its inverse",
            g.order()
        ));
    }
    // h = g / w, known to order m - 1
    let h = ExactSeries::from_coeffs(g.coeffs()[1..=m].to_vec())?;
    let r = reciprocal(&h);
    let pow = power(&r, m);
    Ok(pow.coeff(m - 1) / BigRational::from_integer(m.into()))
}

/// `1/h` for `h(0) = 1`, by the textbook triangular solve.
fn reciprocal(h: &ExactSeries) -> ExactSeries {
    let order = h.order();
    let mut out = vec![BigRational::zero(); order + 1];
    out[0] = BigRational::one();
    for k in 1..=order {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            acc += h.coeff(j) * &out[k - j];
        }
        out[k] = -acc;
    }
    ExactSeries::from_coeffs(out).expect("nonempty")
}

fn power(base: &ExactSeries, mut e: usize) -> ExactSeries {
    let mut acc = ExactSeries::from_terms(base.order(), [(0, BigRational::one())]);
    let mut sq = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&sq);
        }
        e >>= 1;
        if e > 0 {
            sq = sq.mul(&sq);
        }
    }
    acc
}
