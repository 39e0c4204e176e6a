use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ExactSeries;
use crate::error::{precondition, Result};

/// Coefficient ring for the inversion recurrence. The only division the
/// recurrence performs is by a positive integer that is known to divide.
pub trait RecurrenceRing:
    Clone + Zero + One + for<'a> Add<&'a Self, Output = Self> + Neg<Output = Self>
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self>,
{
    fn mul_small(&self, k: i64) -> Self;
    fn div_exact(&self, k: u64) -> Self;
}

impl RecurrenceRing for BigInt {
    fn mul_small(&self, k: i64) -> Self {
        self * k
    }

    fn div_exact(&self, k: u64) -> Self {
        let (q, r) = self.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "inexact division in integer recurrence");
        q
    }
}

impl RecurrenceRing for BigRational {
    fn mul_small(&self, k: i64) -> Self {
        self * BigRational::from_integer(k.into())
    }

    fn div_exact(&self, k: u64) -> Self {
        self / BigRational::from_integer(k.into())
    }
}

struct PowerTrack<R> {
    exponent: i64,
    coeffs: Vec<R>,
}

/// Streaming compositional inverse of `g(t) = t + sum_{e>=2} g_e t^e`.
///
/// Write `s` for the gcd of `e - 1` over the support of `g`, `u = t^s`,
/// `g = t G(u)` and `f = t H(u)`. Then `g(f) = t` becomes
/// `H = 1 - sum_e g_e u^{(e-1)/s} H^e`, solved one coefficient of `H` at a
/// time. The powers `H^e` are extended with the J.C.P. Miller recurrence
/// `q [u^q] H^e = sum_{j=1..q} ((e+1) j - q) H_j [u^{q-j}] H^e`, so every
/// step costs O(q) ring multiplications per support term.
pub struct StridedInverter<R>
where
    for<'a> &'a R: Mul<&'a R, Output = R>,
{
    stride: usize,
    /// `(shift in u, coefficient g_e, index into powers)`
    terms: Vec<(usize, R, usize)>,
    powers: Vec<PowerTrack<R>>,
    h: Vec<R>,
}

impl<R: RecurrenceRing> StridedInverter<R>
where
    for<'a> &'a R: Mul<&'a R, Output = R>,
{
    /// `support` lists `(exponent, coefficient)` for the terms of degree >= 2;
    /// the linear coefficient is taken to be 1.
    pub fn new(support: Vec<(usize, R)>) -> Self {
        let support: Vec<_> = support.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let stride = support
            .iter()
            .fold(0usize, |acc, (e, _)| acc.gcd(&(e - 1)))
            .max(1);
        let mut powers: Vec<PowerTrack<R>> = Vec::new();
        let mut terms = Vec::with_capacity(support.len());
        for (e, c) in support {
            let slot = match powers.iter().position(|p| p.exponent == e as i64) {
                Some(i) => i,
                None => {
                    powers.push(PowerTrack {
                        exponent: e as i64,
                        coeffs: vec![R::one()],
                    });
                    powers.len() - 1
                }
            };
            terms.push(((e - 1) / stride, c, slot));
        }
        Self {
            stride,
            terms,
            powers,
            h: vec![R::one()],
        }
    }

    /// Exponents of `t` that can carry a nonzero coefficient are `1 + stride * k`.
    pub fn stride(&self) -> usize {
        self.stride
    }

    /// Number of reduced coefficients computed so far.
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// Exponent of `t` belonging to reduced index `k`.
    pub fn exponent(&self, k: usize) -> usize {
        1 + self.stride * k
    }

    pub fn coefficient(&self, k: usize) -> &R {
        &self.h[k]
    }

    pub fn reduced_coefficients(&self) -> &[R] {
        &self.h
    }

    /// Computes the next reduced coefficient and returns `(exponent, value)`.
    pub fn advance(&mut self) -> (usize, &R) {
        let p = self.h.len();
        let mut next = R::zero();
        for (shift, c, slot) in &self.terms {
            if *shift <= p {
                let term = c * &self.powers[*slot].coeffs[p - shift];
                next = next + &(-term);
            }
        }
        self.h.push(next);
        // Extend each tracked power to degree p; H_0..H_p are now known.
        let h = &self.h;
        for track in &mut self.powers {
            let q = p as i64;
            let mut acc = R::zero();
            for (j, hj) in h.iter().enumerate().take(p + 1).skip(1) {
                let k = (track.exponent + 1) * j as i64 - q;
                if k == 0 || hj.is_zero() {
                    continue;
                }
                let prev = &track.coeffs[p - j];
                if prev.is_zero() {
                    continue;
                }
                acc = acc + &(hj * prev).mul_small(k);
            }
            let value = if p == 0 {
                R::one()
            } else {
                acc.div_exact(p as u64)
            };
            track.coeffs.push(value);
        }
        (self.exponent(p), &self.h[p])
    }
}

pub(super) fn invert(g: &ExactSeries) -> Result<ExactSeries> {
    if !g.coeffs[0].is_zero() {
        return precondition("inversion needs g(0) = 0");
    }
    let order = g.order();
    if order == 0 {
        return precondition("inversion needs the series known to order at least 1");
    }
    if !g.coeffs[1].is_one() {
        return precondition("inversion is implemented for series with linear coefficient 1");
    }
    if let Some(ints) = g.integer_coeffs() {
        let support = ints
            .into_iter()
            .enumerate()
            .skip(2)
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let out = run(StridedInverter::<BigInt>::new(support), order);
        return Ok(ExactSeries::from_terms(
            order,
            out.into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(c))),
        ));
    }
    let support = g
        .coeffs
        .iter()
        .cloned()
        .enumerate()
        .skip(2)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let out = run(StridedInverter::<BigRational>::new(support), order);
    Ok(ExactSeries::from_terms(order, out))
}

fn run<R: RecurrenceRing>(mut inv: StridedInverter<R>, order: usize) -> Vec<(usize, R)>
where
    for<'a> &'a R: Mul<&'a R, Output = R>,
{
    let mut out = vec![(1, R::one())];
    while inv.exponent(inv.len()) <= order {
        let (e, c) = inv.advance();
        out.push((e, c.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trinomial(n: usize, order: usize) -> ExactSeries {
        ExactSeries::from_int_terms(order, &[(1, 1), (n, -1), (2 * n - 1, 1)])
    }

    fn ints(s: &ExactSeries) -> Vec<i64> {
        s.coeffs()
            .iter()
            .map(|c| i64::try_from(c.to_integer()).unwrap())
            .collect()
    }

    #[test]
    fn inverts_identity() {
        let t = ExactSeries::identity(7);
        assert_eq!(t.invert().unwrap(), t);
    }

    #[test]
    fn published_inverse_n2() {
        let f = trinomial(2, 9).invert().unwrap();
        assert_eq!(ints(&f), vec![0, 1, 1, 1, 0, -4, -14, -30, -33, 55]);
    }

    #[test]
    fn rejects_non_unit_linear_term() {
        let g = ExactSeries::from_terms(4, [(1, BigRational::from_integer(2.into()))]);
        assert!(g.invert().is_err());
        let g = ExactSeries::from_int_terms(4, &[(0, 1), (1, 1)]);
        assert!(g.invert().is_err());
    }

    #[test]
    fn rational_inverse_round_trips() {
        let half = BigRational::new(1.into(), 2.into());
        let g =
            ExactSeries::from_terms(10, [(1, BigRational::one()), (2, half.clone()), (5, -half)]);
        let f = g.invert().unwrap();
        assert!(g.compose(&f).unwrap().is_identity());
        assert!(f.compose(&g).unwrap().is_identity());
    }

    #[test]
    fn stride_detection() {
        let inv = StridedInverter::<BigInt>::new(vec![(4, BigInt::from(-1)), (7, BigInt::from(1))]);
        assert_eq!(inv.stride(), 3);
        let inv = StridedInverter::<BigInt>::new(vec![(3, BigInt::from(1)), (4, BigInt::from(1))]);
        assert_eq!(inv.stride(), 1);
    }
}
