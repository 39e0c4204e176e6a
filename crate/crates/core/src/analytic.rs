//! Real critical points of `g(z) = z - z^n + z^{2n-1}`.
//!
//! `g'(z) = 1 - n z^{n-1} + (2n-1) z^{2n-2}`; with `w = z^{n-1}` this is the
//! quadratic `1 - n w + (2n-1) w^2`. When `g'` has no real zero, the inverse
//! of `g` must have a negative coefficient. Everything here is exact: roots
//! are reduced rationals or quadratic surds, never floats.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::series::Parity;

/// `(offset + sign * sqrt(radicand)) / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub offset: BigInt,
    pub sign: i8,
    pub radicand: BigInt,
    pub denominator: BigInt,
}

impl QuadraticSurd {
    /// Value as `a + b sqrt(radicand)`.
    fn components(&self) -> (BigRational, BigRational) {
        (
            BigRational::new(self.offset.clone(), self.denominator.clone()),
            BigRational::new(BigInt::from(self.sign), self.denominator.clone()),
        )
    }

    /// For display only.
    pub fn approx(&self) -> f64 {
        let r = self.radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        (self.offset.to_f64().unwrap_or(f64::NAN) + f64::from(self.sign) * r)
            / self.denominator.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.sign < 0 { '-' } else { '+' };
        write!(
            f,
            "({} {op} sqrt({}))/{}",
            self.offset, self.radicand, self.denominator
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WRoot {
    Rational(BigRational),
    Surd(QuadraticSurd),
}

impl WRoot {
    pub fn approx(&self) -> f64 {
        match self {
            WRoot::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            WRoot::Surd(s) => s.approx(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match self {
            WRoot::Rational(r) => r.is_positive(),
            WRoot::Surd(s) => {
                let (a, b) = s.components();
                let r = BigRational::from_integer(s.radicand.clone());
                let a_pos = a.is_positive();
                let b_term_sq = &b * &b * &r;
                if b.is_negative() {
                    a_pos && &a * &a > b_term_sq
                } else {
                    a_pos || &a * &a < b_term_sq
                }
            }
        }
    }
}

impl fmt::Display for WRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WRoot::Rational(r) => write!(f, "{r}"),
            WRoot::Surd(s) => write!(f, "{s}"),
        }
    }
}

/// Outcome of the real-critical-point analysis for one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPointReport {
    pub n: usize,
    /// `n^2 - 8n + 4`
    pub discriminant: BigInt,
    pub quadratic_roots: Vec<WRoot>,
    pub has_real_critical_point: bool,
    /// The missing real critical point forces a negative inverse coefficient.
    pub theorem_applies: bool,
}

impl CriticalPointReport {
    /// Real critical points `z = w^{1/(n-1)}`, written symbolically.
    pub fn critical_points(&self) -> Vec<String> {
        self.quadratic_roots
            .iter()
            .filter(|w| w.is_positive())
            .map(|w| format!("({w})^(1/{})", self.n - 1))
            .collect()
    }

    pub fn to_json(&self) -> CriticalPointJson {
        CriticalPointJson {
            n: self.n,
            discriminant: self.discriminant.to_i128().expect("n^2 fits in i128"),
            real_w_roots: self
                .quadratic_roots
                .iter()
                .map(ToString::to_string)
                .collect(),
            real_critical_points: self.critical_points(),
            theorem_applies: self.theorem_applies,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointJson {
    pub n: usize,
    pub discriminant: i128,
    pub real_w_roots: Vec<String>,
    pub real_critical_points: Vec<String>,
    pub theorem_applies: bool,
}

pub fn discriminant(n: usize) -> BigInt {
    let n = BigInt::from(n);
    &n * &n - BigInt::from(8) * &n + BigInt::from(4)
}

/// `1 - n w + (2n-1) w^2` evaluated exactly at a root, as `a + b sqrt(r)`.
pub fn evaluate_quadratic(n: usize, w: &WRoot) -> (BigRational, BigRational) {
    let nn = BigRational::from_integer(n.into());
    let lead = BigRational::from_integer((2 * n - 1).into());
    let one = BigRational::from_integer(1.into());
    match w {
        WRoot::Rational(w) => (one - &nn * w + lead * w * w, BigRational::zero()),
        WRoot::Surd(s) => {
            let (a, b) = s.components();
            let r = BigRational::from_integer(s.radicand.clone());
            // w^2 = a^2 + b^2 r + 2ab sqrt(r)
            let sq_rat = &a * &a + &b * &b * &r;
            let sq_irr = BigRational::from_integer(2.into()) * &a * &b;
            (
                one - &nn * &a + &lead * sq_rat,
                -(&nn * &b) + &lead * sq_irr,
            )
        }
    }
}

pub fn derivative_roots(n: usize) -> Result<CriticalPointReport> {
    if n < 2 {
        return precondition(format!("arity must be at least 2, got {n}"));
    }
    let disc = discriminant(n);
    let denominator = BigInt::from(2 * (2 * n - 1));
    let mut roots = Vec::new();
    if !disc.is_negative() {
        let s = disc.sqrt();
        if &s * &s == disc {
            for sign in [1i8, -1] {
                let num = BigInt::from(n) + BigInt::from(sign) * &s;
                let root = WRoot::Rational(BigRational::new(num, denominator.clone()));
                if !roots.contains(&root) {
                    roots.push(root);
                }
            }
        } else {
            for sign in [1i8, -1] {
                roots.push(WRoot::Surd(QuadraticSurd {
                    offset: BigInt::from(n),
                    sign,
                    radicand: disc.clone(),
                    denominator: denominator.clone(),
                }));
            }
        }
    }
    // w > 0 always has a real (n-1)-th root; for even n-1 a negative w has
    // none, for odd n-1 it has one, but both roots are positive here anyway.
    let has_real = roots.iter().any(|w| w.is_positive() || (n - 1) % 2 == 1);
    Ok(CriticalPointReport {
        n,
        discriminant: disc,
        quadratic_roots: roots,
        has_real_critical_point: has_real,
        theorem_applies: !has_real,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalyticVerdict {
    /// A negative inverse coefficient is guaranteed, so the odd-degree
    /// totally associative operad is not Koszul.
    NotKoszul,
    /// Real critical points exist; fall back to coefficient search.
    Inconclusive,
}

impl fmt::Display for AnalyticVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalyticVerdict::NotKoszul => {
                write!(f, "not Koszul (no real critical point of the trinomial)")
            }
            AnalyticVerdict::Inconclusive => {
                write!(f, "inconclusive (fall back to coefficient search)")
            }
        }
    }
}

/// Verdict for the totally associative operad of arity `n` and odd degree.
pub fn koszulity_verdict_analytic(n: usize, parity: Parity) -> Result<AnalyticVerdict> {
    if parity != Parity::Odd {
        return precondition("the analytic criterion is only stated for odd generator degree");
    }
    let report = derivative_roots(n)?;
    Ok(if report.theorem_applies {
        AnalyticVerdict::NotKoszul
    } else {
        AnalyticVerdict::Inconclusive
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n7_has_no_real_roots() {
        let r = derivative_roots(7).unwrap();
        assert_eq!(r.discriminant, BigInt::from(-3));
        assert!(r.quadratic_roots.is_empty());
        assert!(r.theorem_applies);
    }

    #[test]
    fn n8_rational_roots() {
        let r = derivative_roots(8).unwrap();
        assert_eq!(r.discriminant, BigInt::from(4));
        assert_eq!(
            r.quadratic_roots,
            vec![
                WRoot::Rational(BigRational::new(1.into(), 3.into())),
                WRoot::Rational(BigRational::new(1.into(), 5.into())),
            ]
        );
        assert!(!r.theorem_applies);
        assert_eq!(r.critical_points(), vec!["(1/3)^(1/7)", "(1/5)^(1/7)"]);
    }

    #[test]
    fn n2_discriminant() {
        let r = derivative_roots(2).unwrap();
        assert_eq!(r.discriminant, BigInt::from(-8));
        assert!(r.theorem_applies);
    }

    #[test]
    fn surd_roots_satisfy_quadratic() {
        for n in 9..60 {
            let r = derivative_roots(n).unwrap();
            assert_eq!(r.quadratic_roots.len(), 2);
            for w in &r.quadratic_roots {
                assert!(w.is_positive());
                let (a, b) = evaluate_quadratic(n, w);
                assert!(a.is_zero() && b.is_zero(), "n = {n}, w = {w}");
            }
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(
            koszulity_verdict_analytic(5, Parity::Odd).unwrap(),
            AnalyticVerdict::NotKoszul
        );
        assert_eq!(
            koszulity_verdict_analytic(8, Parity::Odd).unwrap(),
            AnalyticVerdict::Inconclusive
        );
        assert_eq!(
            koszulity_verdict_analytic(100, Parity::Odd).unwrap(),
            AnalyticVerdict::Inconclusive
        );
        assert!(koszulity_verdict_analytic(5, Parity::Even).is_err());
    }

    #[test]
    fn json_report() {
        let j = derivative_roots(8).unwrap().to_json();
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains(r#""real_w_roots":["1/3","1/5"]"#), "{text}");
        assert!(text.contains(r#""theorem_applies":false"#));
    }

    #[test]
    fn surd_display() {
        let r = derivative_roots(9).unwrap();
        assert_eq!(r.quadratic_roots[0].to_string(), "(9 + sqrt(13))/34");
    }
}
