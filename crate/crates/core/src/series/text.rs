use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ExactSeries;
use crate::error::{Error, Result};

/// JSON form of a series: `{"order": N, "coeffs": ["num/den", ...]}`.
///
/// Integral coefficients are written without a denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<String>,
}

impl From<&ExactSeries> for SeriesJson {
    fn from(s: &ExactSeries) -> Self {
        Self {
            order: s.order(),
            coeffs: s.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

impl TryFrom<SeriesJson> for ExactSeries {
    type Error = Error;

    fn try_from(json: SeriesJson) -> Result<Self> {
        if json.coeffs.len() != json.order + 1 {
            return Err(Error::Parse(format!(
                "order {} needs {} coefficients, found {}",
                json.order,
                json.order + 1,
                json.coeffs.len()
            )));
        }
        let coeffs = json
            .coeffs
            .iter()
            .map(|c| parse_rational(c.trim()))
            .collect::<Result<Vec<_>>>()?;
        ExactSeries::from_coeffs(coeffs)
    }
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(text).map_err(|_| bad())?,
        )),
    }
}

pub(super) fn format_polynomial(s: &ExactSeries) -> String {
    let mut out = String::new();
    for (e, c) in s.terms() {
        let negative = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let monomial = match e {
            0 => String::new(),
            1 => "t".to_string(),
            _ => format!("t^{e}"),
        };
        if abs.is_one() && e > 0 {
            out.push_str(&monomial);
        } else if e == 0 {
            out.push_str(&abs.to_string());
        } else {
            out.push_str(&format!("{abs} {monomial}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A parsed polynomial: its terms and the exponent of an `O(t^k)` tail, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPolynomial {
    pub terms: Vec<(usize, BigRational)>,
    pub big_o: Option<usize>,
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} in {:?}", self.pos, self.text))
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat(b'^') {
            return Ok(1);
        }
        let braced = self.eat(b'{');
        let e = self
            .digits()
            .ok_or_else(|| self.error("expected exponent"))?
            .parse()
            .map_err(|_| self.error("exponent too large"))?;
        if braced && !self.eat(b'}') {
            return Err(self.error("expected '}'"));
        }
        Ok(e)
    }
}

/// Parses text such as `t - t^4 + 3 t^7 + O(t^8)`, `3/2*t^2` or `1 + t`.
pub fn parse_polynomial(text: &str) -> Result<ParsedPolynomial> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
        text,
    };
    let mut terms = Vec::new();
    let mut big_o = None;
    let mut first = true;
    loop {
        if cur.peek().is_none() {
            if first {
                return Err(cur.error("empty series"));
            }
            break;
        }
        let mut negative = false;
        if cur.eat(b'-') {
            negative = true;
        } else if !cur.eat(b'+') && !first {
            return Err(cur.error("expected '+' or '-'"));
        }
        first = false;
        if big_o.is_some() {
            return Err(cur.error("terms after the O(...) tail"));
        }
        if cur.eat(b'O') {
            if negative || !cur.eat(b'(') || !cur.eat(b't') {
                return Err(cur.error("malformed O(t^k) tail"));
            }
            let e = cur.exponent()?;
            if !cur.eat(b')') {
                return Err(cur.error("expected ')'"));
            }
            big_o = Some(e);
            continue;
        }
        let mut coeff = BigRational::one();
        let mut has_coeff = false;
        let paren = cur.eat(b'(');
        if let Some(num) = cur.digits() {
            has_coeff = true;
            let num = BigInt::from_str(num).map_err(|_| cur.error("bad integer"))?;
            let den = if cur.eat(b'/') {
                let d = cur
                    .digits()
                    .ok_or_else(|| cur.error("expected denominator"))?;
                BigInt::from_str(d).map_err(|_| cur.error("bad integer"))?
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(cur.error("zero denominator"));
            }
            coeff = BigRational::new(num, den);
        }
        if paren && !cur.eat(b')') {
            return Err(cur.error("expected ')'"));
        }
        cur.eat(b'*');
        let exponent = if cur.eat(b't') {
            cur.exponent()?
        } else if has_coeff {
            0
        } else {
            return Err(cur.error("expected a coefficient or 't'"));
        };
        if negative {
            coeff = -coeff;
        }
        terms.push((exponent, coeff));
    }
    Ok(ParsedPolynomial { terms, big_o })
}

/// Parses polynomial text into a series. The order is `order` when given,
/// else one less than the `O(t^k)` exponent, else the largest exponent.
pub(super) fn parse_series(text: &str, order: Option<usize>) -> Result<ExactSeries> {
    let parsed = parse_polynomial(text)?;
    let order = match (order, parsed.big_o) {
        (Some(o), Some(k)) if o >= k => {
            return Err(Error::Parse(format!(
                "requested order {o} exceeds the known precision O(t^{k})"
            )))
        }
        (Some(o), _) => o,
        (None, Some(0)) => return Err(Error::Parse("O(t^0) carries no information".into())),
        (None, Some(k)) => k - 1,
        (None, None) => parsed.terms.iter().map(|(e, _)| *e).max().unwrap_or(0),
    };
    Ok(ExactSeries::from_terms(order, parsed.terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_published_style() {
        let s = ExactSeries::parse("t - t^4 + 3 t^7 + O(t^8)", None).unwrap();
        assert_eq!(s.order(), 7);
        assert_eq!(s.to_string(), "t - t^4 + 3 t^7 + O(t^8)");
    }

    #[test]
    fn parses_rationals_and_constants() {
        let s = ExactSeries::parse("1 + 3/2*t^2 - (1/3) t^{3}", Some(5)).unwrap();
        assert_eq!(s.order(), 5);
        assert_eq!(s.to_polynomial_string(), "1 + 3/2 t^2 - 1/3 t^3");
        let s = ExactSeries::parse("-t", None).unwrap();
        assert_eq!(s.to_polynomial_string(), "-t");
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "t +", "t ^", "x", "t + O(t^3) + t", "1/0 t", "t t"] {
            assert!(ExactSeries::parse(bad, None).is_err(), "{bad:?}");
        }
        assert!(ExactSeries::parse("t + O(t^3)", Some(4)).is_err());
    }

    #[test]
    fn zero_prints_as_zero() {
        assert_eq!(ExactSeries::zero(3).to_polynomial_string(), "0");
        assert_eq!(ExactSeries::zero(3).to_string(), "O(t^4)");
    }

    #[test]
    fn json_shape() {
        let s = ExactSeries::parse("t - 1/2 t^2", Some(3)).unwrap();
        let json = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(json, r#"{"order":3,"coeffs":["0","1","-1/2","0"]}"#);
        let back: SeriesJson = serde_json::from_str(&json).unwrap();
        assert_eq!(ExactSeries::try_from(back).unwrap(), s);
    }

    #[test]
    fn json_rejects_length_mismatch() {
        let j = SeriesJson {
            order: 3,
            coeffs: vec!["0".into()],
        };
        assert!(ExactSeries::try_from(j).is_err());
    }
}
