use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::operad::arity_of;
use crate::series::ExactSeries;

/// A vanishing Euler characteristic does not prove the generator space is
/// zero, so every gap verdict carries this label.
pub const EVIDENCE_ONLY: &str = "Euler-characteristic evidence only";

/// Zeros at `⟨q⟩ .. ⟨q+length-1⟩` preceded by a nonzero coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRun {
    pub q: usize,
    pub length: usize,
    /// The run reaches the truncation order; `length` is a lower bound.
    pub open_ended: bool,
}

impl ZeroRun {
    pub fn is_gap(&self) -> bool {
        !self.open_ended
    }
}

impl std::fmt::Display for ZeroRun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.open_ended {
            write!(
                f,
                "open-ended (length ≥ {}) from q = {}",
                self.length, self.q
            )
        } else {
            write!(f, "gap at q = {}, length {}", self.q, self.length)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub n: usize,
    /// Coefficient at `t^{⟨p⟩}` for `p = 0, 1, ...` within the truncation.
    #[serde(with = "super::bigint_str::vec")]
    pub generator_coefficients: Vec<BigInt>,
    pub zero_run: Option<ZeroRun>,
    /// A closed run of length `n - 1`.
    pub gap_length_matches: bool,
    pub certainty: String,
}

impl GapReport {
    /// Human listing like `t + t^4 + t^7 + 0 t^10 (χ = 0) - 96 t^19`.
    pub fn coefficient_listing(&self) -> String {
        let mut out = String::new();
        for (p, c) in self.generator_coefficients.iter().enumerate() {
            let e = arity_of(self.n, p);
            let mono = if e == 1 {
                "t".to_string()
            } else {
                format!("t^{e}")
            };
            let (sign, abs) = if c < &BigInt::zero() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if p == 0 {
                out.push_str(if sign == "-" { "-" } else { "" });
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if abs.is_zero() {
                out.push_str(&format!("0 {mono} (χ = 0)"));
            } else if abs == BigInt::from(1) {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs} {mono}"));
            }
        }
        out
    }
}

/// First maximal run of zero coefficients at `⟨p⟩` positions with a nonzero
/// coefficient before it. Runs that reach the truncation are open-ended.
pub fn detect_gap(series: &ExactSeries, n: usize) -> Result<GapReport> {
    if n < 2 {
        return precondition(format!("arity must be at least 2, got {n}"));
    }
    let mut coefficients = Vec::new();
    for (k, c) in series.terms() {
        if !c.is_zero() && (k == 0 || (k - 1) % (n - 1) != 0) {
            return precondition(format!(
                "t^{k} has a nonzero coefficient off the exponents 1 mod {}",
                n - 1
            ));
        }
        if !c.is_integer() {
            return precondition(format!("t^{k} has a non-integral coefficient {c}"));
        }
    }
    let mut p = 0;
    while arity_of(n, p) <= series.order() {
        coefficients.push(series.coeff(arity_of(n, p)).to_integer());
        p += 1;
    }
    let mut zero_run = None;
    for q in 1..coefficients.len() {
        if coefficients[q].is_zero() && !coefficients[q - 1].is_zero() {
            let length = coefficients[q..].iter().take_while(|c| c.is_zero()).count();
            zero_run = Some(ZeroRun {
                q,
                length,
                open_ended: q + length == coefficients.len(),
            });
            break;
        }
    }
    Ok(GapReport {
        n,
        generator_coefficients: coefficients,
        gap_length_matches: zero_run.is_some_and(|r| r.is_gap() && r.length == n - 1),
        zero_run,
        certainty: EVIDENCE_ONLY.to_string(),
    })
}
