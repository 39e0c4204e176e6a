use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};
use crate::linalg::Deadline;
use crate::series::{SparseTrinomial, StridedInverter};

/// Outcome of scanning the inverse of `t - t^n + t^{2n-1}` for a negative
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstNegativeResult {
    pub n: usize,
    /// `None` means no negative coefficient up to `search_bound`.
    pub first_negative_exponent: Option<usize>,
    /// `p` with `p(n-1) + 1` equal to the exponent.
    pub p_index: Option<usize>,
    #[serde(with = "super::bigint_str::option")]
    pub coefficient: Option<BigInt>,
    pub search_bound: usize,
}

impl FirstNegativeResult {
    /// `"4"`, or `"∞? (no negative ≤ 10000)"` when nothing was found.
    pub fn p_label(&self) -> String {
        match self.p_index {
            Some(p) => p.to_string(),
            None => format!("∞? (no negative ≤ {})", self.search_bound),
        }
    }
}

/// Reported after each computed coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchProgress {
    pub degree: usize,
    pub p: usize,
    pub bits: u64,
}

pub fn gk_inverse_test(n: usize, bound: usize) -> Result<FirstNegativeResult> {
    gk_inverse_test_with(n, bound, Deadline::none(), |_| {})
}

/// Only exponents `1 + p(n-1)` are visited; the others vanish.
pub fn gk_inverse_test_with<F>(
    n: usize,
    bound: usize,
    deadline: Deadline,
    mut progress: F,
) -> Result<FirstNegativeResult>
where
    F: FnMut(&SearchProgress),
{
    if bound < 1 {
        return precondition("search bound must be at least 1");
    }
    let tri = SparseTrinomial::new(n)?;
    let support = tri.terms()[1..]
        .iter()
        .map(|&(e, c)| (e, BigInt::from(c)))
        .collect();
    let mut inv = StridedInverter::<BigInt>::new(support);
    debug_assert_eq!(inv.stride(), n - 1);
    let mut result = FirstNegativeResult {
        n,
        first_negative_exponent: None,
        p_index: None,
        coefficient: None,
        search_bound: bound,
    };
    while inv.exponent(inv.len()) <= bound {
        if inv.len().is_multiple_of(16) {
            deadline.check()?;
        }
        let p = inv.len();
        let (degree, c) = inv.advance();
        progress(&SearchProgress {
            degree,
            p,
            bits: c.bits(),
        });
        if c.is_negative() {
            result.first_negative_exponent = Some(degree);
            result.p_index = Some(p);
            result.coefficient = Some(c.clone());
            break;
        }
    }
    Ok(result)
}
