use serde::{Deserialize, Serialize};

use super::first_negative::{gk_inverse_test_with, FirstNegativeResult};
use super::gap::{detect_gap, GapReport, EVIDENCE_ONLY};
use super::generator_series;
use crate::analytic::{koszulity_verdict_analytic, AnalyticVerdict};
use crate::error::Result;
use crate::operad::{dual_presentation, EngineConfig, OperadPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjectureVerdict {
    /// A closed zero run of length `n - 1`.
    Consistent,
    /// A closed zero run of another length.
    Inconsistent,
    /// No closed run within the computed range.
    Undetermined,
}

impl std::fmt::Display for ConjectureVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConjectureVerdict::Consistent => "consistent",
            ConjectureVerdict::Inconsistent => "inconsistent",
            ConjectureVerdict::Undetermined => "undetermined at this bound",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanBounds {
    /// Degree bound for the inverse-coefficient search.
    pub search_bound: usize,
    /// Vertex bound for dimensions; `None` means `n + 2`.
    pub max_p: Option<usize>,
}

impl Default for ScanBounds {
    fn default() -> Self {
        Self {
            search_bound: 2000,
            max_p: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub presentation: OperadPresentation,
    /// Applies to the dual, the totally associative operad of odd degree.
    pub analytic: AnalyticVerdict,
    pub first_negative: FirstNegativeResult,
    pub max_p: usize,
    pub gap: GapReport,
    pub verdict: ConjectureVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedPair {
    pub n: usize,
    pub d: i64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub entries: Vec<ScanEntry>,
    pub excluded: Vec<ExcludedPair>,
    pub certainty: String,
}

/// Evidence for the partially associative operads `pAss^n_d` with
/// `n ≢ d (mod 2)`.
///
/// Each `(n, d)` pair with `d = None` uses `d = 0` for odd `n` and `d = 1`
/// for even `n`; pairs with `n ≡ d (mod 2)` are listed as excluded.
pub fn conjecture_scan(
    pairs: &[(usize, Option<i64>)],
    bounds: ScanBounds,
    config: &EngineConfig,
) -> Result<ScanReport> {
    let mut entries = Vec::new();
    let mut excluded = Vec::new();
    for &(n, d) in pairs {
        let d = d.unwrap_or(if n % 2 == 0 { 1 } else { 0 });
        if (n as i64 - d).rem_euclid(2) == 0 {
            excluded.push(ExcludedPair {
                n,
                d,
                reason: "n ≡ d (mod 2)".into(),
            });
            continue;
        }
        entries.push(scan_one(n, d, bounds, config)?);
    }
    Ok(ScanReport {
        entries,
        excluded,
        certainty: EVIDENCE_ONLY.into(),
    })
}

fn scan_one(n: usize, d: i64, bounds: ScanBounds, config: &EngineConfig) -> Result<ScanEntry> {
    let presentation = OperadPresentation::partial(n, d)?;
    let dual = dual_presentation(&presentation);
    let analytic = koszulity_verdict_analytic(n, dual.parity())?;
    let first_negative = gk_inverse_test_with(n, bounds.search_bound, config.deadline, |_| {})?;
    let max_p = bounds.max_p.unwrap_or(n + 2);
    let series = generator_series(&presentation, max_p, config)?;
    let gap = detect_gap(&series, n)?;
    let verdict = match gap.zero_run {
        Some(run) if run.is_gap() && run.length == n - 1 => ConjectureVerdict::Consistent,
        Some(run) if run.is_gap() => ConjectureVerdict::Inconsistent,
        _ => ConjectureVerdict::Undetermined,
    };
    Ok(ScanEntry {
        presentation,
        analytic,
        first_negative,
        max_p,
        gap,
        verdict,
    })
}
