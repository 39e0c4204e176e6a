//! Published reference values, embedded from `data/published.json`, and a
//! checker that recomputes each entry.

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::analysis::{detect_gap, generator_series, gk_inverse_test};
use crate::analytic::derivative_roots;
use crate::error::{Error, Result};
use crate::operad::{generating_series, EngineConfig, Family, OperadPresentation};
use crate::series::ExactSeries;

const PUBLISHED: &str = include_str!("../data/published.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstNegativeRow {
    pub n: usize,
    pub exponent: Option<usize>,
    pub p: Option<usize>,
    /// Degree bound the row was established with.
    pub bound: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenGap {
    pub q: usize,
    pub length: usize,
    pub open_ended: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GoldenEntry {
    Inverse {
        id: String,
        source: String,
        series: String,
        order: usize,
        coefficients: Vec<(usize, i64)>,
    },
    FirstNegative {
        id: String,
        source: String,
        rows: Vec<FirstNegativeRow>,
    },
    CriticalPoints {
        id: String,
        source: String,
        n: usize,
        discriminant: i64,
        w_roots: Vec<String>,
        theorem_applies: bool,
    },
    GeneratingSeries {
        id: String,
        source: String,
        family: Family,
        n: usize,
        d: i64,
        max_p: usize,
        #[serde(default)]
        stretch: bool,
        coefficients: Vec<(usize, i64)>,
    },
    GeneratorSeries {
        id: String,
        source: String,
        family: Family,
        n: usize,
        d: i64,
        max_p: usize,
        coefficients: Vec<(usize, i64)>,
        gap: Option<GoldenGap>,
    },
}

impl GoldenEntry {
    pub fn id(&self) -> &str {
        match self {
            GoldenEntry::Inverse { id, .. }
            | GoldenEntry::FirstNegative { id, .. }
            | GoldenEntry::CriticalPoints { id, .. }
            | GoldenEntry::GeneratingSeries { id, .. }
            | GoldenEntry::GeneratorSeries { id, .. } => id,
        }
    }

    pub fn source(&self) -> &str {
        match self {
            GoldenEntry::Inverse { source, .. }
            | GoldenEntry::FirstNegative { source, .. }
            | GoldenEntry::CriticalPoints { source, .. }
            | GoldenEntry::GeneratingSeries { source, .. }
            | GoldenEntry::GeneratorSeries { source, .. } => source,
        }
    }

    pub fn is_stretch(&self) -> bool {
        matches!(self, GoldenEntry::GeneratingSeries { stretch: true, .. })
    }
}

#[derive(Deserialize)]
struct GoldenFile {
    entries: Vec<GoldenEntry>,
}

pub fn published() -> &'static [GoldenEntry] {
    static CELL: OnceLock<Vec<GoldenEntry>> = OnceLock::new();
    CELL.get_or_init(|| {
        serde_json::from_str::<GoldenFile>(PUBLISHED)
            .expect("embedded reference data is valid")
            .entries
    })
}

pub fn entry(id: &str) -> Result<&'static GoldenEntry> {
    published()
        .iter()
        .find(|e| e.id() == id)
        .ok_or_else(|| Error::Parse(format!("no reference entry named {id:?}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reproduction {
    pub id: String,
    pub source: String,
    pub checks: Vec<Check>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ReproduceOptions {
    pub config: EngineConfig,
    /// Caps the search bound of first-negative rows.
    pub search_cap: Option<usize>,
}

fn check(label: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
    let (expected, actual) = (expected.to_string(), actual.to_string());
    Check {
        label: label.into(),
        ok: expected == actual,
        expected,
        actual,
    }
}

fn coefficient_checks(series: &ExactSeries, expected: &[(usize, i64)]) -> Vec<Check> {
    expected
        .iter()
        .map(|&(e, c)| {
            let actual = if e <= series.order() {
                series.coeff(e).to_string()
            } else {
                "beyond truncation".into()
            };
            check(format!("t^{e}"), BigInt::from(c), actual)
        })
        .collect()
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "none".into(), |x| x.to_string())
}

/// Recomputes one entry and compares against the stored values.
pub fn reproduce(entry: &GoldenEntry, options: &ReproduceOptions) -> Result<Reproduction> {
    let config = &options.config;
    let checks = match entry {
        GoldenEntry::Inverse {
            series,
            order,
            coefficients,
            ..
        } => {
            let inv = ExactSeries::parse(series, Some(*order))?.invert()?;
            coefficient_checks(&inv, coefficients)
        }
        GoldenEntry::FirstNegative { rows, .. } => {
            let mut checks = Vec::new();
            for row in rows {
                let bound = options.search_cap.map_or(row.bound, |c| c.min(row.bound));
                let r = gk_inverse_test(row.n, bound)?;
                checks.push(check(
                    format!("n = {} exponent (bound {bound})", row.n),
                    opt(row.exponent),
                    opt(r.first_negative_exponent),
                ));
                checks.push(check(
                    format!("n = {} p", row.n),
                    opt(row.p),
                    opt(r.p_index),
                ));
            }
            checks
        }
        GoldenEntry::CriticalPoints {
            n,
            discriminant,
            w_roots,
            theorem_applies,
            ..
        } => {
            let r = derivative_roots(*n)?;
            let roots: Vec<String> = r.quadratic_roots.iter().map(ToString::to_string).collect();
            vec![
                check("discriminant", discriminant, &r.discriminant),
                check("w roots", w_roots.join(", "), roots.join(", ")),
                check("theorem applies", theorem_applies, r.theorem_applies),
            ]
        }
        GoldenEntry::GeneratingSeries {
            family,
            n,
            d,
            max_p,
            coefficients,
            ..
        } => {
            let pres = OperadPresentation::new(*family, *n, *d)?;
            coefficient_checks(&generating_series(&pres, *max_p, config)?, coefficients)
        }
        GoldenEntry::GeneratorSeries {
            family,
            n,
            d,
            max_p,
            coefficients,
            gap,
            ..
        } => {
            let pres = OperadPresentation::new(*family, *n, *d)?;
            let series = generator_series(&pres, *max_p, config)?;
            let mut checks = coefficient_checks(&series, coefficients);
            if let Some(gap) = gap {
                let report = detect_gap(&series, *n)?;
                let describe = |q: usize, length: usize, open: bool| {
                    format!(
                        "q = {q}, length {length}{}",
                        if open { ", open-ended" } else { "" }
                    )
                };
                checks.push(check(
                    "zero run",
                    describe(gap.q, gap.length, gap.open_ended),
                    report
                        .zero_run
                        .map_or_else(|| "none".into(), |r| describe(r.q, r.length, r.open_ended)),
                ));
            }
            checks
        }
    };
    Ok(Reproduction {
        id: entry.id().to_string(),
        source: entry.source().to_string(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_parses_with_unique_ids() {
        let all = published();
        assert!(all.len() >= 15);
        let mut ids: Vec<&str> = all.iter().map(GoldenEntry::id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
        assert!(entry("inverse-n4").is_ok());
        assert!(entry("nope").is_err());
    }

    #[test]
    fn cheap_entries_reproduce() {
        for id in [
            "inverse-n2",
            "inverse-n3",
            "critical-points-n8",
            "series-pass2-1",
            "generators-pass2-1",
        ] {
            let r = reproduce(entry(id).unwrap(), &ReproduceOptions::default()).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.mismatches().collect::<Vec<_>>());
        }
    }

    #[test]
    fn mismatches_are_reported() {
        let bad = GoldenEntry::Inverse {
            id: "bad".into(),
            source: "test".into(),
            series: "t - t^2 + t^3".into(),
            order: 5,
            coefficients: vec![(5, 4)],
        };
        let r = reproduce(&bad, &ReproduceOptions::default()).unwrap();
        assert!(!r.passed());
        assert_eq!(r.mismatches().next().unwrap().actual, "-4");
    }
}
