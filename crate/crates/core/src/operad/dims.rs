use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::relations::relation_span;
use super::tree::{arity_of, fuss_catalan};
use super::{EngineConfig, Family, OperadPresentation, RankMode};
use crate::error::{Error, Result};
use crate::linalg::{random_prime, rank_exact, rank_mod_p, RankCertainty, SparseMatrix};
use crate::series::ExactSeries;

/// Dimension of the arity-`⟨p⟩` component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionEntry {
    pub p: usize,
    pub arity: usize,
    pub dim: u64,
    pub certainty: RankCertainty,
}

fn modular_rank(m: &SparseMatrix, config: &EngineConfig, salt: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let count = config.primes.max(1);
    let draw =
        |rng: &mut ChaCha8Rng, k: usize| (0..k).map(|_| random_prime(rng)).collect::<Vec<_>>();
    let ranks = |ps: &[u64]| -> Result<Vec<usize>> {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            ps.par_iter()
                .map(|&q| rank_mod_p(m, q, config.deadline))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            ps.iter()
                .map(|&q| rank_mod_p(m, q, config.deadline))
                .collect()
        }
    };
    let mut all = ranks(&draw(&mut rng, count))?;
    // rank mod q never exceeds the rational rank, so on disagreement the
    // maximum over a few more primes is the best available value
    if all.iter().any(|&r| r != all[0]) {
        all.extend(ranks(&draw(&mut rng, count + 2))?);
    }
    Ok(all.into_iter().max().unwrap_or(0))
}

pub fn dimension(
    pres: &OperadPresentation,
    p: usize,
    config: &EngineConfig,
) -> Result<DimensionEntry> {
    let arity = arity_of(pres.n, p);
    if p < 2 {
        return Ok(DimensionEntry {
            p,
            arity,
            dim: 1,
            certainty: RankCertainty::Exact,
        });
    }
    let span = relation_span(pres, p, config.limits)?;
    let ncols = span.columns.len();
    let exact = match config.rank_mode {
        RankMode::Exact => true,
        RankMode::Modular => false,
        RankMode::Auto => ncols <= config.exact_column_threshold,
    };
    let (rank, certainty) = if exact {
        (
            rank_exact(&span.matrix, config.deadline)?,
            RankCertainty::Exact,
        )
    } else {
        let salt = (pres.n as u64) << 32 | p as u64;
        (
            modular_rank(&span.matrix, config, salt)?,
            RankCertainty::Modular,
        )
    };
    debug_assert_eq!(Some(ncols), fuss_catalan(pres.n, p).to_usize());
    Ok(DimensionEntry {
        p,
        arity,
        dim: (ncols - rank) as u64,
        certainty,
    })
}

/// Dimensions for `p = 0..=max_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTable {
    pub presentation: OperadPresentation,
    pub entries: Vec<DimensionEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionTableJson {
    pub family: Family,
    pub n: usize,
    pub d: i64,
    pub dims: Vec<(usize, usize, u64, RankCertainty)>,
}

impl DimensionTable {
    pub fn max_p(&self) -> usize {
        self.entries.len().saturating_sub(1)
    }

    pub fn dims(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.dim).collect()
    }

    /// Euler characteristics: `(-1)^{p d} dim`.
    pub fn euler_characteristics(&self) -> Vec<i64> {
        let odd = self.presentation.parity().is_odd();
        self.entries
            .iter()
            .map(|e| {
                let v = e.dim as i64;
                if odd && e.p % 2 == 1 {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    /// `Σ (-1)^{p d} dim(⟨p⟩) t^{⟨p⟩}` truncated at `⟨max_p⟩`.
    pub fn to_series(&self) -> ExactSeries {
        let n = self.presentation.n;
        let terms: Vec<(usize, i64)> = self
            .euler_characteristics()
            .into_iter()
            .enumerate()
            .map(|(p, chi)| (arity_of(n, p), chi))
            .collect();
        ExactSeries::from_int_terms(arity_of(n, self.max_p()), &terms)
    }

    pub fn to_json(&self) -> DimensionTableJson {
        DimensionTableJson {
            family: self.presentation.family,
            n: self.presentation.n,
            d: self.presentation.d,
            dims: self
                .entries
                .iter()
                .map(|e| (e.p, e.arity, e.dim, e.certainty))
                .collect(),
        }
    }

    pub fn from_json(j: &DimensionTableJson) -> Result<Self> {
        let presentation = OperadPresentation::new(j.family, j.n, j.d)?;
        let entries = j
            .dims
            .iter()
            .enumerate()
            .map(|(i, &(p, arity, dim, certainty))| {
                if p != i || arity != arity_of(j.n, p) {
                    return Err(Error::Parse(format!(
                        "dimension row {i} is out of sequence"
                    )));
                }
                Ok(DimensionEntry {
                    p,
                    arity,
                    dim,
                    certainty,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            presentation,
            entries,
        })
    }
}

pub fn dimension_table(
    pres: &OperadPresentation,
    max_p: usize,
    config: &EngineConfig,
) -> Result<DimensionTable> {
    let entries: Result<Vec<DimensionEntry>> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..=max_p)
                .into_par_iter()
                .map(|p| dimension(pres, p, config))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..=max_p).map(|p| dimension(pres, p, config)).collect()
        }
    };
    Ok(DimensionTable {
        presentation: *pres,
        entries: entries?,
    })
}

pub fn generating_series(
    pres: &OperadPresentation,
    max_p: usize,
    config: &EngineConfig,
) -> Result<ExactSeries> {
    Ok(dimension_table(pres, max_p, config)?.to_series())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::Family;

    fn dims(family: Family, n: usize, d: i64, max_p: usize) -> Vec<u64> {
        let pres = OperadPresentation::new(family, n, d).unwrap();
        dimension_table(&pres, max_p, &EngineConfig::default())
            .unwrap()
            .dims()
    }

    #[test]
    fn binary_associative_and_anti_associative() {
        assert_eq!(dims(Family::Total, 2, 0, 4), vec![1, 1, 1, 1, 1]);
        assert_eq!(dims(Family::Total, 2, 1, 4), vec![1, 1, 1, 0, 0]);
        assert_eq!(dims(Family::Partial, 2, 1, 2), vec![1, 1, 1]);
    }

    #[test]
    fn ternary_partial_small() {
        assert_eq!(dims(Family::Partial, 3, 0, 4), vec![1, 1, 2, 4, 5]);
    }

    #[test]
    fn series_and_json() {
        let pres = OperadPresentation::total(2, 1).unwrap();
        let table = dimension_table(&pres, 3, &EngineConfig::default()).unwrap();
        assert_eq!(table.to_series().to_polynomial_string(), "t - t^2 + t^3");
        let text = serde_json::to_string(&table.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"family":"total","n":2,"d":1,"dims":[[0,1,1,"exact"],[1,2,1,"exact"],[2,3,1,"exact"],[3,4,0,"exact"]]}"#
        );
        let back: DimensionTableJson = serde_json::from_str(&text).unwrap();
        assert_eq!(DimensionTable::from_json(&back).unwrap(), table);
    }

    #[test]
    fn modular_mode_agrees() {
        let pres = OperadPresentation::partial(3, 0).unwrap();
        let config = EngineConfig {
            rank_mode: RankMode::Modular,
            ..EngineConfig::default()
        };
        let t = dimension_table(&pres, 4, &config).unwrap();
        assert_eq!(t.dims(), vec![1, 1, 2, 4, 5]);
        assert_eq!(t.entries[4].certainty, RankCertainty::Modular);
    }
}
