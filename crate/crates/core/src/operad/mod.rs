//! Non-symmetric operads generated by one `n`-ary operation of degree `d`
//! under total or partial associativity: planar-tree bases, relation spans
//! and the resulting arity dimensions.

mod dims;
mod graft;
mod relations;
mod tree;

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::linalg::Deadline;
use crate::series::Parity;

pub use dims::{
    dimension, dimension_table, generating_series, DimensionEntry, DimensionTable,
    DimensionTableJson,
};
pub use graft::graft;
pub use relations::{
    relation_element, relation_span, skeleton_count, two_vertex_tree, RelationSpan, SpanLimits,
    TreeVector,
};
pub use tree::{arity_of, enumerate_trees, fuss_catalan, PlanarTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// All placements of the iterated product agree.
    Total,
    /// The signed sum of all placements vanishes.
    Partial,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Total => "total",
            Family::Partial => "partial",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "total" | "t" | "tass" => Ok(Family::Total),
            "partial" | "p" | "pass" => Ok(Family::Partial),
            _ => Err(Error::Parse(format!(
                "unknown family {s:?} (expected total or partial)"
            ))),
        }
    }
}

/// One `n`-ary generator of degree `d` with total or partial associativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OperadPresentation {
    pub family: Family,
    pub n: usize,
    pub d: i64,
}

impl OperadPresentation {
    pub fn new(family: Family, n: usize, d: i64) -> Result<Self> {
        if n < 2 {
            return precondition(format!("arity must be at least 2, got {n}"));
        }
        Ok(Self { family, n, d })
    }

    pub fn total(n: usize, d: i64) -> Result<Self> {
        Self::new(Family::Total, n, d)
    }

    pub fn partial(n: usize, d: i64) -> Result<Self> {
        Self::new(Family::Partial, n, d)
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.d)
    }
}

impl fmt::Display for OperadPresentation {
    /// `tAss^n_d` / `pAss^n_d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.family {
            Family::Total => 't',
            Family::Partial => 'p',
        };
        write!(f, "{prefix}Ass^{}_{}", self.n, self.d)
    }
}

/// The Koszul dual presentation: swaps the family and sends `d` to `n - 2 - d`.
pub fn dual_presentation(p: &OperadPresentation) -> OperadPresentation {
    OperadPresentation {
        family: match p.family {
            Family::Total => Family::Partial,
            Family::Partial => Family::Total,
        },
        n: p.n,
        d: -p.d + p.n as i64 - 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Exact,
    Modular,
    /// Exact up to `exact_column_threshold` columns, modular above.
    Auto,
}

impl FromStr for RankMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(RankMode::Exact),
            "modular" => Ok(RankMode::Modular),
            "auto" => Ok(RankMode::Auto),
            _ => Err(Error::Parse(format!("unknown rank mode {s:?}"))),
        }
    }
}

/// Knobs for dimension computations.
#[derive(Debug, Clone, Copy)]
pub struct EngineConfig {
    pub rank_mode: RankMode,
    pub exact_column_threshold: usize,
    /// Number of independent primes that must agree in modular mode.
    pub primes: usize,
    pub seed: u64,
    pub limits: SpanLimits,
    pub deadline: Deadline,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            rank_mode: RankMode::Auto,
            exact_column_threshold: 2000,
            primes: 2,
            seed: 0x6b6f_737a_756c,
            limits: SpanLimits::default(),
            deadline: Deadline::none(),
        }
    }
}

impl EngineConfig {
    pub fn with_time_budget(mut self, budget: Duration) -> Self {
        self.deadline = Deadline::after(budget);
        self
    }
}
