//! Rank of sparse integer matrices: exact fraction-free elimination over the
//! integers, and elimination modulo word-size primes.

mod modular;
mod primes;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use modular::rank_mod_p;
pub use primes::{is_prime_u64, random_prime};

/// Sparse matrix with small integer entries, stored by rows.
/// Each row is sorted by column with no explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn new(ncols: usize) -> Self {
        Self {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<(u32, i64)>) {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(row
            .iter()
            .all(|&(c, v)| (c as usize) < self.ncols && v != 0));
        self.rows.push(row);
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(ncols);
        for r in rows {
            m.push_row(
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(c, &v)| (c as u32, v))
                    .collect(),
            );
        }
        m
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<(u32, i64)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Wall-clock budget shared by long-running computations.
#[derive(Debug, Clone, Copy, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn none() -> Self {
        Self(None)
    }

    pub fn after(budget: Duration) -> Self {
        Self(Some(Instant::now() + budget))
    }

    pub fn check(&self) -> Result<()> {
        match self.0 {
            Some(t) if Instant::now() > t => {
                Err(Error::ResourceBound("time budget exhausted".into()))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankCertainty {
    /// Computed over the integers.
    Exact,
    /// Computed modulo random primes whose ranks agreed.
    Modular,
}

impl std::fmt::Display for RankCertainty {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RankCertainty::Exact => "exact",
            RankCertainty::Modular => "modular",
        })
    }
}

/// Exact rank by fraction-free row reduction over the integers.
///
/// Rows are reduced against pivot rows keyed by their leading column; each
/// reduced row is divided by the gcd of its entries so the integers stay
/// small.
pub fn rank_exact(m: &SparseMatrix, deadline: Deadline) -> Result<usize> {
    let mut pivots: Vec<Option<Vec<(u32, BigInt)>>> = vec![None; m.ncols];
    let mut rank = 0usize;
    for (i, row) in m.rows.iter().enumerate() {
        if rank == m.ncols {
            break;
        }
        if i % 256 == 0 {
            deadline.check()?;
        }
        let mut r: Vec<(u32, BigInt)> = row.iter().map(|&(c, v)| (c, BigInt::from(v))).collect();
        while let Some((lead_col, lead)) = r.first().cloned() {
            match &pivots[lead_col as usize] {
                Some(pivot) => {
                    let g = lead.gcd(&pivot[0].1);
                    let row_scale = &pivot[0].1 / &g;
                    let pivot_scale = &lead / &g;
                    r = combine(&r, &row_scale, pivot, &pivot_scale);
                    normalize(&mut r);
                }
                None => {
                    normalize(&mut r);
                    pivots[lead_col as usize] = Some(r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Ok(rank)
}

/// `a * x - b * y` on sorted sparse rows.
fn combine(x: &[(u32, BigInt)], a: &BigInt, y: &[(u32, BigInt)], b: &BigInt) -> Vec<(u32, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Divides by the content and makes the leading entry positive.
fn normalize(r: &mut [(u32, BigInt)]) {
    let Some(first) = r.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in r.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let flip = first.1.is_negative();
    if g.is_one() && !flip {
        return;
    }
    for (_, v) in r.iter_mut() {
        if !g.is_one() {
            *v = &*v / &g;
        }
        if flip {
            *v = -&*v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_exact_ranks() {
        let m = SparseMatrix::from_dense(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        assert_eq!(rank_exact(&m, Deadline::none()).unwrap(), 2);
        let m = SparseMatrix::from_dense(&[vec![2, 0], vec![0, 3], vec![1, 1]]);
        assert_eq!(rank_exact(&m, Deadline::none()).unwrap(), 2);
        let m = SparseMatrix::new(4);
        assert_eq!(rank_exact(&m, Deadline::none()).unwrap(), 0);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2: full rank over Q, rank 1 mod 2
        let m = SparseMatrix::from_dense(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank_exact(&m, Deadline::none()).unwrap(), 2);
        assert_eq!(rank_mod_p(&m, 2, Deadline::none()).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 1_000_000_007, Deadline::none()).unwrap(), 2);
    }

    #[test]
    fn expired_deadline_is_reported() {
        let m = SparseMatrix::from_dense(&[vec![1]]);
        let d = Deadline::after(Duration::ZERO);
        std::thread::sleep(Duration::from_millis(2));
        assert!(matches!(rank_exact(&m, d), Err(Error::ResourceBound(_))));
    }
}
