use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{Deadline, SparseMatrix};
use crate::error::{precondition, Result};

/// Pivot row normalized to leading coefficient 1.
type PivotRow = Box<[(u32, u64)]>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn reduce(v: i64, p: u64) -> u64 {
    (v as i128).rem_euclid(p as i128) as u64
}

/// Rank modulo the prime `p`.
///
/// Each incoming row is scattered into a dense work vector and reduced by
/// the stored pivot rows (leading coefficient 1) in increasing column
/// order; a row that survives becomes a new pivot.
pub fn rank_mod_p(m: &SparseMatrix, p: u64, deadline: Deadline) -> Result<usize> {
    if p < 2 {
        return precondition("modulus must be a prime");
    }
    let ncols = m.ncols();
    let mut pivots: Vec<Option<PivotRow>> = vec![None; ncols];
    let mut work = vec![0u64; ncols];
    let mut queued = vec![false; ncols];
    let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
    let mut rank = 0usize;
    for (i, row) in m.rows().iter().enumerate() {
        if rank == ncols {
            break;
        }
        if i % 1024 == 0 {
            deadline.check()?;
        }
        for &(c, v) in row {
            let c_us = c as usize;
            work[c_us] = (work[c_us] + reduce(v, p)) % p;
            if !queued[c_us] {
                queued[c_us] = true;
                heap.push(Reverse(c));
            }
        }
        while let Some(Reverse(c)) = heap.pop() {
            let c_us = c as usize;
            queued[c_us] = false;
            let v = work[c_us];
            if v == 0 {
                continue;
            }
            work[c_us] = 0;
            if let Some(pivot) = &pivots[c_us] {
                for &(cc, pv) in pivot.iter().skip(1) {
                    let cc_us = cc as usize;
                    let sub = mul_mod(v, pv, p);
                    work[cc_us] = (work[cc_us] + p - sub) % p;
                    if !queued[cc_us] {
                        queued[cc_us] = true;
                        heap.push(Reverse(cc));
                    }
                }
            } else {
                let inv = pow_mod(v, p - 2, p);
                let mut new_row = vec![(c, 1u64)];
                while let Some(Reverse(cc)) = heap.pop() {
                    let cc_us = cc as usize;
                    queued[cc_us] = false;
                    let w = work[cc_us];
                    if w != 0 {
                        new_row.push((cc, mul_mod(w, inv, p)));
                        work[cc_us] = 0;
                    }
                }
                pivots[c_us] = Some(new_row.into_boxed_slice());
                rank += 1;
            }
        }
    }
    Ok(rank)
}
