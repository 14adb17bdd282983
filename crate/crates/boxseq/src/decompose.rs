//! Finding a proper subsequence with sum in the box.
//!
//! Given t box vectors whose sum s is in the box, append the artificial
//! element -s, Steinitz-order the result (total sum zero), and walk the
//! even-indexed partial sums of the half not containing the artificial
//! element. Those sums live in `d * [-1,1]^d`, which splits into `(2d)^d`
//! unit cells `[0,1)^d + z`; two sums in one cell differ by a box vector,
//! and the block of elements between them is the answer. With
//! `t >= 4 (2d)^d` a collision is guaranteed; below that it may still occur.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::VectorSequence;
use crate::steinitz::{steinitz_order_with, SteinitzOrdering};
use crate::vector::QVector;
use std::collections::HashMap;

/// Sequence length above which a decomposition always exists: `4 (2d)^d`.
pub fn threshold(d: usize) -> BigUint {
    assert!(d >= 1, "dimension must be positive");
    BigUint::from(2 * d).pow(d as u32) * BigUint::from(4u32)
}

/// A proper subsequence with sum in the box, plus the evidence that found it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionResult {
    /// Indices into the original sequence, ascending; `2 <= |subset| < t` and
    /// the subset sum lies in `[-1,1]^d` exactly.
    pub subset: Vec<usize>,
    /// Ordering of the extended multiset (original vectors, then `-s` with
    /// index t) whose partial sums located the subset.
    pub ordering: SteinitzOrdering,
    /// The unit cell both colliding partial sums fell into.
    pub cell: Vec<i64>,
    /// Even partial-sum indices (2i, 2j) within the working half.
    pub collision: (usize, usize),
    /// Whether the ordering was walked in reverse (artificial element in the
    /// first half).
    pub mirrored: bool,
}

/// Outcome of [`decompose`]; below the threshold a miss is a value, not an
/// error.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecomposeOutcome {
    Found(DecompositionResult),
    NotFound,
}

impl DecomposeOutcome {
    pub fn found(&self) -> Option<&DecompositionResult> {
        match self {
            DecomposeOutcome::Found(r) => Some(r),
            DecomposeOutcome::NotFound => None,
        }
    }
}

/// Each coordinate maps to `min(floor(x), d-1)`, so a coordinate exactly at
/// the top face is assigned to the top cell and any two points in one cell
/// differ by a vector of `[-1,1]^d`.
fn cell_of(point: &QVector, d: usize) -> Vec<i64> {
    point
        .coords()
        .iter()
        .map(|c| {
            let f = c.floor_int();
            let f: i64 = i64::try_from(&f).expect("cell coordinate fits i64");
            debug_assert!(f >= -(d as i64) && f <= d as i64);
            f.min(d as i64 - 1)
        })
        .collect()
}

/// Finds a proper subsequence of `w` (all vectors and their total in the
/// box) whose sum lies in the box. Guaranteed to succeed when
/// `t >= threshold(d)`.
pub fn decompose(w: &VectorSequence) -> Result<DecomposeOutcome> {
    let d = w.dim();
    let t = w.len();
    if t < 2 {
        return Err(Error::Precondition(format!("decompose needs t >= 2, got {t}")));
    }
    if !w.all_in_box() {
        return Err(Error::Precondition("all vectors must lie in [-1,1]^d".into()));
    }
    let s = w.sum();
    if !s.in_box() {
        return Err(Error::Precondition("the total sum must lie in [-1,1]^d".into()));
    }

    let mut extended: Vec<QVector> = w.vectors().to_vec();
    extended.push(s.neg());
    let v = VectorSequence::new(d, extended)?;
    let ordering = steinitz_order_with(&v, false)?;

    let artificial_pos = ordering
        .perm
        .iter()
        .position(|&i| i == t)
        .ok_or_else(|| Error::Internal("artificial element missing from ordering".into()))?;

    // Work on whichever side of the artificial element holds at least half
    // the sequence; the reversed ordering's prefix sums are negated suffix
    // sums, which also stay in d*B because the total is zero.
    let mirrored = 2 * artificial_pos < t;
    let working: Vec<usize> = if mirrored {
        ordering.perm[artificial_pos + 1..].iter().rev().copied().collect()
    } else {
        ordering.perm[..artificial_pos].to_vec()
    };

    let mut partial = QVector::zero(d);
    let mut first_in_cell: HashMap<Vec<i64>, usize> = HashMap::new();
    first_in_cell.insert(cell_of(&partial, d), 0);

    for (pos, &src) in working.iter().enumerate() {
        partial.add_assign(w.get(src));
        let count = pos + 1;
        if count % 2 != 0 {
            continue;
        }
        let cell = cell_of(&partial, d);
        match first_in_cell.get(&cell) {
            Some(&earlier) if count - earlier < t => {
                let mut subset: Vec<usize> = working[earlier..count].to_vec();
                subset.sort_unstable();
                let result = DecompositionResult {
                    subset,
                    ordering,
                    cell,
                    collision: (earlier, count),
                    mirrored,
                };
                check_postcondition(w, &result)?;
                return Ok(DecomposeOutcome::Found(result));
            }
            Some(_) => {}
            None => {
                first_in_cell.insert(cell, count);
            }
        }
    }
    Ok(DecomposeOutcome::NotFound)
}

/// Every returned subset is re-verified exactly before it leaves this module.
fn check_postcondition(w: &VectorSequence, result: &DecompositionResult) -> Result<()> {
    let size = result.subset.len();
    if size < 2 || size >= w.len() {
        return Err(Error::Internal(format!("subset size {size} out of range")));
    }
    let sum = w.subseq_sum(&result.subset)?;
    if !sum.in_box() {
        return Err(Error::Internal("subset sum leaves the box".into()));
    }
    Ok(())
}
