//! Exact LP feasibility over the unit hypercube.
//!
//! [`feasible_vertex`] finds an extreme point of `{x in [0,1]^n : Aeq x = beq}`
//! or reports infeasibility, using a bounded-variable phase-I simplex over
//! exact rationals. Pivot selection is Bland's rule (lowest index throughout),
//! so runs are deterministic and cycling is impossible.

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::BigRat;

/// Outcome of an exact feasibility solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexResult {
    /// An extreme point: at least `n - rows` coordinates sit at 0 or 1.
    Vertex(Vec<BigRat>),
    Infeasible,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarStatus {
    Basic(usize),
    AtLower,
    AtUpper,
}

/// Finds an exact vertex of `{x in [0,1]^n : aeq x = beq}`.
///
/// Nonbasic variables start at their lower bound.
pub fn feasible_vertex(aeq: &QMatrix, beq: &[BigRat]) -> Result<VertexResult> {
    feasible_vertex_warm(aeq, beq, &vec![false; aeq.cols()])
}

/// Same as [`feasible_vertex`], but variables flagged in `start_upper` begin
/// at their upper bound. The warm start changes which vertex is found, never
/// whether one exists; given identical inputs the result is deterministic.
pub fn feasible_vertex_warm(
    aeq: &QMatrix,
    beq: &[BigRat],
    start_upper: &[bool],
) -> Result<VertexResult> {
    let m = aeq.rows();
    let n = aeq.cols();
    if beq.len() != m {
        return Err(Error::Dimension(format!(
            "rhs length {} does not match {} rows",
            beq.len(),
            m
        )));
    }
    if start_upper.len() != n {
        return Err(Error::Dimension(format!(
            "warm-start length {} does not match {} columns",
            start_upper.len(),
            n
        )));
    }

    let ncols = n + m;
    let mut status: Vec<VarStatus> = (0..n)
        .map(|j| if start_upper[j] { VarStatus::AtUpper } else { VarStatus::AtLower })
        .collect();

    // Residual of the start point; artificial variables absorb it.
    let mut residual: Vec<BigRat> = beq.to_vec();
    for j in 0..n {
        if start_upper[j] {
            for i in 0..m {
                residual[i] -= aeq.get(i, j);
            }
        }
    }

    // Row signs are normalized so every artificial starts nonnegative.
    let mut tableau: Vec<Vec<BigRat>> = Vec::with_capacity(m);
    let mut vbasic: Vec<BigRat> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = residual[i].is_negative();
        let mut row = Vec::with_capacity(ncols);
        for j in 0..n {
            let e = aeq.get(i, j);
            row.push(if flip { -e } else { e.clone() });
        }
        for k in 0..m {
            row.push(if k == i { BigRat::one() } else { BigRat::zero() });
        }
        tableau.push(row);
        vbasic.push(residual[i].abs());
        basis.push(n + i);
        status.push(VarStatus::Basic(i));
    }

    // Phase-I reduced costs: minimize the sum of artificials.
    let mut zrow: Vec<BigRat> = (0..ncols)
        .map(|j| {
            let cost = if j < n { BigRat::zero() } else { BigRat::one() };
            let mut acc = cost;
            for row in tableau.iter() {
                acc -= &row[j];
            }
            acc
        })
        .collect();
    let mut obj: BigRat = {
        let mut acc = BigRat::zero();
        for v in &vbasic {
            acc += v;
        }
        acc
    };

    let upper_of = |var: usize| -> Option<BigRat> {
        if var < n {
            Some(BigRat::one())
        } else {
            None
        }
    };

    loop {
        if obj.is_zero() {
            return Ok(VertexResult::Vertex(extract(n, &status, &vbasic, aeq, beq)?));
        }

        // Bland entering rule: smallest eligible index.
        let mut entering = None;
        for j in 0..ncols {
            let eligible = match status[j] {
                VarStatus::AtLower => zrow[j].is_negative(),
                VarStatus::AtUpper => zrow[j].is_positive(),
                VarStatus::Basic(_) => false,
            };
            if eligible {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else {
            return Ok(VertexResult::Infeasible);
        };
        let increasing = status[e] == VarStatus::AtLower;

        // Ratio test: how far can the entering variable move.
        let flip_limit = upper_of(e);
        let mut row_limit: Option<(BigRat, usize, usize)> = None; // (t, row, leaving var)
        for i in 0..m {
            let coef = &tableau[i][e];
            if coef.is_zero() {
                continue;
            }
            // vbasic[i] moves at rate -sigma * coef.
            let shrink = if increasing { coef.is_positive() } else { coef.is_negative() };
            let limit = if shrink {
                vbasic[i].checked_div(&coef.abs()).expect("nonzero coefficient")
            } else {
                match upper_of(basis[i]) {
                    Some(u) => (u - vbasic[i].clone())
                        .checked_div(&coef.abs())
                        .expect("nonzero coefficient"),
                    None => continue,
                }
            };
            let better = match &row_limit {
                None => true,
                Some((t, _, var)) => limit < *t || (limit == *t && basis[i] < *var),
            };
            if better {
                row_limit = Some((limit, i, basis[i]));
            }
        }

        let use_flip = match (&flip_limit, &row_limit) {
            (Some(f), Some((t, _, _))) => f <= t,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => {
                return Err(Error::Internal("phase-I simplex unbounded".into()));
            }
        };

        let step = if use_flip {
            flip_limit.clone().expect("flip requires a finite bound")
        } else {
            row_limit.as_ref().expect("pivot requires a row").0.clone()
        };

        // Move the entering variable by `step`; basics adjust accordingly.
        if !step.is_zero() {
            for i in 0..m {
                let coef = &tableau[i][e];
                if coef.is_zero() {
                    continue;
                }
                let delta = &step * coef;
                if increasing {
                    vbasic[i] -= &delta;
                } else {
                    vbasic[i] += &delta;
                }
            }
            let signed = if increasing { step.clone() } else { -step.clone() };
            obj += &(&zrow[e] * &signed);
        }

        if use_flip {
            status[e] = if increasing { VarStatus::AtUpper } else { VarStatus::AtLower };
            continue;
        }

        let (_, lrow, lvar) = row_limit.expect("pivot row chosen");
        // The leaving variable exits at whichever bound it just hit.
        let leave_coef = &tableau[lrow][e];
        let hit_lower = if increasing { leave_coef.is_positive() } else { leave_coef.is_negative() };
        status[lvar] = if hit_lower { VarStatus::AtLower } else { VarStatus::AtUpper };

        let entering_value = if increasing { step } else { BigRat::one() - step };
        let pivot = tableau[lrow][e].clone();
        for j in 0..ncols {
            tableau[lrow][j] = tableau[lrow][j]
                .checked_div(&pivot)
                .expect("nonzero pivot");
        }
        for i in 0..m {
            if i == lrow || tableau[i][e].is_zero() {
                continue;
            }
            let factor = tableau[i][e].clone();
            for j in 0..ncols {
                let d = &factor * &tableau[lrow][j];
                tableau[i][j] -= &d;
            }
        }
        if !zrow[e].is_zero() {
            let factor = zrow[e].clone();
            for j in 0..ncols {
                let d = &factor * &tableau[lrow][j];
                zrow[j] -= &d;
            }
        }
        basis[lrow] = e;
        status[e] = VarStatus::Basic(lrow);
        vbasic[lrow] = entering_value;
    }
}

fn extract(
    n: usize,
    status: &[VarStatus],
    vbasic: &[BigRat],
    aeq: &QMatrix,
    beq: &[BigRat],
) -> Result<Vec<BigRat>> {
    let x: Vec<BigRat> = (0..n)
        .map(|j| match status[j] {
            VarStatus::Basic(i) => vbasic[i].clone(),
            VarStatus::AtLower => BigRat::zero(),
            VarStatus::AtUpper => BigRat::one(),
        })
        .collect();
    // Exact postcondition check.
    let image = aeq.mat_vec(&x)?;
    if image.iter().zip(beq).any(|(a, b)| a != b) {
        return Err(Error::Internal("vertex fails Aeq x = beq".into()));
    }
    if x.iter().any(|c| c.is_negative() || c > &BigRat::one()) {
        return Err(Error::Internal("vertex leaves [0,1]".into()));
    }
    Ok(x)
}
