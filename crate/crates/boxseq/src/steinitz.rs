//! Rearranging zero-sum multisets so every prefix stays in `d * [-1,1]^d`.
//!
//! [`steinitz_order`] implements a certificate-checked chain construction:
//! starting from the full set `A_n`, one element is removed per level while
//! keeping the polytope
//! `P_k = { w in [0,1]^{A_k} : sum w_v v = 0, sum w_v = k - d }`
//! nonempty. The element removed at level k goes to position k; the final d
//! elements fill positions 1..d in index order. Feasibility of every `P_k`
//! forces each prefix sum into `d * [-1,1]^d`: the sum over `A_k` equals
//! `sum (1 - w_v) v` with coefficients in `[0,1]` totalling d.
//!
//! Removal candidates are tried in order of increasing weight in the current
//! extreme point (ties by index), each tested by an exact LP feasibility
//! call; a removable element always exists, so a failure to find one is a
//! bug, not an input condition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::BigRat;
use crate::sequence::VectorSequence;
use crate::simplex::{feasible_vertex_warm, VertexResult};
use crate::vector::QVector;

/// One level of the chain: the active set and an exact point of its polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainCertificate {
    /// Source indices of `A_k`, ascending.
    pub set: Vec<usize>,
    /// Weights aligned with `set`; in `[0,1]`, summing to `|set| - d`, with
    /// `sum weights[i] * v[set[i]] = 0` exactly.
    pub weights: Vec<BigRat>,
}

/// An ordering with exact prefix-norm bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SteinitzOrdering {
    /// `permutation[p]` is the source index placed at position `p`.
    pub perm: Vec<usize>,
    /// Max-norm of each prefix sum, exact.
    pub prefix_norms: Vec<BigRat>,
    /// The guaranteed expansion factor (the dimension d).
    pub bound: BigRat,
    /// Chain certificates from level n down to level d, when requested.
    #[serde(skip)]
    pub chain_certificates: Option<Vec<ChainCertificate>>,
}

/// Orders a zero-sum multiset of box vectors so that every prefix sum has
/// max-norm at most d, exactly. Keeps chain certificates.
pub fn steinitz_order(seq: &VectorSequence) -> Result<SteinitzOrdering> {
    steinitz_order_with(seq, true)
}

/// As [`steinitz_order`]; certificates are optional since they are quadratic
/// in the input size.
pub fn steinitz_order_with(
    seq: &VectorSequence,
    want_certificates: bool,
) -> Result<SteinitzOrdering> {
    let d = seq.dim();
    let n = seq.len();
    if !seq.all_in_box() {
        return Err(Error::Precondition("all vectors must lie in [-1,1]^d".into()));
    }
    if !seq.sum().is_zero() {
        return Err(Error::NonzeroSum);
    }

    if n <= d {
        // Degenerate: any prefix of <= d box vectors already has norm <= d.
        let perm: Vec<usize> = (0..n).collect();
        return finish(seq, perm, d, None);
    }

    let mut active: Vec<usize> = (0..n).collect();
    let mut perm = vec![usize::MAX; n];
    let mut certificates: Vec<ChainCertificate> = Vec::new();

    // Extreme point of P_n; feasible since the constant (n-d)/n works.
    let mut weights = match solve_level(seq, &active, n - d, &vec![true; n])? {
        VertexResult::Vertex(w) => w,
        VertexResult::Infeasible => {
            return Err(Error::Internal("P_n infeasible for a zero-sum input".into()))
        }
    };
    if want_certificates {
        certificates.push(ChainCertificate { set: active.clone(), weights: weights.clone() });
    }

    for k in ((d + 1)..=n).rev() {
        // Candidates ordered by increasing weight, ties by source index.
        let mut order: Vec<usize> = (0..active.len()).collect();
        order.sort_by(|&a, &b| {
            weights[a].cmp(&weights[b]).then(active[a].cmp(&active[b]))
        });

        let mut accepted = None;
        for &cand in &order {
            let mut rest = active.clone();
            rest.remove(cand);
            let mut warm: Vec<bool> =
                weights.iter().map(|w| *w == BigRat::one()).collect();
            warm.remove(cand);
            match solve_level(seq, &rest, k - 1 - d, &warm)? {
                VertexResult::Vertex(w) => {
                    accepted = Some((cand, rest, w));
                    break;
                }
                VertexResult::Infeasible => continue,
            }
        }
        let Some((cand, rest, w)) = accepted else {
            return Err(Error::Internal(
                "no removable element at some chain level; this is a bug".into(),
            ));
        };
        perm[k - 1] = active[cand];
        active = rest;
        weights = w;
        if want_certificates {
            certificates.push(ChainCertificate { set: active.clone(), weights: weights.clone() });
        }
    }

    perm[..d].copy_from_slice(&active);
    finish(seq, perm, d, want_certificates.then_some(certificates))
}

fn finish(
    seq: &VectorSequence,
    perm: Vec<usize>,
    d: usize,
    certificates: Option<Vec<ChainCertificate>>,
) -> Result<SteinitzOrdering> {
    let bound = BigRat::from_int(d as i64);
    let mut acc = QVector::zero(d);
    let mut prefix_norms = Vec::with_capacity(perm.len());
    for &i in &perm {
        acc.add_assign(seq.get(i));
        let norm = acc.max_norm();
        if norm > bound {
            return Err(Error::Internal(format!(
                "prefix norm {norm} exceeds the bound {bound}; this is a bug"
            )));
        }
        prefix_norms.push(norm);
    }
    Ok(SteinitzOrdering { perm, prefix_norms, bound, chain_certificates: certificates })
}

/// LP for one chain level: columns are the active vectors, rows are the d
/// coordinate constraints followed by the mass row.
fn solve_level(
    seq: &VectorSequence,
    active: &[usize],
    mass: usize,
    warm: &[bool],
) -> Result<VertexResult> {
    let d = seq.dim();
    let cols = active.len();
    let mut entries = Vec::with_capacity((d + 1) * cols);
    for r in 0..d {
        for &i in active {
            entries.push(seq.get(i).get(r).clone());
        }
    }
    entries.extend(std::iter::repeat(BigRat::one()).take(cols));
    let aeq = QMatrix::new(d + 1, cols, entries)?;
    let mut rhs = vec![BigRat::zero(); d];
    rhs.push(BigRat::from_int(mass as i64));
    feasible_vertex_warm(&aeq, &rhs, warm)
}

/// Exact check that every prefix sum under `ord` has max-norm <= `factor`.
///
/// Recomputes the prefix sums from scratch; a malformed permutation verifies
/// as false.
pub fn verify_prefix_bound(
    ord: &SteinitzOrdering,
    seq: &VectorSequence,
    factor: &BigRat,
) -> bool {
    if ord.perm.len() != seq.len() {
        return false;
    }
    let mut seen = vec![false; seq.len()];
    for &i in &ord.perm {
        if i >= seq.len() || seen[i] {
            return false;
        }
        seen[i] = true;
    }
    let mut acc = QVector::zero(seq.dim());
    for &i in &ord.perm {
        acc.add_assign(seq.get(i));
        if &acc.max_norm() > factor {
            return false;
        }
    }
    true
}

/// Exact check of the three defining conditions of one chain certificate.
pub fn verify_chain_certificate(
    cert: &ChainCertificate,
    seq: &VectorSequence,
) -> bool {
    let d = seq.dim();
    let k = cert.set.len();
    if cert.weights.len() != k || k < d {
        return false;
    }
    let one = BigRat::one();
    if cert.weights.iter().any(|w| w.is_negative() || w > &one) {
        return false;
    }
    let mut mass = BigRat::zero();
    let mut combo = QVector::zero(d);
    for (&i, w) in cert.set.iter().zip(&cert.weights) {
        if i >= seq.len() {
            return false;
        }
        mass += w;
        combo.add_assign(&seq.get(i).scale(w));
    }
    mass == BigRat::from_int((k - d) as i64) && combo.is_zero()
}
