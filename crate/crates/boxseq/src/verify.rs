//! Verification oracles for sequences in the box.
//!
//! Everything here is exhaustive and exact: minimality of a sequence is
//! decided by enumerating multiplicity patterns over its distinct vectors
//! (so constructions with few distinct vectors stay checkable even when the
//! sequence is long), and all box tests are exact rational comparisons.
//!
//! A sequence is a *tau witness* when its total sum lies in the box but no
//! proper subsequence of size >= 2 does; such a sequence of length t
//! certifies `tau(d) >= t`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::BigRat;
use crate::sequence::VectorSequence;
use crate::vector::QVector;

/// Explicit enumeration budgets. Exceeding one is an error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug)]
pub struct VerifyLimits {
    /// Subset search is allowed up to `2^subset_patterns_log2` multiplicity
    /// patterns.
    pub subset_patterns_log2: u32,
    /// Maximum multiplicity vectors enumerated by [`kstar_check`].
    pub kstar_budget: u64,
}

impl Default for VerifyLimits {
    fn default() -> Self {
        VerifyLimits { subset_patterns_log2: 26, kstar_budget: 10_000_000 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    TauWitness,
    MinSubset,
    Kstar,
    SumCheck,
}

/// A counterexample attached to a failed report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// 0-based indices into the sequence.
    Subset(Vec<usize>),
    /// Multiplicities over the distinct vectors, in their sorted order.
    Multiplicity(Vec<u64>),
}

/// Outcome of a minimality / k* / sum check, with explicit witnesses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: ReportKind,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_size: Option<usize>,
    pub details: String,
}

/// Distinct vectors of a sequence with their occurrence indices, sorted by
/// vector value for determinism.
pub fn group_distinct(seq: &VectorSequence) -> Vec<(QVector, Vec<usize>)> {
    let mut groups: BTreeMap<QVector, Vec<usize>> = BTreeMap::new();
    for (i, v) in seq.vectors().iter().enumerate() {
        groups.entry(v.clone()).or_default().push(i);
    }
    groups.into_iter().collect()
}

fn pattern_work(groups: &[(QVector, Vec<usize>)]) -> u128 {
    let mut work: u128 = 1;
    for (_, idxs) in groups {
        work = work.saturating_mul(idxs.len() as u128 + 1);
    }
    work
}

/// Exhaustive search for the smallest proper subset S, 2 <= |S| < t, whose
/// sum lies in the box.
///
/// Searches breadth-first over subset sizes; identical vectors are grouped so
/// the enumeration runs over multiplicity patterns. The witness is the
/// lexicographically smallest index set realizing a hit of minimum size.
/// Passing means no such subset exists.
pub fn min_box_subset(seq: &VectorSequence, limits: &VerifyLimits) -> Result<VerificationReport> {
    let t = seq.len();
    let groups = group_distinct(seq);
    let work = pattern_work(&groups);
    if limits.subset_patterns_log2 >= 128 || work > 1u128 << limits.subset_patterns_log2 {
        return Err(Error::SubsetLimit { patterns: work, limit: limits.subset_patterns_log2 });
    }

    for size in 2..t {
        if let Some(pattern) = best_pattern_of_size(&groups, seq.dim(), size) {
            let witness = realize_lex_min(&groups, &pattern);
            return Ok(VerificationReport {
                kind: ReportKind::MinSubset,
                passed: false,
                witness: Some(Witness::Subset(witness)),
                min_size: Some(size),
                details: format!("proper subset of size {size} sums into the box"),
            });
        }
    }
    Ok(VerificationReport {
        kind: ReportKind::MinSubset,
        passed: true,
        witness: None,
        min_size: None,
        details: "no proper subset of size >= 2 sums into the box".into(),
    })
}

/// Enumerates multiplicity patterns of the given total size; among patterns
/// whose sum is in the box, returns the one whose realization is
/// lexicographically smallest.
fn best_pattern_of_size(
    groups: &[(QVector, Vec<usize>)],
    dim: usize,
    size: usize,
) -> Option<Vec<usize>> {
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None; // (realization, pattern)
    let mut pattern = vec![0usize; groups.len()];
    let capacity: Vec<usize> = {
        // capacity[i] = max selectable from groups i..
        let mut cap = vec![0usize; groups.len() + 1];
        for i in (0..groups.len()).rev() {
            cap[i] = cap[i + 1] + groups[i].1.len();
        }
        cap
    };

    fn recurse(
        groups: &[(QVector, Vec<usize>)],
        capacity: &[usize],
        pattern: &mut Vec<usize>,
        i: usize,
        remaining: usize,
        sum: &QVector,
        best: &mut Option<(Vec<usize>, Vec<usize>)>,
    ) {
        if remaining > capacity[i] {
            return;
        }
        if i == groups.len() {
            debug_assert_eq!(remaining, 0);
            if sum.in_box() {
                let real = realize_lex_min(groups, pattern);
                let better = match best {
                    None => true,
                    Some((cur, _)) => real < *cur,
                };
                if better {
                    *best = Some((real, pattern.clone()));
                }
            }
            return;
        }
        let (value, idxs) = &groups[i];
        let take_max = remaining.min(idxs.len());
        let mut acc = sum.clone();
        for take in 0..=take_max {
            if take > 0 {
                acc.add_assign(value);
            }
            pattern[i] = take;
            recurse(groups, capacity, pattern, i + 1, remaining - take, &acc, best);
        }
        pattern[i] = 0;
    }

    recurse(
        groups,
        &capacity,
        &mut pattern,
        0,
        size,
        &QVector::zero(dim),
        &mut best,
    );
    best.map(|(_, p)| p)
}

/// Smallest index set realizing a multiplicity pattern: the first `c_i`
/// occurrences of each distinct vector.
fn realize_lex_min(groups: &[(QVector, Vec<usize>)], pattern: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    for ((_, idxs), &take) in groups.iter().zip(pattern) {
        out.extend_from_slice(&idxs[..take]);
    }
    out.sort_unstable();
    out
}

/// Full tau-witness check: all vectors in the box, the total sum in the box,
/// and no proper subset of size >= 2 summing into the box. A passing
/// sequence of length t certifies `tau(dim) >= t`.
///
/// On failure, a concrete subset witness is preferred over the other
/// verdicts whenever one exists.
pub fn is_tau_witness(seq: &VectorSequence, limits: &VerifyLimits) -> Result<VerificationReport> {
    if let Some(i) = seq.vectors().iter().position(|v| !v.in_box()) {
        return Ok(VerificationReport {
            kind: ReportKind::TauWitness,
            passed: false,
            witness: None,
            min_size: None,
            details: format!("vector {i} lies outside the box"),
        });
    }
    let total = seq.sum();
    let sum_in = total.in_box();
    let inner = min_box_subset(seq, limits)?;
    if !inner.passed {
        let mut details = inner.details.clone();
        if !sum_in {
            details = format!("{details}; total sum {total:?} also lies outside the box");
        }
        return Ok(VerificationReport { kind: ReportKind::TauWitness, details, ..inner });
    }
    if !sum_in {
        return Ok(VerificationReport {
            kind: ReportKind::TauWitness,
            passed: false,
            witness: None,
            min_size: None,
            details: format!("total sum {total:?} lies outside the box"),
        });
    }
    Ok(VerificationReport {
        kind: ReportKind::TauWitness,
        passed: true,
        witness: None,
        min_size: None,
        details: format!("tau({}) >= {} witnessed", seq.dim(), seq.len()),
    })
}

/// Simple membership report: all vectors in the box and the total sum in the
/// box.
pub fn sum_check(seq: &VectorSequence) -> VerificationReport {
    let all_in = seq.all_in_box();
    let total = seq.sum();
    let sum_in = total.in_box();
    VerificationReport {
        kind: ReportKind::SumCheck,
        passed: all_in && sum_in,
        witness: None,
        min_size: None,
        details: format!(
            "vectors in box: {all_in}; total sum {total:?} in box: {sum_in}; sum is zero: {}",
            total.is_zero()
        ),
    }
}

/// Sufficient condition for `k*(dim) >= t`: the sequence is a tau witness
/// and, for every nonnegative integer multiplicity vector q over its
/// distinct vectors with `1 <= sum(q) <= floor(t/2)`, the vector `s - s'`
/// (with `s' = sum q_i v_i`) lies outside the box.
///
/// Requires `t >= 4`. Enumeration is capped by `limits.kstar_budget`.
pub fn kstar_check(seq: &VectorSequence, limits: &VerifyLimits) -> Result<VerificationReport> {
    let t = seq.len();
    if t < 4 {
        return Err(Error::Precondition(format!("kstar_check needs t >= 4, got {t}")));
    }
    let tau = is_tau_witness(seq, limits)?;
    if !tau.passed {
        return Ok(VerificationReport {
            kind: ReportKind::Kstar,
            passed: false,
            witness: tau.witness,
            min_size: tau.min_size,
            details: format!("tau-witness conditions fail: {}", tau.details),
        });
    }

    let groups = group_distinct(seq);
    let values: Vec<&QVector> = groups.iter().map(|(v, _)| v).collect();
    let total = seq.sum();
    let qmax = t / 2;

    let mut q = vec![0u64; values.len()];
    let mut enumerated: u64 = 0;
    let mut violation: Option<Vec<u64>> = None;

    fn recurse(
        values: &[&QVector],
        i: usize,
        remaining: u64,
        used: u64,
        sprime: &QVector,
        total: &QVector,
        q: &mut Vec<u64>,
        enumerated: &mut u64,
        budget: u64,
        violation: &mut Option<Vec<u64>>,
    ) -> Result<()> {
        if violation.is_some() {
            return Ok(());
        }
        if i == values.len() {
            if used >= 1 {
                *enumerated += 1;
                if *enumerated > budget {
                    return Err(Error::KStarBudget(*enumerated));
                }
                if total.sub(sprime).in_box() {
                    *violation = Some(q.clone());
                }
            }
            return Ok(());
        }
        let mut acc = sprime.clone();
        for take in 0..=remaining {
            if take > 0 {
                acc.add_assign(values[i]);
            }
            q[i] = take;
            recurse(
                values,
                i + 1,
                remaining - take,
                used + take,
                &acc,
                total,
                q,
                enumerated,
                budget,
                violation,
            )?;
            if violation.is_some() {
                break;
            }
        }
        q[i] = 0;
        Ok(())
    }

    recurse(
        &values,
        0,
        qmax as u64,
        0,
        &QVector::zero(seq.dim()),
        &total,
        &mut q,
        &mut enumerated,
        limits.kstar_budget,
        &mut violation,
    )?;

    match violation {
        Some(q) => Ok(VerificationReport {
            kind: ReportKind::Kstar,
            passed: false,
            witness: Some(Witness::Multiplicity(q)),
            min_size: None,
            details: "a multiplicity vector q with 1 <= sum(q) <= t/2 puts s - s' in the box"
                .into(),
        }),
        None => Ok(VerificationReport {
            kind: ReportKind::Kstar,
            passed: true,
            witness: None,
            min_size: None,
            details: format!(
                "k*({}) >= {} witnessed ({enumerated} multiplicity vectors checked)",
                seq.dim(),
                t
            ),
        }),
    }
}

/// Enumerates all minimal multisets over `I = {-n_bound..n_bound}^m \ {0}`:
/// multisets of size 2..=t_max whose sum lies in I while no proper
/// sub-multiset of size >= 2 does. These are exactly the index tuples of
/// non-redundant subadditivity constraints, up to permutation.
///
/// Desk-scale limits: `m <= 2`, `n_bound <= 4`, `t_max <= 8`.
pub fn minimal_multiset_enum(
    m: usize,
    n_bound: i64,
    t_max: usize,
) -> Result<Vec<VectorSequence>> {
    if !(1..=2).contains(&m) || !(1..=4).contains(&n_bound) || !(2..=8).contains(&t_max) {
        return Err(Error::EnumLimit(format!(
            "need m <= 2, N <= 4, 2 <= t_max <= 8; got m={m}, N={n_bound}, t_max={t_max}"
        )));
    }

    // All nonzero integer vectors of I, lexicographically sorted.
    let mut elements: Vec<Vec<i64>> = Vec::new();
    let mut v = vec![-n_bound; m];
    loop {
        if v.iter().any(|&c| c != 0) {
            elements.push(v.clone());
        }
        let mut i = m;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            v[i] += 1;
            if v[i] <= n_bound {
                break;
            }
            v[i] = -n_bound;
            if i == 0 {
                i = usize::MAX;
                break;
            }
        }
        if i == usize::MAX {
            break;
        }
    }
    // The odometer above runs most-significant-first; it already emits in
    // lexicographic order.
    debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));

    let in_i = |s: &[i64]| s.iter().all(|&c| c.abs() <= n_bound);

    let mut out: Vec<VectorSequence> = Vec::new();
    // Sub-multiset sums of the current selection, with their sizes.
    let mut sums: Vec<(Vec<i64>, usize)> = vec![(vec![0; m], 0)];
    let mut selection: Vec<usize> = Vec::new();

    fn dfs(
        elements: &[Vec<i64>],
        m: usize,
        t_max: usize,
        n_bound: i64,
        in_i: &dyn Fn(&[i64]) -> bool,
        selection: &mut Vec<usize>,
        sums: &mut Vec<(Vec<i64>, usize)>,
        out: &mut Vec<VectorSequence>,
        first: usize,
    ) {
        for e in first..elements.len() {
            let elem = &elements[e];
            let base = sums.len();
            for k in 0..base {
                let (s, size) = &sums[k];
                let mut ns: Vec<i64> = s.iter().zip(elem).map(|(a, b)| a + b).collect();
                sums.push((std::mem::take(&mut ns), size + 1));
            }
            selection.push(e);
            let q = selection.len();

            // Proper sub-multisets containing the new element, size >= 2.
            let mut blocked = false;
            let mut full_in_i = false;
            for (s, size) in &sums[base..] {
                if *size >= 2 && in_i(s) {
                    if *size < q {
                        blocked = true;
                        break;
                    } else {
                        full_in_i = true;
                    }
                }
            }

            if !blocked {
                if full_in_i && q >= 2 {
                    // Minimal: record and do not extend.
                    let vs: Vec<QVector> = selection
                        .iter()
                        .map(|&i| {
                            QVector::new(
                                elements[i].iter().map(|&c| BigRat::from_int(c)).collect(),
                            )
                        })
                        .collect();
                    let seq = VectorSequence::new(m, vs)
                        .expect("consistent dims")
                        .with_meta(serde_json::json!({"m": m, "N": n_bound}));
                    out.push(seq);
                } else if q < t_max {
                    dfs(elements, m, t_max, n_bound, in_i, selection, sums, out, e);
                }
            }

            selection.pop();
            sums.truncate(base);
        }
    }

    dfs(
        &elements,
        m,
        t_max,
        n_bound,
        &in_i,
        &mut selection,
        &mut sums,
        &mut out,
        0,
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::QVector;

    fn golden_tau3() -> VectorSequence {
        let r = |n: i64, d: i64| BigRat::ratio(n, d);
        let vs = vec![
            QVector::new(vec![r(1, 1), r(1, 1), r(2, 3)]),
            QVector::new(vec![r(1, 1), r(-2, 3), r(-1, 1)]),
            QVector::new(vec![r(-2, 3), r(1, 1), r(-1, 1)]),
            QVector::new(vec![r(-2, 3), r(-2, 3), r(2, 3)]),
        ];
        VectorSequence::new(3, vs).unwrap()
    }

    fn seq_from_i64(dim: usize, rows: &[&[i64]]) -> VectorSequence {
        VectorSequence::new(dim, rows.iter().map(|r| QVector::from_i64(r)).collect()).unwrap()
    }

    #[test]
    fn golden_sequence_is_minimal() {
        let limits = VerifyLimits::default();
        let report = min_box_subset(&golden_tau3(), &limits).unwrap();
        assert!(report.passed, "{report:?}");
        let report = is_tau_witness(&golden_tau3(), &limits).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn construction_two_shape_has_min_subset_two() {
        // Four copies of (1,1,1) and four of (-1,-1,-1): one of each sums to 0.
        let rows: Vec<&[i64]> = vec![
            &[1, 1, 1],
            &[1, 1, 1],
            &[1, 1, 1],
            &[1, 1, 1],
            &[-1, -1, -1],
            &[-1, -1, -1],
            &[-1, -1, -1],
            &[-1, -1, -1],
        ];
        let seq = seq_from_i64(3, &rows);
        let report = min_box_subset(&seq, &VerifyLimits::default()).unwrap();
        assert!(!report.passed);
        assert_eq!(report.min_size, Some(2));
        assert_eq!(report.witness, Some(Witness::Subset(vec![0, 4])));
    }

    #[test]
    fn two_singletons_have_no_proper_subset() {
        let seq = seq_from_i64(1, &[&[1], &[1]]);
        let report = min_box_subset(&seq, &VerifyLimits::default()).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn tau_witness_trivial_pair() {
        let seq = seq_from_i64(1, &[&[1], &[-1]]);
        let report = is_tau_witness(&seq, &VerifyLimits::default()).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn tau_witness_fails_with_subset_witness() {
        let r = |n: i64, d: i64| BigRat::ratio(n, d);
        let seq = VectorSequence::new(
            2,
            vec![
                QVector::from_i64(&[1, 0]),
                QVector::from_i64(&[-1, 0]),
                QVector::new(vec![r(1, 2), r(0, 1)]),
            ],
        )
        .unwrap();
        let report = is_tau_witness(&seq, &VerifyLimits::default()).unwrap();
        assert!(!report.passed);
        assert_eq!(report.witness, Some(Witness::Subset(vec![0, 1])));
    }

    #[test]
    fn witness_is_lexicographically_smallest() {
        // Both {0,3} and {1,2} sum into the box; {0,3} is lex-smaller.
        let seq = seq_from_i64(1, &[&[1], &[1], &[-1], &[-1]]);
        let report = min_box_subset(&seq, &VerifyLimits::default()).unwrap();
        assert_eq!(report.witness, Some(Witness::Subset(vec![0, 2])));
    }

    #[test]
    fn min_subset_matches_naive_loop() {
        // Oracle equivalence against a naive 2^t subset scan.
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let limits = VerifyLimits::default();
        for _ in 0..150 {
            let dim = (next() % 3 + 1) as usize;
            let t = (next() % 7 + 2) as usize;
            let vectors: Vec<QVector> = (0..t)
                .map(|_| {
                    QVector::new(
                        (0..dim)
                            .map(|_| BigRat::new((next() % 9) as i64 - 4, 4).unwrap())
                            .collect(),
                    )
                })
                .collect();
            let seq = VectorSequence::new(dim, vectors).unwrap();

            // Naive loop.
            let mut naive_best: Option<(usize, Vec<usize>)> = None;
            for mask in 1u32..(1 << t) {
                let size = mask.count_ones() as usize;
                if size < 2 || size >= t {
                    continue;
                }
                let idxs: Vec<usize> = (0..t).filter(|i| mask >> i & 1 == 1).collect();
                if seq.subseq_sum(&idxs).unwrap().in_box() {
                    let better = match &naive_best {
                        None => true,
                        Some((bs, bi)) => size < *bs || (size == *bs && idxs < *bi),
                    };
                    if better {
                        naive_best = Some((size, idxs));
                    }
                }
            }

            let report = min_box_subset(&seq, &limits).unwrap();
            match naive_best {
                None => assert!(report.passed, "oracle found none, report {report:?}"),
                Some((size, idxs)) => {
                    assert!(!report.passed);
                    assert_eq!(report.min_size, Some(size));
                    assert_eq!(report.witness, Some(Witness::Subset(idxs)));
                }
            }
        }
    }

    #[test]
    fn tau_witness_is_permutation_invariant() {
        let limits = VerifyLimits::default();
        let base = golden_tau3();
        let perms: [[usize; 4]; 4] =
            [[3, 1, 0, 2], [2, 3, 1, 0], [1, 0, 3, 2], [0, 2, 3, 1]];
        for p in perms {
            let vs: Vec<QVector> = p.iter().map(|&i| base.get(i).clone()).collect();
            let shuffled = VectorSequence::new(3, vs).unwrap();
            assert!(is_tau_witness(&shuffled, &limits).unwrap().passed);
        }
    }

    #[test]
    fn subset_limit_is_an_explicit_error() {
        let vs: Vec<QVector> = (0..30)
            .map(|i| QVector::new(vec![BigRat::new(i as i64 + 1, 64).unwrap()]))
            .collect();
        let seq = VectorSequence::new(1, vs).unwrap();
        let limits = VerifyLimits { subset_patterns_log2: 20, ..Default::default() };
        assert!(matches!(
            min_box_subset(&seq, &limits),
            Err(Error::SubsetLimit { .. })
        ));
    }

    #[test]
    fn kstar_requires_t_at_least_four() {
        let seq = seq_from_i64(1, &[&[1], &[-1]]);
        assert!(matches!(
            kstar_check(&seq, &VerifyLimits::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn kstar_fails_on_cancelling_pairs() {
        let seq = seq_from_i64(2, &[&[1, 1], &[1, 1], &[-1, -1], &[-1, -1]]);
        let report = kstar_check(&seq, &VerifyLimits::default()).unwrap();
        assert!(!report.passed);
    }

    #[test]
    fn kstar_budget_error_reports_count() {
        let seq = golden_tau3();
        let limits = VerifyLimits { kstar_budget: 3, ..Default::default() };
        assert!(matches!(kstar_check(&seq, &limits), Err(Error::KStarBudget(4))));
    }

    #[test]
    fn enum_m1_n1_maximal_length_two() {
        let out = minimal_multiset_enum(1, 1, 4).unwrap();
        assert!(!out.is_empty());
        assert!(out.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn enum_m1_n2_contains_two_minus_one() {
        let out = minimal_multiset_enum(1, 2, 6).unwrap();
        let has = |a: i64, b: i64| {
            out.iter().any(|s| {
                s.len() == 2
                    && s.get(0).coords()[0] == BigRat::from_int(a)
                    && s.get(1).coords()[0] == BigRat::from_int(b)
            })
        };
        assert!(has(-1, 2), "{out:?}");
        assert!(has(1, 1), "{out:?}");
        // {1,1,-1} must not appear: the pair {1,-1} sums into I.
        assert!(out.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn enum_respects_t_range() {
        let out = minimal_multiset_enum(1, 2, 2).unwrap();
        assert!(out.iter().all(|s| s.len() == 2));
        assert!(minimal_multiset_enum(3, 1, 4).is_err());
        assert!(minimal_multiset_enum(1, 5, 4).is_err());
        assert!(minimal_multiset_enum(1, 1, 9).is_err());
    }

    #[test]
    fn enum_output_is_canonically_sorted() {
        let out = minimal_multiset_enum(2, 1, 4).unwrap();
        for s in &out {
            let vs = s.vectors();
            assert!(vs.windows(2).all(|w| w[0] <= w[1]));
        }
        let keys: Vec<String> = out.iter().map(|s| format!("{:?}", s.vectors())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }
}
