//! The three lower-bound sequence generators.
//!
//! Each takes a contract-verified sign matrix and emits a `VectorSequence`
//! with full provenance in its meta, re-checking its defining equalities at
//! construction time:
//!
//! * `construct_one`: from a d x (d+1) kernel matrix, t vectors in
//!   `[-1,1]^{2d}` forming a full tau witness (dimension doubling with a
//!   small ε pushes boundary subset sums strictly outside the box).
//! * `construct_two`: from a d x d inverse matrix, `t = 2R` vectors in
//!   dimension d+1 with exact zero sum; every box subsequence of size >= 2
//!   solves `A z = b` with `b > 0` integral, forcing a large first component.
//! * `construct_three`: the all-±1 variant in dimension 2d+1, zero sum,
//!   `t` divisible by 4.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::BigRat;
use crate::sequence::VectorSequence;
use crate::signmatrix::{verify_rect, verify_square, MatrixCertificate, SignMatrix};
use crate::vector::QVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    C1,
    C2,
    C3,
}

impl ConstructionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstructionKind::C1 => "c1",
            ConstructionKind::C2 => "c2",
            ConstructionKind::C3 => "c3",
        }
    }
}

/// A generated sequence with its source matrix and certificate.
#[derive(Clone, Debug)]
pub struct ConstructionOutput {
    pub seq: VectorSequence,
    pub kind: ConstructionKind,
    pub source: SignMatrix,
    pub certificate: MatrixCertificate,
    /// Which tau / tau_{±1} inequality the output witnesses, as text.
    pub claimed_bound: String,
}

/// Groups a run of vectors by distinct value, preserving first-seen order.
fn group_meta(vectors: &[QVector]) -> serde_json::Value {
    let mut groups: Vec<(QVector, usize)> = Vec::new();
    for v in vectors {
        match groups.iter_mut().find(|(g, _)| g == v) {
            Some((_, count)) => *count += 1,
            None => groups.push((v.clone(), 1)),
        }
    }
    serde_json::Value::Array(
        groups
            .into_iter()
            .map(|(v, count)| {
                serde_json::json!({
                    "vector": v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "count": count,
                })
            })
            .collect(),
    )
}

fn big_to_usize(v: &BigInt, what: &str) -> Result<usize> {
    v.to_usize()
        .ok_or_else(|| Error::TooLarge(format!("{what} = {v} does not fit in usize")))
}

/// Dimension-doubling construction from a column-sign-normalized d x (d+1)
/// kernel matrix. The output of length `t = ||z||_1` witnesses
/// `tau(2d) >= t`.
pub fn construct_one(c: &SignMatrix) -> Result<ConstructionOutput> {
    let d = c.rows();
    let cert = verify_rect(c)?;
    if !cert.passed {
        return Err(Error::Precondition("matrix fails the rect kernel contract".into()));
    }
    if !cert.flipped_columns.is_empty() {
        return Err(Error::Precondition(
            "kernel has a negative entry; pass the column-sign-normalized matrix".into(),
        ));
    }
    let t = big_to_usize(&cert.l1_norm, "t")?;
    if t < 2 {
        return Err(Error::Precondition(format!("need t >= 2, got {t}")));
    }

    let epsilon = BigRat::new(1, 10 * t as i64)?;
    let one_minus_eps = BigRat::one() - epsilon.clone();

    let mut vectors: Vec<QVector> = Vec::with_capacity(t);
    for j in 0..=d {
        let copies = big_to_usize(&cert.kernel[j], "kernel entry")?;
        if copies == 0 {
            continue;
        }
        let col = c.column(j);
        // w' keeps +1 and softens -1; w'' keeps -1 and softens +1.
        let mut coords = Vec::with_capacity(2 * d);
        for &e in &col {
            coords.push(if e == 1 { BigRat::one() } else { -one_minus_eps.clone() });
        }
        for &e in &col {
            coords.push(if e == 1 { one_minus_eps.clone() } else { -BigRat::one() });
        }
        let v = QVector::new(coords);
        for _ in 0..copies {
            vectors.push(v.clone());
        }
    }
    debug_assert_eq!(vectors.len(), t);

    // Exact sum bound: every coordinate of the total lies in [-t*eps, t*eps].
    let mut total = QVector::zero(2 * d);
    for v in &vectors {
        total.add_assign(v);
    }
    let t_eps = BigRat::from_int(t as i64) * epsilon.clone();
    if total.coords().iter().any(|c| c.abs() > t_eps) {
        return Err(Error::Internal("construction sum leaves [-t*eps, t*eps]".into()));
    }
    if !total.in_box() {
        return Err(Error::Internal("construction sum leaves the box".into()));
    }

    let claimed_bound = format!("tau({}) >= {}", 2 * d, t);
    let meta = serde_json::json!({
        "kind": "c1",
        "t": t,
        "epsilon": epsilon.to_string(),
        "kernel": cert.kernel.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "source_matrix": c.to_json_value(),
        "certificate": cert.to_json_value(),
        "groups": group_meta(&vectors),
        "claimed_bound": claimed_bound,
    });
    let seq = VectorSequence::new(2 * d, vectors)?.with_meta(meta);
    Ok(ConstructionOutput {
        seq,
        kind: ConstructionKind::C1,
        source: c.clone(),
        certificate: MatrixCertificate::Rect(cert),
        claimed_bound,
    })
}

fn require_square_contract(a: &SignMatrix) -> Result<crate::signmatrix::SquareCertificate> {
    let cert = verify_square(a)?;
    if !cert.passed {
        return Err(Error::Precondition("matrix fails the square inverse contract".into()));
    }
    if !cert.first_row_positive {
        return Err(Error::Precondition(
            "first row of B must be strictly positive".into(),
        ));
    }
    Ok(cert)
}

/// Subsequence-size bound implied by the certificate: any box subsequence of
/// size >= 2 has size at least `ceil(min_first_row / 2^d) + 1`.
fn subsequence_bound(first_row_min: &BigInt, d: usize) -> BigInt {
    let two_pow = BigInt::one() << d;
    first_row_min.div_ceil(&two_pow) + BigInt::one()
}

/// Column/averaged-vector construction in dimension d+1: `r_j` copies of
/// `(a_j, 1)` plus `R` copies of `(-alpha*1, -1)`, `alpha = 2^d / R`, summing
/// to zero exactly.
pub fn construct_two(a: &SignMatrix) -> Result<ConstructionOutput> {
    let d = a.rows();
    let cert = require_square_contract(a)?;
    let two_pow = BigInt::one() << d;
    let big_r = cert.row_sum_total.clone();
    if big_r < two_pow {
        return Err(Error::Precondition(format!(
            "need R >= 2^d so alpha <= 1; R = {big_r}, 2^d = {two_pow}"
        )));
    }
    let alpha = BigRat::new(two_pow.clone(), big_r.clone())?;
    let r_usize = big_to_usize(&big_r, "R")?;
    let t = 2 * r_usize;

    let mut vectors: Vec<QVector> = Vec::with_capacity(t);
    for j in 0..d {
        let copies = big_to_usize(&cert.row_sums[j], "row sum")?;
        if copies == 0 {
            continue;
        }
        let mut coords: Vec<BigRat> =
            a.column(j).iter().map(|&e| BigRat::from_int(e as i64)).collect();
        coords.push(BigRat::one());
        let v = QVector::new(coords);
        for _ in 0..copies {
            vectors.push(v.clone());
        }
    }
    let mut c_coords = vec![-alpha.clone(); d];
    c_coords.push(-BigRat::one());
    let c_vec = QVector::new(c_coords);
    for _ in 0..r_usize {
        vectors.push(c_vec.clone());
    }
    debug_assert_eq!(vectors.len(), t);

    let mut total = QVector::zero(d + 1);
    for v in &vectors {
        total.add_assign(v);
    }
    if !total.is_zero() {
        return Err(Error::Internal("construction sum is not exactly zero".into()));
    }

    let bound = subsequence_bound(&cert.first_row_min, d);
    let claimed_bound = format!(
        "every box subsequence of size >= 2 has size >= {bound}; tau({}) >= {}",
        d + 1,
        bound.clone().max(BigInt::from(2))
    );
    let meta = serde_json::json!({
        "kind": "c2",
        "t": t,
        "alpha": alpha.to_string(),
        "r": cert.row_sums.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "R": big_r.to_string(),
        "source_matrix": a.to_json_value(),
        "certificate": cert.to_json_value(),
        "groups": group_meta(&vectors),
        "claimed_bound": claimed_bound,
    });
    let seq = VectorSequence::new(d + 1, vectors)?.with_meta(meta);
    Ok(ConstructionOutput {
        seq,
        kind: ConstructionKind::C2,
        source: a.clone(),
        certificate: MatrixCertificate::Square(cert),
        claimed_bound,
    })
}

/// All-±1 construction in dimension 2d+1 with zero sum and t divisible by 4.
pub fn construct_three(a: &SignMatrix) -> Result<ConstructionOutput> {
    let d = a.rows();
    let cert = require_square_contract(a)?;
    let two_pow = BigInt::one() << d;
    let big_r = cert.row_sum_total.clone();
    if big_r.is_odd() {
        return Err(Error::Precondition(format!("R must be even, got {big_r}")));
    }
    if big_r < two_pow {
        return Err(Error::Precondition(format!(
            "need R >= 2^d so t/4 - 2^(d-1) >= 0; R = {big_r}, 2^d = {two_pow}"
        )));
    }
    let r_usize = big_to_usize(&big_r, "R")?;
    let t = 2 * r_usize;
    let band_ones = r_usize / 2 - (1usize << (d - 1)); // t/4 - 2^(d-1)

    // First-half skeletons u_1..u_{t/2}: r_j copies of column j.
    let mut u: Vec<Vec<i8>> = Vec::with_capacity(r_usize);
    for j in 0..d {
        let copies = big_to_usize(&cert.row_sums[j], "row sum")?;
        for _ in 0..copies {
            u.push(a.column(j));
        }
    }
    debug_assert_eq!(u.len(), r_usize);

    let mut halves: Vec<Vec<i8>> = Vec::with_capacity(t);
    for (i, ui) in u.iter().enumerate() {
        let mut coords = Vec::with_capacity(2 * d + 1);
        coords.extend_from_slice(ui);
        let band = if i < band_ones { 1 } else { -1 };
        coords.extend(std::iter::repeat(band).take(d));
        coords.push(1);
        halves.push(coords);
    }
    for i in 0..r_usize {
        let partner = &halves[i];
        let mut coords = Vec::with_capacity(2 * d + 1);
        coords.extend_from_slice(&partner[d..2 * d]);
        coords.extend_from_slice(&partner[..d]);
        coords.push(-1);
        halves.push(coords);
    }

    // Half-sum identity: the first half totals (2^d .. 2^d, -2^d .. -2^d, t/2)
    // and the second is its negation.
    let mut half_sum = vec![BigInt::zero(); 2 * d + 1];
    for row in halves.iter().take(r_usize) {
        for (acc, &e) in half_sum.iter_mut().zip(row) {
            *acc += e;
        }
    }
    let mut expect = vec![two_pow.clone(); d];
    expect.extend(std::iter::repeat(-two_pow.clone()).take(d));
    expect.push(BigInt::from(r_usize));
    if half_sum != expect {
        return Err(Error::Internal("first half-sum identity violated".into()));
    }
    let mut second_sum = vec![BigInt::zero(); 2 * d + 1];
    for row in halves.iter().skip(r_usize) {
        for (acc, &e) in second_sum.iter_mut().zip(row) {
            *acc += e;
        }
    }
    if second_sum.iter().zip(&expect).any(|(s, e)| s != &(-e)) {
        return Err(Error::Internal("second half-sum identity violated".into()));
    }
    if t % 4 != 0 {
        return Err(Error::Internal("t is not divisible by 4".into()));
    }

    let vectors: Vec<QVector> = halves
        .into_iter()
        .map(|coords| {
            QVector::new(coords.into_iter().map(|e| BigRat::from_int(e as i64)).collect())
        })
        .collect();

    let bound = subsequence_bound(&cert.first_row_min, d);
    let claimed_bound = format!(
        "all-±1 witness family in dimension {}; box subsequences of size >= 2 have size >= {bound}; t = {t}",
        2 * d + 1
    );
    let meta = serde_json::json!({
        "kind": "c3",
        "t": t,
        "r": cert.row_sums.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "R": big_r.to_string(),
        "all_pm_one": true,
        "source_matrix": a.to_json_value(),
        "certificate": cert.to_json_value(),
        "groups": group_meta(&vectors),
        "claimed_bound": claimed_bound,
    });
    let seq = VectorSequence::new(2 * d + 1, vectors)?.with_meta(meta);
    Ok(ConstructionOutput {
        seq,
        kind: ConstructionKind::C3,
        source: a.clone(),
        certificate: MatrixCertificate::Square(cert),
        claimed_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signmatrix::sylvester;
    use crate::verify::{is_tau_witness, kstar_check, VerifyLimits};
    use num_traits::Signed;

    #[test]
    fn c1_d1_matches_hand_computation() {
        let c = SignMatrix::from_i8(&[&[1, -1]]);
        let out = construct_one(&c).unwrap();
        let seq = &out.seq;
        assert_eq!(seq.len(), 2);
        assert_eq!(seq.dim(), 2);
        let q = |n: i64, d: i64| BigRat::ratio(n, d);
        assert_eq!(seq.get(0).coords(), &[q(1, 1), q(19, 20)]);
        assert_eq!(seq.get(1).coords(), &[q(-19, 20), q(-1, 1)]);
        assert_eq!(seq.sum().coords(), &[q(1, 20), q(-1, 20)]);
        assert_eq!(out.claimed_bound, "tau(2) >= 2");
    }

    #[test]
    fn c1_d3_is_tau_witness() {
        // Columns (-1,-1,-1), (1,1,-1), (1,-1,1), (-1,1,1): all-ones kernel.
        let c = SignMatrix::from_i8(&[
            &[-1, 1, 1, -1],
            &[-1, 1, -1, 1],
            &[-1, -1, 1, 1],
        ]);
        let out = construct_one(&c).unwrap();
        assert_eq!(out.seq.len(), 4);
        assert_eq!(out.seq.dim(), 6);
        let report = is_tau_witness(&out.seq, &VerifyLimits::default()).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn c1_d3_passes_kstar() {
        let c = SignMatrix::from_i8(&[
            &[-1, 1, 1, -1],
            &[-1, 1, -1, 1],
            &[-1, -1, 1, 1],
        ]);
        let out = construct_one(&c).unwrap();
        let report = kstar_check(&out.seq, &VerifyLimits::default()).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn c1_degenerate_kernel_entry() {
        // Kernel (0,1,1): column 1 contributes nothing; the 2-vector output
        // is still a witness.
        let c = SignMatrix::from_i8(&[&[1, 1, -1], &[1, -1, 1]]);
        let out = construct_one(&c).unwrap();
        assert_eq!(out.seq.len(), 2);
        let report = is_tau_witness(&out.seq, &VerifyLimits::default()).unwrap();
        assert!(report.passed);
    }

    #[test]
    fn c1_rejects_unnormalized_matrix() {
        // Kernel of this matrix has a negative entry before column flips.
        let c = SignMatrix::from_i8(&[&[1, 1, 1, -1], &[1, 1, -1, 1], &[1, -1, 1, 1]]);
        assert!(matches!(construct_one(&c), Err(Error::Precondition(_))));
    }

    #[test]
    fn c2_d2_example() {
        let a = SignMatrix::from_i8(&[&[1, 1], &[1, -1]]);
        let out = construct_two(&a).unwrap();
        let seq = &out.seq;
        assert_eq!(seq.len(), 8);
        assert_eq!(seq.dim(), 3);
        // Four copies of (1,1,1), four of (-1,-1,-1).
        for i in 0..4 {
            assert_eq!(seq.get(i), &QVector::from_i64(&[1, 1, 1]));
        }
        for i in 4..8 {
            assert_eq!(seq.get(i), &QVector::from_i64(&[-1, -1, -1]));
        }
        assert!(seq.sum().is_zero());
    }

    #[test]
    fn c2_d1_example() {
        let a = SignMatrix::from_i8(&[&[1]]);
        let out = construct_two(&a).unwrap();
        let seq = &out.seq;
        assert_eq!(seq.len(), 4);
        for i in 0..2 {
            assert_eq!(seq.get(i), &QVector::from_i64(&[1, 1]));
        }
        for i in 2..4 {
            assert_eq!(seq.get(i), &QVector::from_i64(&[-1, -1]));
        }
        assert!(seq.sum().is_zero());
    }

    #[test]
    fn c2_d4_sylvester() {
        let a = sylvester(4).unwrap();
        let out = construct_two(&a).unwrap();
        assert_eq!(out.seq.len(), 32);
        assert!(out.seq.sum().is_zero());
        assert!(out.seq.all_in_box());
    }

    #[test]
    fn c2_rejects_bad_first_row() {
        let a = SignMatrix::from_i8(&[&[1, -1], &[-1, -1]]);
        assert!(matches!(construct_two(&a), Err(Error::Precondition(_))));
    }

    #[test]
    fn c3_d2_example() {
        let a = SignMatrix::from_i8(&[&[1, 1], &[1, -1]]);
        let out = construct_three(&a).unwrap();
        let seq = &out.seq;
        assert_eq!(seq.len(), 8);
        assert_eq!(seq.dim(), 5);
        for i in 0..4 {
            assert_eq!(seq.get(i), &QVector::from_i64(&[1, 1, -1, -1, 1]));
        }
        for i in 4..8 {
            assert_eq!(seq.get(i), &QVector::from_i64(&[-1, -1, 1, 1, -1]));
        }
        assert!(seq.sum().is_zero());
    }

    #[test]
    fn c3_d1_example() {
        let a = SignMatrix::from_i8(&[&[1]]);
        let out = construct_three(&a).unwrap();
        let seq = &out.seq;
        assert_eq!(seq.len(), 4);
        for i in 0..2 {
            assert_eq!(seq.get(i), &QVector::from_i64(&[1, -1, 1]));
        }
        for i in 2..4 {
            assert_eq!(seq.get(i), &QVector::from_i64(&[-1, 1, -1]));
        }
        assert!(seq.sum().is_zero());
    }

    #[test]
    fn c3_outputs_are_pm_one_with_t_mod_4() {
        for d in [1usize, 2, 4] {
            let a = sylvester(d).unwrap();
            let out = construct_three(&a).unwrap();
            assert_eq!(out.seq.dim(), 2 * d + 1);
            assert!(out.seq.vectors().iter().all(QVector::is_pm_one));
            assert_eq!(out.seq.len() % 4, 0);
            assert!(out.seq.sum().is_zero());
        }
    }

    #[test]
    fn c2_c3_box_subsequences_match_corollary_analysis() {
        // For small instances, every sub-multiset of size >= 2 with sum in
        // the box must induce multiplicities z with b = A z integral, b > 0,
        // and use at least one c-type (second-half) element.
        for d in [1usize, 2] {
            let a = sylvester(d).unwrap();
            let out = construct_two(&a).unwrap();
            let MatrixCertificate::Square(cert) = &out.certificate else {
                panic!("square certificate expected");
            };
            let row_sums: Vec<usize> =
                cert.row_sums.iter().map(|e| e.to_string().parse().unwrap()).collect();
            let seq = &out.seq;
            let t = seq.len();
            let a_int = a.to_int_matrix();
            for mask in 1u32..(1 << t) {
                let size = mask.count_ones() as usize;
                if size < 2 || size >= t {
                    continue;
                }
                let idxs: Vec<usize> = (0..t).filter(|i| mask >> i & 1 == 1).collect();
                if !seq.subseq_sum(&idxs).unwrap().in_box() {
                    continue;
                }
                // Multiplicities of the column vectors (first R slots in
                // column order) and of the c vector (last R slots).
                let big_r = t / 2;
                let mut z = vec![BigInt::zero(); d];
                let mut k = 0usize;
                for &i in &idxs {
                    if i < big_r {
                        // Which column does slot i hold?
                        let mut acc = 0usize;
                        for (j, &copies) in row_sums.iter().enumerate() {
                            if i < acc + copies {
                                z[j] += 1;
                                break;
                            }
                            acc += copies;
                        }
                    } else {
                        k += 1;
                    }
                }
                let b = a_int.mat_vec(&z).unwrap();
                assert!(k > 0, "box subsequence without c-type element");
                assert!(
                    b.iter().all(|e| !e.is_negative()) && b.iter().any(|e| e.is_positive()),
                    "induced b = A z must be > 0, got {b:?}"
                );
            }
        }
    }
}
