//! ±1 matrices and their verified property certificates.
//!
//! Two contracts drive the lower-bound constructions:
//!
//! * **rect**: a d x (d+1) matrix of rank d has a one-dimensional kernel;
//!   after flipping column signs its primitive generator z is nonnegative,
//!   and `t = ||z||_1` is the length of the sequence built from it.
//! * **square**: a nonsingular d x d matrix A for which `B = 2^d A^{-1}` is
//!   integral with nonnegative row sums and a nonnegative first row; the
//!   minimum first-row entry of B controls how long box subsequences must be.
//!
//! Certificates are re-derivable: verifying a returned matrix again
//! reproduces the certificate exactly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{kernel_primitive, IntMatrix};
use crate::rational::BigRat;

/// A matrix with entries in {+1, -1}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i8>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} sign matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Parse("sign matrix entries must be +1 or -1".into()));
        }
        Ok(SignMatrix { rows, cols, entries })
    }

    pub fn from_i8(rows: &[&[i8]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        SignMatrix::new(r, c, rows.iter().flat_map(|row| row.iter().copied()).collect())
            .expect("valid sign entries")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i8 {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i8) {
        debug_assert!(v == 1 || v == -1);
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<i8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> SignMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c));
            }
        }
        SignMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn flip_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = self.get(r, c);
            self.set(r, c, -v);
        }
    }

    pub fn flip_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = self.get(r, c);
            self.set(r, c, -v);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.rows {
            let x = self.get(r, a);
            let y = self.get(r, b);
            self.set(r, a, y);
            self.set(r, b, x);
        }
    }

    pub fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
        .expect("shape already validated")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: SignMatrixJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let entries: Vec<i8> = raw.entries.into_iter().flatten().collect();
        SignMatrix::new(raw.rows, raw.cols, entries)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let rows: Vec<Vec<i8>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect();
        serde_json::json!({"rows": self.rows, "cols": self.cols, "entries": rows})
    }
}

#[derive(Deserialize)]
struct SignMatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<i8>>,
}

impl std::fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "SignMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<i8> = (0..self.cols).map(|c| self.get(r, c)).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

fn bigint_to_string_vec(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|e| e.to_string()).collect()
}

fn int_matrix_to_json(m: &IntMatrix) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| bigint_to_string_vec(m.row(r)))
        .collect();
    serde_json::json!({"rows": m.rows(), "cols": m.cols(), "entries": rows})
}

/// Verified kernel bundle of a d x (d+1) sign matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RectCertificate {
    pub passed: bool,
    pub rank_ok: bool,
    /// Primitive kernel vector after column-sign normalization; nonnegative.
    pub kernel: Vec<BigInt>,
    /// `t = ||z||_1`, the largeness metric. No asymptotic threshold is
    /// asserted.
    pub l1_norm: BigInt,
    /// The column-sign-normalized matrix the kernel belongs to.
    pub flipped: SignMatrix,
    /// Which input columns were flipped.
    pub flipped_columns: Vec<usize>,
}

impl RectCertificate {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "rect_kernel",
            "passed": self.passed,
            "rank_ok": self.rank_ok,
            "kernel": bigint_to_string_vec(&self.kernel),
            "l1_norm": self.l1_norm.to_string(),
            "flipped_matrix": self.flipped.to_json_value(),
            "flipped_columns": self.flipped_columns,
        })
    }
}

/// Verified inverse bundle of a d x d sign matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareCertificate {
    pub passed: bool,
    pub nonsingular: bool,
    pub det: BigInt,
    pub b_integral: bool,
    /// `B = 2^d A^{-1}` when integral.
    pub b: Option<IntMatrix>,
    /// Row sums `r = B 1`.
    pub row_sums: Vec<BigInt>,
    /// `R = sum(r)`.
    pub row_sum_total: BigInt,
    pub row_sums_nonneg: bool,
    pub first_row_nonneg: bool,
    /// Strict positivity of the first row of B; required by the
    /// subsequence-length bound, reported separately from the pass flag.
    pub first_row_positive: bool,
    pub first_row_min: BigInt,
    pub first_row_max: BigInt,
    /// Maximum |entry| of A^{-1}; the ill-conditioning measure.
    pub chi: BigRat,
    /// Whether |det| equals 2^(d-1); recorded, not required.
    pub det_is_two_pow: bool,
}

impl SquareCertificate {
    fn failed(det: BigInt) -> Self {
        SquareCertificate {
            passed: false,
            nonsingular: false,
            det,
            b_integral: false,
            b: None,
            row_sums: vec![],
            row_sum_total: BigInt::zero(),
            row_sums_nonneg: false,
            first_row_nonneg: false,
            first_row_positive: false,
            first_row_min: BigInt::zero(),
            first_row_max: BigInt::zero(),
            chi: BigRat::zero(),
            det_is_two_pow: false,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": "square_inverse",
            "passed": self.passed,
            "nonsingular": self.nonsingular,
            "det": self.det.to_string(),
            "b_integral": self.b_integral,
            "b": self.b.as_ref().map(int_matrix_to_json),
            "row_sums": bigint_to_string_vec(&self.row_sums),
            "row_sum_total": self.row_sum_total.to_string(),
            "row_sums_nonneg": self.row_sums_nonneg,
            "first_row_nonneg": self.first_row_nonneg,
            "first_row_positive": self.first_row_positive,
            "first_row_min": self.first_row_min.to_string(),
            "first_row_max": self.first_row_max.to_string(),
            "chi": self.chi.to_string(),
            "det_is_two_pow": self.det_is_two_pow,
        })
    }
}

/// Either certificate kind, as stored in construction provenance.
#[derive(Clone, Debug, PartialEq)]
pub enum MatrixCertificate {
    Rect(RectCertificate),
    Square(SquareCertificate),
}

impl MatrixCertificate {
    pub fn passed(&self) -> bool {
        match self {
            MatrixCertificate::Rect(c) => c.passed,
            MatrixCertificate::Square(c) => c.passed,
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            MatrixCertificate::Rect(c) => c.to_json_value(),
            MatrixCertificate::Square(c) => c.to_json_value(),
        }
    }
}

/// Checks the rectangular kernel contract of a d x (d+1) sign matrix:
/// rank d, primitive kernel vector, column signs normalized so the kernel is
/// nonnegative. Rank failure is a flagged certificate, not an error.
pub fn verify_rect(c: &SignMatrix) -> Result<RectCertificate> {
    let d = c.rows();
    if d == 0 || c.cols() != d + 1 {
        return Err(Error::Dimension(format!(
            "rect contract needs d x (d+1), got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let int = c.to_int_matrix();
    if int.rank() != d {
        return Ok(RectCertificate {
            passed: false,
            rank_ok: false,
            kernel: vec![],
            l1_norm: BigInt::zero(),
            flipped: c.clone(),
            flipped_columns: vec![],
        });
    }
    let z = kernel_primitive(&int)?;
    let mut flipped = c.clone();
    let mut flipped_columns = Vec::new();
    let mut kernel = z;
    for (j, e) in kernel.iter_mut().enumerate() {
        if e.is_negative() {
            flipped.flip_col(j);
            flipped_columns.push(j);
            *e = -&*e;
        }
    }
    // The flipped matrix must annihilate the nonnegative kernel.
    let image = flipped.to_int_matrix().mat_vec(&kernel)?;
    if image.iter().any(|e| !e.is_zero()) {
        return Err(Error::Internal("flipped matrix fails C z = 0".into()));
    }
    let l1_norm: BigInt = kernel.iter().map(|e| e.abs()).sum();
    Ok(RectCertificate {
        passed: true,
        rank_ok: true,
        kernel,
        l1_norm,
        flipped,
        flipped_columns,
    })
}

/// Checks the square inverse contract of a d x d sign matrix. All failures
/// are flagged in the certificate; only a non-square shape is an error.
pub fn verify_square(a: &SignMatrix) -> Result<SquareCertificate> {
    let d = a.rows();
    if d == 0 || a.cols() != d {
        return Err(Error::Dimension(format!(
            "square contract needs d x d, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let int = a.to_int_matrix();
    let det = int.det()?;
    if det.is_zero() {
        return Ok(SquareCertificate::failed(det));
    }
    let inv = int.adjugate_inverse()?;
    let two_pow_d = BigInt::one() << d;

    let mut chi = BigRat::zero();
    for e in inv.inv.entries() {
        let a = e.abs();
        if a > chi {
            chi = a;
        }
    }

    // B = 2^d A^{-1} = 2^d adj / det; check exact integrality entrywise.
    let mut b_entries = Vec::with_capacity(d * d);
    let mut b_integral = true;
    for e in inv.adj.entries() {
        let scaled = e * &two_pow_d;
        let (q, r) = num_integer::Integer::div_rem(&scaled, &det);
        if !r.is_zero() {
            b_integral = false;
            break;
        }
        b_entries.push(q);
    }

    let det_is_two_pow = det.abs() == (BigInt::one() << (d - 1));

    if !b_integral {
        return Ok(SquareCertificate {
            passed: false,
            nonsingular: true,
            det,
            b_integral,
            b: None,
            row_sums: vec![],
            row_sum_total: BigInt::zero(),
            row_sums_nonneg: false,
            first_row_nonneg: false,
            first_row_positive: false,
            first_row_min: BigInt::zero(),
            first_row_max: BigInt::zero(),
            chi,
            det_is_two_pow,
        });
    }

    let b = IntMatrix::new(d, d, b_entries)?;
    let row_sums: Vec<BigInt> = (0..d).map(|r| b.row(r).iter().sum()).collect();
    let row_sum_total: BigInt = row_sums.iter().sum();
    let row_sums_nonneg = row_sums.iter().all(|r| !r.is_negative());
    let first_row = b.row(0);
    let first_row_nonneg = first_row.iter().all(|e| !e.is_negative());
    let first_row_positive = first_row.iter().all(|e| e.is_positive());
    let first_row_min = first_row.iter().min().cloned().unwrap_or_default();
    let first_row_max = first_row.iter().max().cloned().unwrap_or_default();

    let passed = b_integral && row_sums_nonneg && first_row_nonneg;
    Ok(SquareCertificate {
        passed,
        nonsingular: true,
        det,
        b_integral,
        b: Some(b),
        row_sums,
        row_sum_total,
        row_sums_nonneg,
        first_row_nonneg,
        first_row_positive,
        first_row_min,
        first_row_max,
        chi,
        det_is_two_pow,
    })
}

/// Normalizes a nonsingular sign matrix toward the square contract:
/// transpose, move the inverse row with the largest minimum |entry| to the
/// front, flip row signs to make the first inverse row nonnegative, then
/// flip columns (j >= 2) to fix negative inverse row sums. Zero entries in
/// the first inverse row are flagged by the resulting certificate, not
/// failed.
pub fn normalize_square(a: &SignMatrix) -> Result<SignMatrix> {
    let d = a.rows();
    if d == 0 || a.cols() != d {
        return Err(Error::Dimension(format!(
            "normalize_square needs d x d, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let mut m = a.transpose();
    let inv = m.to_int_matrix().adjugate_inverse().map_err(|e| match e {
        Error::Singular => Error::Singular,
        other => other,
    })?;

    // Pick the inverse row with the largest minimum |entry|; ties by index.
    let mut best_row = 0;
    let mut best_min: Option<BigRat> = None;
    for r in 0..d {
        let row_min = inv
            .inv
            .row(r)
            .iter()
            .map(BigRat::abs)
            .min()
            .expect("nonempty row");
        if best_min.as_ref().map_or(true, |b| row_min > *b) {
            best_min = Some(row_min);
            best_row = r;
        }
    }
    if best_row != 0 {
        // Swapping columns of A swaps the corresponding rows of A^{-1}.
        m.swap_cols(0, best_row);
    }

    // Row flips of A flip columns of A^{-1}: make the first inverse row
    // nonnegative entry by entry. No two flips interact, so this always
    // succeeds; zero entries simply stay zero.
    let inv = m.to_int_matrix().adjugate_inverse()?;
    for j in 0..d {
        if inv.inv.get(0, j).is_negative() {
            m.flip_row(j);
        }
    }

    // Column flips of A (beyond the first inverse row's own) flip inverse
    // rows j >= 2, fixing negative row sums without touching row 1.
    let inv = m.to_int_matrix().adjugate_inverse()?;
    for r in 1..d {
        let mut sum = BigRat::zero();
        for e in inv.inv.row(r) {
            sum += e;
        }
        if sum.is_negative() {
            m.flip_col(r);
        }
    }

    Ok(m)
}

/// Sylvester doubling: `H_1 = [[1]]`, `H_{2k} = [[H_k, H_k], [H_k, -H_k]]`.
///
/// Passes the square contract with `B = (2^d / d) A^T`, first row of B equal
/// to `(2^d/d, ..., 2^d/d)` and row sums `(2^d, 0, ..., 0)`.
pub fn sylvester(d: usize) -> Result<SignMatrix> {
    if d == 0 || !d.is_power_of_two() {
        return Err(Error::Precondition(format!(
            "sylvester needs a power of two, got {d}"
        )));
    }
    let mut m = SignMatrix::new(1, 1, vec![1])?;
    let mut size = 1;
    while size < d {
        let mut next = SignMatrix::new(2 * size, 2 * size, vec![1; 4 * size * size])?;
        for r in 0..size {
            for c in 0..size {
                let v = m.get(r, c);
                next.set(r, c, v);
                next.set(r, c + size, v);
                next.set(r + size, c, v);
                next.set(r + size, c + size, -v);
            }
        }
        m = next;
        size *= 2;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_d1_forced_kernel() {
        let c = SignMatrix::from_i8(&[&[1, -1]]);
        let cert = verify_rect(&c).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.kernel, vec![BigInt::one(), BigInt::one()]);
        assert_eq!(cert.l1_norm, BigInt::from(2));
    }

    #[test]
    fn rect_d2_kernel_with_zero() {
        let c = SignMatrix::from_i8(&[&[1, 1, -1], &[1, -1, 1]]);
        let cert = verify_rect(&c).unwrap();
        assert_eq!(
            cert.kernel,
            vec![BigInt::zero(), BigInt::one(), BigInt::one()]
        );
        assert_eq!(cert.l1_norm, BigInt::from(2));
    }

    #[test]
    fn rect_d3_flips_to_all_ones_kernel() {
        // Columns (1,1,1), (1,1,-1), (1,-1,1), (-1,1,1).
        let c = SignMatrix::from_i8(&[&[1, 1, 1, -1], &[1, 1, -1, 1], &[1, -1, 1, 1]]);
        let cert = verify_rect(&c).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.kernel, vec![BigInt::one(); 4]);
        assert_eq!(cert.l1_norm, BigInt::from(4));
        // The sign-normalized matrix annihilates (1,1,1,1).
        let img = cert
            .flipped
            .to_int_matrix()
            .mat_vec(&cert.kernel)
            .unwrap();
        assert!(img.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn rect_rank_failure_is_flagged() {
        let c = SignMatrix::from_i8(&[&[1, 1, 1], &[1, 1, 1]]);
        let cert = verify_rect(&c).unwrap();
        assert!(!cert.passed);
        assert!(!cert.rank_ok);
    }

    #[test]
    fn square_pass_example() {
        let a = SignMatrix::from_i8(&[&[1, 1], &[1, -1]]);
        let cert = verify_square(&a).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.det, BigInt::from(-2));
        let b = cert.b.as_ref().unwrap();
        assert_eq!(b, &IntMatrix::from_i64(&[&[2, 2], &[2, -2]]));
        assert_eq!(cert.row_sums, vec![BigInt::from(4), BigInt::zero()]);
        assert_eq!(cert.row_sum_total, BigInt::from(4));
        assert!(cert.first_row_positive);
        assert_eq!(cert.chi, BigRat::ratio(1, 2));
        assert!(cert.det_is_two_pow);
    }

    #[test]
    fn square_first_row_failure() {
        let a = SignMatrix::from_i8(&[&[1, 1], &[-1, 1]]);
        let cert = verify_square(&a).unwrap();
        assert!(!cert.passed);
        let b = cert.b.as_ref().unwrap();
        assert_eq!(b, &IntMatrix::from_i64(&[&[2, -2], &[2, 2]]));
        assert!(!cert.first_row_nonneg);
    }

    #[test]
    fn square_d1() {
        let a = SignMatrix::from_i8(&[&[1]]);
        let cert = verify_square(&a).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.b.as_ref().unwrap(), &IntMatrix::from_i64(&[&[2]]));
    }

    #[test]
    fn square_singular_flagged() {
        let a = SignMatrix::from_i8(&[&[1, 1], &[1, 1]]);
        let cert = verify_square(&a).unwrap();
        assert!(!cert.passed);
        assert!(!cert.nonsingular);
    }

    #[test]
    fn normalize_fixes_first_row() {
        let a = SignMatrix::from_i8(&[&[1, 1], &[-1, 1]]);
        let n = normalize_square(&a).unwrap();
        let cert = verify_square(&n).unwrap();
        assert!(cert.passed, "{n:?} {cert:?}");
    }

    #[test]
    fn normalize_idempotent_on_passing_input() {
        let a = SignMatrix::from_i8(&[&[1, 1], &[1, -1]]);
        let n = normalize_square(&a).unwrap();
        assert!(verify_square(&n).unwrap().passed);
        let nn = normalize_square(&n).unwrap();
        assert!(verify_square(&nn).unwrap().passed);
    }

    #[test]
    fn normalize_succeeds_on_every_nonsingular_d2_matrix() {
        // Exhaustive d = 2 scan: normalization never fails and always lands
        // on the full contract for nonsingular inputs.
        for bits in 0u32..16 {
            let entries: Vec<i8> = (0..4)
                .map(|i| if bits >> (3 - i) & 1 == 1 { 1 } else { -1 })
                .collect();
            let a = SignMatrix::new(2, 2, entries).unwrap();
            if verify_square(&a).unwrap().nonsingular {
                let n = normalize_square(&a).unwrap();
                let cert = verify_square(&n).unwrap();
                assert!(cert.passed, "{a:?} -> {n:?}");
                assert!(cert.first_row_positive, "{a:?} -> {n:?}");
            } else {
                assert!(matches!(normalize_square(&a), Err(Error::Singular)));
            }
        }
    }

    #[test]
    fn sylvester_shapes_and_contract() {
        assert_eq!(sylvester(1).unwrap(), SignMatrix::from_i8(&[&[1]]));
        assert_eq!(
            sylvester(2).unwrap(),
            SignMatrix::from_i8(&[&[1, 1], &[1, -1]])
        );
        assert!(sylvester(3).is_err());
        assert!(sylvester(0).is_err());
        let h4 = sylvester(4).unwrap();
        let cert = verify_square(&h4).unwrap();
        assert!(cert.passed);
        assert_eq!(cert.first_row_min, BigInt::from(4));
        assert_eq!(cert.first_row_max, BigInt::from(4));
    }

    #[test]
    fn sylvester_b_is_scaled_transpose() {
        for d in [1usize, 2, 4, 8, 16] {
            let h = sylvester(d).unwrap();
            let cert = verify_square(&h).unwrap();
            assert!(cert.passed, "d={d}");
            let b = cert.b.as_ref().unwrap();
            let scale = BigInt::from((1usize << d) / d);
            let ht = h.transpose().to_int_matrix();
            for r in 0..d {
                for c in 0..d {
                    assert_eq!(b.get(r, c), &(ht.get(r, c) * &scale), "d={d}");
                }
            }
            // Row sums (2^d, 0, ..., 0).
            assert_eq!(cert.row_sums[0], BigInt::from(1u64 << d));
            assert!(cert.row_sums[1..].iter().all(|e| e.is_zero()));
            // B A = 2^d I.
            let prod = b.mat_mul(&h.to_int_matrix()).unwrap();
            let mut want = IntMatrix::identity(d);
            for i in 0..d {
                want.set(i, i, BigInt::from(1u64 << d));
            }
            assert_eq!(prod, want);
        }
    }

    #[test]
    fn flips_act_on_inverse_as_expected() {
        // Column flip on A flips exactly the corresponding row of A^{-1};
        // row flip flips exactly the corresponding column.
        let mut state = 0xcafef00dd15ea5e5u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut tested = 0;
        while tested < 40 {
            let d = (next() % 5 + 2) as usize;
            let entries: Vec<i8> = (0..d * d)
                .map(|_| if next() % 2 == 0 { 1 } else { -1 })
                .collect();
            let a = SignMatrix::new(d, d, entries).unwrap();
            let Ok(base) = a.to_int_matrix().adjugate_inverse() else {
                continue;
            };
            let col = (next() % d as u64) as usize;
            let mut flipped = a.clone();
            flipped.flip_col(col);
            let with_flip = flipped.to_int_matrix().adjugate_inverse().unwrap();
            for r in 0..d {
                for c in 0..d {
                    let want = if r == col {
                        -base.inv.get(r, c).clone()
                    } else {
                        base.inv.get(r, c).clone()
                    };
                    assert_eq!(with_flip.inv.get(r, c), &want);
                }
            }
            let row = (next() % d as u64) as usize;
            let mut flipped = a.clone();
            flipped.flip_row(row);
            let with_flip = flipped.to_int_matrix().adjugate_inverse().unwrap();
            for r in 0..d {
                for c in 0..d {
                    let want = if c == row {
                        -base.inv.get(r, c).clone()
                    } else {
                        base.inv.get(r, c).clone()
                    };
                    assert_eq!(with_flip.inv.get(r, c), &want);
                }
            }
            tested += 1;
        }
    }

    #[test]
    fn certificates_are_rederivable() {
        let c = SignMatrix::from_i8(&[&[1, 1, 1, -1], &[1, 1, -1, 1], &[1, -1, 1, 1]]);
        let cert = verify_rect(&c).unwrap();
        let again = verify_rect(&cert.flipped).unwrap();
        assert_eq!(again.kernel, cert.kernel);
        assert_eq!(again.l1_norm, cert.l1_norm);
        assert_eq!(again.flipped, cert.flipped);

        let a = sylvester(4).unwrap();
        assert_eq!(verify_square(&a).unwrap(), verify_square(&a).unwrap());
    }

    #[test]
    fn matrix_json_round_trip() {
        let a = SignMatrix::from_i8(&[&[1, -1], &[1, 1]]);
        let s = serde_json::to_string(&a.to_json_value()).unwrap();
        let back = SignMatrix::from_json_str(&s).unwrap();
        assert_eq!(back, a);
        assert!(SignMatrix::from_json_str(r#"{"rows":1,"cols":1,"entries":[[2]]}"#).is_err());
    }
}
