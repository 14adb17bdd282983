//! Exact integer and rational matrices.
//!
//! Determinants are computed fraction-free (Bareiss), inverses through the
//! integral adjugate, kernels of d x (d+1) matrices through signed maximal
//! minors. Everything returns exact values; there are no tolerances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::BigRat;

/// Dense integer matrix, row-major, arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

/// Dense rational matrix with the same shape rules as [`IntMatrix`].
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRat>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix::new(r, c, entries).expect("consistent row lengths")
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        IntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Drops column `skip`; used for maximal minors.
    fn without_column(&self, skip: usize) -> IntMatrix {
        let mut entries = Vec::with_capacity(self.rows * (self.cols - 1));
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c != skip {
                    entries.push(self.get(r, c).clone());
                }
            }
        }
        IntMatrix { rows: self.rows, cols: self.cols - 1, entries }
    }

    pub fn mat_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mat_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * rhs.get(k, c);
                }
                entries.push(acc);
            }
        }
        Ok(IntMatrix { rows: self.rows, cols: rhs.cols, entries })
    }

    pub fn to_rational(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| BigRat::from_int(e.clone())).collect(),
        }
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m: Vec<Vec<BigInt>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    // Bareiss: division by the previous pivot is exact.
                    m[i][j] = t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// Exact rank by rational Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.to_rational().rank()
    }

    /// Adjugate, exact inverse, and determinant of a nonsingular matrix.
    ///
    /// Guarantees `self * inv == identity` and `adj == det * inv` exactly.
    pub fn adjugate_inverse(&self) -> Result<AdjugateInverse> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let det = self.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let n = self.rows;
        let inv = self.to_rational().inverse_of_nonsingular()?;
        let det_rat = BigRat::from_int(det.clone());
        let mut adj_entries = Vec::with_capacity(n * n);
        for e in inv.entries() {
            let scaled = e * &det_rat;
            let int = scaled
                .to_int()
                .ok_or_else(|| Error::Internal("adjugate entry not integral".into()))?;
            adj_entries.push(int);
        }
        let adj = IntMatrix::new(n, n, adj_entries)?;
        // Postcondition check: M * adj = det * I.
        let prod = self.mat_mul(&adj)?;
        let mut expect = IntMatrix::identity(n);
        for i in 0..n {
            expect.set(i, i, det.clone());
        }
        if prod != expect {
            return Err(Error::Internal("adjugate identity violated".into()));
        }
        Ok(AdjugateInverse { adj, inv, det })
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r).iter().map(|e| e.to_string()).collect::<Vec<_>>())?;
        }
        write!(f, "]")
    }
}

/// Result bundle of [`IntMatrix::adjugate_inverse`].
pub struct AdjugateInverse {
    pub adj: IntMatrix,
    pub inv: QMatrix,
    pub det: BigInt,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, entries: vec![BigRat::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[BigRat] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[BigRat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mat_vec(&self, v: &[BigRat]) -> Result<Vec<BigRat>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector length {} does not match {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = BigRat::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    acc += &(a * b);
                }
                acc
            })
            .collect())
    }

    /// Exact rank via Gaussian elimination with first-nonzero pivoting.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigRat>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot_row) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, pivot_row);
            let pivot = m[rank][col].clone();
            for r in rank + 1..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = m[r][col].checked_div(&pivot).expect("nonzero pivot");
                for c in col..self.cols {
                    let delta = &factor * &m[rank][c];
                    m[r][c] -= &delta;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Exact inverse via Gauss-Jordan; caller guarantees nonsingularity.
    fn inverse_of_nonsingular(&self) -> Result<QMatrix> {
        let n = self.rows;
        let mut left: Vec<Vec<BigRat>> = (0..n).map(|r| self.row(r).to_vec()).collect();
        let mut right: Vec<Vec<BigRat>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| if r == c { BigRat::one() } else { BigRat::zero() })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !left[r][col].is_zero())
                .ok_or(Error::Singular)?;
            left.swap(col, pivot_row);
            right.swap(col, pivot_row);
            let pivot = left[col][col].clone();
            for c in 0..n {
                left[col][c] = left[col][c].checked_div(&pivot).expect("nonzero pivot");
                right[col][c] = right[col][c].checked_div(&pivot).expect("nonzero pivot");
            }
            for r in 0..n {
                if r == col || left[r][col].is_zero() {
                    continue;
                }
                let factor = left[r][col].clone();
                for c in 0..n {
                    let dl = &factor * &left[col][c];
                    left[r][c] -= &dl;
                    let dr = &factor * &right[col][c];
                    right[r][c] -= &dr;
                }
            }
        }
        let entries = right.into_iter().flatten().collect();
        QMatrix::new(n, n, entries)
    }
}

impl std::fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Primitive integer generator of the kernel of a rank-d, d x (d+1) matrix.
///
/// Computed as the vector of signed maximal minors (the generalized cross
/// product of the rows), reduced by the gcd of its entries, with the sign
/// chosen so the first nonzero entry is positive. Every integral kernel
/// vector is an integer multiple of the result, so it attains the minimum
/// L1 norm among nonzero integral kernel vectors.
pub fn kernel_primitive(c: &IntMatrix) -> Result<Vec<BigInt>> {
    let d = c.rows();
    if c.cols() != d + 1 || d == 0 {
        return Err(Error::Dimension(format!(
            "kernel extraction needs d x (d+1), got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    if c.rank() != d {
        return Err(Error::KernelRank);
    }
    let mut z: Vec<BigInt> = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let minor = c.without_column(j).det()?;
        z.push(if j % 2 == 0 { minor } else { -minor });
    }
    let mut g = BigInt::zero();
    for e in &z {
        g = g.gcd(e);
    }
    if g.is_zero() {
        // All maximal minors zero would contradict rank d.
        return Err(Error::Internal("rank-d matrix with zero kernel vector".into()));
    }
    for e in &mut z {
        *e = &*e / &g;
    }
    if let Some(first) = z.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            for e in &mut z {
                *e = -&*e;
            }
        }
    }
    // C z = 0 must hold exactly.
    let image = c.mat_vec(&z)?;
    if image.iter().any(|e| !e.is_zero()) {
        return Err(Error::Internal("kernel vector fails C z = 0".into()));
    }
    Ok(z)
}
