//! Rational vectors and the box.
//!
//! "The box" is the closed cube [-1,1]^d under the max-norm; membership is
//! decided by exact comparison, and the boundary counts as inside.

use crate::rational::BigRat;

/// A d-dimensional vector with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector {
    coords: Vec<BigRat>,
}

impl QVector {
    pub fn new(coords: Vec<BigRat>) -> Self {
        QVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        QVector { coords: vec![BigRat::zero(); dim] }
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        QVector { coords: coords.iter().map(|&c| BigRat::from_int(c)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRat] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> &BigRat {
        &self.coords[i]
    }

    /// Exact membership in the closed box [-1,1]^d.
    pub fn in_box(&self) -> bool {
        let one = BigRat::one();
        self.coords.iter().all(|c| c.abs() <= one)
    }

    /// Max-norm, exact.
    pub fn max_norm(&self) -> BigRat {
        let mut best = BigRat::zero();
        for c in &self.coords {
            let a = c.abs();
            if a > best {
                best = a;
            }
        }
        best
    }

    pub fn add_assign(&mut self, other: &QVector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b;
        }
    }

    pub fn sub_assign(&mut self, other: &QVector) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a -= b;
        }
    }

    pub fn add(&self, other: &QVector) -> QVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> QVector {
        QVector { coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigRat) -> QVector {
        QVector { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// All coordinates exactly +1 or -1.
    pub fn is_pm_one(&self) -> bool {
        let one = BigRat::one();
        self.coords.iter().all(|c| c.abs() == one)
    }
}

impl std::fmt::Debug for QVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
