//! Ordered multisets of box vectors and their JSON form.
//!
//! The shared sequence format is
//! `{"dim": d, "vectors": [["p/q", ...], ...], "meta": {...}}` with every
//! coordinate an exact `"p"` or `"p/q"` string; serialization round-trips
//! bit-exactly. `meta` is free-form provenance (construction kind, source
//! matrix, parameters).

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::rational::BigRat;
use crate::vector::QVector;

/// An ordered multiset of d-dimensional rational vectors plus provenance.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorSequence {
    dim: usize,
    vectors: Vec<QVector>,
    meta: Value,
}

impl VectorSequence {
    pub fn new(dim: usize, vectors: Vec<QVector>) -> Result<Self> {
        for (i, v) in vectors.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::Dimension(format!(
                    "vector {i} has dimension {}, expected {dim}",
                    v.dim()
                )));
            }
        }
        Ok(VectorSequence { dim, vectors, meta: Value::Null })
    }

    pub fn with_meta(mut self, meta: Value) -> Self {
        self.meta = meta;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    pub fn get(&self, i: usize) -> &QVector {
        &self.vectors[i]
    }

    pub fn meta(&self) -> &Value {
        &self.meta
    }

    /// Exact sum of all vectors.
    pub fn sum(&self) -> QVector {
        let mut acc = QVector::zero(self.dim);
        for v in &self.vectors {
            acc.add_assign(v);
        }
        acc
    }

    /// Exact sum over an index set; indices must be in range.
    pub fn subseq_sum(&self, indices: &[usize]) -> Result<QVector> {
        let mut acc = QVector::zero(self.dim);
        for &i in indices {
            let v = self.vectors.get(i).ok_or_else(|| {
                Error::Dimension(format!("index {i} out of range for length {}", self.len()))
            })?;
            acc.add_assign(v);
        }
        Ok(acc)
    }

    pub fn all_in_box(&self) -> bool {
        self.vectors.iter().all(QVector::in_box)
    }

    /// Parses the shared sequence JSON, enforcing the schema invariants
    /// (matching dimensions, at least one vector, exact rationals, and
    /// all-±1 when the meta declares it).
    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: SequenceJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        raw.into_sequence()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&SequenceJson::from_sequence(self)).expect("sequence serializes")
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(SequenceJson::from_sequence(self)).expect("sequence serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceJson {
    dim: usize,
    vectors: Vec<Vec<BigRat>>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    meta: Value,
}

impl SequenceJson {
    fn from_sequence(seq: &VectorSequence) -> Self {
        SequenceJson {
            dim: seq.dim,
            vectors: seq.vectors.iter().map(|v| v.coords().to_vec()).collect(),
            meta: seq.meta.clone(),
        }
    }

    fn into_sequence(self) -> Result<VectorSequence> {
        if self.vectors.is_empty() {
            return Err(Error::Parse("sequence must contain at least one vector".into()));
        }
        let vectors: Vec<QVector> = self.vectors.into_iter().map(QVector::new).collect();
        let seq = VectorSequence::new(self.dim, vectors)?.with_meta(self.meta);
        if seq.meta.get("all_pm_one").and_then(Value::as_bool) == Some(true)
            && !seq.vectors.iter().all(QVector::is_pm_one)
        {
            return Err(Error::Parse(
                "meta declares all_pm_one but a coordinate is not ±1".into(),
            ));
        }
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The dimension-3 golden sequence used throughout the tests.
    pub fn golden_tau3() -> VectorSequence {
        let r = |n: i64, d: i64| BigRat::ratio(n, d);
        let vs = vec![
            QVector::new(vec![r(1, 1), r(1, 1), r(2, 3)]),
            QVector::new(vec![r(1, 1), r(-2, 3), r(-1, 1)]),
            QVector::new(vec![r(-2, 3), r(1, 1), r(-1, 1)]),
            QVector::new(vec![r(-2, 3), r(-2, 3), r(2, 3)]),
        ];
        VectorSequence::new(3, vs).unwrap()
    }

    #[test]
    fn subseq_sum_of_golden_sequence() {
        let seq = golden_tau3();
        let s = seq.subseq_sum(&[0, 1, 2, 3]).unwrap();
        assert_eq!(
            s.coords(),
            &[BigRat::ratio(2, 3), BigRat::ratio(2, 3), BigRat::ratio(-2, 3)]
        );
        // Singleton and empty index sets.
        assert_eq!(&seq.subseq_sum(&[1]).unwrap(), seq.get(1));
        assert!(seq.subseq_sum(&[]).unwrap().is_zero());
        assert!(seq.subseq_sum(&[7]).is_err());
    }

    #[test]
    fn json_round_trip_is_exact() {
        let seq = golden_tau3();
        let s = seq.to_json_string();
        let back = VectorSequence::from_json_str(&s).unwrap();
        assert_eq!(back, seq);
        assert_eq!(back.to_json_string(), s);
    }

    #[test]
    fn json_rejects_malformed_rationals() {
        let s = r#"{"dim":1,"vectors":[["1/0"]]}"#;
        assert!(VectorSequence::from_json_str(s).is_err());
        let s = r#"{"dim":1,"vectors":[]}"#;
        assert!(VectorSequence::from_json_str(s).is_err());
        let s = r#"{"dim":2,"vectors":[["1"]]}"#;
        assert!(VectorSequence::from_json_str(s).is_err());
    }

    #[test]
    fn json_enforces_pm_one_declaration() {
        let s = r#"{"dim":1,"vectors":[["1"],["-1"]],"meta":{"all_pm_one":true}}"#;
        assert!(VectorSequence::from_json_str(s).is_ok());
        let s = r#"{"dim":1,"vectors":[["1/2"]],"meta":{"all_pm_one":true}}"#;
        assert!(VectorSequence::from_json_str(s).is_err());
    }
}
