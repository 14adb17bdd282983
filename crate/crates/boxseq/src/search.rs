//! Seeded searches for matrices satisfying the two sign-matrix contracts.
//!
//! Small dimensions are solved exhaustively (every ±1 matrix of the shape);
//! beyond that, seeded random restarts with single-entry-flip hill climbing.
//! Runs are deterministic given (seed, budget): candidates are drawn from a
//! fixed stream, the budget is a prefix cutoff on evaluations, and ties in
//! the objective are broken toward the lexicographically smaller matrix, so
//! the best value never decreases as the budget grows.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::signmatrix::{
    normalize_square, verify_rect, verify_square, RectCertificate, SignMatrix, SquareCertificate,
};

/// Shapes searched exhaustively: all `2^(d(d+1))` rect matrices for d <= 3.
pub const RECT_EXHAUSTIVE_MAX_D: usize = 3;
/// All `2^(d*d)` square matrices for d <= 2.
pub const SQUARE_EXHAUSTIVE_MAX_D: usize = 2;

/// Best rect-contract matrix found, in column-sign-normalized form.
#[derive(Clone, Debug)]
pub struct RectSearch {
    pub matrix: SignMatrix,
    pub certificate: RectCertificate,
    /// `t = ||z||_1` of the winner.
    pub objective: BigInt,
    pub exhaustive: bool,
    pub evaluations: u64,
}

/// Best square-contract matrix found, in normalized form.
#[derive(Clone, Debug)]
pub struct SquareSearch {
    pub matrix: SignMatrix,
    pub certificate: SquareCertificate,
    /// Minimum first-row entry of B of the winner.
    pub objective: BigInt,
    pub exhaustive: bool,
    pub evaluations: u64,
}

fn matrix_from_bits(rows: usize, cols: usize, bits: u64) -> SignMatrix {
    let total = rows * cols;
    let entries: Vec<i8> = (0..total)
        .map(|i| if bits >> (total - 1 - i) & 1 == 1 { 1 } else { -1 })
        .collect();
    SignMatrix::new(rows, cols, entries).expect("entries are ±1")
}

fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> SignMatrix {
    let entries: Vec<i8> = (0..rows * cols)
        .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
        .collect();
    SignMatrix::new(rows, cols, entries).expect("entries are ±1")
}

/// Maximizes `||z||_1` over d x (d+1) sign matrices of rank d.
pub fn search_rect(d: usize, budget: u64, seed: u64) -> Result<RectSearch> {
    if d == 0 {
        return Err(Error::Precondition("search_rect needs d >= 1".into()));
    }

    struct Best {
        matrix: SignMatrix,
        cert: RectCertificate,
        obj: BigInt,
    }
    let mut best: Option<Best> = None;
    let mut consider = |cert: RectCertificate| {
        if !cert.passed {
            return BigInt::from(0);
        }
        let obj = cert.l1_norm.clone();
        let replace = match &best {
            None => true,
            Some(b) => obj > b.obj || (obj == b.obj && cert.flipped < b.matrix),
        };
        if replace {
            best = Some(Best { matrix: cert.flipped.clone(), obj: obj.clone(), cert });
        }
        obj
    };

    if d <= RECT_EXHAUSTIVE_MAX_D {
        let total = d * (d + 1);
        for bits in 0..(1u64 << total) {
            let m = matrix_from_bits(d, d + 1, bits);
            consider(verify_rect(&m)?);
        }
        let best = best.ok_or_else(|| Error::Internal("no rank-d sign matrix found".into()))?;
        return Ok(RectSearch {
            matrix: best.matrix,
            certificate: best.cert,
            objective: best.obj,
            exhaustive: true,
            evaluations: 1u64 << total,
        });
    }

    if budget == 0 {
        return Err(Error::Precondition("search budget must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evals: u64 = 0;
    'outer: while evals < budget {
        let mut current = random_matrix(d, d + 1, &mut rng);
        evals += 1;
        let mut current_obj = consider(verify_rect(&current)?);
        loop {
            // Steepest single-entry flip; first index wins ties.
            let mut improving: Option<(usize, BigInt)> = None;
            for pos in 0..d * (d + 1) {
                if evals >= budget {
                    break 'outer;
                }
                let (r, c) = (pos / (d + 1), pos % (d + 1));
                let v = current.get(r, c);
                current.set(r, c, -v);
                evals += 1;
                let obj = consider(verify_rect(&current)?);
                current.set(r, c, v);
                if obj > current_obj && improving.as_ref().map_or(true, |(_, b)| obj > *b) {
                    improving = Some((pos, obj));
                }
            }
            match improving {
                Some((pos, obj)) => {
                    let (r, c) = (pos / (d + 1), pos % (d + 1));
                    let v = current.get(r, c);
                    current.set(r, c, -v);
                    current_obj = obj;
                }
                None => break,
            }
        }
    }
    let best = best.ok_or_else(|| Error::Internal("search produced no candidate".into()))?;
    Ok(RectSearch {
        matrix: best.matrix,
        certificate: best.cert,
        objective: best.obj,
        exhaustive: false,
        evaluations: evals,
    })
}

/// Maximizes the minimum first-row entry of `B = 2^d A^{-1}` over d x d sign
/// matrices passing the square contract. Every candidate goes through
/// [`normalize_square`] before evaluation; power-of-two dimensions are seeded
/// with the Sylvester matrix.
pub fn search_square(d: usize, budget: u64, seed: u64) -> Result<SquareSearch> {
    if d == 0 {
        return Err(Error::Precondition("search_square needs d >= 1".into()));
    }

    struct Best {
        matrix: SignMatrix,
        cert: SquareCertificate,
        obj: BigInt,
    }
    let mut best: Option<Best> = None;
    // Pipeline: normalize, verify, score. Failures score None.
    let mut consider = |raw: &SignMatrix| -> Result<Option<BigInt>> {
        let Ok(normalized) = normalize_square(raw) else {
            return Ok(None);
        };
        let cert = verify_square(&normalized)?;
        if !cert.passed {
            return Ok(None);
        }
        let obj = cert.first_row_min.clone();
        let replace = match &best {
            None => true,
            Some(b) => obj > b.obj || (obj == b.obj && normalized < b.matrix),
        };
        if replace {
            best = Some(Best { matrix: normalized, obj: obj.clone(), cert });
        }
        Ok(Some(obj))
    };

    if d <= SQUARE_EXHAUSTIVE_MAX_D {
        let total = d * d;
        for bits in 0..(1u64 << total) {
            let m = matrix_from_bits(d, d, bits);
            consider(&m)?;
        }
        let best =
            best.ok_or_else(|| Error::Internal("no contract-passing matrix found".into()))?;
        return Ok(SquareSearch {
            matrix: best.matrix,
            certificate: best.cert,
            objective: best.obj,
            exhaustive: true,
            evaluations: 1u64 << total,
        });
    }

    if budget == 0 {
        return Err(Error::Precondition("search budget must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evals: u64 = 0;
    let mut seeded_with_sylvester = false;
    'outer: while evals < budget {
        let mut current = if !seeded_with_sylvester && d.is_power_of_two() {
            seeded_with_sylvester = true;
            crate::signmatrix::sylvester(d)?
        } else {
            random_matrix(d, d, &mut rng)
        };
        evals += 1;
        let mut current_obj = consider(&current)?;
        loop {
            let mut improving: Option<(usize, BigInt)> = None;
            for pos in 0..d * d {
                if evals >= budget {
                    break 'outer;
                }
                let (r, c) = (pos / d, pos % d);
                let v = current.get(r, c);
                current.set(r, c, -v);
                evals += 1;
                let obj = consider(&current)?;
                current.set(r, c, v);
                let better = match (&obj, &current_obj) {
                    (Some(o), Some(c)) => o > c,
                    (Some(_), None) => true,
                    (None, _) => false,
                };
                if better {
                    let o = obj.expect("checked above");
                    if improving.as_ref().map_or(true, |(_, b)| o > *b) {
                        improving = Some((pos, o));
                    }
                }
            }
            match improving {
                Some((pos, obj)) => {
                    let (r, c) = (pos / d, pos % d);
                    let v = current.get(r, c);
                    current.set(r, c, -v);
                    current_obj = Some(obj);
                }
                None => break,
            }
        }
    }
    let best = best.ok_or_else(|| Error::Internal("search produced no candidate".into()))?;
    Ok(SquareSearch {
        matrix: best.matrix,
        certificate: best.cert,
        objective: best.obj,
        exhaustive: false,
        evaluations: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn rect_exhaustive_optima() {
        // Global optima over all 2^(d(d+1)) matrices.
        assert_eq!(search_rect(1, 0, 0).unwrap().objective, BigInt::from(2));
        assert_eq!(search_rect(2, 0, 0).unwrap().objective, BigInt::from(2));
        assert_eq!(search_rect(3, 0, 0).unwrap().objective, BigInt::from(4));
    }

    #[test]
    fn rect_results_are_normalized_and_rederivable() {
        for d in 1..=3 {
            let out = search_rect(d, 0, 0).unwrap();
            assert!(out.exhaustive);
            let again = verify_rect(&out.matrix).unwrap();
            assert_eq!(again.kernel, out.certificate.kernel);
            assert!(again.kernel.iter().all(|e| !e.is_negative()));
        }
    }

    #[test]
    fn square_exhaustive_d2_optimum_is_two() {
        let out = search_square(2, 0, 0).unwrap();
        assert!(out.exhaustive);
        assert_eq!(out.objective, BigInt::from(2));
        assert!(out.certificate.passed);
        assert!(out.certificate.first_row_positive);
    }

    #[test]
    fn square_d1_is_identity() {
        let out = search_square(1, 0, 0).unwrap();
        assert_eq!(out.matrix, SignMatrix::from_i8(&[&[1]]));
        assert_eq!(out.objective, BigInt::from(2));
    }

    #[test]
    fn square_d4_passes_contract() {
        let out = search_square(4, 200, 0).unwrap();
        assert!(out.certificate.passed);
        // Sylvester seeding guarantees at least 2^4/4 = 4.
        assert!(out.objective >= BigInt::from(4));
    }

    #[test]
    fn searches_are_deterministic_and_budget_monotone() {
        let a = search_rect(4, 300, 7).unwrap();
        let b = search_rect(4, 300, 7).unwrap();
        assert_eq!(a.matrix, b.matrix);
        assert_eq!(a.objective, b.objective);

        let small = search_rect(4, 100, 7).unwrap();
        assert!(small.objective <= a.objective);

        let s1 = search_square(3, 200, 11).unwrap();
        let s2 = search_square(3, 200, 11).unwrap();
        assert_eq!(s1.matrix, s2.matrix);
        let s_small = search_square(3, 50, 11).unwrap();
        assert!(s_small.objective <= s1.objective);
    }
}
