//! Total unimodularity by exhaustive minor enumeration, sizes ascending, with
//! a minimal-size witness on failure.

use num_bigint::BigInt;


use crate::error::Error;
use crate::matrix::IntegerMatrix;
use crate::util::{binomial, combinations};

/// Outcome of a total-unimodularity scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TuResult {
    TotallyUnimodular,
    /// A minimal-size violated minor: row indices, column indices, determinant.
    Witness { rows: Vec<usize>, cols: Vec<usize>, det: BigInt },
}

impl TuResult {
    pub fn is_tu(&self) -> bool {
        matches!(self, TuResult::TotallyUnimodular)
    }
}

pub const DEFAULT_MAX_MINORS: u128 = 100_000_000;

/// Predicted number of square minors of an n×m matrix.
pub fn predicted_minors(n: usize, m: usize) -> u128 {
    let k_max = n.min(m) as u64;
    (1..=k_max).map(|k| binomial(n as u64, k).saturating_mul(binomial(m as u64, k))).sum()
}

/// Checks every square minor, smallest sizes first. Entries must already be
/// in {−1, 0, 1} (a 1×1 minor violation is reported like any other).
pub fn is_totally_unimodular(a: &IntegerMatrix, max_minors: u128) -> Result<TuResult, Error> {
    let (n, m) = (a.n_rows, a.n_cols);
    let predicted = predicted_minors(n, m);
    if predicted > max_minors {
        return Err(Error::guard(
            "max-minors",
            format!("{predicted} predicted minors exceed the budget of {max_minors}"),
        ));
    }
    // i64 entries suffice: minors of k×k integer matrices with |entries| ≤ B are
    // bounded by Hadamard: (B·√k)^k; we guard on that bound before using i64.
    let entries = a.to_i64().ok_or_else(|| {
        Error::guard("max-minors", "entries exceed i64; TU scan limited to small integers")
    })?;
    let max_abs = entries.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    let k_max = n.min(m);
    if hadamard_exceeds_i64(max_abs, k_max as u32) {
        return Err(Error::guard("max-minors", "Hadamard bound exceeds i64 range"));
    }

    for k in 1..=k_max {
        let row_sets = combinations(n, k);
        let col_sets = combinations(m, k);
        let mut minor = vec![0i64; k * k];
        for rows in &row_sets {
            for cols in &col_sets {
                for (i, &r) in rows.iter().enumerate() {
                    for (j, &c) in cols.iter().enumerate() {
                        minor[i * k + j] = entries[r * m + c];
                    }
                }
                let d = det_bareiss_i64(&mut minor.clone(), k);
                if d.unsigned_abs() > 1 {
                    return Ok(TuResult::Witness {
                        rows: rows.clone(),
                        cols: cols.clone(),
                        det: BigInt::from(d),
                    });
                }
            }
        }
    }
    Ok(TuResult::TotallyUnimodular)
}

fn hadamard_exceeds_i64(max_abs: u64, k: u32) -> bool {
    if max_abs == 0 {
        return false;
    }
    let mut bound = 1f64;
    let b = max_abs as f64 * (k as f64).sqrt();
    for _ in 0..k {
        bound *= b;
        if bound > 4.0e18 {
            return true;
        }
    }
    false
}

/// Fraction-free determinant; values stay within minors of the input, which
/// the caller has bounded.
fn det_bareiss_i64(m: &mut [i64], n: usize) -> i64 {
    if n == 0 {
        return 1;
    }
    let mut sign = 1i64;
    let mut prev = 1i64;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let mut found = None;
            for i in k + 1..n {
                if m[i * n + k] != 0 {
                    found = Some(i);
                    break;
                }
            }
            match found {
                Some(i) => {
                    for j in 0..n {
                        m.swap(k * n + j, i * n + j);
                    }
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
            }
            m[i * n + k] = 0;
        }
        prev = m[k * n + k];
    }
    sign * m[(n - 1) * n + (n - 1)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn identity_and_twos() {
        let id = IntegerMatrix::identity(4);
        assert!(is_totally_unimodular(&id, DEFAULT_MAX_MINORS).unwrap().is_tu());
        let two = IntegerMatrix::from_rows(&[vec![1, 0], vec![0, 2]]);
        match is_totally_unimodular(&two, DEFAULT_MAX_MINORS).unwrap() {
            TuResult::Witness { rows, cols, det } => {
                assert_eq!((rows, cols), (vec![1], vec![1]));
                assert_eq!(det, BigInt::from(2));
            }
            _ => panic!("expected witness"),
        }
    }

    #[test]
    fn minimal_witness_size() {
        // all entries ±1/0 but a 2×2 minor of determinant 2
        let m = IntegerMatrix::from_rows(&[vec![1, -1], vec![1, 1]]);
        match is_totally_unimodular(&m, DEFAULT_MAX_MINORS).unwrap() {
            TuResult::Witness { rows, cols, det } => {
                assert_eq!(rows.len(), 2);
                assert_eq!(cols.len(), 2);
                assert_eq!(det.abs(), BigInt::from(2));
            }
            _ => panic!("expected witness"),
        }
    }

    #[test]
    fn guard_fires() {
        let big = IntegerMatrix::zero(30, 30);
        assert!(matches!(
            is_totally_unimodular(&big, 1000),
            Err(Error::Guard { guard: "max-minors", .. })
        ));
    }

    #[test]
    fn incidence_matrix_is_tu() {
        // directed incidence matrix of a 4-cycle
        let m = IntegerMatrix::from_rows(&[
            vec![-1, 0, 0, -1],
            vec![1, -1, 0, 0],
            vec![0, 1, -1, 0],
            vec![0, 0, 1, 1],
        ]);
        assert!(is_totally_unimodular(&m, DEFAULT_MAX_MINORS).unwrap().is_tu());
    }
}
