//! Dense integer matrices with exact arithmetic.
//!
//! Everything downstream (Smith normal form, hulls, enumeration) works over
//! arbitrary-precision integers; rationals only appear transiently when a
//! solve demands them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::Error;

/// Row-major dense matrix over `BigInt`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{}", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            let row: Vec<String> = (0..self.n_cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.n_cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.n_cols + j]
    }
}

impl IntegerMatrix {
    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        IntegerMatrix { n_rows, n_cols, data: vec![BigInt::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_bigint(n_rows: usize, n_cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), n_rows * n_cols, "data length mismatch");
        IntegerMatrix { n_rows, n_cols, data }
    }

    /// Convenience constructor from machine-integer rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for r in rows {
            assert_eq!(r.len(), n_cols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntegerMatrix { n_rows, n_cols, data }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.n_cols, self.n_rows);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Self {
        assert_eq!(self.n_cols, rhs.n_rows, "dimension mismatch in mul");
        let mut out = Self::zero(self.n_rows, rhs.n_cols);
        for i in 0..self.n_rows {
            for k in 0..self.n_cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.n_cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.n_cols, v.len());
        (0..self.n_rows)
            .map(|i| (0..self.n_cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.n_rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        (0..self.n_cols).map(|j| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn col_is_zero(&self, j: usize) -> bool {
        (0..self.n_rows).all(|i| self[(i, j)].is_zero())
    }

    /// Submatrix picked by row and column index lists (duplicates allowed).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out[(i, j)] = self[(r, c)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        self.submatrix(&(0..self.n_rows).collect::<Vec<_>>(), cols)
    }

    /// Rank over the rationals, by fraction-free Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (nr, nc) = (self.n_rows, self.n_cols);
        let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * nc + j].clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..nc {
            if row >= nr {
                break;
            }
            let mut piv = None;
            for i in row..nr {
                if !m[i * nc + col].is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            if p != row {
                for j in 0..nc {
                    m.swap(row * nc + j, p * nc + j);
                }
            }
            let pv = at(&m, row, col);
            for i in (row + 1)..nr {
                let f = at(&m, i, col);
                if f.is_zero() {
                    continue;
                }
                for j in col..nc {
                    let t = &at(&m, i, j) * &pv - &f * &at(&m, row, j);
                    m[i * nc + j] = t;
                }
                // keep entries small
                let g = row_gcd(&m[i * nc..(i + 1) * nc]);
                if g > BigInt::one() {
                    for j in 0..nc {
                        m[i * nc + j] = &m[i * nc + j] / &g;
                    }
                }
            }
            row += 1;
            rank += 1;
        }
        rank
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.n_rows, self.n_cols, "det of non-square matrix");
        let n = self.n_rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let mut found = None;
                for i in k + 1..n {
                    if !m[i * n + k].is_zero() {
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
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = (&m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j]) / &prev;
                    m[i * n + j] = t;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let d = m[(n - 1) * n + (n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Rational basis of the right kernel (each vector scaled to primitive integers).
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let snf = crate::snf::smith_normal_form(self);
        snf.kernel_basis()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data.iter().map(|x| i64::try_from(x).ok()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn to_json(&self) -> Result<MatrixJson, Error> {
        let data = self
            .data
            .iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Serialization("matrix entry exceeds i64".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixJson { rows: self.n_rows, cols: self.n_cols, data })
    }

    pub fn from_json(j: &MatrixJson) -> Result<Self, Error> {
        if j.data.len() != j.rows * j.cols {
            return Err(Error::Serialization("matrix data length mismatch".into()));
        }
        Ok(IntegerMatrix {
            n_rows: j.rows,
            n_cols: j.cols,
            data: j.data.iter().map(|&x| BigInt::from(x)).collect(),
        })
    }
}

/// Wire format for CLI debug dumps.
#[derive(Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

fn row_gcd(row: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in row {
        g = num_integer::gcd(g, x.abs());
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        BigInt::one()
    } else {
        g
    }
}

/// gcd of a vector, nonnegative; 0 for the zero vector.
pub fn vec_gcd(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        g = num_integer::gcd(g, x.abs());
    }
    g
}

/// Divide a vector by its gcd, fixing the sign so the first nonzero entry is positive.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = vec_gcd(v);
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &g).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -std::mem::take(x);
            }
        }
    }
    out
}

/// Solve a square rational system M x = b by Gaussian elimination.
/// Returns `None` if M is singular.
pub fn solve_rational(m: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n));
    assert_eq!(b.len(), n);
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        rhs.swap(col, piv);
        let pv = a[col][col].clone();
        for j in col..n {
            a[col][j] = &a[col][j] / &pv;
        }
        rhs[col] = &rhs[col] / &pv;
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..n {
                    let t = &a[i][j] - &f * &a[col][j];
                    a[i][j] = t;
                }
                let t = &rhs[i] - &f * &rhs[col];
                rhs[i] = t;
            }
        }
    }
    Some(rhs)
}

pub fn bigint_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
