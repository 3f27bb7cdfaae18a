//! Smith normal form with transform accumulation, and what it yields:
//! integral kernels, saturated lattice bases, integral system solving and
//! torsion representative vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::{primitive, IntegerMatrix};

/// Exact factorization A = S · D · T with unimodular S, T and diagonal D
/// whose nonzero entries form a positive divisibility chain.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub n_rows: usize,
    pub n_cols: usize,
    /// Diagonal of D, length min(n_rows, n_cols); zeros padded at the end.
    pub diag: Vec<BigInt>,
    pub s: IntegerMatrix,
    pub s_inv: IntegerMatrix,
    pub t: IntegerMatrix,
    pub t_inv: IntegerMatrix,
}

/// A representative of a torsion coset of (im_R A ∩ Z^m)/im_Z A:
/// `A·v` is integral, `order·v` is integral, and the coset has exactly
/// this order.
#[derive(Clone, Debug)]
pub struct TorsionVector {
    pub v: Vec<BigRational>,
    pub order: BigInt,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }

    /// The elementary divisors α_1 | α_2 | ... | α_r (all positive).
    pub fn divisors(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn largest_divisor(&self) -> BigInt {
        self.divisors().last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn d_matrix(&self) -> IntegerMatrix {
        let mut d = IntegerMatrix::zero(self.n_rows, self.n_cols);
        for (i, a) in self.diag.iter().enumerate() {
            d[(i, i)] = a.clone();
        }
        d
    }

    /// Integral basis of ker_Z A: the columns T^{-1}·e_j for j ≥ rank.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        (r..self.n_cols).map(|j| self.t_inv.col(j)).collect()
    }

    /// Basis of the saturation im_R A ∩ Z^n: the first `rank` columns of S.
    pub fn lattice_basis(&self) -> IntegerMatrix {
        let r = self.rank();
        self.s.submatrix(&(0..self.n_rows).collect::<Vec<_>>(), &(0..r).collect::<Vec<_>>())
    }

    /// One torsion vector v = T^{-1}·(1/α_j)·e_j per elementary divisor α_j > 1.
    pub fn torsion_vectors(&self) -> Vec<TorsionVector> {
        let mut out = Vec::new();
        for (j, a) in self.diag.iter().enumerate() {
            if a > &BigInt::one() {
                let col = self.t_inv.col(j);
                let v = col
                    .into_iter()
                    .map(|x| BigRational::new(x, a.clone()))
                    .collect();
                out.push(TorsionVector { v, order: a.clone() });
            }
        }
        out
    }
}

struct Calc {
    b: IntegerMatrix,
    s: IntegerMatrix,
    s_inv: IntegerMatrix,
    t: IntegerMatrix,
    t_inv: IntegerMatrix,
}

impl Calc {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.b.n_cols {
            let (x, y) = (self.b[(i, c)].clone(), self.b[(j, c)].clone());
            self.b[(i, c)] = y;
            self.b[(j, c)] = x;
        }
        // S ← S·P, Sinv ← P·Sinv
        for r in 0..self.s.n_rows {
            let (x, y) = (self.s[(r, i)].clone(), self.s[(r, j)].clone());
            self.s[(r, i)] = y;
            self.s[(r, j)] = x;
        }
        for c in 0..self.s_inv.n_cols {
            let (x, y) = (self.s_inv[(i, c)].clone(), self.s_inv[(j, c)].clone());
            self.s_inv[(i, c)] = y;
            self.s_inv[(j, c)] = x;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.b.n_rows {
            let (x, y) = (self.b[(r, i)].clone(), self.b[(r, j)].clone());
            self.b[(r, i)] = y;
            self.b[(r, j)] = x;
        }
        // T ← P·T, Tinv ← Tinv·P
        for c in 0..self.t.n_cols {
            let (x, y) = (self.t[(i, c)].clone(), self.t[(j, c)].clone());
            self.t[(i, c)] = y;
            self.t[(j, c)] = x;
        }
        for r in 0..self.t_inv.n_rows {
            let (x, y) = (self.t_inv[(r, i)].clone(), self.t_inv[(r, j)].clone());
            self.t_inv[(r, i)] = y;
            self.t_inv[(r, j)] = x;
        }
    }

    /// B_j ← B_j + k·B_i (rows).
    fn add_row(&mut self, k: &BigInt, i: usize, j: usize) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.b.n_cols {
            let t = &self.b[(j, c)] + k * &self.b[(i, c)];
            self.b[(j, c)] = t;
        }
        // S ← S·(I − k e_j e_iᵀ): col i of S −= k · col j of S
        for r in 0..self.s.n_rows {
            let t = &self.s[(r, i)] - k * &self.s[(r, j)];
            self.s[(r, i)] = t;
        }
        // Sinv ← (I + k e_j e_iᵀ)·Sinv: row j += k · row i
        for c in 0..self.s_inv.n_cols {
            let t = &self.s_inv[(j, c)] + k * &self.s_inv[(i, c)];
            self.s_inv[(j, c)] = t;
        }
    }

    /// B_{:,j} ← B_{:,j} + k·B_{:,i} (columns).
    fn add_col(&mut self, k: &BigInt, i: usize, j: usize) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.b.n_rows {
            let t = &self.b[(r, j)] + k * &self.b[(r, i)];
            self.b[(r, j)] = t;
        }
        // T ← (I − k e_i e_jᵀ)·T: row i of T −= k · row j of T
        for c in 0..self.t.n_cols {
            let t = &self.t[(i, c)] - k * &self.t[(j, c)];
            self.t[(i, c)] = t;
        }
        // Tinv ← Tinv·(I + k e_i e_jᵀ): col j += k · col i
        for r in 0..self.t_inv.n_rows {
            let t = &self.t_inv[(r, j)] + k * &self.t_inv[(r, i)];
            self.t_inv[(r, j)] = t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.b.n_cols {
            let t = -self.b[(i, c)].clone();
            self.b[(i, c)] = t;
        }
        for r in 0..self.s.n_rows {
            let t = -self.s[(r, i)].clone();
            self.s[(r, i)] = t;
        }
        for c in 0..self.s_inv.n_cols {
            let t = -self.s_inv[(i, c)].clone();
            self.s_inv[(i, c)] = t;
        }
    }
}

/// Exact Smith normal form of an integer matrix, with all four transforms.
///
/// Pivot choice: minimal nonzero absolute value in the remaining block.
pub fn smith_normal_form(a: &IntegerMatrix) -> SnfResult {
    let (n, m) = (a.n_rows, a.n_cols);
    let mut c = Calc {
        b: a.clone(),
        s: IntegerMatrix::identity(n),
        s_inv: IntegerMatrix::identity(n),
        t: IntegerMatrix::identity(m),
        t_inv: IntegerMatrix::identity(m),
    };

    let k = n.min(m);
    for t in 0..k {
        'restart: loop {
            // minimal |entry| pivot in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    if !c.b[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| c.b[(i, j)].abs() < c.b[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'restart };
            c.swap_rows(t, pi);
            c.swap_cols(t, pj);

            // clear column t
            let mut dirty = false;
            for i in t + 1..n {
                if !c.b[(i, t)].is_zero() {
                    let q = rounded_div(&c.b[(i, t)], &c.b[(t, t)]);
                    c.add_row(&(-q), t, i);
                    if !c.b[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'restart;
            }
            // clear row t
            for j in t + 1..m {
                if !c.b[(t, j)].is_zero() {
                    let q = rounded_div(&c.b[(t, j)], &c.b[(t, t)]);
                    c.add_col(&(-q), t, j);
                    if !c.b[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'restart;
            }
            // enforce divisibility of the remaining block by the pivot
            let piv = c.b[(t, t)].clone();
            for i in t + 1..n {
                for j in t + 1..m {
                    if !(&c.b[(i, j)] % &piv).is_zero() {
                        let one = BigInt::one();
                        c.add_row(&one, i, t);
                        continue 'restart;
                    }
                }
            }
            if c.b[(t, t)].is_negative() {
                c.negate_row(t);
            }
            break;
        }
    }

    let diag: Vec<BigInt> = (0..k).map(|i| c.b[(i, i)].clone()).collect();
    SnfResult { n_rows: n, n_cols: m, diag, s: c.s, s_inv: c.s_inv, t: c.t, t_inv: c.t_inv }
}

/// Quotient rounding to nearest (ties toward zero): minimizes |remainder|.
fn rounded_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Integral solution of Aᵀx = b via the SNF, or `None`.
///
/// The solution is verified by multiplication before being returned.
pub fn solve_integral_system(a: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    solve_integral_system_with(&snf, b)
}

pub fn solve_integral_system_with(snf: &SnfResult, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (n, m) = (snf.n_rows, snf.n_cols);
    assert_eq!(b.len(), m, "rhs length must match column count");
    // Aᵀ = Tᵀ Dᵀ Sᵀ; solve Tᵀ c = b, then Dᵀ u = c, then x = (Sᵀ)^{-1} u.
    let c = snf.t_inv.transpose().mul_vec(b);
    let r = snf.rank();
    let mut u = vec![BigInt::zero(); n];
    for i in 0..m {
        if i < r {
            let (q, rem) = num_integer::Integer::div_rem(&c[i], &snf.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            u[i] = q;
        } else if !c[i].is_zero() {
            return None;
        }
    }
    let x = snf.s_inv.transpose().mul_vec(&u);
    // verify
    let check = snf_reconstruct_transpose_mul(snf, &x);
    if check == b {
        Some(x)
    } else {
        None
    }
}

fn snf_reconstruct_transpose_mul(snf: &SnfResult, x: &[BigInt]) -> Vec<BigInt> {
    // Aᵀ·x where A = S D T
    let sx = snf.s.transpose().mul_vec(x);
    let mut dx = vec![BigInt::zero(); snf.n_cols];
    for (i, a) in snf.diag.iter().enumerate() {
        dx[i] = a * &sx[i];
    }
    snf.t.transpose().mul_vec(&dx)
}

/// Primitive generator of a rank-one kernel, or `None` if corank ≠ 1.
pub fn corank_one_kernel(a: &IntegerMatrix) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let mut basis = snf.kernel_basis();
    if basis.len() != 1 {
        return None;
    }
    Some(primitive(&basis.remove(0)))
}
