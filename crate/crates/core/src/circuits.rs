//! Matroid circuits of a column matroid and the sign-compatible minimal
//! linear dependencies that drive the Gröbner basis construction.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::matrix::{primitive, IntegerMatrix};
use crate::snf::smith_normal_form;

/// An inclusion-minimal dependent column set together with the primitive
/// integer kernel vector supported on it (unique up to sign).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub columns: Vec<usize>,
    pub kernel_vector: Vec<BigInt>,
}

/// A kernel vector with no sign-compatible componentwise-smaller companion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalDependency {
    pub vector: Vec<BigInt>,
}

impl MinimalDependency {
    /// Multiset size |M_a| = Σ|a_ℓ|.
    pub fn multiset_size(&self) -> u64 {
        self.vector.iter().map(|x| u64::try_from(x.abs()).unwrap_or(u64::MAX)).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.vector.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }
}

#[derive(Clone, Debug)]
pub struct MinimalDependencySet {
    pub dependencies: Vec<MinimalDependency>,
    /// False when a norm bound may have truncated the enumeration.
    pub complete: bool,
}

pub const DEFAULT_CIRCUIT_NODE_BUDGET: u64 = 3_000_000;

/// All circuits of the column matroid `M[A]`.
///
/// DFS over independent column sets in increasing index order; a circuit
/// C is reported exactly once, from the node C∖{max C}.
pub fn matroid_circuits(a: &IntegerMatrix, node_budget: u64) -> Result<Vec<Circuit>, Error> {
    if a.n_cols > 25 {
        return Err(Error::guard("max-circuit-columns", format!("{} columns > 25", a.n_cols)));
    }
    let mut out = Vec::new();
    let mut pivots: Vec<Vec<BigInt>> = Vec::new(); // reduced columns of the current set
    let mut chosen: Vec<usize> = Vec::new();
    let mut nodes: u64 = 0;
    dfs_circuits(a, 0, &mut chosen, &mut pivots, &mut out, &mut nodes, node_budget)?;
    Ok(out)
}

/// Fraction-free reduction of v against a pivot list; v ends zero iff it is
/// in the span of the pivots.
pub(crate) fn reduce_vector_for_rank(pivots: &[Vec<BigInt>], v: &mut Vec<BigInt>) {
    for p in pivots {
        let lead = p.iter().position(|x| !x.is_zero()).expect("pivot is nonzero");
        if v[lead].is_zero() {
            continue;
        }
        let (pl, vl) = (p[lead].clone(), v[lead].clone());
        for i in 0..v.len() {
            let t = &v[i] * &pl - &p[i] * &vl;
            v[i] = t;
        }
        *v = primitive(v);
    }
}

fn dfs_circuits(
    a: &IntegerMatrix,
    start: usize,
    chosen: &mut Vec<usize>,
    pivots: &mut Vec<Vec<BigInt>>,
    out: &mut Vec<Circuit>,
    nodes: &mut u64,
    budget: u64,
) -> Result<(), Error> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::guard("max-circuit-nodes", format!("> {budget} search nodes")));
    }
    for e in start..a.n_cols {
        let mut v = a.col(e);
        reduce_vector_for_rank(pivots, &mut v);
        if v.iter().all(|x| x.is_zero()) {
            // dependent: chosen ∪ {e} is a circuit iff its kernel vector has full support
            let mut cols = chosen.clone();
            cols.push(e);
            let sub = a.select_cols(&cols);
            let kern = crate::snf::corank_one_kernel(&sub)
                .expect("independent set plus one dependent column has corank 1");
            if kern.iter().all(|x| !x.is_zero()) {
                let mut full = vec![BigInt::zero(); a.n_cols];
                for (slot, &c) in cols.iter().enumerate() {
                    full[c] = kern[slot].clone();
                }
                out.push(Circuit { columns: cols, kernel_vector: full });
            }
        } else {
            chosen.push(e);
            pivots.push(v);
            dfs_circuits(a, e + 1, chosen, pivots, out, nodes, budget)?;
            pivots.pop();
            chosen.pop();
        }
    }
    Ok(())
}

/// Column-style Hermite form of a lattice basis: returns a new basis of the
/// same column lattice in echelon shape (each column has a pivot row not
/// used by later columns).
fn echelon_lattice_basis(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if basis.is_empty() {
        return Vec::new();
    }
    let m = basis[0].len();
    let mut cols: Vec<Vec<BigInt>> = basis.to_vec();
    let mut fixed = 0;
    for row in 0..m {
        if fixed == cols.len() {
            break;
        }
        // gcd-eliminate entries of `row` across columns fixed..
        loop {
            let mut nz: Vec<usize> =
                (fixed..cols.len()).filter(|&j| !cols[j][row].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            if nz.len() == 1 {
                let j = nz[0];
                cols.swap(fixed, j);
                fixed += 1;
                break;
            }
            nz.sort_by_key(|&j| cols[j][row].abs());
            let (small, other) = (nz[0], nz[1]);
            let q = {
                let (q, _r) = num_integer::Integer::div_rem(&cols[other][row], &cols[small][row]);
                q
            };
            for i in 0..m {
                let t = &cols[other][i] - &q * &cols[small][i];
                cols[other][i] = t;
            }
        }
    }
    cols
}

/// All nonzero kernel lattice points with |entries|_∞ ≤ bound.
fn kernel_points_in_box(
    a: &IntegerMatrix,
    bound: &BigInt,
    budget: u64,
) -> Result<Vec<Vec<BigInt>>, Error> {
    let snf = smith_normal_form(a);
    let basis = echelon_lattice_basis(&snf.kernel_basis());
    let c = basis.len();
    if c == 0 {
        return Ok(Vec::new());
    }
    let m = basis[0].len();
    // pivot row of each basis column (first row where it is nonzero and all
    // later columns vanish — guaranteed by the echelon shape)
    let mut pivot_row = vec![0usize; c];
    for j in 0..c {
        pivot_row[j] = (0..m)
            .find(|&r| !basis[j][r].is_zero() && (j + 1..c).all(|j2| basis[j2][r].is_zero()))
            .expect("echelon basis has a pivot row per column");
    }
    let mut out = Vec::new();
    let mut partial = vec![BigInt::zero(); m];
    let mut count: u64 = 0;
    enumerate_box(&basis, &pivot_row, bound, 0, &mut partial, &mut out, &mut count, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_box(
    basis: &[Vec<BigInt>],
    pivot_row: &[usize],
    bound: &BigInt,
    level: usize,
    partial: &mut Vec<BigInt>,
    out: &mut Vec<Vec<BigInt>>,
    count: &mut u64,
    budget: u64,
) -> Result<(), Error> {
    if level == basis.len() {
        if partial.iter().any(|x| !x.is_zero()) {
            out.push(partial.clone());
        }
        return Ok(());
    }
    // bound t from the pivot row: |partial[p] + coef·t| ≤ bound
    let p = pivot_row[level];
    let coef = &basis[level][p];
    let lo = ceil_div(&(-bound - &partial[p]), coef);
    let hi = floor_div(&(bound - &partial[p]), coef);
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi.clone(), lo) };
    let mut t = lo.clone();
    while t <= hi {
        *count += 1;
        if *count > budget {
            return Err(Error::guard("max-dependency-nodes", format!("> {budget} box nodes")));
        }
        if !t.is_zero() {
            for i in 0..partial.len() {
                let inc = &basis[level][i] * &t;
                partial[i] += inc;
            }
        }
        if partial.iter().all(|x| x.abs() <= *bound) || level + 1 < basis.len() {
            enumerate_box(basis, pivot_row, bound, level + 1, partial, out, count, budget)?;
        }
        if !t.is_zero() {
            for i in 0..partial.len() {
                let dec = &basis[level][i] * &t;
                partial[i] -= dec;
            }
        }
        t += 1;
    }
    Ok(())
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_ceil(a, b)
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// True when no other kernel point in `pool` is sign-compatible and
/// componentwise ≤ in absolute value.
fn is_minimal_among(v: &[BigInt], pool: &[Vec<BigInt>]) -> bool {
    !pool.iter().any(|w| {
        w != v
            && v.iter().zip(w).all(|(vi, wi)| sign_of(vi) == sign_of(wi) && wi.abs() <= vi.abs())
    })
}

/// Minimal linear dependencies of A in the sense of sign-compatible domination.
///
/// Corank ≤ 1 is exact and complete; otherwise a norm bound is required and
/// the result is flagged incomplete.
pub fn minimal_dependencies(
    a: &IntegerMatrix,
    norm_bound: Option<i64>,
    budget: u64,
) -> Result<MinimalDependencySet, Error> {
    let snf = smith_normal_form(a);
    let corank = a.n_cols - snf.rank();
    match corank {
        0 => Ok(MinimalDependencySet { dependencies: Vec::new(), complete: true }),
        1 => {
            let gen = primitive(&snf.kernel_basis()[0]);
            let neg: Vec<BigInt> = gen.iter().map(|x| -x.clone()).collect();
            Ok(MinimalDependencySet {
                dependencies: vec![MinimalDependency { vector: gen }, MinimalDependency { vector: neg }],
                complete: true,
            })
        }
        _ => {
            let bound = norm_bound.ok_or_else(|| {
                Error::Precondition(format!("corank {corank} > 1 requires a norm bound"))
            })?;
            let bound = BigInt::from(bound);
            let pool = kernel_points_in_box(a, &bound, budget)?;
            let dependencies = pool
                .iter()
                .filter(|v| is_minimal_among(v, &pool))
                .map(|v| MinimalDependency { vector: v.clone() })
                .collect();
            Ok(MinimalDependencySet { dependencies, complete: false })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::bigint_vec;
    use crate::util::combinations;

    #[test]
    fn tetra_boundary_single_full_circuit() {
        let d2 = fixtures::tetra_boundary().boundary_map(2).unwrap();
        let circuits = matroid_circuits(&d2, DEFAULT_CIRCUIT_NODE_BUDGET).unwrap();
        assert_eq!(circuits.len(), 1);
        assert_eq!(circuits[0].columns, vec![0, 1, 2, 3]);
        assert!(circuits[0].kernel_vector.iter().all(|x| x.abs() == 1.into()));
        assert!(d2.mul_vec(&circuits[0].kernel_vector).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn bjorner_circuit_matches_printed_generator() {
        let d2 = fixtures::bjorner().boundary_map(2).unwrap();
        let circuits = matroid_circuits(&d2, DEFAULT_CIRCUIT_NODE_BUDGET).unwrap();
        assert_eq!(circuits.len(), 1);
        assert_eq!(circuits[0].columns.len(), 11);
        // 2[123] − [125] − [126] + [134] + [136] + [145] − [234] − [235] − [246] + [356] − [456]
        assert_eq!(
            circuits[0].kernel_vector,
            bigint_vec(&[2, -1, -1, 1, 1, 1, -1, -1, -1, 1, -1])
        );
    }

    #[test]
    fn tree_incidence_has_no_circuits() {
        let g = crate::complex::Graph::new(&[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let m = g.incidence_matrix();
        assert!(matroid_circuits(&m, DEFAULT_CIRCUIT_NODE_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn column_guard_fires() {
        let wide = IntegerMatrix::zero(2, 26);
        assert!(matroid_circuits(&wide, DEFAULT_CIRCUIT_NODE_BUDGET).is_err());
    }

    /// Brute-force oracle: circuits = inclusion-minimal dependent subsets.
    #[test]
    fn circuits_complete_and_minimal_against_bruteforce() {
        let mut rng = crate::util::SplitMix64::new(99);
        for _ in 0..40 {
            let n = 2 + rng.below(3) as usize;
            let m = 2 + rng.below(5) as usize;
            let rows: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..m).map(|_| rng.below(5) as i64 - 2).collect())
                .collect();
            let a = IntegerMatrix::from_rows(&rows);
            let got: std::collections::BTreeSet<Vec<usize>> =
                matroid_circuits(&a, DEFAULT_CIRCUIT_NODE_BUDGET)
                    .unwrap()
                    .into_iter()
                    .map(|c| c.columns)
                    .collect();
            let dependent = |cols: &[usize]| {
                if cols.is_empty() {
                    return false;
                }
                a.select_cols(cols).rank() < cols.len()
            };
            let mut expected = std::collections::BTreeSet::new();
            for k in 1..=m {
                for cols in combinations(m, k) {
                    if dependent(&cols)
                        && (0..cols.len()).all(|drop| {
                            let sub: Vec<usize> = cols
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| *i != drop)
                                .map(|(_, &c)| c)
                                .collect();
                            !dependent(&sub)
                        })
                    {
                        expected.insert(cols);
                    }
                }
            }
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn minimal_dependencies_corank_zero_and_one() {
        let rp2 = fixtures::rp2().boundary_map(2).unwrap();
        let set = minimal_dependencies(&rp2, None, 1_000_000).unwrap();
        assert!(set.dependencies.is_empty());
        assert!(set.complete);

        let b = fixtures::bjorner().boundary_map(2).unwrap();
        let set = minimal_dependencies(&b, None, 1_000_000).unwrap();
        assert!(set.complete);
        assert_eq!(set.dependencies.len(), 2);
        let expect = bigint_vec(&[2, -1, -1, 1, 1, 1, -1, -1, -1, 1, -1]);
        assert!(set.dependencies.iter().any(|d| d.vector == expect));
        assert!(set
            .dependencies
            .iter()
            .any(|d| d.vector.iter().zip(&expect).all(|(x, y)| x == &(-y))));

        // transpose incidence of the path 1–2–3: kernel spanned by (1,1,1)
        let g = crate::complex::Graph::new(&[1, 2, 3], &[(1, 2), (2, 3)]).unwrap();
        let t = g.incidence_matrix().transpose();
        let set = minimal_dependencies(&t, None, 1_000_000).unwrap();
        assert!(set.complete);
        assert!(set.dependencies.iter().any(|d| d.vector == bigint_vec(&[1, 1, 1])));
    }

    #[test]
    fn minimal_dependencies_bounded_box_corank_two() {
        let a = IntegerMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 1]]);
        let set = minimal_dependencies(&a, Some(2), 1_000_000).unwrap();
        assert!(!set.complete);
        for want in [
            bigint_vec(&[1, 1, -1, 0]),
            bigint_vec(&[1, 1, 0, -1]),
            bigint_vec(&[0, 0, 1, -1]),
        ] {
            assert!(set.dependencies.iter().any(|d| d.vector == want), "missing {want:?}");
            let neg: Vec<BigInt> = want.iter().map(|x| -x).collect();
            assert!(set.dependencies.iter().any(|d| d.vector == neg));
        }
        // every reported vector is in the kernel and minimal within the pool
        let pool = kernel_points_in_box(&a, &BigInt::from(2), 1_000_000).unwrap();
        for d in &set.dependencies {
            assert!(a.mul_vec(&d.vector).iter().all(|x| x.is_zero()));
            assert!(is_minimal_among(&d.vector, &pool));
        }
        // a dominated vector is rejected: (2,2,-1,-1) sign box contains itself only,
        // but (2,2,-2,0) is dominated by (1,1,-1,0)
        assert!(!set.dependencies.iter().any(|d| d.vector == bigint_vec(&[2, 2, -2, 0])));
    }

    #[test]
    fn corank_two_without_bound_errors() {
        let a = IntegerMatrix::from_rows(&[vec![1, 0, 1, 1], vec![0, 1, 1, 1]]);
        assert!(minimal_dependencies(&a, None, 1_000_000).is_err());
    }
}
