//! Centrally symmetric polytopes conv[A | −A]: reduction to vertex columns,
//! lattice coordinates, facet enumeration, labelings, the corank-1 facet
//! count formula, crosspolytope detection and polar vertices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::OnceLock;

use crate::complex::SimplicialComplex;
use crate::error::Error;
use crate::hull::{hull_facets, FacetData, DEFAULT_MAX_HULL_DIM, DEFAULT_MAX_HULL_VERTS};
use crate::matrix::{primitive, solve_rational, IntegerMatrix};
use crate::snf::{smith_normal_form, SnfResult, TorsionVector};

/// A facet of the polytope, in lattice coordinates: normal·x = offset with
/// offset > 0 and origin strictly inside.
pub type Facet = FacetData;

/// conv[A | −A] for a reduced matrix A (one column per antipodal vertex pair).
pub struct CSPolytope {
    /// Reduced generator matrix; every column is a vertex.
    pub a: IntegerMatrix,
    /// Ambient dimension (rows of A).
    pub ambient_dim: usize,
    snf: SnfResult,
    /// Columns in lattice coordinates: an r×n integer matrix, r = dim P.
    c: IntegerMatrix,
    /// Basis of aff(P) ∩ Z^m as columns (m×r).
    lattice: IntegerMatrix,
    /// Set when a non-pure complex was reduced to its top-dimensional part.
    pub purified_input: bool,
    facets: OnceLock<Result<Vec<Facet>, Error>>,
    gram_inv: OnceLock<Vec<Vec<BigRational>>>,
}

/// A vertex of the polar dual, as a functional in lattice coordinates.
#[derive(Clone, Debug)]
pub struct PolarVertex {
    /// w with w·c = 1 for the facet's lattice-coordinate vertices.
    pub w: Vec<BigRational>,
    /// True iff w lies in the dual lattice (facet offset 1).
    pub integral: bool,
    ambient: OnceLock<Vec<BigRational>>,
    poly_gram: Vec<Vec<BigRational>>,
    lattice: IntegerMatrix,
}

impl PolarVertex {
    /// The geometric representative in aff(P) ⊂ R^m: the unique point v of
    /// the affine hull with A_Fᵀ·v = 1 (rational in general).
    pub fn ambient(&self) -> &Vec<BigRational> {
        self.ambient.get_or_init(|| {
            let r = self.w.len();
            let mut t = vec![BigRational::zero(); r];
            for (j, col) in self.poly_gram.iter().enumerate() {
                for i in 0..r {
                    let add = &col[i] * &self.w[j];
                    t[i] += add;
                }
            }
            let l = &self.lattice;
            (0..l.n_rows)
                .map(|i| {
                    (0..l.n_cols)
                        .map(|j| BigRational::from(l[(i, j)].clone()) * &t[j])
                        .sum()
                })
                .collect()
        })
    }
}

/// The labeling a supporting hyperplane induces on the generator columns
/// of a homology polytope.
#[derive(Clone, Debug)]
pub struct FacetLabeling {
    /// ℓ_j = w·F_j per column of A, each in [−1, 1].
    pub ell: Vec<BigRational>,
    /// Indices with |ℓ_j| = 1.
    pub support: Vec<usize>,
    /// The supporting normal w ∈ aff(P) with w·x = 1 on the facet.
    pub normal: Vec<BigRational>,
}

impl CSPolytope {
    /// Builds conv[A|−A]: drops zero columns, merges duplicate and antipodal
    /// columns, and certifies that every remaining column is a vertex.
    pub fn from_matrix(a: &IntegerMatrix) -> Result<CSPolytope, Error> {
        Self::from_matrix_inner(a, false)
    }

    fn from_matrix_inner(a: &IntegerMatrix, purified: bool) -> Result<CSPolytope, Error> {
        if a.is_zero() {
            return Err(Error::Invalid("all-zero generator matrix".into()));
        }
        // reduce: drop zero columns, merge ± duplicates
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..a.n_cols {
            let col = a.col(j);
            if col.iter().all(|x| x.is_zero()) {
                continue;
            }
            let neg: Vec<BigInt> = col.iter().map(|x| -x.clone()).collect();
            if !cols.iter().any(|c| c == &col || c == &neg) {
                cols.push(col);
            }
        }
        let reduced = matrix_from_cols(a.n_rows, &cols);
        let snf = smith_normal_form(&reduced);
        let r = snf.rank();
        let lattice = snf.lattice_basis();
        // lattice coordinates: first r rows of D·T
        let dt = snf.d_matrix().mul(&snf.t);
        let c = dt.submatrix(&(0..r).collect::<Vec<_>>(), &(0..reduced.n_cols).collect::<Vec<_>>());

        let poly = CSPolytope {
            a: reduced,
            ambient_dim: a.n_rows,
            snf,
            c,
            lattice,
            purified_input: purified,
            facets: OnceLock::new(),
            gram_inv: OnceLock::new(),
        };

        if poly.separated_column_situation() {
            return Ok(poly);
        }
        // exact separation: a column is a vertex iff its incident facet
        // normals span the full lattice dimension
        let facets = poly.facets()?;
        let n = poly.a.n_cols;
        let mut keep = Vec::new();
        for j in 0..n {
            let incident: Vec<Vec<BigInt>> = facets
                .iter()
                .filter(|f| f.incident.contains(&(j as i64 + 1)) || f.incident.contains(&(-(j as i64 + 1))))
                .map(|f| f.normal.clone())
                .collect();
            if rank_of_rows(&incident) == poly.dimension() {
                keep.push(j);
            }
        }
        if keep.len() == n {
            Ok(poly)
        } else {
            let surviving = poly.a.select_cols(&keep);
            Self::from_matrix_inner(&surviving, purified)
        }
    }

    /// A {−1,0,1} matrix in which any two signed columns that agree (with
    /// equal sign) on some row share at most one nonzero row overall; every
    /// column is then certified a vertex. Boundary maps always qualify
    /// (two facets share at most one ridge).
    fn separated_column_situation(&self) -> bool {
        let a = &self.a;
        if !a.entries().iter().all(|x| x.abs() <= BigInt::one()) {
            return false;
        }
        let n = a.n_cols;
        for i in 0..n {
            for j in i + 1..n {
                for sign in [1i64, -1] {
                    let equal_sign_row = (0..a.n_rows).any(|r| {
                        !a[(r, i)].is_zero() && a[(r, i)] == &a[(r, j)] * BigInt::from(sign)
                    });
                    if equal_sign_row {
                        let both_nonzero = (0..a.n_rows)
                            .filter(|&r| !a[(r, i)].is_zero() && !a[(r, j)].is_zero())
                            .count();
                        if both_nonzero > 1 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// dim P = rank A.
    pub fn dimension(&self) -> usize {
        self.snf.rank()
    }

    /// Number of vertices (2 per reduced column).
    pub fn vertex_count(&self) -> usize {
        2 * self.a.n_cols
    }

    /// Columns spanning aff(P) ∩ Z^m.
    pub fn affine_hull_basis(&self) -> &IntegerMatrix {
        &self.lattice
    }

    /// The columns in lattice coordinates (r×n).
    pub fn lattice_coords(&self) -> &IntegerMatrix {
        &self.c
    }

    pub fn snf(&self) -> &SnfResult {
        &self.snf
    }

    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.snf.divisors()
    }

    pub fn torsion_vectors(&self) -> Vec<TorsionVector> {
        self.snf.torsion_vectors()
    }

    /// True iff P is combinatorially a crosspolytope (rank = column count).
    pub fn is_crosspolytope(&self) -> bool {
        self.dimension() == self.a.n_cols
    }

    /// Exact irredundant facet list, cached. Guarded by hull size limits.
    pub fn facets(&self) -> Result<&[Facet], Error> {
        let res = self.facets.get_or_init(|| {
            let cols: Vec<Vec<BigInt>> = (0..self.c.n_cols).map(|j| self.c.col(j)).collect();
            hull_facets(&cols, DEFAULT_MAX_HULL_DIM, DEFAULT_MAX_HULL_VERTS)
        });
        match res {
            Ok(f) => Ok(f),
            Err(e) => Err(e.clone()),
        }
    }

    /// Facet count; crosspolytopes short-circuit to 2^n and corank-1
    /// polytopes to the partition formula, both validated against the hull
    /// on small fixtures.
    pub fn facet_count(&self) -> Result<u128, Error> {
        if self.is_crosspolytope() {
            let n = self.a.n_cols as u32;
            if n >= 127 {
                return Err(Error::guard("max-hull-dim", "crosspolytope facet count overflows"));
            }
            return Ok(1u128 << n);
        }
        if self.a.n_cols == self.dimension() + 1 {
            if let Some(kernel) = crate::snf::corank_one_kernel(&self.a) {
                return facet_count_corank1(&kernel);
            }
        }
        Ok(self.facets()?.len() as u128)
    }

    fn gram_inverse(&self) -> &Vec<Vec<BigRational>> {
        self.gram_inv.get_or_init(|| {
            let l = &self.lattice;
            let r = l.n_cols;
            let gram = l.transpose().mul(l);
            let mut inv = Vec::with_capacity(r);
            let q = |x: &BigInt| BigRational::from(x.clone());
            let m: Vec<Vec<BigRational>> =
                (0..r).map(|i| (0..r).map(|j| q(&gram[(i, j)])).collect()).collect();
            for j in 0..r {
                let mut e = vec![BigRational::zero(); r];
                e[j] = BigRational::one();
                let col = solve_rational(&m, &e).expect("Gram matrix of a basis is invertible");
                inv.push(col);
            }
            // inv holds columns of G^{-1}; G is symmetric so this is also row-major
            inv
        })
    }

    /// The polar-dual vertex attached to a facet: the functional w on the
    /// affine lattice with w·c = 1 on the facet, in lattice coordinates.
    ///
    /// It is a point of the dual lattice exactly when the primitive facet
    /// hyperplane p·x = q has q = 1; that is the reflexivity test, and it is
    /// equivalent to Aᵀx = b_F having an ambient integral solution.
    pub fn polar_vertex(&self, facet: &Facet) -> PolarVertex {
        let q = BigRational::from(facet.offset.clone());
        let w: Vec<BigRational> = facet
            .normal
            .iter()
            .map(|p| BigRational::from(p.clone()) / q.clone())
            .collect();
        let integral = facet.offset == BigInt::one();
        debug_assert_eq!(integral, w.iter().all(|x| x.is_integer()));
        PolarVertex { w, integral, ambient: OnceLock::new(), poly_gram: self.gram_inverse().clone() , lattice: self.lattice.clone() }
    }

    /// Polar vertex of the crosspolytope facet with vertex signs ε (no hull
    /// needed): solves Cᵀw = ε. Only valid when `is_crosspolytope()`.
    pub fn crosspolytope_polar_vertex(&self, signs: &[i8]) -> PolarVertex {
        assert!(self.is_crosspolytope());
        let r = self.dimension();
        assert_eq!(signs.len(), r);
        let q = |x: &BigInt| BigRational::from(x.clone());
        let ct = self.c.transpose();
        let m: Vec<Vec<BigRational>> =
            (0..r).map(|i| (0..r).map(|j| q(&ct[(i, j)])).collect()).collect();
        let rhs: Vec<BigRational> =
            signs.iter().map(|&s| BigRational::from(BigInt::from(s as i64))).collect();
        let w = solve_rational(&m, &rhs).expect("crosspolytope facet system is invertible");
        let integral = w.iter().all(|x| x.is_integer());
        PolarVertex { w, integral, ambient: OnceLock::new(), poly_gram: self.gram_inverse().clone(), lattice: self.lattice.clone() }
    }

    pub fn lattice_to_ambient(&self, t: &[BigRational]) -> Vec<BigRational> {
        let l = &self.lattice;
        (0..l.n_rows)
            .map(|i| {
                (0..l.n_cols)
                    .map(|j| BigRational::from(l[(i, j)].clone()) * &t[j])
                    .sum()
            })
            .collect()
    }

    /// Lattice coordinates of an ambient lattice point of aff(P), if any.
    pub fn ambient_to_lattice(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        // S^{-1}x must vanish beyond the first r rows; the head is the answer.
        let sx = self.snf.s_inv.mul_vec(x);
        let r = self.dimension();
        if sx[r..].iter().all(|v| v.is_zero()) {
            Some(sx[..r].to_vec())
        } else {
            None
        }
    }

    /// ℓ_j = w·F_j for every column, from a hull facet of this polytope.
    pub fn facet_labeling(&self, facet: &Facet) -> FacetLabeling {
        let q = BigRational::from(facet.offset.clone());
        let mut ell = Vec::with_capacity(self.c.n_cols);
        for j in 0..self.c.n_cols {
            let dot: BigInt =
                (0..self.c.n_rows).map(|i| &facet.normal[i] * &self.c[(i, j)]).sum();
            ell.push(BigRational::from(dot) / q.clone());
        }
        let one = BigRational::one();
        let support: Vec<usize> = ell
            .iter()
            .enumerate()
            .filter(|(_, l)| l.abs() == one)
            .map(|(j, _)| j)
            .collect();
        let normal = self.polar_vertex(facet).ambient().clone();
        FacetLabeling { ell, support, normal }
    }
}

/// True iff the labeling's support columns span the full rank of ∂ —
/// equivalently the support complex contains a simplicial spanning forest.
pub fn verify_spanning_forest(boundary: &IntegerMatrix, labeling: &FacetLabeling) -> bool {
    if labeling.support.is_empty() {
        return boundary.rank() == 0;
    }
    boundary.select_cols(&labeling.support).rank() == boundary.rank()
}

/// P_Δ = conv[∂_d | −∂_d]. Rejects 0-dimensional complexes; non-pure input
/// is reduced to its top-dimensional part with `purified_input` set.
pub fn homology_polytope(delta: &SimplicialComplex) -> Result<CSPolytope, Error> {
    let d = delta.dim();
    if d == 0 {
        return Err(Error::Precondition("homology polytope needs dim ≥ 1".into()));
    }
    let (work, purified) =
        if delta.is_pure() { (delta.clone(), false) } else { (delta.pure_part(), true) };
    let a = work.boundary_map(d)?;
    CSPolytope::from_matrix_inner(&a, purified)
}

/// P^Δ = conv[∂_dᵀ | −∂_dᵀ], duplicate free-ridge columns merged.
pub fn cohomology_polytope(delta: &SimplicialComplex) -> Result<CSPolytope, Error> {
    let d = delta.dim();
    if d == 0 {
        return Err(Error::Precondition("cohomology polytope needs dim ≥ 1".into()));
    }
    let (work, purified) =
        if delta.is_pure() { (delta.clone(), false) } else { (delta.pure_part(), true) };
    let a = work.boundary_map(d)?.transpose();
    CSPolytope::from_matrix_inner(&a, purified)
}

/// Number of equal weight partitions of an indexed multiset, counted as
/// ordered sign assignments b ∈ {±1}^S with Σ b_i s_i = 0.
pub fn equal_weight_partition_count(values: &[i64]) -> u128 {
    if values.is_empty() {
        return 1; // the empty assignment has sum zero
    }
    let total: i64 = values.iter().map(|v| v.abs()).sum();
    let offset = total as usize;
    let mut counts = vec![0u128; 2 * offset + 1];
    counts[offset] = 1;
    for &v in values {
        let mut next = vec![0u128; 2 * offset + 1];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for delta in [v, -v] {
                let ns = s as i64 + delta;
                if ns >= 0 && ns <= 2 * offset as i64 {
                    next[ns as usize] += c;
                }
            }
        }
        counts = next;
    }
    counts[offset]
}

/// Facet count of P_A for a corank-1 kernel generated by the primitive
/// vector `a`, by the closed partition formula.
pub fn facet_count_corank1(a: &[BigInt]) -> Result<u128, Error> {
    let prim = primitive(a);
    let matches = prim.iter().zip(a).all(|(p, x)| p == x || p == &-x);
    if !matches || a.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("kernel generator must be primitive".into()));
    }
    let vals: Vec<i64> = a
        .iter()
        .map(|x| i64::try_from(x.abs()).map_err(|_| Error::guard("max-partition", "entry too large")))
        .collect::<Result<_, _>>()?;
    let s = vals.len();
    let mut count = equal_weight_partition_count(&vals);
    for k in 0..s {
        let without: Vec<i64> =
            vals.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &v)| v).collect();
        count += equal_weight_partition_count(&without);
        for i in 1..vals[k] {
            let mut with_i = without.clone();
            with_i.push(i);
            count += equal_weight_partition_count(&with_i);
        }
    }
    Ok(count)
}

fn matrix_from_cols(n_rows: usize, cols: &[Vec<BigInt>]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zero(n_rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n_rows {
            m[(i, j)] = c[i].clone();
        }
    }
    m
}

fn rank_of_rows(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = IntegerMatrix::zero(rows.len(), rows[0].len());
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            m[(i, j)] = x.clone();
        }
    }
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::bigint_vec;

    #[test]
    fn vertex_and_dimension_counts() {
        let p = homology_polytope(&fixtures::rp2()).unwrap();
        assert_eq!(p.vertex_count(), 20);
        assert_eq!(p.dimension(), 10);
        assert_eq!(p.ambient_dim, 15);

        let pc = cohomology_polytope(&fixtures::cone_k33()).unwrap();
        assert_eq!(pc.vertex_count(), 30);
        assert_eq!(pc.dimension(), 9);

        let pt = cohomology_polytope(&fixtures::tetra_boundary()).unwrap();
        assert_eq!(pt.vertex_count(), 12);
        assert_eq!(pt.dimension(), 3);

        let pb = homology_polytope(&fixtures::bjorner()).unwrap();
        assert_eq!(pb.dimension(), 10);
        assert_eq!(pb.vertex_count(), 22);

        let sk = homology_polytope(&fixtures::skeleton_3_6()).unwrap();
        assert_eq!(sk.dimension(), 20);

        // both 14-facet sphere fixtures give 13-dimensional cohomology polytopes
        assert_eq!(cohomology_polytope(&fixtures::sphere_a()).unwrap().dimension(), 13);
        assert_eq!(cohomology_polytope(&fixtures::sphere_b()).unwrap().dimension(), 13);
    }

    #[test]
    fn antipodal_merge_to_segment() {
        let a = IntegerMatrix::from_rows(&[vec![1, -1]]);
        let p = CSPolytope::from_matrix(&a).unwrap();
        assert_eq!(p.a.n_cols, 1);
        assert_eq!(p.dimension(), 1);
        assert_eq!(p.vertex_count(), 2);
    }

    #[test]
    fn zero_matrix_rejected_and_dim0_rejected() {
        assert!(CSPolytope::from_matrix(&IntegerMatrix::zero(2, 2)).is_err());
        let point = crate::complex::build_complex(&[vec![1]]).unwrap();
        assert!(homology_polytope(&point).is_err());
        assert!(cohomology_polytope(&point).is_err());
    }

    #[test]
    fn nonpure_input_is_purified_with_flag() {
        let c = crate::complex::build_complex(&[vec![1, 2, 3], vec![4, 5]]).unwrap();
        let p = homology_polytope(&c).unwrap();
        assert!(p.purified_input);
        assert_eq!(p.vertex_count(), 2);
    }

    #[test]
    fn interior_point_dropped_by_separation() {
        // [−2,2] with the non-vertex lattice point 1 as an extra column
        let a = IntegerMatrix::from_rows(&[vec![2, 1]]);
        let p = CSPolytope::from_matrix(&a).unwrap();
        assert_eq!(p.a.n_cols, 1);
        assert_eq!(p.a[(0, 0)], BigInt::from(2));
        // midpoint of a square facet is on the boundary but still no vertex
        let sq = IntegerMatrix::from_rows(&[vec![1, 1, 1], vec![1, -1, 0]]);
        let p = CSPolytope::from_matrix(&sq).unwrap();
        assert_eq!(p.a.n_cols, 2);
    }

    #[test]
    fn cohomology_merges_free_ridge_columns() {
        // ⟨123, 234⟩: 5 edges, each facet has two free ridges → 6 vertices
        let p = cohomology_polytope(&fixtures::two_triangles()).unwrap();
        assert_eq!(p.vertex_count(), 6);
        assert_eq!(p.dimension(), 2);
    }

    #[test]
    fn crosspolytope_flags() {
        assert!(homology_polytope(&fixtures::rp2()).unwrap().is_crosspolytope());
        assert!(!homology_polytope(&fixtures::bjorner()).unwrap().is_crosspolytope());
        for c in [fixtures::tetra_boundary(), fixtures::two_triangles(), fixtures::rp2()] {
            assert!(!cohomology_polytope(&c).unwrap().is_crosspolytope());
        }
    }

    #[test]
    fn facet_counts_small() {
        // hexagon: the homology polytope of the triangle as a 1-complex
        let hexagon = homology_polytope(&fixtures::triangle()).unwrap();
        assert_eq!(hexagon.facet_count().unwrap(), 6);
        // skewed 10-crosspolytope
        let rp2 = homology_polytope(&fixtures::rp2()).unwrap();
        assert_eq!(rp2.facet_count().unwrap(), 1 << 10);
        // tetrahedron boundary: C(4,2) = 6 facets
        let tetra = homology_polytope(&fixtures::tetra_boundary()).unwrap();
        assert_eq!(tetra.facets().unwrap().len(), 6);
    }

    #[test]
    fn crosspolytope_shortcut_agrees_with_hull() {
        let rp2 = homology_polytope(&fixtures::rp2()).unwrap();
        assert_eq!(rp2.facet_count().unwrap(), rp2.facets().unwrap().len() as u128);
        let seg = CSPolytope::from_matrix(&IntegerMatrix::from_rows(&[vec![1]])).unwrap();
        assert_eq!(seg.facet_count().unwrap(), seg.facets().unwrap().len() as u128);
    }

    #[test]
    fn partition_counts() {
        assert_eq!(equal_weight_partition_count(&[1, 1, 1, 1]), 6);
        assert_eq!(equal_weight_partition_count(&[1, 1, 1]), 0);
        assert_eq!(equal_weight_partition_count(&[2, 1, 1]), 2);
        assert_eq!(equal_weight_partition_count(&[]), 1);
    }

    #[test]
    fn corank1_facet_formula() {
        assert_eq!(facet_count_corank1(&bigint_vec(&[1, 1, 1, 1])).unwrap(), 6);
        assert_eq!(facet_count_corank1(&bigint_vec(&[1, 1, 1])).unwrap(), 6);
        assert_eq!(
            facet_count_corank1(&bigint_vec(&[2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1])).unwrap(),
            672
        );
        assert!(facet_count_corank1(&bigint_vec(&[2, 2])).is_err());
        // closed orientable pseudomanifold counts, s = 3..8 (all-ones vectors)
        let binom = |n: u64, k: u64| crate::util::binomial(n, k);
        for s in 3..=8u64 {
            let ones = vec![BigInt::one(); s as usize];
            let expect = if s % 2 == 0 {
                binom(s, s / 2)
            } else {
                (s as u128) * binom(s - 1, (s - 1) / 2)
            };
            assert_eq!(facet_count_corank1(&ones).unwrap(), expect, "s = {s}");
        }
    }

    /// Partition-count formula vs the hull, the two-oracle agreement test.
    #[test]
    fn corank1_formula_matches_hull_on_bjorner() {
        let pb = homology_polytope(&fixtures::bjorner()).unwrap();
        let d2 = fixtures::bjorner().boundary_map(2).unwrap();
        let a = crate::snf::corank_one_kernel(&d2).unwrap();
        let formula = facet_count_corank1(&a).unwrap();
        assert_eq!(formula, 672);
        assert_eq!(pb.facets().unwrap().len() as u128, formula);
    }

    #[test]
    fn tetra_formula_matches_hull() {
        let pt = homology_polytope(&fixtures::tetra_boundary()).unwrap();
        let d2 = fixtures::tetra_boundary().boundary_map(2).unwrap();
        let a = crate::snf::corank_one_kernel(&d2).unwrap();
        assert_eq!(facet_count_corank1(&a).unwrap(), pt.facets().unwrap().len() as u128);
    }

    /// The labeling case split on the bjorner polytope: 420 facets use all
    /// eleven columns, 252 drop exactly one (type (2)), none rescale.
    #[test]
    fn bjorner_facet_type_census() {
        let p = homology_polytope(&fixtures::bjorner()).unwrap();
        let one = BigRational::one();
        let mut full_support = 0;
        let mut one_zero = 0;
        for facet in p.facets().unwrap() {
            let lab = p.facet_labeling(facet);
            let zeros = lab.ell.iter().filter(|l| l.is_zero()).count();
            let fractional =
                lab.ell.iter().filter(|l| !l.is_zero() && l.abs() != one).count();
            match (zeros, fractional) {
                (0, 0) => full_support += 1,
                (1, 0) => one_zero += 1,
                _ => panic!("unexpected labeling shape: {:?}", lab.ell),
            }
        }
        assert_eq!(full_support, 420);
        assert_eq!(one_zero, 252);
    }

    /// Facet–labeling duality round trip on every hull facet of the named
    /// fixtures.
    #[test]
    fn facet_labeling_duality() {
        for complex in [fixtures::rp2(), fixtures::bjorner(), fixtures::tetra_boundary()] {
            let p = homology_polytope(&complex).unwrap();
            let d = complex.boundary_map(complex.dim()).unwrap();
            let kernel = d.kernel_basis();
            let one = BigRational::one();
            for facet in p.facets().unwrap() {
                let lab = p.facet_labeling(facet);
                // max |ℓ| = 1
                assert!(lab.ell.iter().all(|l| l.abs() <= one));
                assert!(lab.ell.iter().any(|l| l.abs() == one));
                // Σ ℓ_j σ_j ∈ im ∂ᵀ ⟺ ℓ ⟂ ker ∂
                for k in &kernel {
                    let dot: BigRational = lab
                        .ell
                        .iter()
                        .zip(k)
                        .map(|(l, x)| l * BigRational::from(x.clone()))
                        .sum();
                    assert!(dot.is_zero(), "labeling not orthogonal to a kernel vector");
                }
                // vertex set of the facet = {ℓ_i F_i : |ℓ_i| = 1}
                let mut expected: Vec<i64> = lab
                    .support
                    .iter()
                    .map(|&j| {
                        if lab.ell[j] == one {
                            j as i64 + 1
                        } else {
                            -(j as i64 + 1)
                        }
                    })
                    .collect();
                expected.sort_by_key(|x| x.abs());
                let mut got = facet.incident.clone();
                got.sort_by_key(|x| x.abs());
                assert_eq!(got, expected);
                // the support contains a simplicial spanning forest
                assert!(verify_spanning_forest(&d, &lab));
            }
        }
    }

    #[test]
    fn deficient_support_fails_forest_check() {
        let complex = fixtures::rp2();
        let p = homology_polytope(&complex).unwrap();
        let d = complex.boundary_map(2).unwrap();
        let facet = &p.facets().unwrap()[0];
        let mut lab = p.facet_labeling(facet);
        // drop two independent columns from the support
        lab.support.truncate(lab.support.len() - 2);
        assert!(!verify_spanning_forest(&d, &lab));
    }

    /// aff(P_Δ) ⟂ cocycle space and aff(P^Δ) ⟂ cycle space.
    #[test]
    fn affine_hull_orthogonality() {
        for complex in [fixtures::rp2(), fixtures::bjorner(), fixtures::tetra_boundary()] {
            let d = complex.boundary_map(complex.dim()).unwrap();
            let ph = homology_polytope(&complex).unwrap();
            for cocycle in d.transpose().kernel_basis() {
                let l = ph.affine_hull_basis();
                for j in 0..l.n_cols {
                    let dot: BigInt = (0..l.n_rows).map(|i| &l[(i, j)] * &cocycle[i]).sum();
                    assert!(dot.is_zero());
                }
            }
            let pc = cohomology_polytope(&complex).unwrap();
            for cycle in d.kernel_basis() {
                let l = pc.affine_hull_basis();
                for j in 0..l.n_cols {
                    let dot: BigInt = (0..l.n_rows).map(|i| &l[(i, j)] * &cycle[i]).sum();
                    assert!(dot.is_zero());
                }
            }
        }
    }

    /// Boundary-map polytopes have vertex coordinates bounded by 1.
    #[test]
    fn vertex_coordinates_bounded() {
        for complex in [fixtures::rp2(), fixtures::bjorner(), fixtures::moore_z3()] {
            let p = homology_polytope(&complex).unwrap();
            assert!(p.a.entries().iter().all(|x| x.abs() <= BigInt::one()));
        }
    }

    #[test]
    fn polar_vertices_of_unit_crosspolytope() {
        let p = CSPolytope::from_matrix(&IntegerMatrix::identity(3)).unwrap();
        for facet in p.facets().unwrap() {
            let pv = p.polar_vertex(facet);
            assert!(pv.integral);
            assert!(pv.w.iter().all(|x| x.abs() == BigRational::one()));
        }
    }

    /// The integrality flag agrees with solvability of Aᵀx = b_F over Z
    /// (integral-solve route) on every facet of the small fixtures.
    #[test]
    fn polar_integrality_matches_integral_system_route() {
        for complex in [fixtures::tetra_boundary(), fixtures::triangle(), fixtures::two_triangles()]
        {
            let p = homology_polytope(&complex).unwrap();
            for facet in p.facets().unwrap() {
                let pv = p.polar_vertex(facet);
                let mut b = vec![BigInt::zero(); p.a.n_cols];
                for &s in &facet.incident {
                    let j = s.unsigned_abs() as usize - 1;
                    b[j] = if s > 0 { BigInt::one() } else { -BigInt::one() };
                }
                let solvable = crate::snf::solve_integral_system(&p.a, &b).is_some();
                assert_eq!(pv.integral, solvable, "routes disagree on a facet");
            }
        }
    }

    #[test]
    fn ambient_to_lattice_roundtrip() {
        let p = homology_polytope(&fixtures::rp2()).unwrap();
        for j in 0..p.a.n_cols {
            let col = p.a.col(j);
            let t = p.ambient_to_lattice(&col).unwrap();
            assert_eq!(t, p.c.col(j));
        }
        // a point off the affine hull has no lattice coordinates
        let mut off = vec![BigInt::zero(); p.ambient_dim];
        off[0] = BigInt::one();
        // e_1 lies off aff(P) iff S⁻¹e_1 has support beyond rank; rp2's affine
        // hull is 10-dim in R^15 so some unit vector must be off it
        let found_off = (0..p.ambient_dim).any(|i| {
            let mut e = vec![BigInt::zero(); p.ambient_dim];
            e[i] = BigInt::one();
            p.ambient_to_lattice(&e).is_none()
        });
        assert!(found_off);
    }
}
