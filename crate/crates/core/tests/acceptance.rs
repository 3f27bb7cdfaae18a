//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its timing once its exact assertions hold.

use std::sync::OnceLock;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use symtope_core::circuits::minimal_dependencies;
use symtope_core::complex::{build_complex, cone_over_graph, Graph};
use symtope_core::enumerate::{PointEnumerator, DEFAULT_MAX_ENUM_DIM, DEFAULT_MAX_POINTS};
use symtope_core::equivalence::{self, Which};
use symtope_core::fixtures;
use symtope_core::groebner::{self, BinomialType};
use symtope_core::invariants::{self, ReflexivityRoute};
use symtope_core::matrix::{bigint_vec, IntegerMatrix};
use symtope_core::polytope::{
    cohomology_polytope, facet_count_corank1, homology_polytope, CSPolytope,
};
use symtope_core::snf::{corank_one_kernel, smith_normal_form, solve_integral_system};
use symtope_core::sumset::DEFAULT_MAX_SUMSET;
use symtope_core::tu::{is_totally_unimodular, TuResult, DEFAULT_MAX_MINORS};
use symtope_core::util::SplitMix64;

fn pass(criterion: &str, started: Instant, detail: &str) {
    println!("criterion {criterion}: PASS ({:.2?}) — {detail}", started.elapsed());
}

fn bjorner_idp() -> &'static invariants::IDPReport {
    static CELL: OnceLock<invariants::IDPReport> = OnceLock::new();
    CELL.get_or_init(|| {
        let p = homology_polytope(&fixtures::bjorner()).unwrap();
        let en = PointEnumerator::build(&p, DEFAULT_MAX_ENUM_DIM).unwrap();
        invariants::idp_report(&p, &en, None, DEFAULT_MAX_POINTS, DEFAULT_MAX_SUMSET).unwrap()
    })
}

fn rp2_hstar() -> &'static invariants::HStarVector {
    static CELL: OnceLock<invariants::HStarVector> = OnceLock::new();
    CELL.get_or_init(|| {
        let p = homology_polytope(&fixtures::rp2()).unwrap();
        let en = PointEnumerator::build(&p, DEFAULT_MAX_ENUM_DIM).unwrap();
        invariants::ehrhart_hstar(&p, &en, DEFAULT_MAX_POINTS).unwrap()
    })
}

#[test]
fn criterion_01_homology_and_torsion() {
    let t = Instant::now();
    let rp2 = fixtures::rp2();
    let h1 = rp2.homology(1).unwrap();
    assert_eq!((h1.free_rank, h1.torsion.clone()), (0, vec![BigInt::from(2)]));
    assert!(rp2.homology(2).unwrap().is_trivial());

    let b = fixtures::bjorner();
    assert!(b.homology(1).unwrap().is_trivial());
    let h2 = b.homology(2).unwrap();
    assert_eq!((h2.free_rank, h2.torsion.len()), (1, 0));

    let moore = fixtures::moore_z3();
    let snf = smith_normal_form(&moore.boundary_map(2).unwrap());
    let mut expected = vec![BigInt::one(); 18];
    expected.push(BigInt::from(3));
    assert_eq!(snf.divisors(), expected);
    pass("1", t, "H₁(rp2)=Z₂, H₂(rp2)=0, H₁(B)=0, H₂(B)=Z, divisors(∂₂ moore)=(1×18,3)");
}

#[test]
fn criterion_02_total_unimodularity() {
    let t = Instant::now();
    let ms = fixtures::moebius_strip().boundary_map(2).unwrap();
    match is_totally_unimodular(&ms, DEFAULT_MAX_MINORS).unwrap() {
        TuResult::Witness { rows, cols, det } => {
            assert_eq!(rows.len(), 6);
            assert_eq!(cols.len(), 6);
            assert_eq!(det.abs(), BigInt::from(2));
        }
        _ => panic!("Möbius strip boundary must fail TU"),
    }
    let tetra = fixtures::tetra_boundary().boundary_map(2).unwrap();
    assert!(is_totally_unimodular(&tetra, DEFAULT_MAX_MINORS).unwrap().is_tu());
    // cones over graphs drawn from the corpus
    let cones = vec![
        fixtures::cone_k33(),
        fixtures::cone_c4(),
        cone_over_graph(&Graph::from_complex(&fixtures::triangle()).unwrap(), 99).unwrap(),
        cone_over_graph(&Graph::complete(4), 99).unwrap(),
    ];
    for cone in &cones {
        let d2 = cone.boundary_map(2).unwrap();
        assert!(is_totally_unimodular(&d2, DEFAULT_MAX_MINORS).unwrap().is_tu());
    }
    pass("2", t, "∂₂(MS) has a 6×6 witness of |det| 2; tetrahedron and graph cones are TU");
}

#[test]
fn criterion_03_vertex_and_dimension_counts() {
    let t = Instant::now();
    let p = homology_polytope(&fixtures::rp2()).unwrap();
    assert_eq!((p.vertex_count(), p.dimension()), (20, 10));
    let p = cohomology_polytope(&fixtures::cone_k33()).unwrap();
    assert_eq!((p.vertex_count(), p.dimension()), (30, 9));
    let p = cohomology_polytope(&fixtures::tetra_boundary()).unwrap();
    assert_eq!((p.vertex_count(), p.dimension()), (12, 3));
    pass("3", t, "P_rp2: 20 vertices dim 10; P^cone_k33: 30/9; P^tetra: 12/3");
}

#[test]
fn criterion_04_facet_counts_two_oracles() {
    let t = Instant::now();
    // triangle (hexagon) and tetrahedron boundary: formula = hull = 6
    for (delta, expect) in [(fixtures::triangle(), 6u128), (fixtures::tetra_boundary(), 6)] {
        let p = homology_polytope(&delta).unwrap();
        let hull = p.facets().unwrap().len() as u128;
        let a = corank_one_kernel(&delta.boundary_map(delta.dim()).unwrap()).unwrap();
        let formula = facet_count_corank1(&a).unwrap();
        assert_eq!(hull, expect);
        assert_eq!(formula, expect);
    }
    // cycle complexes s = 3..8: SEPs of cycles against the closed forms
    for s in 3..=8usize {
        let sep = equivalence::sep_of_graph(&Graph::cycle(s)).unwrap();
        let hull = sep.facets().unwrap().len() as u128;
        let ones = vec![BigInt::one(); s];
        let formula = facet_count_corank1(&ones).unwrap();
        let m = s / 2;
        let binom = symtope_core::util::binomial(2 * m as u64, m as u64);
        let closed_form = if s % 2 == 0 { binom } else { (2 * m as u128 + 1) * binom };
        assert_eq!(hull, formula, "s = {s}");
        assert_eq!(hull, closed_form, "s = {s}");
    }
    // Björner: hand-derived 672 = formula = hull
    let b = fixtures::bjorner();
    let p = homology_polytope(&b).unwrap();
    let hull = p.facets().unwrap().len() as u128;
    let a = corank_one_kernel(&b.boundary_map(2).unwrap()).unwrap();
    let formula = facet_count_corank1(&a).unwrap();
    assert_eq!(formula, 672);
    assert_eq!(hull, 672);
    pass("4", t, "hull = partition formula on triangle, tetra, C₃..C₈ cycles, and B (672)");
}

#[test]
fn criterion_05_crosspolytope_and_spanning() {
    let t = Instant::now();
    let rp2 = homology_polytope(&fixtures::rp2()).unwrap();
    assert!(rp2.is_crosspolytope());
    let span = invariants::spanning_report(&rp2.a);
    assert!(!span.spanning);
    assert_eq!(span.alpha_max, BigInt::from(2));
    assert!(span.not_idp);

    let b = homology_polytope(&fixtures::bjorner()).unwrap();
    assert!(!b.is_crosspolytope());
    let span = invariants::spanning_report(&b.a);
    assert!(span.spanning);
    pass("5", t, "P_rp2 crosspolytope, non-spanning (α=2); P_B not crosspolytope, spanning");
}

#[test]
fn criterion_06_ehrhart_vs_hilbert_on_bjorner() {
    let t = Instant::now();
    let rep = bjorner_idp();
    assert_eq!(
        rep.hstar.coefficients,
        bigint_vec(&[1, 12, 67, 232, 562, 1276, 562, 232, 67, 12, 1])
    );
    let numerator: Vec<BigInt> = rep.hilbert_numerator[..=rep.hilbert_degree].to_vec();
    assert_eq!(numerator, bigint_vec(&[1, 12, 67, 232, 562, 1024, 814, 232, 67, 12, 1]));
    assert!(!rep.idp);
    assert_eq!(rep.smallest_failing_k, Some(5));
    assert_eq!(rep.witness_count, 252);
    // the printed witness point, in lex edge coordinates of B
    let printed = bigint_vec(&[-1, -1, 0, 1, 1, -1, 0, 0, 0, -1, -1, 0, 0, -1, 0]);
    assert!(rep.witnesses.iter().any(|w| w == &printed), "printed witness point missing");
    // reflexive fixtures carry palindromic h*; B is reflexive
    assert!(rep.hstar.is_palindromic());
    assert!(rep.hstar.gamma_vector().is_some());
    pass("6", t, "B: h*, Hilbert numerator, 252 witnesses at k=5 incl. the printed point");
}

#[test]
fn criterion_07_reflexivity_battery() {
    let t = Instant::now();
    // rp2: torsion-parity route and topology route agree
    let p = homology_polytope(&fixtures::rp2()).unwrap();
    let matrix_route = invariants::is_reflexive(&p).unwrap();
    let topo_route = invariants::reflexivity_by_topology(&fixtures::rp2()).unwrap();
    assert!(matrix_route.reflexive && topo_route.reflexive);
    // the polar-integrality route over all 1024 hull facets agrees
    for facet in p.facets().unwrap() {
        assert!(p.polar_vertex(facet).integral);
    }

    assert!(!invariants::is_reflexive(&homology_polytope(&fixtures::moore_z3()).unwrap())
        .unwrap()
        .reflexive);
    assert!(
        !invariants::is_reflexive(&homology_polytope(&fixtures::manifold_3_9_989()).unwrap())
            .unwrap()
            .reflexive
    );
    assert!(invariants::is_reflexive(
        &homology_polytope(&fixtures::manifold_3_9_989_stellar()).unwrap()
    )
    .unwrap()
    .reflexive);

    let b = homology_polytope(&fixtures::bjorner()).unwrap();
    let verdict = invariants::is_reflexive(&b).unwrap();
    assert!(verdict.reflexive);
    assert_eq!(verdict.route, ReflexivityRoute::PolarIntegrality);
    // every one of the 672 facets individually has an integral polar vertex
    for facet in b.facets().unwrap() {
        assert!(b.polar_vertex(facet).integral);
    }
    pass("7", t, "rp2 reflexive (routes agree); moore/manifold not; stellar and B reflexive");
}

#[test]
fn criterion_08_dual_dilation() {
    let t = Instant::now();
    let moore = homology_polytope(&fixtures::moore_z3()).unwrap();
    assert_eq!(moore.elementary_divisors().last().unwrap(), &BigInt::from(3));
    assert!(invariants::dual_dilation_check(&moore).unwrap());
    let rp2 = homology_polytope(&fixtures::rp2()).unwrap();
    assert_eq!(rp2.elementary_divisors().last().unwrap(), &BigInt::from(2));
    assert!(invariants::dual_dilation_check(&rp2).unwrap());
    pass("8", t, "α_max·(polar vertices) integral on moore (α=3) and rp2 (α=2)");
}

#[test]
fn criterion_09_groebner_suite() {
    let t = Instant::now();
    // bjorner: the critical type-(3) binomial and the RUT obstruction
    let d2 = fixtures::bjorner().boundary_map(2).unwrap();
    let deps = minimal_dependencies(&d2, None, 10_000_000).unwrap();
    let gb = groebner::groebner_basis(&d2, &deps, groebner::DEFAULT_MAX_BINOMIALS).unwrap();
    let found = gb.binomials.iter().any(|b| {
        b.btype == BinomialType::Three
            && b.lead.exponent_of(groebner::var_plus(0)) == 2
            && b.trail.exponent_of(groebner::var_z()) == 2
    });
    assert!(found, "critical binomial x²_{{123+}}·m₁ − z²·m₂ missing");
    assert!(groebner::rut_obstruction(&d2).unwrap());
    assert!(!groebner::gb_diagnostics(&gb).squarefree_leads);

    // rp2: type-(4)-only, squarefree
    let rp2 = fixtures::rp2().boundary_map(2).unwrap();
    let deps = minimal_dependencies(&rp2, None, 10_000_000).unwrap();
    let gb_rp2 = groebner::groebner_basis(&rp2, &deps, groebner::DEFAULT_MAX_BINOMIALS).unwrap();
    assert_eq!(gb_rp2.binomials.len(), 10);
    assert!(gb_rp2.binomials.iter().all(|b| b.btype == BinomialType::Four));
    assert!(groebner::gb_diagnostics(&gb_rp2).squarefree_leads);

    // 10³ seeded division-closure trials per fixture
    for delta in [
        fixtures::triangle(),
        fixtures::tetra_boundary(),
        fixtures::rp2(),
        fixtures::bjorner(),
    ] {
        let a = delta.boundary_map(delta.dim()).unwrap();
        let deps = minimal_dependencies(&a, None, 10_000_000).unwrap();
        let gb = groebner::groebner_basis(&a, &deps, groebner::DEFAULT_MAX_BINOMIALS).unwrap();
        let mut rng = SplitMix64::new(0x5EED);
        for _ in 0..1000 {
            let (m1, m2) = groebner::random_member(&gb, &mut rng, 10);
            assert!(groebner::reduces_to_zero(&gb, &m1, &m2));
        }
    }
    pass("9", t, "B critical binomial + obstruction; rp2 squarefree; 4×10³ reductions to zero");
}

#[test]
fn criterion_10_triangulation_verification() {
    let t = Instant::now();
    // segment [−1, 1]
    let seg = IntegerMatrix::from_rows(&[vec![1]]);
    let deps = minimal_dependencies(&seg, None, 1_000_000).unwrap();
    let gb = groebner::groebner_basis(&seg, &deps, groebner::DEFAULT_MAX_BINOMIALS).unwrap();
    let tri = groebner::triangulation_from_gb(&gb, &seg, groebner::DEFAULT_MAX_CELLS).unwrap();
    let p = CSPolytope::from_matrix(&seg).unwrap();
    let en = PointEnumerator::build(&p, DEFAULT_MAX_ENUM_DIM).unwrap();
    let h = invariants::ehrhart_hstar(&p, &en, DEFAULT_MAX_POINTS).unwrap();
    assert_eq!(tri.total_volume(), h.normalized_volume());
    assert!(tri.unimodular_wrt_spanned());

    // hexagon: h*(1) = 6
    let c3 = fixtures::triangle().boundary_map(1).unwrap();
    let deps = minimal_dependencies(&c3, None, 1_000_000).unwrap();
    let gb = groebner::groebner_basis(&c3, &deps, groebner::DEFAULT_MAX_BINOMIALS).unwrap();
    let tri = groebner::triangulation_from_gb(&gb, &c3, groebner::DEFAULT_MAX_CELLS).unwrap();
    let p = homology_polytope(&fixtures::triangle()).unwrap();
    let en = PointEnumerator::build(&p, DEFAULT_MAX_ENUM_DIM).unwrap();
    let h = invariants::ehrhart_hstar(&p, &en, DEFAULT_MAX_POINTS).unwrap();
    assert_eq!(h.normalized_volume(), BigInt::from(6));
    assert_eq!(tri.total_volume(), BigInt::from(6));
    assert!(tri.unimodular_wrt_spanned());

    // P_rp2: 2¹⁰ cells summing to h*(1), each unimodular w.r.t. the lattice
    // spanned by the vertices (squarefree GB)
    let rp2 = fixtures::rp2().boundary_map(2).unwrap();
    let deps = minimal_dependencies(&rp2, None, 1_000_000).unwrap();
    let gb = groebner::groebner_basis(&rp2, &deps, groebner::DEFAULT_MAX_BINOMIALS).unwrap();
    assert!(groebner::gb_diagnostics(&gb).squarefree_leads);
    let tri = groebner::triangulation_from_gb(&gb, &rp2, groebner::DEFAULT_MAX_CELLS).unwrap();
    assert_eq!(tri.cells.len(), 1 << 10);
    assert_eq!(tri.total_volume(), rp2_hstar().normalized_volume());
    assert!(tri.unimodular_wrt_spanned());
    assert!(rp2_hstar().is_palindromic(), "reflexive rp2 has palindromic h*");
    pass("10", t, "cell volumes sum to h*(1) on segment, hexagon (6), P_rp2; unimodular cells");
}

#[test]
fn criterion_11_equivalence_fingerprints() {
    let t = Instant::now();
    let tetra = model(&fixtures::tetra_boundary(), Which::Cohomology);
    assert_eq!(tetra.model, "SEP(G(Δ))");
    assert!(tetra.matches);
    assert!(tetra.subject.hstar.is_some());
    assert_eq!(tetra.subject.hstar, tetra.model_fingerprint.hstar);
    assert_eq!(tetra.subject.facet_count, tetra.model_fingerprint.facet_count);
    // and the facet-ridge graph of the tetrahedron really is K₄
    let g = fixtures::tetra_boundary().facet_ridge_graph().unwrap();
    assert!(equivalence::graphs_isomorphic(&g, &Graph::complete(4)));

    let k4 = model(&Graph::complete(4).as_complex().unwrap(), Which::Cohomology);
    assert_eq!(k4.model, "SEP(C_4)");
    assert!(k4.matches);
    assert!(k4.subject.hstar.is_some());
    assert_eq!(k4.subject.hstar, k4.model_fingerprint.hstar);

    assert!(!equivalence::shellable_sphere_equivalence(&fixtures::sphere_a(), &fixtures::sphere_b())
        .unwrap());
    // out-of-scale h* substituted by the dimension checks (13, 20)
    assert_eq!(cohomology_polytope(&fixtures::sphere_a()).unwrap().dimension(), 13);
    assert_eq!(cohomology_polytope(&fixtures::sphere_b()).unwrap().dimension(), 13);
    assert_eq!(homology_polytope(&fixtures::skeleton_3_6()).unwrap().dimension(), 20);
    pass("11", t, "P^tetra ≡ SEP(K₄), P^K₄ ≡ SEP(C₄) incl. h*; sphere graphs non-isomorphic");
}

fn model(delta: &symtope_core::complex::SimplicialComplex, which: Which) -> equivalence::ModelReport {
    equivalence::model_polytope(delta, which).unwrap()
}

#[test]
fn criterion_12_property_suites() {
    let t = Instant::now();
    let mut rng = SplitMix64::new(0xACCE97);

    // ∂∘∂ = 0 on ≥ 100 random complexes
    let mut cases = 0;
    while cases < 100 {
        let n_facets = 1 + rng.below(6) as usize;
        let facets: Vec<Vec<i64>> = (0..n_facets)
            .map(|_| {
                let size = 1 + rng.below(4) as usize;
                let mut f: Vec<i64> = (0..size).map(|_| 1 + rng.below(7) as i64).collect();
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        let Ok(c) = build_complex(&facets) else { continue };
        cases += 1;
        for j in 1..c.dim().max(1) {
            if j < c.dim() {
                let dj = c.boundary_map(j).unwrap();
                let dn = c.boundary_map(j + 1).unwrap();
                assert!(dj.mul(&dn).is_zero());
            }
        }
    }

    // SNF roundtrip on ≥ 100 random matrices
    for _ in 0..100 {
        let n = 1 + rng.below(5) as usize;
        let m = 1 + rng.below(5) as usize;
        let rows: Vec<Vec<i64>> =
            (0..n).map(|_| (0..m).map(|_| rng.below(9) as i64 - 4).collect()).collect();
        let a = IntegerMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s.mul(&snf.d_matrix()).mul(&snf.t), a);
        assert_eq!(snf.s.det().abs(), BigInt::one());
        assert_eq!(snf.t.det().abs(), BigInt::one());
    }

    // ∀b-criterion reduction vs exhaustive enumeration, s ≤ 16, ≥ 100 cases
    for _ in 0..100 {
        let s = 1 + rng.below(16) as usize;
        let v: Vec<BigRational> = (0..s)
            .map(|_| {
                BigRational::new(
                    BigInt::from(rng.below(9) as i64 - 4),
                    BigInt::from(1 + rng.below(3) as i64),
                )
            })
            .collect();
        let fast = invariants::signed_sums_all_integral(&v);
        let slow = invariants::signed_sums_all_integral_exhaustive(&v);
        assert_eq!(fast, slow);
    }

    // vanishing top homology for pseudomanifolds with boundary
    let mut strips = Vec::new();
    for len in 2..=6 {
        let facets: Vec<Vec<i64>> =
            (0..len).map(|i| vec![i as i64 + 1, i as i64 + 2, i as i64 + 3]).collect();
        strips.push(build_complex(&facets).unwrap());
    }
    let mut boundary_cases = 0;
    for c in [fixtures::moebius_strip(), fixtures::two_triangles()].into_iter().chain(strips) {
        let profile = c.classify();
        assert!(profile.pseudomanifold && !profile.closed);
        assert!(c.homology(c.dim()).unwrap().is_trivial());
        boundary_cases += 1;
    }
    assert!(boundary_cases >= 7);

    // affine-hull orthogonality on every corpus fixture of dimension ≥ 1
    for (_, c) in fixtures::corpus() {
        if c.dim() == 0 || !c.is_pure() {
            continue;
        }
        let d = c.boundary_map(c.dim()).unwrap();
        let ph = homology_polytope(&c).unwrap();
        for cocycle in d.transpose().kernel_basis() {
            let l = ph.affine_hull_basis();
            for j in 0..l.n_cols {
                let dot: BigInt = (0..l.n_rows).map(|i| &l[(i, j)] * &cocycle[i]).sum();
                assert!(dot.is_zero());
            }
        }
        let pc = cohomology_polytope(&c).unwrap();
        for cycle in d.kernel_basis() {
            let l = pc.affine_hull_basis();
            for j in 0..l.n_cols {
                let dot: BigInt = (0..l.n_rows).map(|i| &l[(i, j)] * &cycle[i]).sum();
                assert!(dot.is_zero());
            }
        }
    }

    // solve_integral_system agrees with the hull-facet integrality on the
    // tetrahedron (dual-route check, see also criterion 7)
    let p = homology_polytope(&fixtures::tetra_boundary()).unwrap();
    for facet in p.facets().unwrap() {
        let mut b = vec![BigInt::zero(); p.a.n_cols];
        for &s in &facet.incident {
            b[s.unsigned_abs() as usize - 1] = if s > 0 { BigInt::one() } else { -BigInt::one() };
        }
        assert_eq!(p.polar_vertex(facet).integral, solve_integral_system(&p.a, &b).is_some());
    }
    pass("12", t, "∂∘∂, SNF roundtrip, ∀b-reduction, bounded H_d, orthogonality (≥100 cases each)");
}
