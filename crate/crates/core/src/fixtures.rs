//! Built-in corpus of named complexes used by the CLI and the test suites.

use crate::complex::{build_complex, cone_over_graph, Graph, SimplicialComplex};

fn facets(list: &[&[i64]]) -> SimplicialComplex {
    let v: Vec<Vec<i64>> = list.iter().map(|f| f.to_vec()).collect();
    build_complex(&v).expect("fixture facet list is valid")
}

/// The 6-vertex triangulation of the real projective plane.
pub fn rp2() -> SimplicialComplex {
    facets(&[
        &[1, 2, 5],
        &[1, 2, 6],
        &[1, 3, 4],
        &[1, 3, 6],
        &[1, 4, 5],
        &[2, 3, 4],
        &[2, 3, 5],
        &[2, 4, 6],
        &[3, 5, 6],
        &[4, 5, 6],
    ])
}

/// rp2 plus the facet 123 (Björner's complex).
pub fn bjorner() -> SimplicialComplex {
    facets(&[
        &[1, 2, 3],
        &[1, 2, 5],
        &[1, 2, 6],
        &[1, 3, 4],
        &[1, 3, 6],
        &[1, 4, 5],
        &[2, 3, 4],
        &[2, 3, 5],
        &[2, 4, 6],
        &[3, 5, 6],
        &[4, 5, 6],
    ])
}

/// Six-triangle Möbius strip whose ∂₂ is the printed 12×6 matrix.
pub fn moebius_strip() -> SimplicialComplex {
    facets(&[&[1, 2, 4], &[1, 3, 5], &[1, 3, 6], &[1, 4, 6], &[2, 3, 5], &[2, 4, 5]])
}

/// A Moore space of Z_3: a 9-gon disk whose boundary wraps three times
/// around the triangle 123. Certified by f = (9, 27, 19) and H_1 = Z_3.
pub fn moore_z3() -> SimplicialComplex {
    facets(&[
        &[1, 2, 4],
        &[2, 4, 5],
        &[2, 3, 5],
        &[3, 5, 6],
        &[1, 3, 6],
        &[1, 2, 6],
        &[2, 6, 7],
        &[2, 3, 7],
        &[3, 7, 8],
        &[1, 3, 8],
        &[1, 2, 8],
        &[2, 8, 9],
        &[2, 3, 9],
        &[3, 4, 9],
        &[1, 3, 4],
        &[4, 5, 6],
        &[4, 6, 7],
        &[4, 7, 8],
        &[4, 8, 9],
    ])
}

/// Minimal triangulation of the twisted product S² ⋊ S¹ (manifold_3_9_989).
pub fn manifold_3_9_989() -> SimplicialComplex {
    facets(&[
        &[1, 2, 3, 4],
        &[1, 2, 3, 5],
        &[1, 2, 4, 6],
        &[1, 2, 5, 7],
        &[1, 2, 6, 8],
        &[1, 2, 7, 8],
        &[1, 3, 4, 5],
        &[1, 4, 5, 6],
        &[1, 5, 6, 7],
        &[1, 6, 7, 9],
        &[1, 6, 8, 9],
        &[1, 7, 8, 9],
        &[2, 3, 4, 9],
        &[2, 3, 5, 9],
        &[2, 4, 5, 6],
        &[2, 4, 5, 9],
        &[2, 5, 6, 7],
        &[2, 6, 7, 8],
        &[3, 4, 5, 8],
        &[3, 4, 7, 8],
        &[3, 4, 7, 9],
        &[3, 5, 8, 9],
        &[3, 6, 7, 8],
        &[3, 6, 7, 9],
        &[3, 6, 8, 9],
        &[4, 5, 8, 9],
        &[4, 7, 8, 9],
    ])
}

/// Stellar subdivision of the facet 1234 of manifold_3_9_989 (30 facets).
pub fn manifold_3_9_989_stellar() -> SimplicialComplex {
    manifold_3_9_989().stellar_subdivide(&[1, 2, 3, 4]).expect("1234 is a facet")
}

/// First shellable 2-sphere of the equal-h* pair.
pub fn sphere_a() -> SimplicialComplex {
    facets(&[
        &[1, 2, 3],
        &[1, 2, 5],
        &[1, 3, 6],
        &[1, 5, 9],
        &[1, 6, 8],
        &[1, 8, 9],
        &[2, 3, 4],
        &[2, 4, 5],
        &[3, 4, 7],
        &[3, 6, 7],
        &[4, 5, 9],
        &[4, 7, 8],
        &[4, 8, 9],
        &[6, 7, 8],
    ])
}

/// Second shellable 2-sphere of the equal-h* pair.
pub fn sphere_b() -> SimplicialComplex {
    facets(&[
        &[1, 2, 3],
        &[1, 2, 4],
        &[1, 3, 5],
        &[1, 4, 5],
        &[2, 3, 7],
        &[2, 4, 8],
        &[2, 7, 9],
        &[2, 8, 9],
        &[3, 5, 6],
        &[3, 6, 7],
        &[4, 5, 6],
        &[4, 6, 7],
        &[4, 7, 8],
        &[7, 8, 9],
    ])
}

/// 3-skeleton of the 6-simplex: all 4-subsets of {1..7}.
pub fn skeleton_3_6() -> SimplicialComplex {
    let mut list: Vec<Vec<i64>> = Vec::new();
    for a in 1..=7i64 {
        for b in a + 1..=7 {
            for c in b + 1..=7 {
                for d in c + 1..=7 {
                    list.push(vec![a, b, c, d]);
                }
            }
        }
    }
    build_complex(&list).expect("skeleton is valid")
}

pub fn tetra_boundary() -> SimplicialComplex {
    facets(&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
}

/// Boundary of the triangle as a 1-complex (the 3-cycle).
pub fn triangle() -> SimplicialComplex {
    facets(&[&[1, 2], &[1, 3], &[2, 3]])
}

pub fn two_triangles() -> SimplicialComplex {
    facets(&[&[1, 2, 3], &[2, 3, 4]])
}

pub fn cone_k33() -> SimplicialComplex {
    cone_over_graph(&Graph::complete_bipartite(3, 3), 7).expect("cone is valid")
}

pub fn cone_c4() -> SimplicialComplex {
    cone_over_graph(&Graph::cycle(4), 5).expect("cone is valid")
}

/// Every named fixture, in a fixed reporting order.
pub fn corpus() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("rp2", rp2()),
        ("bjorner", bjorner()),
        ("moebius_strip", moebius_strip()),
        ("moore_z3", moore_z3()),
        ("manifold_3_9_989", manifold_3_9_989()),
        ("manifold_3_9_989_stellar", manifold_3_9_989_stellar()),
        ("sphere_a", sphere_a()),
        ("sphere_b", sphere_b()),
        ("skeleton_3_6", skeleton_3_6()),
        ("tetra_boundary", tetra_boundary()),
        ("triangle", triangle()),
        ("two_triangles", two_triangles()),
        ("cone_k33", cone_k33()),
        ("cone_c4", cone_c4()),
    ]
}

pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    corpus().into_iter().find(|(n, _)| *n == name).map(|(_, c)| c)
}
