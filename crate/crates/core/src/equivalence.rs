//! Symmetric edge polytopes of graphs, model polytopes of pseudomanifolds,
//! planarity and planar duals, fingerprint comparison and facet-ridge graph
//! isomorphism.

use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;

use crate::complex::{whisker, Graph, SimplicialComplex, Vertex};
use crate::enumerate::{PointEnumerator, DEFAULT_MAX_ENUM_DIM, DEFAULT_MAX_POINTS};
use crate::error::Error;
use crate::invariants::ehrhart_hstar;
use crate::matrix::IntegerMatrix;
use crate::polytope::{cohomology_polytope, homology_polytope, CSPolytope};

/// P_G = conv[∂₁ | −∂₁], the symmetric edge polytope.
pub fn sep_of_graph(g: &Graph) -> Result<CSPolytope, Error> {
    if g.edges.is_empty() {
        return Err(Error::Invalid("symmetric edge polytope of an edgeless graph".into()));
    }
    CSPolytope::from_matrix(&g.incidence_matrix())
}

/// Orientation signs ε ∈ {±1}^s of an orientable pseudomanifold: the ±1
/// kernel generator of the (relative, when boundary is present) top map.
pub fn orientation_signs(delta: &SimplicialComplex) -> Result<Vec<i8>, Error> {
    let profile = delta.classify();
    if !profile.pseudomanifold || profile.orientable != Some(true) {
        return Err(Error::Precondition("orientation signs need an orientable pseudomanifold".into()));
    }
    let d = delta.dim();
    let map = if profile.closed {
        delta.boundary_map(d)?
    } else {
        let boundary = delta.boundary_complex().expect("pseudomanifold with boundary");
        delta.boundary_map_relative(d, Some(&boundary))?
    };
    let kernel = crate::snf::corank_one_kernel(&map)
        .ok_or_else(|| Error::Invalid("expected a rank-one kernel".into()))?;
    let mut signs = Vec::with_capacity(kernel.len());
    for x in &kernel {
        if x == &BigInt::from(1) {
            signs.push(1i8);
        } else if x == &BigInt::from(-1) {
            signs.push(-1i8);
        } else {
            return Err(Error::Invalid("orientation kernel is not a ±1 vector".into()));
        }
    }
    Ok(signs)
}

/// Every interior-ridge row of ∂·D(ε) has exactly one +1 and one −1.
pub fn orientation_rows_are_incidence_shaped(
    delta: &SimplicialComplex,
    signs: &[i8],
) -> Result<bool, Error> {
    let d = delta.dim();
    let boundary = delta.boundary_map(d)?;
    let ridges = delta.faces(d - 1);
    let incid: Vec<usize> = (0..ridges.len())
        .map(|i| (0..boundary.n_cols).filter(|&j| !boundary[(i, j)].is_zero()).count())
        .collect();
    for i in 0..boundary.n_rows {
        if incid[i] != 2 {
            continue; // boundary ridge
        }
        let mut plus = 0;
        let mut minus = 0;
        for j in 0..boundary.n_cols {
            let v = &boundary[(i, j)] * BigInt::from(signs[j] as i64);
            if v == BigInt::from(1) {
                plus += 1;
            } else if v == BigInt::from(-1) {
                minus += 1;
            }
        }
        if plus != 1 || minus != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Comparable invariants of a polytope; equality is necessary (never claimed
/// sufficient) for unimodular equivalence. Optional fields skip guarded
/// computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    pub dim: usize,
    pub vertex_count: usize,
    pub facet_count: Option<u128>,
    pub normalized_volume: Option<BigInt>,
    pub hstar: Option<Vec<BigInt>>,
}

impl Fingerprint {
    /// Fields present on both sides must agree.
    pub fn matches(&self, other: &Fingerprint) -> bool {
        if self.dim != other.dim || self.vertex_count != other.vertex_count {
            return false;
        }
        if let (Some(a), Some(b)) = (&self.facet_count, &other.facet_count) {
            if a != b {
                return false;
            }
        }
        if let (Some(a), Some(b)) = (&self.normalized_volume, &other.normalized_volume) {
            if a != b {
                return false;
            }
        }
        if let (Some(a), Some(b)) = (&self.hstar, &other.hstar) {
            if a != b {
                return false;
            }
        }
        true
    }
}

/// Collect the fingerprint, skipping whatever the guards reject.
pub fn fingerprint(p: &CSPolytope) -> Fingerprint {
    let facet_count = p.facet_count().ok();
    let hstar = PointEnumerator::build(p, DEFAULT_MAX_ENUM_DIM)
        .and_then(|en| ehrhart_hstar(p, &en, DEFAULT_MAX_POINTS))
        .ok();
    Fingerprint {
        dim: p.dimension(),
        vertex_count: p.vertex_count(),
        facet_count,
        normalized_volume: hstar.as_ref().map(|h| h.normalized_volume()),
        hstar: hstar.map(|h| h.coefficients),
    }
}

#[derive(Clone, Debug)]
pub struct ModelReport {
    pub route: &'static str,
    pub model: String,
    pub subject: Fingerprint,
    pub model_fingerprint: Fingerprint,
    pub matches: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Homology,
    Cohomology,
}

/// Builds the model polytope the structure of the complex predicts and
/// compares fingerprints.
pub fn model_polytope(delta: &SimplicialComplex, which: Which) -> Result<ModelReport, Error> {
    let profile = delta.classify();
    let d = delta.dim();

    // connected graph on n ≥ 3 vertices, cohomology: SEP of the n-cycle
    if d == 1 {
        let g = Graph::from_complex(delta)?;
        match which {
            Which::Cohomology => {
                if !g.is_connected() || g.vertices.len() < 3 {
                    return Err(Error::Precondition(
                        "cohomology model needs a connected graph on ≥ 3 vertices".into(),
                    ));
                }
                let subject = fingerprint(&cohomology_polytope(delta)?);
                let model = sep_of_graph(&Graph::cycle(g.vertices.len()))?;
                let model_fp = fingerprint(&model);
                let matches = subject.matches(&model_fp);
                return Ok(ModelReport {
                    route: "cycle-model-for-graphs",
                    model: format!("SEP(C_{})", g.vertices.len()),
                    subject,
                    model_fingerprint: model_fp,
                    matches,
                });
            }
            Which::Homology => {
                // P_Δ of a graph is its symmetric edge polytope by definition
                let subject = fingerprint(&homology_polytope(delta)?);
                let model = sep_of_graph(&g)?;
                let model_fp = fingerprint(&model);
                let matches = subject.matches(&model_fp);
                return Ok(ModelReport {
                    route: "sep-by-definition",
                    model: "SEP(G)".into(),
                    subject,
                    model_fingerprint: model_fp,
                    matches,
                });
            }
        }
    }

    if profile.pseudomanifold && profile.orientable == Some(true) {
        let s = delta.facets().len();
        if profile.closed {
            match which {
                Which::Homology => {
                    let subject = fingerprint(&homology_polytope(delta)?);
                    let model = sep_of_graph(&Graph::cycle(s))?;
                    let model_fp = fingerprint(&model);
                    let matches = subject.matches(&model_fp);
                    Ok(ModelReport {
                        route: "closed-orientable-homology",
                        model: format!("SEP(C_{s})"),
                        subject,
                        model_fingerprint: model_fp,
                        matches,
                    })
                }
                Which::Cohomology => {
                    let subject = fingerprint(&cohomology_polytope(delta)?);
                    let g = delta.facet_ridge_graph()?;
                    let model = sep_of_graph(&g)?;
                    let model_fp = fingerprint(&model);
                    let matches = subject.matches(&model_fp);
                    Ok(ModelReport {
                        route: "closed-orientable-cohomology",
                        model: "SEP(G(Δ))".into(),
                        subject,
                        model_fingerprint: model_fp,
                        matches,
                    })
                }
            }
        } else {
            match which {
                Which::Homology => {
                    let subject = fingerprint(&homology_polytope(delta)?);
                    let model = CSPolytope::from_matrix(&IntegerMatrix::identity(s))?;
                    let model_fp = fingerprint(&model);
                    let matches = subject.matches(&model_fp);
                    Ok(ModelReport {
                        route: "bounded-orientable-homology",
                        model: format!("{s}-crosspolytope"),
                        subject,
                        model_fingerprint: model_fp,
                        matches,
                    })
                }
                Which::Cohomology => {
                    let subject = fingerprint(&cohomology_polytope(delta)?);
                    // whisker the facet-ridge graph at facets with a free ridge,
                    // then project the SEP back onto the facet coordinates
                    let g = delta.facet_ridge_graph()?;
                    let free = delta.classify().free_ridge_count_per_facet;
                    let attach: Vec<i64> = free
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c > 0)
                        .map(|(i, _)| i as i64 + 1)
                        .collect();
                    let w = whisker(&g, &attach)?;
                    let incidence = w.incidence_matrix();
                    // rows of the original facet vertices come first (labels 1..s)
                    let keep: Vec<usize> = (0..s).collect();
                    let projected = incidence.submatrix(&keep, &(0..incidence.n_cols).collect::<Vec<_>>());
                    let model = CSPolytope::from_matrix(&projected)?;
                    let model_fp = fingerprint(&model);
                    let matches = subject.matches(&model_fp);
                    Ok(ModelReport {
                        route: "bounded-orientable-cohomology",
                        model: "π_V(SEP(w(G,A)))".into(),
                        subject,
                        model_fingerprint: model_fp,
                        matches,
                    })
                }
            }
        }
    } else {
        Err(Error::Precondition("no applicable model route".into()))
    }
}

/// Rotation systems travel as `{"<vertex>": [cyclic neighbor order], ...}`.
pub fn rotation_from_json(v: &serde_json::Value) -> Result<BTreeMap<Vertex, Vec<Vertex>>, Error> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Serialization("rotation system must be an object".into()))?;
    let mut out = BTreeMap::new();
    for (key, order) in obj {
        let vertex: Vertex = key
            .parse()
            .map_err(|_| Error::Serialization(format!("bad vertex key {key}")))?;
        let cyc: Vec<Vertex> = serde_json::from_value(order.clone())
            .map_err(|e| Error::Serialization(format!("rotation at {key}: {e}")))?;
        out.insert(vertex, cyc);
    }
    Ok(out)
}

pub fn rotation_to_json(rot: &BTreeMap<Vertex, Vec<Vertex>>) -> serde_json::Value {
    let mut obj = serde_json::Map::new();
    for (v, cyc) in rot {
        obj.insert(v.to_string(), serde_json::json!(cyc));
    }
    serde_json::Value::Object(obj)
}

pub const DEFAULT_MAX_ROTATIONS: u64 = 10_000_000;

/// Planarity by exhaustive rotation-system search: a connected graph is
/// planar iff some rotation system traces to Euler characteristic 2.
pub fn is_planar(g: &Graph, max_rotations: u64) -> Result<bool, Error> {
    if g.vertices.len() > 12 {
        return Err(Error::guard("max-planarity-vertices", format!("{} vertices", g.vertices.len())));
    }
    // components are independent
    let comps = components(g);
    for comp in comps {
        if !component_planar(&comp, max_rotations)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn components(g: &Graph) -> Vec<Graph> {
    let mut remaining: Vec<Vertex> = g.vertices.clone();
    let mut out = Vec::new();
    while let Some(&start) = remaining.first() {
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in &g.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        remaining.retain(|v| !seen.contains(v));
        let edges: Vec<(i64, i64)> = g
            .edges
            .iter()
            .filter(|&&(a, _)| seen.contains(&a))
            .map(|&(a, b)| (a as i64, b as i64))
            .collect();
        let verts: Vec<i64> = seen.iter().map(|&v| v as i64).collect();
        out.push(Graph::new(&verts, &edges).expect("component of a valid graph"));
    }
    out
}

fn component_planar(g: &Graph, max_rotations: u64) -> Result<bool, Error> {
    let e = g.edges.len();
    let v = g.vertices.len();
    if e < 9 || v < 5 {
        return Ok(true); // too small to contain K5 or K3,3
    }
    if e > 3 * v - 6 {
        return Ok(false); // Euler bound for simple planar graphs
    }
    let mut predicted: u64 = 1;
    for &vx in &g.vertices {
        let d = g.degree(vx).max(1) as u64;
        predicted = predicted.saturating_mul(factorial(d - 1));
        if predicted > max_rotations {
            return Err(Error::guard("max-rotations", format!("> {max_rotations} rotation systems")));
        }
    }
    // neighbor lists
    let neighbors: BTreeMap<Vertex, Vec<Vertex>> = g
        .vertices
        .iter()
        .map(|&vx| {
            let mut ns: Vec<Vertex> = g
                .edges
                .iter()
                .filter_map(|&(a, b)| if a == vx { Some(b) } else if b == vx { Some(a) } else { None })
                .collect();
            ns.sort_unstable();
            (vx, ns)
        })
        .collect();
    let order: Vec<Vertex> = g.vertices.clone();
    let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    Ok(search_rotation(g, &order, 0, &neighbors, &mut rotation))
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

fn search_rotation(
    g: &Graph,
    order: &[Vertex],
    idx: usize,
    neighbors: &BTreeMap<Vertex, Vec<Vertex>>,
    rotation: &mut BTreeMap<Vertex, Vec<Vertex>>,
) -> bool {
    if idx == order.len() {
        return euler_characteristic(g, rotation) == 2;
    }
    let v = order[idx];
    let ns = &neighbors[&v];
    if ns.len() <= 2 {
        rotation.insert(v, ns.clone());
        let found = search_rotation(g, order, idx + 1, neighbors, rotation);
        rotation.remove(&v);
        return found;
    }
    // fix the first neighbor, permute the rest
    let first = ns[0];
    let rest: Vec<Vertex> = ns[1..].to_vec();
    let mut perm = rest.clone();
    permute(&mut perm, 0, &mut |p| {
        let mut cyc = vec![first];
        cyc.extend_from_slice(p);
        rotation.insert(v, cyc);
        let found = search_rotation(g, order, idx + 1, neighbors, rotation);
        rotation.remove(&v);
        found
    })
}

fn permute(items: &mut Vec<Vertex>, k: usize, f: &mut impl FnMut(&[Vertex]) -> bool) -> bool {
    if k == items.len() {
        return f(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permute(items, k + 1, f) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// V − E + F for the embedding given by a rotation system.
fn euler_characteristic(g: &Graph, rotation: &BTreeMap<Vertex, Vec<Vertex>>) -> i64 {
    let faces = trace_faces(g, rotation);
    g.vertices.len() as i64 - g.edges.len() as i64 + faces.len() as i64
}

/// Face orbits of the rotation system, as dart cycles.
fn trace_faces(g: &Graph, rotation: &BTreeMap<Vertex, Vec<Vertex>>) -> Vec<Vec<(Vertex, Vertex)>> {
    let mut darts: Vec<(Vertex, Vertex)> = Vec::new();
    for &(a, b) in &g.edges {
        darts.push((a, b));
        darts.push((b, a));
    }
    let next_dart = |(u, v): (Vertex, Vertex)| -> (Vertex, Vertex) {
        // face permutation: follow (u,v), then turn to the neighbor after u
        // in the rotation at v
        let rot = &rotation[&v];
        let pos = rot.iter().position(|&w| w == u).expect("dart endpoint in rotation");
        let w = rot[(pos + 1) % rot.len()];
        (v, w)
    };
    let mut seen: Vec<(Vertex, Vertex)> = Vec::new();
    let mut faces = Vec::new();
    for &start in &darts {
        if seen.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut cur = start;
        loop {
            face.push(cur);
            seen.push(cur);
            cur = next_dart(cur);
            if cur == start {
                break;
            }
        }
        faces.push(face);
    }
    faces
}

/// Planar dual via face tracing of an explicit rotation system. Errors when
/// the rotation does not describe a planar embedding. Parallel dual edges
/// collapse (the symmetric edge polytope is unaffected); bridge loops are
/// rejected.
pub fn planar_dual(g: &Graph, rotation: &BTreeMap<Vertex, Vec<Vertex>>) -> Result<Graph, Error> {
    for &v in &g.vertices {
        let Some(rot) = rotation.get(&v) else {
            return Err(Error::Invalid(format!("rotation missing vertex {v}")));
        };
        if rot.len() != g.degree(v) {
            return Err(Error::Invalid(format!("rotation at {v} has wrong length")));
        }
    }
    let faces = trace_faces(g, rotation);
    let chi = g.vertices.len() as i64 - g.edges.len() as i64 + faces.len() as i64;
    if chi != 2 {
        return Err(Error::Precondition(format!(
            "rotation system is not planar (Euler characteristic {chi})"
        )));
    }
    // face index per dart
    let mut dart_face: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
    for (fi, face) in faces.iter().enumerate() {
        for &d in face {
            dart_face.insert(d, fi);
        }
    }
    let mut dual_edges: Vec<(i64, i64)> = Vec::new();
    for &(a, b) in &g.edges {
        let f1 = dart_face[&(a, b)];
        let f2 = dart_face[&(b, a)];
        if f1 == f2 {
            return Err(Error::Invalid("bridge edge creates a dual loop".into()));
        }
        dual_edges.push((f1 as i64 + 1, f2 as i64 + 1));
    }
    let verts: Vec<i64> = (1..=faces.len() as i64).collect();
    Graph::new(&verts, &dual_edges)
}

/// Backtracking graph isomorphism with degree invariants.
pub fn graphs_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.vertices.len() != g2.vertices.len() || g1.edges.len() != g2.edges.len() {
        return false;
    }
    let sig = |g: &Graph| {
        let mut degs: Vec<usize> = g.vertices.iter().map(|&v| g.degree(v)).collect();
        degs.sort_unstable();
        degs
    };
    if sig(g1) != sig(g2) {
        return false;
    }
    let v1: Vec<Vertex> = {
        let mut v = g1.vertices.clone();
        v.sort_by_key(|&x| std::cmp::Reverse(g1.degree(x)));
        v
    };
    let mut mapping: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut used: Vec<Vertex> = Vec::new();
    backtrack_iso(g1, g2, &v1, 0, &mut mapping, &mut used)
}

fn backtrack_iso(
    g1: &Graph,
    g2: &Graph,
    order: &[Vertex],
    idx: usize,
    mapping: &mut BTreeMap<Vertex, Vertex>,
    used: &mut Vec<Vertex>,
) -> bool {
    if idx == order.len() {
        return true;
    }
    let v = order[idx];
    for &w in &g2.vertices {
        if used.contains(&w) || g1.degree(v) != g2.degree(w) {
            continue;
        }
        // adjacency consistency with already-mapped vertices
        let ok = mapping.iter().all(|(&a, &b)| {
            let e1 = g1.edges.contains(&(a.min(v), a.max(v)));
            let e2 = g2.edges.contains(&(b.min(w), b.max(w)));
            e1 == e2
        });
        if !ok {
            continue;
        }
        mapping.insert(v, w);
        used.push(w);
        if backtrack_iso(g1, g2, order, idx + 1, mapping, used) {
            return true;
        }
        mapping.remove(&v);
        used.pop();
    }
    false
}

/// For shellable simplicial spheres, the cohomology polytopes are
/// unimodularly equivalent iff the facet-ridge graphs are isomorphic.
/// Shellability is the caller's assertion and is not verified.
pub fn shellable_sphere_equivalence(
    delta1: &SimplicialComplex,
    delta2: &SimplicialComplex,
) -> Result<bool, Error> {
    if delta1.facets().len() > 30 || delta2.facets().len() > 30 {
        return Err(Error::guard("max-facet-graph", "more than 30 facets"));
    }
    let g1 = delta1.facet_ridge_graph()?;
    let g2 = delta2.facet_ridge_graph()?;
    Ok(graphs_isomorphic(&g1, &g2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sep_shapes() {
        let hexagon = sep_of_graph(&Graph::cycle(3)).unwrap();
        assert_eq!(hexagon.dimension(), 2);
        assert_eq!(hexagon.vertex_count(), 6);
        assert_eq!(hexagon.facet_count().unwrap(), 6);

        let k4 = sep_of_graph(&Graph::complete(4)).unwrap();
        assert_eq!(k4.dimension(), 3);
        assert_eq!(k4.vertex_count(), 12);

        let edge = sep_of_graph(&Graph::new(&[1, 2], &[(1, 2)]).unwrap()).unwrap();
        assert_eq!(edge.dimension(), 1);
        assert_eq!(edge.vertex_count(), 2);
    }

    #[test]
    fn orientation_signs_cases() {
        let tetra = fixtures::tetra_boundary();
        let signs = orientation_signs(&tetra).unwrap();
        assert_eq!(signs.len(), 4);
        assert!(orientation_rows_are_incidence_shaped(&tetra, &signs).unwrap());

        let two = fixtures::two_triangles();
        let signs = orientation_signs(&two).unwrap();
        assert_eq!(signs.len(), 2);
        assert!(orientation_rows_are_incidence_shaped(&two, &signs).unwrap());

        assert!(orientation_signs(&fixtures::rp2()).is_err());
    }

    /// Row-shape invariant on every orientable pseudomanifold fixture.
    #[test]
    fn orientation_shape_invariant() {
        for delta in [fixtures::tetra_boundary(), fixtures::sphere_a(), fixtures::sphere_b()] {
            let signs = orientation_signs(&delta).unwrap();
            assert!(orientation_rows_are_incidence_shaped(&delta, &signs).unwrap());
        }
    }

    #[test]
    fn model_tetra_cohomology_is_sep_k4() {
        let rep = model_polytope(&fixtures::tetra_boundary(), Which::Cohomology).unwrap();
        assert_eq!(rep.route, "closed-orientable-cohomology");
        assert!(rep.matches, "{:?} vs {:?}", rep.subject, rep.model_fingerprint);
        assert_eq!(rep.subject.dim, 3);
        assert_eq!(rep.subject.vertex_count, 12);
        assert!(rep.subject.hstar.is_some() && rep.model_fingerprint.hstar.is_some());
    }

    #[test]
    fn model_k4_cohomology_is_sep_c4() {
        let k4 = Graph::complete(4).as_complex().unwrap();
        let rep = model_polytope(&k4, Which::Cohomology).unwrap();
        assert_eq!(rep.route, "cycle-model-for-graphs");
        assert!(rep.matches);
        assert_eq!(rep.subject.dim, 3);
        assert_eq!(rep.subject.vertex_count, 8);
    }

    #[test]
    fn model_two_triangles_homology_is_crosspolytope() {
        let rep = model_polytope(&fixtures::two_triangles(), Which::Homology).unwrap();
        assert_eq!(rep.route, "bounded-orientable-homology");
        assert_eq!(rep.model, "2-crosspolytope");
        assert!(rep.matches);
    }

    #[test]
    fn model_two_triangles_cohomology_whiskered() {
        let rep = model_polytope(&fixtures::two_triangles(), Which::Cohomology).unwrap();
        assert_eq!(rep.route, "bounded-orientable-cohomology");
        assert!(rep.matches, "{:?} vs {:?}", rep.subject, rep.model_fingerprint);
    }

    /// Model fingerprint regression across the closed orientable fixtures.
    #[test]
    fn closed_orientable_models_match() {
        for delta in [fixtures::tetra_boundary(), fixtures::sphere_a(), fixtures::sphere_b()] {
            let h = model_polytope(&delta, Which::Homology).unwrap();
            assert!(h.matches, "homology model mismatch: {:?} vs {:?}", h.subject, h.model_fingerprint);
            // facet counts must actually be present for the homology side
            assert!(h.subject.facet_count.is_some());
            assert_eq!(h.subject.facet_count, h.model_fingerprint.facet_count);
            let c = model_polytope(&delta, Which::Cohomology).unwrap();
            assert!(c.matches, "cohomology model mismatch: {:?} vs {:?}", c.subject, c.model_fingerprint);
        }
    }

    /// Cycle-model regression on connected graph fixtures.
    #[test]
    fn graph_cohomology_models() {
        for g in [Graph::cycle(3), Graph::cycle(5), Graph::complete(4), wheel(4)] {
            let c = g.as_complex().unwrap();
            let rep = model_polytope(&c, Which::Cohomology).unwrap();
            assert!(rep.matches, "{:?} vs {:?}", rep.subject, rep.model_fingerprint);
            assert_eq!(rep.subject.dim, g.vertices.len() - 1);
        }
    }

    fn wheel(rim: usize) -> Graph {
        // hub = rim+1 joined to the cycle 1..rim
        let mut edges: Vec<(i64, i64)> = Vec::new();
        for i in 1..=rim as i64 {
            edges.push((i, if i == rim as i64 { 1 } else { i + 1 }));
            edges.push((i, rim as i64 + 1));
        }
        Graph::new(&(1..=rim as i64 + 1).collect::<Vec<_>>(), &edges).unwrap()
    }

    #[test]
    fn planarity_cases() {
        assert!(!is_planar(&Graph::complete(5), DEFAULT_MAX_ROTATIONS).unwrap());
        assert!(!is_planar(&Graph::complete_bipartite(3, 3), DEFAULT_MAX_ROTATIONS).unwrap());
        assert!(is_planar(&Graph::complete(4), DEFAULT_MAX_ROTATIONS).unwrap());
        assert!(is_planar(&wheel(4), DEFAULT_MAX_ROTATIONS).unwrap());
        assert!(is_planar(&Graph::cycle(6), DEFAULT_MAX_ROTATIONS).unwrap());
        // the graph of the cone over K3,3 contains K3,3
        let cone = fixtures::cone_k33();
        let h = Graph::from_complex(&crate::complex::build_complex(
            &cone.faces(1).iter().map(|e| vec![e[0] as i64, e[1] as i64]).collect::<Vec<_>>(),
        ).unwrap()).unwrap();
        assert!(!is_planar(&h, DEFAULT_MAX_ROTATIONS).unwrap());
    }

    #[test]
    fn wheel_dual_matches_cone_cohomology() {
        // planar rotation of W4: hub 5 sees the rim in cyclic order
        let w4 = wheel(4);
        let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        rotation.insert(1, vec![2, 5, 4]);
        rotation.insert(2, vec![3, 5, 1]);
        rotation.insert(3, vec![4, 5, 2]);
        rotation.insert(4, vec![1, 5, 3]);
        rotation.insert(5, vec![1, 2, 3, 4]);
        let dual = planar_dual(&w4, &rotation).unwrap();
        assert_eq!(dual.vertices.len(), 5, "W4 is self-dual");
        assert_eq!(dual.edges.len(), 8);
        let sep = sep_of_graph(&dual).unwrap();
        let coh = cohomology_polytope(&fixtures::cone_c4()).unwrap();
        assert!(fingerprint(&sep).matches(&fingerprint(&coh)));
    }

    #[test]
    fn graph_and_rotation_json_roundtrip() {
        let g = wheel(4);
        let back = Graph::from_json(&g.to_json()).unwrap();
        assert_eq!(g, back);
        let mut rot: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        rot.insert(1, vec![2, 5, 4]);
        rot.insert(2, vec![3, 5, 1]);
        let parsed = rotation_from_json(&rotation_to_json(&rot)).unwrap();
        assert_eq!(rot, parsed);
        assert!(rotation_from_json(&serde_json::json!([1, 2])).is_err());
    }

    #[test]
    fn sphere_pair_not_equivalent() {
        let a = fixtures::sphere_a();
        let b = fixtures::sphere_b();
        let ga = a.facet_ridge_graph().unwrap();
        let gb = b.facet_ridge_graph().unwrap();
        assert!(gb.has_triangle());
        assert!(!ga.has_triangle());
        assert!(!shellable_sphere_equivalence(&a, &b).unwrap());
    }

    #[test]
    fn relabeled_complex_is_equivalent() {
        let a = fixtures::tetra_boundary();
        let b = crate::complex::build_complex(&[
            vec![9, 5, 7],
            vec![9, 5, 2],
            vec![9, 7, 2],
            vec![5, 7, 2],
        ])
        .unwrap();
        assert!(shellable_sphere_equivalence(&a, &b).unwrap());
        // size mismatch: tetrahedron vs bipyramid
        let bipyramid = crate::complex::build_complex(&[
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
            vec![1, 2, 5],
            vec![1, 3, 5],
            vec![2, 3, 5],
        ])
        .unwrap();
        assert!(!shellable_sphere_equivalence(&a, &bipyramid).unwrap());
    }
}
