//! Simplicial complexes: face tables, boundary maps (absolute and relative),
//! homology with torsion, structural classification and the constructions
//! used downstream (cones, whiskering, stellar subdivision).

use num_bigint::BigInt;
use num_traits::One;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;
use crate::matrix::IntegerMatrix;
use crate::snf::smith_normal_form;

pub type Vertex = u32;
/// A face is a strictly increasing vertex list.
pub type Face = Vec<Vertex>;

/// Facet-list simplicial complex with lex-ordered face tables.
///
/// Face indices within `faces_by_dim[j]` are stable identifiers; every matrix
/// row/column identity in this crate is defined by that lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    facets: Vec<Face>,
    faces_by_dim: Vec<Vec<Face>>,
}

/// Simple undirected graph; no loops, no multi-edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    pub vertices: Vec<Vertex>,
    pub edges: BTreeSet<(Vertex, Vertex)>,
}

/// Structural classification of a complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexProfile {
    pub dim: usize,
    pub f_vector: Vec<usize>,
    pub pure: bool,
    pub pseudomanifold: bool,
    pub closed: bool,
    pub strongly_connected: bool,
    /// Defined only for pseudomanifolds.
    pub orientable: Option<bool>,
    /// Indices (into the ridge table of the pure part) of ridges in exactly one facet.
    pub boundary_ridges: Vec<usize>,
    pub free_ridge_count_per_facet: Vec<usize>,
}

/// Free rank plus invariant-factor torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    /// True when the torsion part is (Z_2)^k, possibly k = 0.
    pub fn only_two_torsion(&self) -> bool {
        self.torsion.iter().all(|q| *q == BigInt::from(2))
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for q in &self.torsion {
            parts.push(format!("Z_{q}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Builds a complex from a facet list. Dominated entries are absorbed.
pub fn build_complex(facet_list: &[Vec<i64>]) -> Result<SimplicialComplex, Error> {
    if facet_list.is_empty() {
        return Err(Error::Invalid("facet list is empty".into()));
    }
    let mut facets: Vec<Face> = Vec::new();
    for f in facet_list {
        if f.is_empty() {
            return Err(Error::Invalid("empty facet".into()));
        }
        let mut face = Vec::with_capacity(f.len());
        for &v in f {
            if v <= 0 || v > u32::MAX as i64 {
                return Err(Error::Invalid(format!("vertex label {v} is not a positive integer")));
            }
            face.push(v as Vertex);
        }
        face.sort_unstable();
        face.dedup();
        facets.push(face);
    }
    // drop dominated facets
    facets.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut maximal: Vec<Face> = Vec::new();
    for f in facets {
        if !maximal.iter().any(|m| is_subset(&f, m)) {
            maximal.push(f);
        }
    }
    maximal.sort();
    let dim = maximal.iter().map(|f| f.len() - 1).max().unwrap();
    let mut faces_by_dim: Vec<BTreeSet<Face>> = vec![BTreeSet::new(); dim + 1];
    for f in &maximal {
        insert_closure(&mut faces_by_dim, f);
    }
    let faces_by_dim: Vec<Vec<Face>> = faces_by_dim.into_iter().map(|s| s.into_iter().collect()).collect();
    let vertices: Vec<Vertex> = faces_by_dim[0].iter().map(|f| f[0]).collect();
    Ok(SimplicialComplex { vertices, facets: maximal, faces_by_dim })
}

fn insert_closure(tables: &mut [BTreeSet<Face>], face: &Face) {
    let j = face.len() - 1;
    if !tables[j].insert(face.clone()) {
        return;
    }
    if j == 0 {
        return;
    }
    for k in 0..face.len() {
        let mut sub = face.clone();
        sub.remove(k);
        insert_closure(tables, &sub);
    }
}

fn is_subset(a: &Face, b: &Face) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

impl SimplicialComplex {
    pub fn dim(&self) -> usize {
        self.faces_by_dim.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Lex-sorted j-faces; indices into this slice are stable identifiers.
    pub fn faces(&self, j: usize) -> &[Face] {
        static EMPTY: Vec<Face> = Vec::new();
        self.faces_by_dim.get(j).unwrap_or(&EMPTY)
    }

    pub fn face_index(&self, face: &Face) -> Option<usize> {
        let j = face.len().checked_sub(1)?;
        self.faces_by_dim.get(j)?.binary_search(face).ok()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(|t| t.len()).collect()
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dim();
        self.facets.iter().all(|f| f.len() == d + 1)
    }

    /// The subcomplex generated by the top-dimensional facets.
    pub fn pure_part(&self) -> SimplicialComplex {
        let d = self.dim();
        let top: Vec<Vec<i64>> = self
            .facets
            .iter()
            .filter(|f| f.len() == d + 1)
            .map(|f| f.iter().map(|&v| v as i64).collect())
            .collect();
        build_complex(&top).expect("pure part of a valid complex")
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.face_index(face).is_some()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.facets.iter().all(|f| other.contains_face(f))
    }

    /// Signed incidence matrix of ∂_j: rows are (j−1)-faces, columns j-faces,
    /// both in lex order. Column signs alternate +,−,+,… down the sorted rows.
    pub fn boundary_map(&self, j: usize) -> Result<IntegerMatrix, Error> {
        self.boundary_map_relative(j, None)
    }

    /// Relative variant: rows and columns of faces belonging to `relative_to`
    /// are deleted.
    pub fn boundary_map_relative(
        &self,
        j: usize,
        relative_to: Option<&SimplicialComplex>,
    ) -> Result<IntegerMatrix, Error> {
        if j > self.dim() {
            return Err(Error::Precondition(format!("j = {j} exceeds dim = {}", self.dim())));
        }
        if let Some(g) = relative_to {
            if !g.is_subcomplex_of(self) {
                return Err(Error::Precondition("relative_to is not a subcomplex".into()));
            }
        }
        let keep = |face: &Face| relative_to.is_none_or(|g| !g.contains_face(face));
        let cols: Vec<&Face> = self.faces(j).iter().filter(|f| keep(f)).collect();
        let rows: Vec<&Face> = if j == 0 {
            Vec::new()
        } else {
            self.faces(j - 1).iter().filter(|f| keep(f)).collect()
        };
        let row_index: BTreeMap<&Face, usize> =
            rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut m = IntegerMatrix::zero(rows.len(), cols.len());
        for (cj, face) in cols.iter().enumerate() {
            for (k, _) in face.iter().enumerate() {
                let mut sub = (*face).clone();
                sub.remove(k);
                if sub.is_empty() {
                    continue;
                }
                if let Some(&ri) = row_index.get(&sub) {
                    m[(ri, cj)] = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                }
            }
        }
        Ok(m)
    }

    /// H_j(Δ; Z) as free rank plus elementary-divisor torsion.
    pub fn homology(&self, j: usize) -> Result<HomologyGroup, Error> {
        if j > self.dim() {
            return Err(Error::Precondition(format!("j = {j} exceeds dim = {}", self.dim())));
        }
        let dj = self.boundary_map(j)?;
        let rank_j = dj.rank();
        let nullity = dj.n_cols - rank_j;
        let (rank_next, torsion) = if j < self.dim() {
            let dnext = self.boundary_map(j + 1)?;
            let snf = smith_normal_form(&dnext);
            let torsion: Vec<BigInt> =
                snf.divisors().into_iter().filter(|a| a > &BigInt::one()).collect();
            (snf.rank(), torsion)
        } else {
            (0, Vec::new())
        };
        Ok(HomologyGroup { free_rank: nullity - rank_next, torsion })
    }

    /// Relative homology H_j(Δ, Γ; Z).
    pub fn homology_relative(&self, j: usize, gamma: &SimplicialComplex) -> Result<HomologyGroup, Error> {
        if j > self.dim() {
            return Err(Error::Precondition(format!("j = {j} exceeds dim = {}", self.dim())));
        }
        let dj = self.boundary_map_relative(j, Some(gamma))?;
        let rank_j = dj.rank();
        let nullity = dj.n_cols - rank_j;
        let (rank_next, torsion) = if j < self.dim() {
            let dnext = self.boundary_map_relative(j + 1, Some(gamma))?;
            let snf = smith_normal_form(&dnext);
            let torsion: Vec<BigInt> =
                snf.divisors().into_iter().filter(|a| a > &BigInt::one()).collect();
            (snf.rank(), torsion)
        } else {
            (0, Vec::new())
        };
        Ok(HomologyGroup { free_rank: nullity - rank_next, torsion })
    }

    /// Ridges (of the pure part) listed with the facets containing them.
    fn ridge_incidences(pure: &SimplicialComplex) -> Vec<Vec<usize>> {
        let d = pure.dim();
        let mut incid = vec![Vec::new(); pure.faces(d.saturating_sub(1)).len()];
        if d == 0 {
            return incid;
        }
        for (fi, facet) in pure.facets.iter().enumerate() {
            for k in 0..facet.len() {
                let mut ridge = facet.clone();
                ridge.remove(k);
                let ri = pure
                    .faces_by_dim[d - 1]
                    .binary_search(&ridge)
                    .expect("ridge of a facet is a face");
                incid[ri].push(fi);
            }
        }
        incid
    }

    /// Boundary subcomplex of a pure complex: generated by its free ridges.
    pub fn boundary_complex(&self) -> Option<SimplicialComplex> {
        let pure = self.pure_part();
        if pure.dim() == 0 {
            return None;
        }
        let incid = Self::ridge_incidences(&pure);
        let free: Vec<Vec<i64>> = incid
            .iter()
            .enumerate()
            .filter(|(_, fs)| fs.len() == 1)
            .map(|(ri, _)| pure.faces(pure.dim() - 1)[ri].iter().map(|&v| v as i64).collect())
            .collect();
        if free.is_empty() {
            None
        } else {
            Some(build_complex(&free).expect("free ridges form a valid complex"))
        }
    }

    /// All structural flags. Fields degrade gracefully on non-pure input:
    /// ridge statistics refer to the top-dimensional pure part.
    pub fn classify(&self) -> ComplexProfile {
        let dim = self.dim();
        let f_vector = self.f_vector();
        let pure = self.is_pure();
        let pure_part = self.pure_part();
        let incid = Self::ridge_incidences(&pure_part);
        let boundary_ridges: Vec<usize> = incid
            .iter()
            .enumerate()
            .filter(|(_, fs)| fs.len() == 1)
            .map(|(ri, _)| ri)
            .collect();
        let mut free_counts = vec![0usize; pure_part.facets.len()];
        for fs in &incid {
            if fs.len() == 1 {
                free_counts[fs[0]] += 1;
            }
        }
        let ridge_bound_ok = incid.iter().all(|fs| fs.len() <= 2);
        let strongly_connected = pure_part.facet_ridge_connected(&incid);
        let pseudomanifold = pure && ridge_bound_ok && strongly_connected && dim >= 1;
        let closed = pseudomanifold && boundary_ridges.is_empty();
        let orientable = if !pseudomanifold {
            None
        } else if closed {
            let h = self.homology(dim).expect("dim in range");
            Some(h.free_rank == 1 && h.torsion.is_empty())
        } else {
            let boundary = self.boundary_complex().expect("pseudomanifold with boundary");
            let h = self.homology_relative(dim, &boundary).expect("dim in range");
            Some(h.free_rank == 1 && h.torsion.is_empty())
        };
        ComplexProfile {
            dim,
            f_vector,
            pure,
            pseudomanifold,
            closed,
            strongly_connected,
            orientable,
            boundary_ridges,
            free_ridge_count_per_facet: free_counts,
        }
    }

    fn facet_ridge_connected(&self, incid: &[Vec<usize>]) -> bool {
        let n = self.facets.len();
        if n == 0 {
            return false;
        }
        let mut adj = vec![Vec::new(); n];
        for fs in incid {
            if fs.len() == 2 {
                adj[fs[0]].push(fs[1]);
                adj[fs[1]].push(fs[0]);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Graph on the facets of a pure complex; edges join facets sharing a ridge.
    /// Facet i (in lex order) becomes graph vertex i+1.
    pub fn facet_ridge_graph(&self) -> Result<Graph, Error> {
        if !self.is_pure() {
            return Err(Error::Precondition("facet-ridge graph needs a pure complex".into()));
        }
        let incid = Self::ridge_incidences(self);
        let mut edges = BTreeSet::new();
        for fs in &incid {
            if fs.len() >= 2 {
                for a in 0..fs.len() {
                    for b in a + 1..fs.len() {
                        edges.insert((fs[a] as Vertex + 1, fs[b] as Vertex + 1));
                    }
                }
            }
        }
        Ok(Graph { vertices: (1..=self.facets.len() as Vertex).collect(), edges })
    }

    /// Subcomplex generated by a subset of facets (all lower faces included).
    pub fn facet_subcomplex(&self, facet_indices: &[usize]) -> Result<SimplicialComplex, Error> {
        let picked: Vec<Vec<i64>> = facet_indices
            .iter()
            .map(|&i| {
                self.facets
                    .get(i)
                    .map(|f| f.iter().map(|&v| v as i64).collect())
                    .ok_or_else(|| Error::Invalid(format!("facet index {i} out of range")))
            })
            .collect::<Result<_, _>>()?;
        build_complex(&picked)
    }

    /// Replaces the facet σ by {σ∖{v} ∪ {x} : v ∈ σ} for a fresh vertex x.
    pub fn stellar_subdivide(&self, facet: &[i64]) -> Result<SimplicialComplex, Error> {
        let mut target: Face = facet
            .iter()
            .map(|&v| {
                if v <= 0 {
                    Err(Error::Invalid("non-positive vertex".into()))
                } else {
                    Ok(v as Vertex)
                }
            })
            .collect::<Result<_, _>>()?;
        target.sort_unstable();
        if !self.facets.contains(&target) {
            return Err(Error::Precondition(format!("{target:?} is not a facet")));
        }
        let fresh = self.vertices.iter().max().unwrap() + 1;
        let mut new_facets: Vec<Vec<i64>> = Vec::new();
        for f in &self.facets {
            if f == &target {
                for k in 0..target.len() {
                    let mut nf: Vec<i64> = target.iter().map(|&v| v as i64).collect();
                    nf.remove(k);
                    nf.push(fresh as i64);
                    new_facets.push(nf);
                }
            } else {
                new_facets.push(f.iter().map(|&v| v as i64).collect());
            }
        }
        build_complex(&new_facets)
    }
}

impl Graph {
    pub fn new(vertices: &[i64], edges: &[(i64, i64)]) -> Result<Graph, Error> {
        let mut vs: Vec<Vertex> = Vec::new();
        for &v in vertices {
            if v <= 0 {
                return Err(Error::Invalid("non-positive vertex label".into()));
            }
            vs.push(v as Vertex);
        }
        vs.sort_unstable();
        vs.dedup();
        let mut es = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Invalid("loop edge".into()));
            }
            if a <= 0 || b <= 0 {
                return Err(Error::Invalid("non-positive vertex label".into()));
            }
            let (a, b) = (a as Vertex, b as Vertex);
            if !vs.contains(&a) || !vs.contains(&b) {
                return Err(Error::Invalid("edge endpoint not in vertex list".into()));
            }
            es.insert((a.min(b), a.max(b)));
        }
        Ok(Graph { vertices: vs, edges: es })
    }

    pub fn cycle(n: usize) -> Graph {
        let vertices: Vec<i64> = (1..=n as i64).collect();
        let edges: Vec<(i64, i64)> =
            (1..=n as i64).map(|i| (i, if i == n as i64 { 1 } else { i + 1 })).collect();
        Graph::new(&vertices, &edges).expect("cycle is a valid graph")
    }

    pub fn complete(n: usize) -> Graph {
        let vertices: Vec<i64> = (1..=n as i64).collect();
        let mut edges = Vec::new();
        for a in 1..=n as i64 {
            for b in a + 1..=n as i64 {
                edges.push((a, b));
            }
        }
        Graph::new(&vertices, &edges).expect("complete graph is valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let vertices: Vec<i64> = (1..=(a + b) as i64).collect();
        let mut edges = Vec::new();
        for x in 1..=a as i64 {
            for y in (a as i64 + 1)..=(a + b) as i64 {
                edges.push((x, y));
            }
        }
        Graph::new(&vertices, &edges).expect("complete bipartite graph is valid")
    }

    /// View a 1-dimensional complex as a graph.
    pub fn from_complex(c: &SimplicialComplex) -> Result<Graph, Error> {
        if c.dim() != 1 {
            return Err(Error::Precondition("graph requires a 1-dimensional complex".into()));
        }
        let vertices: Vec<i64> = c.vertices().iter().map(|&v| v as i64).collect();
        let edges: Vec<(i64, i64)> =
            c.faces(1).iter().map(|e| (e[0] as i64, e[1] as i64)).collect();
        Graph::new(&vertices, &edges)
    }

    pub fn as_complex(&self) -> Result<SimplicialComplex, Error> {
        let mut facets: Vec<Vec<i64>> =
            self.edges.iter().map(|&(a, b)| vec![a as i64, b as i64]).collect();
        for &v in &self.vertices {
            facets.push(vec![v as i64]);
        }
        build_complex(&facets)
    }

    /// Directed incidence matrix ∂_1 (rows: vertices, cols: edges, lex order).
    pub fn incidence_matrix(&self) -> IntegerMatrix {
        let vidx: BTreeMap<Vertex, usize> =
            self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut m = IntegerMatrix::zero(self.vertices.len(), self.edges.len());
        for (j, &(a, b)) in self.edges.iter().enumerate() {
            m[(vidx[&a], j)] = -BigInt::one();
            m[(vidx[&b], j)] = BigInt::one();
        }
        m
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.vertices[0]];
        seen.insert(self.vertices[0]);
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let w = if a == v { b } else if b == v { a } else { continue };
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Wire format: `{"vertices": [...], "edges": [[a,b],...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices,
            "edges": self.edges.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Graph, Error> {
        let vertices: Vec<i64> = serde_json::from_value(v["vertices"].clone())
            .map_err(|e| Error::Serialization(format!("vertices: {e}")))?;
        let edges: Vec<(i64, i64)> = serde_json::from_value(v["edges"].clone())
            .map_err(|e| Error::Serialization(format!("edges: {e}")))?;
        Graph::new(&vertices, &edges)
    }

    /// True when the graph contains a 3-cycle.
    pub fn has_triangle(&self) -> bool {
        for &(a, b) in &self.edges {
            for &c in &self.vertices {
                if c != a && c != b {
                    let e1 = (a.min(c), a.max(c));
                    let e2 = (b.min(c), b.max(c));
                    if self.edges.contains(&e1) && self.edges.contains(&e2) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// 2-complex whose facets are e ∪ {apex} over the edges of G.
pub fn cone_over_graph(g: &Graph, apex: i64) -> Result<SimplicialComplex, Error> {
    if apex <= 0 {
        return Err(Error::Invalid("apex label must be positive".into()));
    }
    if g.vertices.contains(&(apex as Vertex)) {
        return Err(Error::Invalid(format!("apex {apex} collides with a graph vertex")));
    }
    if g.edges.is_empty() {
        return Err(Error::Invalid("cone over an edgeless graph".into()));
    }
    let facets: Vec<Vec<i64>> =
        g.edges.iter().map(|&(a, b)| vec![a as i64, b as i64, apex]).collect();
    build_complex(&facets)
}

/// Adds a pendant leaf next to each vertex of `attach`.
pub fn whisker(g: &Graph, attach: &[i64]) -> Result<Graph, Error> {
    let mut next = *g.vertices.iter().max().unwrap_or(&0) as i64 + 1;
    let mut vertices: Vec<i64> = g.vertices.iter().map(|&v| v as i64).collect();
    let mut edges: Vec<(i64, i64)> =
        g.edges.iter().map(|&(a, b)| (a as i64, b as i64)).collect();
    for &v in attach {
        if v <= 0 || !g.vertices.contains(&(v as Vertex)) {
            return Err(Error::Invalid(format!("whisker target {v} not a vertex")));
        }
        vertices.push(next);
        edges.push((v, next));
        next += 1;
    }
    Graph::new(&vertices, &edges)
}
