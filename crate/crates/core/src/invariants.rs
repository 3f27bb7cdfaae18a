//! Lattice invariants of centrally symmetric polytopes: spanning/IDP,
//! reflexivity (matrix-level and topological routes), the dual-dilation
//! bound, Ehrhart h*-vectors, toric Hilbert functions and IDP witnesses.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::complex::SimplicialComplex;
use crate::enumerate::PointEnumerator;
use crate::error::Error;
use crate::matrix::IntegerMatrix;
use crate::polytope::CSPolytope;
use crate::snf::{smith_normal_form, TorsionVector};
use crate::sumset::SumsetSeries;
use crate::util::binomial;

pub const WITNESS_CAP: usize = 10_000;

/// h*-vector with its derived data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarVector {
    /// h*_0 .. h*_d (ascending powers).
    pub coefficients: Vec<BigInt>,
}

impl HStarVector {
    /// Finite-difference transform of the count series E(0..=d):
    /// h*_i = Σ_{j≤i} (−1)^{i−j} C(d+1, i−j) E(j).
    pub fn from_counts(counts: &[u64]) -> Result<HStarVector, Error> {
        let d = counts.len() - 1;
        let coeffs = numerator_transform(counts, d);
        if coeffs.iter().any(|c| c.is_negative()) {
            return Err(Error::Invalid(format!("negative h* coefficient in {coeffs:?}")));
        }
        Ok(HStarVector { coefficients: coeffs })
    }

    /// Normalized volume h*(1).
    pub fn normalized_volume(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coefficients;
        let d = c.len();
        (0..d).all(|i| c[i] == c[d - 1 - i])
    }

    /// γ with h*(t) = Σ γ_i t^i (1+t)^{d−2i}; defined for palindromic h*.
    pub fn gamma_vector(&self) -> Option<Vec<BigInt>> {
        if !self.is_palindromic() {
            return None;
        }
        let d = self.coefficients.len() - 1;
        let mut rem: Vec<BigInt> = self.coefficients.clone();
        let mut gamma = Vec::new();
        for i in 0..=d / 2 {
            let g = rem[i].clone();
            gamma.push(g.clone());
            // subtract g · t^i (1+t)^{d−2i}
            for (j, b) in binomial_row(d - 2 * i).iter().enumerate() {
                let sub = &g * b;
                rem[i + j] -= sub;
            }
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some(gamma)
        } else {
            None
        }
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    (0..=n).map(|k| BigInt::from(binomial(n as u64, k as u64))).collect()
}

/// Numerator of Σ counts[k] t^k · (1−t)^{d+1}, coefficients 0..=len−1.
fn numerator_transform(counts: &[u64], d: usize) -> Vec<BigInt> {
    let len = counts.len();
    let mut out = vec![BigInt::zero(); len];
    for (i, slot) in out.iter_mut().enumerate() {
        let mut acc = BigInt::zero();
        for j in 0..=i {
            let c = BigInt::from(binomial(d as u64 + 1, (i - j) as u64));
            let term = c * BigInt::from(counts[j]);
            if (i - j) % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        *slot = acc;
    }
    out
}

/// E(k) for k = 0..=k_max.
pub fn ehrhart_counts(
    en: &PointEnumerator,
    k_max: u32,
    max_points: u64,
) -> Result<Vec<u64>, Error> {
    (0..=k_max).map(|k| en.count(k, max_points)).collect()
}

/// The Ehrhart h*-vector, from exact counts of the first dim P dilates.
pub fn ehrhart_hstar(p: &CSPolytope, en: &PointEnumerator, max_points: u64) -> Result<HStarVector, Error> {
    let counts = ehrhart_counts(en, p.dimension() as u32, max_points)?;
    HStarVector::from_counts(&counts)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningReport {
    pub spanning: bool,
    pub alpha_max: BigInt,
    /// Set when non-spanning already rules out IDP.
    pub not_idp: bool,
}

/// P_A is spanning iff the largest elementary divisor is 1.
pub fn spanning_report(a: &IntegerMatrix) -> SpanningReport {
    let snf = smith_normal_form(a);
    let alpha_max = snf.largest_divisor();
    let spanning = alpha_max.is_one();
    SpanningReport { spanning, alpha_max, not_idp: !spanning }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReflexivityRoute {
    AllDivisorsOne,
    TorsionParity,
    HigherTorsion,
    PolarIntegrality,
}

#[derive(Clone, Debug)]
pub enum ReflexivityWitness {
    /// A torsion vector whose signed sums are non-integral.
    Torsion(TorsionVector),
    /// A facet whose polar vertex is not a lattice point.
    PolarVertex(Vec<BigRational>),
}

#[derive(Clone, Debug)]
pub struct ReflexivityVerdict {
    pub reflexive: bool,
    pub route: ReflexivityRoute,
    pub witness: Option<ReflexivityWitness>,
}

/// (vᵀb ∈ Z for all b ∈ {±1}^s) ⟺ (2v_i ∈ Z for all i and Σ v_i ∈ Z).
/// The O(s) side of the reduction; the equivalence is property-tested.
pub fn signed_sums_all_integral(v: &[BigRational]) -> bool {
    let two = BigRational::from(BigInt::from(2));
    if !v.iter().all(|x| (x * &two).is_integer()) {
        return false;
    }
    let sum: BigRational = v.iter().sum();
    sum.is_integer()
}

/// Exhaustive form of the criterion, usable for small s in tests.
pub fn signed_sums_all_integral_exhaustive(v: &[BigRational]) -> bool {
    let s = v.len();
    assert!(s <= 20, "exhaustive check is for small s");
    for mask in 0u32..(1 << s) {
        let mut sum = BigRational::zero();
        for (i, x) in v.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum -= x;
            } else {
                sum += x;
            }
        }
        if !sum.is_integer() {
            return false;
        }
    }
    true
}

/// Reflexivity of P_A. Crosspolytopes take the torsion-vector fast path;
/// everything else goes through polar integrality over the hull facets.
pub fn is_reflexive(p: &CSPolytope) -> Result<ReflexivityVerdict, Error> {
    if p.is_crosspolytope() {
        let divisors = p.elementary_divisors();
        let alpha_max = divisors.last().cloned().unwrap_or_else(BigInt::one);
        if alpha_max.is_one() {
            return Ok(ReflexivityVerdict {
                reflexive: true,
                route: ReflexivityRoute::AllDivisorsOne,
                witness: None,
            });
        }
        if alpha_max > BigInt::from(2) {
            let tv = p
                .torsion_vectors()
                .into_iter()
                .find(|t| t.order > BigInt::from(2))
                .expect("divisor > 2 yields a torsion vector");
            return Ok(ReflexivityVerdict {
                reflexive: false,
                route: ReflexivityRoute::HigherTorsion,
                witness: Some(ReflexivityWitness::Torsion(tv)),
            });
        }
        for tv in p.torsion_vectors() {
            if !signed_sums_all_integral(&tv.v) {
                return Ok(ReflexivityVerdict {
                    reflexive: false,
                    route: ReflexivityRoute::TorsionParity,
                    witness: Some(ReflexivityWitness::Torsion(tv)),
                });
            }
        }
        return Ok(ReflexivityVerdict {
            reflexive: true,
            route: ReflexivityRoute::TorsionParity,
            witness: None,
        });
    }
    for facet in p.facets()? {
        let pv = p.polar_vertex(facet);
        if !pv.integral {
            return Ok(ReflexivityVerdict {
                reflexive: false,
                route: ReflexivityRoute::PolarIntegrality,
                witness: Some(ReflexivityWitness::PolarVertex(pv.w)),
            });
        }
    }
    Ok(ReflexivityVerdict {
        reflexive: true,
        route: ReflexivityRoute::PolarIntegrality,
        witness: None,
    })
}

/// Topological reflexivity of P_Δ (requires trivial top homology):
/// torsion-free ⇒ reflexive; q ≥ 3 torsion ⇒ not; 2-torsion decided by
/// dimension parity / the even-support criterion.
pub fn reflexivity_by_topology(delta: &SimplicialComplex) -> Result<ReflexivityVerdict, Error> {
    let d = delta.dim();
    if d == 0 {
        return Err(Error::Precondition("needs dim ≥ 1".into()));
    }
    let top = delta.homology(d)?;
    if !top.is_trivial() {
        return Err(Error::Precondition(
            "nontrivial top homology: use is_reflexive or the forest route".into(),
        ));
    }
    let hd1 = delta.homology(d - 1)?;
    let boundary = delta.boundary_map(d)?;
    let p = CSPolytope::from_matrix(&boundary)?;
    if !hd1.has_torsion() {
        return Ok(ReflexivityVerdict {
            reflexive: true,
            route: ReflexivityRoute::AllDivisorsOne,
            witness: None,
        });
    }
    if !hd1.only_two_torsion() {
        let tv = p
            .torsion_vectors()
            .into_iter()
            .find(|t| t.order > BigInt::from(2))
            .expect("higher torsion yields a torsion vector");
        return Ok(ReflexivityVerdict {
            reflexive: false,
            route: ReflexivityRoute::HigherTorsion,
            witness: Some(ReflexivityWitness::Torsion(tv)),
        });
    }
    // only 2-torsion: even dimension is always reflexive; odd dimension is
    // decided by the parity of the half-entry support of each generator
    if d.is_multiple_of(2) {
        return Ok(ReflexivityVerdict {
            reflexive: true,
            route: ReflexivityRoute::TorsionParity,
            witness: None,
        });
    }
    for tv in p.torsion_vectors() {
        if !signed_sums_all_integral(&tv.v) {
            return Ok(ReflexivityVerdict {
                reflexive: false,
                route: ReflexivityRoute::TorsionParity,
                witness: Some(ReflexivityWitness::Torsion(tv)),
            });
        }
    }
    Ok(ReflexivityVerdict { reflexive: true, route: ReflexivityRoute::TorsionParity, witness: None })
}

#[derive(Clone, Debug)]
pub struct ForestReport {
    pub forest_count: usize,
    pub verdicts: Vec<bool>,
    /// Some(true) when every spanning forest is reflexive (sufficient test);
    /// None when inconclusive.
    pub conclusion: Option<bool>,
}

pub const DEFAULT_MAX_BASES: u64 = 100_000;

/// Sufficient reflexivity test through the simplicial spanning forests,
/// i.e. the column bases of the top boundary map.
pub fn reflexivity_via_forests(delta: &SimplicialComplex, max_bases: u64) -> Result<ForestReport, Error> {
    let d = delta.dim();
    if d == 0 {
        return Err(Error::Precondition("needs dim ≥ 1".into()));
    }
    let boundary = delta.boundary_map(d)?;
    let rank = boundary.rank();
    let mut bases = Vec::new();
    let mut chosen = Vec::new();
    let mut pivots: Vec<Vec<BigInt>> = Vec::new();
    let mut nodes = 0u64;
    enumerate_bases(&boundary, rank, 0, &mut chosen, &mut pivots, &mut bases, &mut nodes, max_bases)?;
    let mut verdicts = Vec::with_capacity(bases.len());
    for basis in &bases {
        let sub = boundary.select_cols(basis);
        let p = CSPolytope::from_matrix(&sub)?;
        let verdict = is_reflexive(&p)?;
        verdicts.push(verdict.reflexive);
    }
    let all = verdicts.iter().all(|&v| v);
    Ok(ForestReport {
        forest_count: bases.len(),
        conclusion: if all { Some(true) } else { None },
        verdicts,
    })
}

#[allow(clippy::too_many_arguments)]
fn enumerate_bases(
    a: &IntegerMatrix,
    rank: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    pivots: &mut Vec<Vec<BigInt>>,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut u64,
    budget: u64,
) -> Result<(), Error> {
    *nodes += 1;
    if *nodes > budget || out.len() as u64 > budget {
        return Err(Error::guard("max-bases", format!("> {budget} basis search nodes")));
    }
    if chosen.len() == rank {
        out.push(chosen.clone());
        return Ok(());
    }
    if a.n_cols - start < rank - chosen.len() {
        return Ok(());
    }
    for e in start..a.n_cols {
        let mut v = a.col(e);
        crate::circuits::reduce_vector_for_rank(pivots, &mut v);
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        chosen.push(e);
        pivots.push(v);
        enumerate_bases(a, rank, e + 1, chosen, pivots, out, nodes, budget)?;
        pivots.pop();
        chosen.pop();
    }
    Ok(())
}

/// Dual dilation bound: α_max · (every polar vertex) is integral.
pub fn dual_dilation_check(p: &CSPolytope) -> Result<bool, Error> {
    let alpha = p.elementary_divisors().last().cloned().unwrap_or_else(BigInt::one);
    let alpha = BigRational::from(alpha);
    if p.is_crosspolytope() {
        // w(ε) = C^{-T}ε is linear in ε: ε = 1 plus single flips suffice
        let r = p.dimension();
        let ones = vec![1i8; r];
        let w1 = p.crosspolytope_polar_vertex(&ones).w;
        if !w1.iter().all(|x| (x * &alpha).is_integer()) {
            return Ok(false);
        }
        for i in 0..r {
            let mut flipped = ones.clone();
            flipped[i] = -1;
            let wf = p.crosspolytope_polar_vertex(&flipped).w;
            // w(1) − w(flip_i) = 2·C^{-T}e_i; α times it must be integral
            let ok = w1
                .iter()
                .zip(&wf)
                .all(|(a, b)| ((a - b) * &alpha).is_integer());
            if !ok {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for facet in p.facets()? {
        let pv = p.polar_vertex(facet);
        if !pv.w.iter().all(|x| (x * &alpha).is_integer()) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct IDPReport {
    pub hstar: HStarVector,
    pub hilbert_numerator: Vec<BigInt>,
    pub hilbert_degree: usize,
    /// Dilations checked: HF(k) vs E(k) for k ≤ idp_up_to.
    pub idp_up_to: u32,
    pub idp: bool,
    pub smallest_failing_k: Option<u32>,
    pub witness_count: u64,
    /// Ambient coordinates of non-decomposable points at the smallest
    /// failing dilation, capped at WITNESS_CAP.
    pub witnesses: Vec<Vec<BigInt>>,
}

/// Compares the Ehrhart and Hilbert data of P and extracts IDP witnesses.
///
/// `k_max` defaults to 2·dim P when that is feasible under the guards and
/// to dim P otherwise; every corpus-scale verdict falls inside dim P.
pub fn idp_report(
    p: &CSPolytope,
    en: &PointEnumerator,
    k_max: Option<u32>,
    max_points: u64,
    max_sumset: u64,
) -> Result<IDPReport, Error> {
    let dim = p.dimension() as u32;
    let k_max = k_max.unwrap_or(if dim <= 4 { 2 * dim } else { dim }).max(dim);
    let counts = ehrhart_counts(en, k_max, max_points)?;
    let hstar = HStarVector::from_counts(&counts[..=dim as usize])?;

    let base_points = en.points(1, max_points)?;
    let mut series = SumsetSeries::new(&base_points, max_sumset)?;
    let mut hf = vec![1u64, series.count()];
    let mut failing: Option<u32> = None;
    for k in 1..=k_max {
        if k > 1 {
            series.advance()?;
            hf.push(series.count());
        }
        if hf[k as usize] > counts[k as usize] {
            return Err(Error::Invalid(format!(
                "HF({k}) exceeds E({k}) — sumset or enumeration bug"
            )));
        }
        if failing.is_none() && hf[k as usize] != counts[k as usize] {
            failing = Some(k);
        }
    }
    let numerator = numerator_transform(&hf, dim as usize);
    let hilbert_degree = numerator.iter().rposition(|c| !c.is_zero()).unwrap_or(0);

    let (witness_count, witnesses) = match failing {
        None => (0, Vec::new()),
        Some(k) => {
            // rebuild the k-fold sumset and diff against the dilate
            let mut s = SumsetSeries::new(&base_points, max_sumset)?;
            while s.k() < k {
                s.advance()?;
            }
            let dilate = en.points(k, max_points)?;
            let mut w = Vec::new();
            let mut count = 0u64;
            let l = p.affine_hull_basis();
            for pt in &dilate {
                if !s.contains(pt) {
                    count += 1;
                    if w.len() < WITNESS_CAP {
                        let t: Vec<BigInt> = pt.iter().map(|&x| BigInt::from(x)).collect();
                        let ambient = (0..l.n_rows)
                            .map(|i| (0..l.n_cols).map(|j| &l[(i, j)] * &t[j]).sum())
                            .collect();
                        w.push(ambient);
                    }
                }
            }
            (count, w)
        }
    };

    Ok(IDPReport {
        hstar,
        hilbert_numerator: numerator,
        hilbert_degree,
        idp_up_to: k_max,
        idp: failing.is_none(),
        smallest_failing_k: failing,
        witness_count,
        witnesses,
    })
}
