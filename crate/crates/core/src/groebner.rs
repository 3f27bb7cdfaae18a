//! The toric Gröbner basis of a saturated centrally symmetric matrix under
//! the origin-first degrevlex order, with squarefreeness diagnostics, the
//! regular-unimodular-triangulation obstruction, and the triangulation read
//! off the initial ideal.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::circuits::MinimalDependencySet;
use crate::error::Error;
use crate::matrix::IntegerMatrix;
use crate::util::SplitMix64;

/// Variable indices: 0 is z (the origin); column i contributes x_{Fi+} at
/// 2i+1 and x_{Fi−} at 2i+2. The index order is the term order: the
/// origin variable is smallest, then the signed column variables in pairs.
pub type VarId = usize;

pub fn var_z() -> VarId {
    0
}
pub fn var_plus(col: usize) -> VarId {
    2 * col + 1
}
pub fn var_minus(col: usize) -> VarId {
    2 * col + 2
}

/// Human-readable variable name: `z`, `x+<i>`, `x-<i>` (columns 1-based).
pub fn var_name(v: VarId) -> String {
    if v == 0 {
        "z".to_string()
    } else if v % 2 == 1 {
        format!("x+{}", v / 2 + 1)
    } else {
        format!("x-{}", v / 2)
    }
}

/// Monomial as a sparse exponent vector, sorted by variable index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { exps: Vec::new() }
    }

    pub fn from_pairs(mut pairs: Vec<(VarId, u32)>) -> Monomial {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_unstable();
        let mut out: Vec<(VarId, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            if let Some(last) = out.last_mut() {
                if last.0 == v {
                    last.1 += e;
                    continue;
                }
            }
            out.push((v, e));
        }
        Monomial { exps: out }
    }

    pub fn exponents(&self) -> &[(VarId, u32)] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn exponent_of(&self, v: VarId) -> u32 {
        self.exps.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut pairs = self.exps.clone();
        pairs.extend_from_slice(&other.exps);
        Monomial::from_pairs(pairs)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|&(v, e)| other.exponent_of(v) >= e)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let pairs = self
            .exps
            .iter()
            .map(|&(v, e)| (v, e - other.exponent_of(v)))
            .collect();
        Monomial::from_pairs(pairs)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e <= 1)
    }

    /// Squarefree part: the set of variables that occur.
    pub fn support(&self) -> Vec<VarId> {
        self.exps.iter().map(|&(v, _)| v).collect()
    }

    pub fn format(&self) -> String {
        if self.exps.is_empty() {
            return "1".to_string();
        }
        self.exps
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    var_name(v)
                } else {
                    format!("{}^{}", var_name(v), e)
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Degrevlex induced by z ≺ x_{F1+} ≺ x_{F1−} ≺ …, comparing at the
/// smallest differing variable: the larger exponent there loses.
pub fn cmp_degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let (da, db) = (a.degree(), b.degree());
    if da != db {
        return da.cmp(&db);
    }
    // scan both sparse exponent lists for the minimal differing variable
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.exps.get(i), b.exps.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                Ordering::Less => {
                    // a has exponent ea > 0 at va, b has 0 there → a smaller...
                    // larger exponent at the minimal differing index is SMALLER
                    let _ = ea;
                    return Ordering::Less;
                }
                Ordering::Greater => {
                    let _ = eb;
                    return Ordering::Greater;
                }
                Ordering::Equal => {
                    if ea != eb {
                        // bigger exponent at this (minimal differing) index → smaller
                        return eb.cmp(&ea);
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some(_), None) => return Ordering::Less,
            (None, Some(_)) => return Ordering::Greater,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BinomialType {
    OneA,
    OneB,
    Two,
    Three,
    Four,
}

impl BinomialType {
    pub fn label(self) -> &'static str {
        match self {
            BinomialType::OneA => "1a",
            BinomialType::OneB => "1b",
            BinomialType::Two => "2",
            BinomialType::Three => "3",
            BinomialType::Four => "4",
        }
    }
}

/// lead − trail with lead ≻ trail in the origin-first degrevlex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub lead: Monomial,
    pub trail: Monomial,
    pub btype: BinomialType,
}

pub struct GroebnerBasis {
    pub binomials: Vec<Binomial>,
    pub n_cols: usize,
}

pub const DEFAULT_MAX_BINOMIALS: u64 = 1_000_000;

/// Extends A by one representative per antipodal pair of non-vertex lattice
/// points of P_A. Boundary-map polytopes come back unchanged.
pub fn saturate(a: &IntegerMatrix, max_points: u64) -> Result<IntegerMatrix, Error> {
    let p = crate::polytope::CSPolytope::from_matrix(a)?;
    let en = crate::enumerate::PointEnumerator::build(&p, crate::enumerate::DEFAULT_MAX_ENUM_DIM)?;
    let pts = en.points(1, max_points)?;
    let mut cols: Vec<Vec<BigInt>> = (0..p.a.n_cols).map(|j| p.a.col(j)).collect();
    for t in &pts {
        if t.iter().all(|&x| x == 0) {
            continue;
        }
        let tq: Vec<BigInt> = t.iter().map(|&x| BigInt::from(x)).collect();
        let l = p.affine_hull_basis();
        let ambient: Vec<BigInt> = (0..l.n_rows)
            .map(|i| (0..l.n_cols).map(|j| &l[(i, j)] * &tq[j]).sum())
            .collect();
        let neg: Vec<BigInt> = ambient.iter().map(|x| -x.clone()).collect();
        if !cols.iter().any(|c| c == &ambient || c == &neg) {
            cols.push(ambient);
        }
    }
    let mut out = IntegerMatrix::zero(p.a.n_rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..p.a.n_rows {
            out[(i, j)] = c[i].clone();
        }
    }
    Ok(out)
}

/// Gröbner basis of the toric ideal of a saturated centrally symmetric
/// configuration, assembled from a complete set of minimal linear
/// dependencies: three submultiset families per dependency plus the
/// antipodal-product relations.
pub fn groebner_basis(
    a_sat: &IntegerMatrix,
    deps: &MinimalDependencySet,
    max_binomials: u64,
) -> Result<GroebnerBasis, Error> {
    if !deps.complete {
        return Err(Error::Precondition(
            "Gröbner construction needs a complete minimal-dependency set".into(),
        ));
    }
    let n = a_sat.n_cols;
    let mut out: Vec<Binomial> = Vec::new();

    for dep in &deps.dependencies {
        let a = &dep.vector;
        let support: Vec<usize> = dep.support();
        if support.is_empty() {
            continue;
        }
        let min_idx = support[0];
        let a_min_positive = a[min_idx].is_positive();
        let size: u64 = dep.multiset_size();
        let mults: Vec<(usize, u32)> = support
            .iter()
            .map(|&i| (i, u32::try_from(a[i].abs()).expect("guarded entry")))
            .collect();

        if size.is_multiple_of(2) {
            let k = (size / 2) as u32;
            // type (1): k-element submultisets, with the min-column condition
            for m in submultisets(&mults, k, max_binomials)? {
                let min_count = m
                    .iter()
                    .find(|&&(i, _)| i == min_idx)
                    .map_or(0, |&(_, c)| c);
                let full_min = mults.iter().find(|&&(i, _)| i == min_idx).unwrap().1;
                let ok = if a_min_positive {
                    min_count == 0
                } else {
                    min_count < full_min
                };
                if !ok {
                    continue;
                }
                out.push(make_binomial(
                    a,
                    &m,
                    &mults,
                    0,
                    if a_min_positive { BinomialType::OneA } else { BinomialType::OneB },
                ));
                check_budget(out.len(), max_binomials)?;
            }
            // type (3): (k+1)-element submultisets containing +F_min twice
            if a_min_positive {
                for m in submultisets(&mults, k + 1, max_binomials)? {
                    let min_count = m
                        .iter()
                        .find(|&&(i, _)| i == min_idx)
                        .map_or(0, |&(_, c)| c);
                    if min_count >= 2 {
                        out.push(make_binomial(a, &m, &mults, 2, BinomialType::Three));
                        check_budget(out.len(), max_binomials)?;
                    }
                }
            }
        } else {
            let k = (size / 2) as u32;
            // type (2): (k+1)-element submultisets
            for m in submultisets(&mults, k + 1, max_binomials)? {
                out.push(make_binomial(a, &m, &mults, 1, BinomialType::Two));
                check_budget(out.len(), max_binomials)?;
            }
        }
    }

    // type (4): antipodal products
    for col in 0..n {
        let lead = Monomial::from_pairs(vec![(var_plus(col), 1), (var_minus(col), 1)]);
        let trail = Monomial::from_pairs(vec![(var_z(), 2)]);
        out.push(Binomial { lead, trail, btype: BinomialType::Four });
    }

    // orientation sanity: the constructed lead must dominate
    for b in &out {
        debug_assert_eq!(cmp_degrevlex(&b.lead, &b.trail), Ordering::Greater);
    }
    out.sort_by(|x, y| (&x.lead, &x.trail).cmp(&(&y.lead, &y.trail)));
    out.dedup_by(|x, y| x.lead == y.lead && x.trail == y.trail);
    Ok(GroebnerBasis { binomials: out, n_cols: n })
}

fn check_budget(len: usize, max: u64) -> Result<(), Error> {
    if len as u64 > max {
        Err(Error::guard("max-binomials", format!("> {max} binomials")))
    } else {
        Ok(())
    }
}

/// All submultisets of the given multiplicities with total size `k`,
/// as (index, count) lists.
fn submultisets(
    mults: &[(usize, u32)],
    k: u32,
    budget: u64,
) -> Result<Vec<Vec<(usize, u32)>>, Error> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(
        mults: &[(usize, u32)],
        pos: usize,
        remaining: u32,
        acc: &mut Vec<(usize, u32)>,
        out: &mut Vec<Vec<(usize, u32)>>,
        budget: u64,
    ) -> Result<(), Error> {
        if remaining == 0 {
            out.push(acc.clone());
            if out.len() as u64 > budget {
                return Err(Error::guard("max-binomials", "submultiset budget exceeded"));
            }
            return Ok(());
        }
        if pos == mults.len() {
            return Ok(());
        }
        let tail: u32 = mults[pos..].iter().map(|&(_, c)| c).sum();
        if tail < remaining {
            return Ok(());
        }
        let (idx, cap) = mults[pos];
        for take in 0..=cap.min(remaining) {
            if take > 0 {
                acc.push((idx, take));
            }
            rec(mults, pos + 1, remaining - take, acc, out, budget)?;
            if take > 0 {
                acc.pop();
            }
        }
        Ok(())
    }
    rec(mults, 0, k, &mut acc, &mut out, budget)?;
    Ok(out)
}

/// Assemble ∏_{F∈M} x_F − z^zexp · ∏_{F∈M_a∖M} x_{F̄}.
fn make_binomial(
    a: &[BigInt],
    chosen: &[(usize, u32)],
    full: &[(usize, u32)],
    z_exp: u32,
    btype: BinomialType,
) -> Binomial {
    let var_of = |col: usize, positive: bool| if positive { var_plus(col) } else { var_minus(col) };
    let chosen_map: BTreeMap<usize, u32> = chosen.iter().copied().collect();
    let mut lead_pairs = Vec::new();
    let mut trail_pairs = Vec::new();
    if z_exp > 0 {
        trail_pairs.push((var_z(), z_exp));
    }
    for &(col, cap) in full {
        let sign_positive = a[col].is_positive();
        let taken = chosen_map.get(&col).copied().unwrap_or(0);
        if taken > 0 {
            lead_pairs.push((var_of(col, sign_positive), taken));
        }
        let rest = cap - taken;
        if rest > 0 {
            // complement elements appear barred: opposite sign
            trail_pairs.push((var_of(col, !sign_positive), rest));
        }
    }
    Binomial {
        lead: Monomial::from_pairs(lead_pairs),
        trail: Monomial::from_pairs(trail_pairs),
        btype,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbDiagnostics {
    pub squarefree_leads: bool,
    /// Binomial type labels contributing non-squarefree leads.
    pub nonsquarefree_types: Vec<&'static str>,
    pub counts_by_type: BTreeMap<&'static str, usize>,
}

pub fn gb_diagnostics(gb: &GroebnerBasis) -> GbDiagnostics {
    let mut nonsq = Vec::new();
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    for b in &gb.binomials {
        *counts.entry(b.btype.label()).or_default() += 1;
        if !b.lead.is_squarefree() && !nonsq.contains(&b.btype.label()) {
            nonsq.push(b.btype.label());
        }
    }
    nonsq.sort_unstable();
    GbDiagnostics { squarefree_leads: nonsq.is_empty(), nonsquarefree_types: nonsq, counts_by_type: counts }
}

/// Obstruction to regular unimodular triangulations for a corank-1
/// matrix: after sign normalization, the unique minimal dependency has an
/// even coefficient sum and an entry exceeding 1.
pub fn rut_obstruction(a: &IntegerMatrix) -> Result<bool, Error> {
    let kernel = crate::snf::corank_one_kernel(a)
        .ok_or_else(|| Error::Precondition("obstruction test needs corank exactly 1".into()))?;
    let sum: BigInt = kernel.iter().map(|x| x.abs()).sum();
    let has_big = kernel.iter().any(|x| x.abs() > BigInt::one());
    Ok((&sum % BigInt::from(2)).is_zero() && has_big)
}

/// A lattice point of the saturated configuration: the origin or a signed
/// column (1-based, sign = orientation).
pub type TriPoint = i64;

#[derive(Clone, Debug)]
pub struct Triangulation {
    /// Each maximal cell as its point set: 0 is the origin, ±j a column.
    pub cells: Vec<Vec<TriPoint>>,
    /// Lattice-normalized volume of each cell (w.r.t. aff(P) ∩ Z^m).
    pub cell_volumes: Vec<BigInt>,
    /// Index of the vertex-spanned lattice inside the saturated lattice.
    pub lattice_determinant: BigInt,
}

impl Triangulation {
    pub fn total_volume(&self) -> BigInt {
        self.cell_volumes.iter().sum()
    }

    /// Every cell unimodular with respect to the point-spanned lattice.
    pub fn unimodular_wrt_spanned(&self) -> bool {
        self.cell_volumes.iter().all(|v| v == &self.lattice_determinant)
    }
}

pub const DEFAULT_MAX_CELLS: u64 = 2_000_000;

/// The regular triangulation read off the radical of the initial ideal:
/// maximal point sets whose squarefree product avoids every lead support.
pub fn triangulation_from_gb(
    gb: &GroebnerBasis,
    a_sat: &IntegerMatrix,
    max_cells: u64,
) -> Result<Triangulation, Error> {
    let n = gb.n_cols;
    if 3u64.checked_pow(n as u32).is_none_or(|states| states > max_cells.saturating_mul(64)) {
        return Err(Error::guard("max-cells", format!("3^{n} sign states exceed the budget")));
    }
    // no lead may involve z: the origin joins every cell
    for b in &gb.binomials {
        if b.lead.exponent_of(var_z()) > 0 {
            return Err(Error::Invalid("unexpected z in a leading monomial".into()));
        }
    }
    let forbidden: Vec<Vec<VarId>> = {
        let mut f: Vec<Vec<VarId>> = gb.binomials.iter().map(|b| b.lead.support()).collect();
        f.sort();
        f.dedup();
        f
    };
    // lattice data of the saturated configuration: its columns span the
    // point lattice, whose index in aff(P) ∩ Z^m is the divisor product
    let snf = crate::snf::smith_normal_form(a_sat);
    let r = snf.rank();
    let lattice_determinant: BigInt = snf.divisors().iter().product();
    let dt = snf.d_matrix().mul(&snf.t);
    let c = dt.submatrix(&(0..r).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());

    let mut cells: Vec<Vec<TriPoint>> = Vec::new();
    let mut state: Vec<i8> = vec![0; n];
    enumerate_cells(&forbidden, &mut state, 0, n, &mut cells, max_cells)?;
    let mut volumes = Vec::with_capacity(cells.len());
    for cell in &cells {
        let signed: Vec<TriPoint> = cell.iter().copied().filter(|&x| x != 0).collect();
        if signed.len() != r {
            return Err(Error::Invalid(format!(
                "cell has {} generators, expected {} (order or GB bug)",
                signed.len(),
                r
            )));
        }
        let mut m = IntegerMatrix::zero(r, r);
        for (j, &s) in signed.iter().enumerate() {
            let col = s.unsigned_abs() as usize - 1;
            for i in 0..r {
                m[(i, j)] = if s > 0 { c[(i, col)].clone() } else { -c[(i, col)].clone() };
            }
        }
        let det = m.det().abs();
        if det.is_zero() {
            return Err(Error::Invalid("degenerate cell (volume zero)".into()));
        }
        volumes.push(det);
    }
    Ok(Triangulation { cells, cell_volumes: volumes, lattice_determinant })
}

fn enumerate_cells(
    forbidden: &[Vec<VarId>],
    state: &mut Vec<i8>,
    pos: usize,
    n: usize,
    out: &mut Vec<Vec<TriPoint>>,
    max_cells: u64,
) -> Result<(), Error> {
    if pos == n {
        let chosen: Vec<VarId> = state
            .iter()
            .enumerate()
            .filter(|&(_, &s)| s != 0)
            .map(|(i, &s)| if s > 0 { var_plus(i) } else { var_minus(i) })
            .collect();
        if violates(&chosen, forbidden) {
            return Ok(());
        }
        // maximality: adding any further variable must hit a forbidden set
        for i in 0..n {
            if state[i] != 0 {
                continue;
            }
            for v in [var_plus(i), var_minus(i)] {
                let mut ext = chosen.clone();
                ext.push(v);
                ext.sort_unstable();
                if !violates(&ext, forbidden) {
                    return Ok(()); // extensible, not maximal
                }
            }
        }
        let mut cell: Vec<TriPoint> = vec![0];
        for (i, &s) in state.iter().enumerate() {
            if s != 0 {
                cell.push((i as i64 + 1) * s as i64);
            }
        }
        out.push(cell);
        if out.len() as u64 > max_cells {
            return Err(Error::guard("max-cells", "cell budget exceeded"));
        }
        return Ok(());
    }
    for s in [1i8, -1, 0] {
        state[pos] = s;
        // prune early: check forbidden sets fully contained in decided vars
        let chosen: Vec<VarId> = state[..=pos]
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t != 0)
            .map(|(i, &t)| if t > 0 { var_plus(i) } else { var_minus(i) })
            .collect();
        if !violates(&chosen, forbidden) {
            enumerate_cells(forbidden, state, pos + 1, n, out, max_cells)?;
        }
    }
    state[pos] = 0;
    Ok(())
}

fn violates(chosen: &[VarId], forbidden: &[Vec<VarId>]) -> bool {
    forbidden
        .iter()
        .any(|f| f.iter().all(|v| chosen.binary_search(v).is_ok()))
}

/// Reduce the binomial difference m1 − m2 by the basis; true iff it reaches
/// zero. Leading-term division with ties broken by basis order.
pub fn reduces_to_zero(gb: &GroebnerBasis, m1: &Monomial, m2: &Monomial) -> bool {
    let mut a = m1.clone();
    let mut b = m2.clone();
    loop {
        match cmp_degrevlex(&a, &b) {
            Ordering::Equal => return true,
            Ordering::Less => std::mem::swap(&mut a, &mut b),
            Ordering::Greater => {}
        }
        let Some(g) = gb.binomials.iter().find(|g| g.lead.divides(&a)) else {
            return false;
        };
        a = a.div(&g.lead).mul(&g.trail);
    }
}

/// Random ideal member (m, m'): start from a random monomial and apply
/// random binomial rewrites in both directions.
pub fn random_member(gb: &GroebnerBasis, rng: &mut SplitMix64, rewrites: usize) -> (Monomial, Monomial) {
    let n = gb.n_cols;
    let mut pairs = Vec::new();
    let vars = 2 * n + 1;
    let parts = 1 + rng.below(5) as usize;
    for _ in 0..parts {
        let v = rng.below(vars as u64) as usize;
        let e = 1 + rng.below(2) as u32;
        pairs.push((v, e));
    }
    let start = Monomial::from_pairs(pairs);
    let mut m = start.clone();
    for _ in 0..rewrites {
        if gb.binomials.is_empty() {
            break;
        }
        let g = &gb.binomials[rng.below(gb.binomials.len() as u64) as usize];
        let forward = rng.below(2) == 0;
        let (from, to) = if forward { (&g.lead, &g.trail) } else { (&g.trail, &g.lead) };
        if from.divides(&m) {
            m = m.div(from).mul(to);
        }
    }
    (start, m)
}

/// π-evaluation of a monomial: (Σ exponent·point, total degree); binomials
/// of the toric ideal evaluate equally on both sides.
pub fn evaluate(a_sat: &IntegerMatrix, m: &Monomial) -> (Vec<BigInt>, u64) {
    let mut point = vec![BigInt::zero(); a_sat.n_rows];
    for &(v, e) in m.exponents() {
        if v == var_z() {
            continue;
        }
        let col = (v - 1) / 2;
        let sign = if v % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        for i in 0..a_sat.n_rows {
            point[i] += &sign * &a_sat[(i, col)] * BigInt::from(e);
        }
    }
    (point, m.degree())
}
