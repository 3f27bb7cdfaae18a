//! Exact lattice point counting and streaming for dilates kP, by recursive
//! bound propagation against the facet systems of successive coordinate
//! projections. Everything runs in lattice coordinates with i64 arithmetic,
//! bounds validated up front.
//!
//! Counting exploits central symmetry (only the half-space with positive
//! leading coordinate is walked) and can split the outermost range across
//! threads; results are exact sums either way.

use num_bigint::BigInt;

use crate::error::Error;
use crate::hull::hull_facets;
use crate::polytope::CSPolytope;

pub const DEFAULT_MAX_ENUM_DIM: usize = 11;
pub const DEFAULT_MAX_POINTS: u64 = 400_000_000;

#[derive(Clone, Debug)]
struct Level {
    /// Rows with nonzero coefficient on this level's last coordinate:
    /// (row index, that coefficient).
    binding: Vec<(usize, i64)>,
    /// Full coefficient rows (length = level index + 1) and base rhs.
    coefs: Vec<Vec<i64>>,
    rhs: Vec<i64>,
}

/// Prebuilt projection pyramid for a polytope; reusable across dilations.
pub struct PointEnumerator {
    dim: usize,
    levels: Vec<Level>,
    coef_budget: i64,
    pub threads: usize,
}

impl PointEnumerator {
    /// Inequality count per projection level (diagnostics).
    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.coefs.len()).collect()
    }

    pub fn build(p: &CSPolytope, max_dim: usize) -> Result<PointEnumerator, Error> {
        let r = p.dimension();
        if r > max_dim {
            return Err(Error::guard("max-enum-dim", format!("dimension {r} > {max_dim}")));
        }
        let c = p.lattice_coords();
        let mut levels = Vec::with_capacity(r);
        for j in 1..=r {
            let mut proj: Vec<Vec<BigInt>> = Vec::new();
            for col in 0..c.n_cols {
                let v: Vec<BigInt> = (0..j).map(|i| c[(i, col)].clone()).collect();
                if v.iter().all(|x| x == &BigInt::ZERO) {
                    continue;
                }
                let neg: Vec<BigInt> = v.iter().map(|x| -x.clone()).collect();
                if !proj.iter().any(|w| w == &v || w == &neg) {
                    proj.push(v);
                }
            }
            let facets = hull_facets(&proj, max_dim, 4 * crate::hull::DEFAULT_MAX_HULL_VERTS)?;
            let mut coefs = Vec::with_capacity(facets.len());
            let mut rhs = Vec::with_capacity(facets.len());
            let mut binding = Vec::new();
            for f in facets {
                let row: Vec<i64> = f
                    .normal
                    .iter()
                    .map(|x| i64::try_from(x).map_err(|_| Error::guard("max-points", "facet coefficient overflow")))
                    .collect::<Result<_, _>>()?;
                let q = i64::try_from(&f.offset)
                    .map_err(|_| Error::guard("max-points", "facet offset overflow"))?;
                if row[j - 1] != 0 {
                    binding.push((coefs.len(), row[j - 1]));
                }
                coefs.push(row);
                rhs.push(q);
            }
            levels.push(Level { binding, coefs, rhs });
        }
        let mut coord_max = vec![0i64; r];
        for col in 0..c.n_cols {
            for i in 0..r {
                let v = i64::try_from(&c[(i, col)])
                    .map_err(|_| Error::guard("max-points", "lattice coordinate overflow"))?;
                coord_max[i] = coord_max[i].max(v.abs());
            }
        }
        let mut budget: i64 = 0;
        for lv in &levels {
            for (row, q) in lv.coefs.iter().zip(&lv.rhs) {
                let mut s: i64 = q.abs();
                for (i, &cf) in row.iter().enumerate() {
                    s = s.saturating_add(cf.abs().saturating_mul(coord_max[i]));
                }
                budget = budget.max(s);
            }
        }
        Ok(PointEnumerator { dim: r, levels, coef_budget: budget, threads: default_threads() })
    }

    fn check_dilation(&self, k: u32) -> Result<(), Error> {
        if self.coef_budget.saturating_mul(k as i64 + 1) > i64::MAX / 4 {
            return Err(Error::guard("max-points", "dilation would overflow i64 arithmetic"));
        }
        Ok(())
    }

    /// |kP ∩ (aff-lattice)|, exactly.
    pub fn count(&self, k: u32, max_points: u64) -> Result<u64, Error> {
        self.check_dilation(k)?;
        if k == 0 {
            return Ok(1);
        }
        // positive range of the leading coordinate
        let (lo, hi) = {
            let w = Walker::new(self, k);
            w.interval(0)
        };
        debug_assert_eq!(lo, -hi, "centrally symmetric range");
        if self.dim == 1 {
            return Ok((2 * hi + 1) as u64);
        }

        // c_1 = 0 slice, recursively symmetric
        let mut zero_walker = Walker::new(self, k);
        zero_walker.prefix[0] = 0;
        let mut total = zero_walker.count_symmetric(1, max_points)?;

        // c_1 ∈ [1, hi], doubled; optionally split across threads
        if hi >= 1 {
            let threads = self.threads.max(1).min(hi as usize);
            if threads <= 1 {
                let mut w = Walker::new(self, k);
                w.enter(0, 1, hi);
                let mut sub = 0u64;
                for v in 1..=hi {
                    w.prefix[0] = v;
                    sub = sub
                        .checked_add(w.count_plain(1, max_points)?)
                        .ok_or_else(|| Error::guard("max-points", "count overflow"))?;
                    w.step(0);
                }
                w.leave(0, hi + 1);
                total += 2 * sub;
            } else {
                let chunk = (hi as usize).div_ceil(threads);
                let results: Vec<Result<u64, Error>> = std::thread::scope(|scope| {
                    let mut handles = Vec::new();
                    for t in 0..threads {
                        let lo_t = 1 + (t * chunk) as i64;
                        let hi_t = ((t + 1) * chunk).min(hi as usize) as i64;
                        if lo_t > hi_t {
                            continue;
                        }
                        handles.push(scope.spawn(move || {
                            let mut w = Walker::new(self, k);
                            w.enter(0, lo_t, hi_t);
                            let mut sub = 0u64;
                            for v in lo_t..=hi_t {
                                w.prefix[0] = v;
                                sub = sub
                                    .checked_add(w.count_plain(1, max_points)?)
                                    .ok_or_else(|| Error::guard("max-points", "count overflow"))?;
                                w.step(0);
                            }
                            Ok(sub)
                        }));
                    }
                    handles.into_iter().map(|h| h.join().expect("enumeration thread panicked")).collect()
                });
                for r in results {
                    total += 2 * r?;
                }
            }
        }
        Ok(total)
    }

    /// Materialized points of kP ∩ lattice (small dilations only).
    pub fn points(&self, k: u32, max_points: u64) -> Result<Vec<Vec<i64>>, Error> {
        self.check_dilation(k)?;
        if k == 0 {
            return Ok(vec![vec![0; self.dim]]);
        }
        let mut w = Walker::new(self, k);
        let mut out = Vec::new();
        w.collect(0, max_points, &mut out)?;
        Ok(out)
    }
}

fn default_threads() -> usize {
    if let Ok(s) = std::env::var("SYMTOPE_THREADS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            return n.clamp(1, 64);
        }
    }
    std::thread::available_parallelism().map(|n| n.get().min(8)).unwrap_or(1)
}

struct Walker<'a> {
    en: &'a PointEnumerator,
    /// residuals[L][f] = k·rhs − Σ_{fixed coords} coef·c for level L rows
    residuals: Vec<Vec<i64>>,
    prefix: Vec<i64>,
    visited: u64,
}

impl<'a> Walker<'a> {
    fn new(en: &'a PointEnumerator, k: u32) -> Self {
        let residuals = en
            .levels
            .iter()
            .map(|lv| lv.rhs.iter().map(|q| q * k as i64).collect())
            .collect();
        Walker { en, residuals, prefix: vec![0; en.dim], visited: 0 }
    }

    /// Interval of the coordinate at `depth` given residuals; empty → (1,0).
    fn interval(&self, depth: usize) -> (i64, i64) {
        let lv = &self.en.levels[depth];
        let res = &self.residuals[depth];
        let (mut lo, mut hi) = (i64::MIN / 4, i64::MAX / 4);
        for &(row, c) in &lv.binding {
            let r = res[row];
            if c > 0 {
                hi = hi.min(r.div_euclid(c));
            } else {
                lo = lo.max(-r.div_euclid(-c));
            }
            if lo > hi {
                return (1, 0);
            }
        }
        (lo, hi)
    }

    /// Charge deeper residual tables for coordinate `depth` starting at `lo`.
    fn enter(&mut self, depth: usize, lo: i64, _hi: i64) {
        for j in depth + 1..self.en.dim {
            let lv = &self.en.levels[j];
            let res = &mut self.residuals[j];
            for (f, row) in lv.coefs.iter().enumerate() {
                res[f] -= row[depth] * lo;
            }
        }
    }

    /// Advance coordinate `depth` by one (residuals shift by the coefficient).
    fn step(&mut self, depth: usize) {
        for j in depth + 1..self.en.dim {
            let lv = &self.en.levels[j];
            let res = &mut self.residuals[j];
            for (f, row) in lv.coefs.iter().enumerate() {
                res[f] -= row[depth];
            }
        }
    }

    /// Undo `enter` after the loop ran through values lo..end (exclusive).
    fn leave(&mut self, depth: usize, end: i64) {
        for j in depth + 1..self.en.dim {
            let lv = &self.en.levels[j];
            let res = &mut self.residuals[j];
            for (f, row) in lv.coefs.iter().enumerate() {
                res[f] += row[depth] * end;
            }
        }
    }

    /// Count the subtree at `depth` with the current residuals (no symmetry).
    fn count_plain(&mut self, depth: usize, max_points: u64) -> Result<u64, Error> {
        self.visited += 1;
        if self.visited > max_points {
            return Err(Error::guard("max-points", "node budget exceeded"));
        }
        let (lo, hi) = self.interval(depth);
        if lo > hi {
            return Ok(0);
        }
        if depth + 1 == self.en.dim {
            return Ok((hi - lo + 1) as u64);
        }
        let mut total = 0u64;
        self.enter(depth, lo, hi);
        for v in lo..=hi {
            self.prefix[depth] = v;
            total = total
                .checked_add(self.count_plain(depth + 1, max_points)?)
                .ok_or_else(|| Error::guard("max-points", "count overflow"))?;
            self.step(depth);
        }
        self.leave(depth, hi + 1);
        Ok(total)
    }

    /// Count the subtree where all coordinates < depth are zero, using
    /// central symmetry: count = 1 (all-zero tail) + 2·(positive branches).
    fn count_symmetric(&mut self, depth: usize, max_points: u64) -> Result<u64, Error> {
        self.visited += 1;
        if self.visited > max_points {
            return Err(Error::guard("max-points", "node budget exceeded"));
        }
        let (lo, hi) = self.interval(depth);
        if lo > hi {
            return Ok(0);
        }
        debug_assert_eq!(lo, -hi);
        if depth + 1 == self.en.dim {
            return Ok((2 * hi + 1) as u64);
        }
        // v = 0 branch: recurse symmetric
        let mut total;
        {
            self.prefix[depth] = 0;
            total = self.count_symmetric(depth + 1, max_points)?;
        }
        if hi >= 1 {
            self.enter(depth, 1, hi);
            let mut sub = 0u64;
            for v in 1..=hi {
                self.prefix[depth] = v;
                sub = sub
                    .checked_add(self.count_plain(depth + 1, max_points)?)
                    .ok_or_else(|| Error::guard("max-points", "count overflow"))?;
                self.step(depth);
            }
            self.leave(depth, hi + 1);
            total += 2 * sub;
        }
        Ok(total)
    }

    fn collect(&mut self, depth: usize, max_points: u64, out: &mut Vec<Vec<i64>>) -> Result<(), Error> {
        self.visited += 1;
        if self.visited > max_points || out.len() as u64 > max_points {
            return Err(Error::guard("max-points", "point budget exceeded"));
        }
        let (lo, hi) = self.interval(depth);
        if lo > hi {
            return Ok(());
        }
        let last = depth + 1 == self.en.dim;
        self.enter(depth, lo, hi);
        for v in lo..=hi {
            self.prefix[depth] = v;
            if last {
                out.push(self.prefix.clone());
            } else {
                self.collect(depth + 1, max_points, out)?;
            }
            self.step(depth);
        }
        self.leave(depth, hi + 1);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::IntegerMatrix;
    use crate::polytope::{homology_polytope, CSPolytope};

    fn single_threaded(p: &CSPolytope) -> PointEnumerator {
        let mut en = PointEnumerator::build(p, DEFAULT_MAX_ENUM_DIM).unwrap();
        en.threads = 1;
        en
    }

    #[test]
    fn segment_counts() {
        let p = CSPolytope::from_matrix(&IntegerMatrix::from_rows(&[vec![1]])).unwrap();
        let en = single_threaded(&p);
        for k in 0..6u32 {
            assert_eq!(en.count(k, 1_000_000).unwrap(), 2 * k as u64 + 1);
        }
    }

    #[test]
    fn hexagon_counts_match_quadratic() {
        // SEP of C₃: E(k) = 3k² + 3k + 1
        let p = homology_polytope(&fixtures::triangle()).unwrap();
        let en = single_threaded(&p);
        for k in 0..8u64 {
            assert_eq!(en.count(k as u32, 10_000_000).unwrap(), 3 * k * k + 3 * k + 1);
        }
    }

    #[test]
    fn unit_crosspolytope_3d_series() {
        let p = CSPolytope::from_matrix(&IntegerMatrix::identity(3)).unwrap();
        let en = single_threaded(&p);
        for (k, want) in [(0u32, 1u64), (1, 7), (2, 25), (3, 63), (4, 129)] {
            assert_eq!(en.count(k, 1_000_000).unwrap(), want);
        }
    }

    #[test]
    fn vertex_plus_origin_at_k1() {
        for complex in [fixtures::rp2(), fixtures::bjorner()] {
            let p = homology_polytope(&complex).unwrap();
            let en = single_threaded(&p);
            assert_eq!(en.count(1, 1_000_000).unwrap() as usize, p.vertex_count() + 1);
        }
        let pc = crate::polytope::cohomology_polytope(&fixtures::tetra_boundary()).unwrap();
        let en = single_threaded(&pc);
        assert_eq!(en.count(1, 1_000_000).unwrap() as usize, pc.vertex_count() + 1);
    }

    #[test]
    fn threaded_count_matches_single() {
        let p = homology_polytope(&fixtures::bjorner()).unwrap();
        let mut en = PointEnumerator::build(&p, DEFAULT_MAX_ENUM_DIM).unwrap();
        en.threads = 1;
        let single = en.count(3, 10_000_000).unwrap();
        en.threads = 4;
        let multi = en.count(3, 10_000_000).unwrap();
        assert_eq!(single, multi);
        assert_eq!(single, 2047);
    }

    #[test]
    fn points_materialize_and_match_count() {
        let p = homology_polytope(&fixtures::triangle()).unwrap();
        let en = single_threaded(&p);
        for k in 0..4u32 {
            let pts = en.points(k, 1_000_000).unwrap();
            assert_eq!(pts.len() as u64, en.count(k, 1_000_000).unwrap());
            let mut sorted = pts.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), pts.len(), "duplicate points");
            for pt in &pts {
                let neg: Vec<i64> = pt.iter().map(|x| -x).collect();
                assert!(pts.contains(&neg));
            }
        }
    }

    #[test]
    fn count_matches_points_on_skewed_fixture() {
        let p = homology_polytope(&fixtures::rp2()).unwrap();
        let en = single_threaded(&p);
        for k in 0..3u32 {
            assert_eq!(
                en.count(k, 10_000_000).unwrap(),
                en.points(k, 10_000_000).unwrap().len() as u64
            );
        }
    }

    #[test]
    fn guard_on_budget() {
        let p = homology_polytope(&fixtures::triangle()).unwrap();
        let en = single_threaded(&p);
        assert!(en.count(50, 10).is_err());
    }

    #[test]
    fn dimension_guard() {
        let p = homology_polytope(&fixtures::skeleton_3_6()).unwrap();
        assert!(PointEnumerator::build(&p, DEFAULT_MAX_ENUM_DIM).is_err());
    }
}
