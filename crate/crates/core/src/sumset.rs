//! k-fold sumsets of the lattice points of a polytope, for toric Hilbert
//! functions. Points are packed into u128 keys (12 bits per coordinate,
//! lex-order preserving) so each dilation step is a k-way merge of shifted
//! sorted streams.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::Error;

pub const DEFAULT_MAX_SUMSET: u64 = 40_000_000;

const FIELD_BITS: u32 = 12;
const BIAS: i64 = 1 << (FIELD_BITS - 1);

#[derive(Clone, Debug)]
pub struct Packer {
    dim: usize,
}

impl Packer {
    pub fn new(dim: usize) -> Result<Packer, Error> {
        if dim == 0 || dim * FIELD_BITS as usize > 120 {
            return Err(Error::guard("max-sumset-dim", format!("dimension {dim} unsupported")));
        }
        Ok(Packer { dim })
    }

    pub fn pack(&self, p: &[i64]) -> Result<u128, Error> {
        debug_assert_eq!(p.len(), self.dim);
        let mut key: u128 = 0;
        for &x in p {
            let f = x + BIAS;
            if !(0..(1 << FIELD_BITS)).contains(&f) {
                return Err(Error::guard("max-sumset-coord", format!("coordinate {x} out of range")));
            }
            key = (key << FIELD_BITS) | f as u128;
        }
        Ok(key)
    }

    pub fn unpack(&self, key: u128) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        let mut k = key;
        for i in (0..self.dim).rev() {
            out[i] = (k & ((1 << FIELD_BITS) - 1)) as i64 - BIAS;
            k >>= FIELD_BITS;
        }
        out
    }

    /// Additive delta so that pack(x + s) = pack(x) + delta(s), valid while
    /// every coordinate stays within the field range.
    fn delta(&self, s: &[i64]) -> i128 {
        let mut d: i128 = 0;
        for &x in s {
            d = (d << FIELD_BITS) + x as i128;
        }
        d
    }
}

/// The sorted k-fold sumset of a fixed generator set, advanced one dilation
/// at a time.
pub struct SumsetSeries {
    packer: Packer,
    generators: Vec<Vec<i64>>,
    current: Vec<u128>,
    k: u32,
    max_stored: u64,
}

impl SumsetSeries {
    /// Starts at k = 1 with the given lattice points (the origin included).
    pub fn new(points: &[Vec<i64>], max_stored: u64) -> Result<SumsetSeries, Error> {
        if points.is_empty() {
            return Err(Error::Invalid("empty generator set".into()));
        }
        let packer = Packer::new(points[0].len())?;
        let mut current: Vec<u128> = points.iter().map(|p| packer.pack(p)).collect::<Result<_, _>>()?;
        current.sort_unstable();
        current.dedup();
        Ok(SumsetSeries {
            packer,
            generators: points.to_vec(),
            current,
            k: 1,
            max_stored,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn count(&self) -> u64 {
        self.current.len() as u64
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        match self.packer.pack(point) {
            Ok(key) => self.current.binary_search(&key).is_ok(),
            Err(_) => false,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.current.iter().map(|&k| self.packer.unpack(k))
    }

    /// Advance to the (k+1)-fold sumset by merging one shifted stream per
    /// generator.
    pub fn advance(&mut self) -> Result<(), Error> {
        // validate the coordinate range for the next dilation before packing
        let shifts: Vec<i128> = self.generators.iter().map(|g| self.packer.delta(g)).collect();
        let n = shifts.len();
        let mut heap: BinaryHeap<Reverse<(u128, usize)>> = BinaryHeap::with_capacity(n);
        for (s, &d) in shifts.iter().enumerate() {
            if let Some(&first) = self.current.first() {
                heap.push(Reverse((apply_delta(first, d), s)));
            }
        }
        let mut pos = vec![1usize; n];
        let mut out: Vec<u128> = Vec::with_capacity(self.current.len() + self.current.len() / 2);
        let mut last: Option<u128> = None;
        while let Some(Reverse((val, s))) = heap.pop() {
            if last != Some(val) {
                out.push(val);
                last = Some(val);
                if out.len() as u64 > self.max_stored {
                    return Err(Error::guard("max-sumset", "stored sumset exceeds budget"));
                }
            }
            if pos[s] < self.current.len() {
                heap.push(Reverse((apply_delta(self.current[pos[s]], shifts[s]), s)));
                pos[s] += 1;
            }
        }
        // range sanity: unpack extremes and re-pack
        for &key in [out.first(), out.last()].into_iter().flatten() {
            let pt = self.packer.unpack(key);
            if self.packer.pack(&pt)? != key {
                return Err(Error::guard("max-sumset-coord", "coordinate overflowed its field"));
            }
        }
        self.current = out;
        self.k += 1;
        Ok(())
    }
}

fn apply_delta(key: u128, delta: i128) -> u128 {
    (key as i128 + delta) as u128
}

/// HF(0..=k_max) for `K[P]`: sizes of the k-fold sumsets of `points`.
pub fn hilbert_function_series(
    points: &[Vec<i64>],
    k_max: u32,
    max_stored: u64,
) -> Result<Vec<u64>, Error> {
    let mut out = vec![1u64];
    if k_max == 0 {
        return Ok(out);
    }
    let mut series = SumsetSeries::new(points, max_stored)?;
    out.push(series.count());
    while series.k() < k_max {
        series.advance()?;
        out.push(series.count());
    }
    Ok(out)
}
