//! Exact facet enumeration for centrally symmetric polytopes, by the double
//! description method on the polar cone over the rationals.
//!
//! Input: one lattice point per antipodal vertex pair, in lattice (full-rank)
//! coordinates. Output: the irredundant facet list, each facet scaled to the
//! hyperplane p·x = q with q > 0 and gcd(p, q) = 1.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::matrix::{solve_rational, vec_gcd};
use num_rational::BigRational;

/// One facet inequality p·x ≤ q in lattice coordinates, with the signed
/// 1-based indices of the vertex columns lying on the hyperplane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetData {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    pub incident: Vec<i64>,
}

pub const DEFAULT_MAX_HULL_DIM: usize = 12;
pub const DEFAULT_MAX_HULL_VERTS: usize = 60;

struct Ray {
    coords: Vec<BigInt>, // length r+1, last coordinate is the homogenizer t
    active: u128,        // bit per processed constraint: tight?
}

/// Facets of conv(±cols) where `cols` spans R^r.
///
/// Runs the double description method on {(w,t) : ±c_i·w ≤ t}; the extreme
/// rays are exactly the polar vertices, i.e. the facets of the primal.
pub fn hull_facets(cols: &[Vec<BigInt>], max_dim: usize, max_verts: usize) -> Result<Vec<FacetData>, Error> {
    let r = cols.first().map(Vec::len).unwrap_or(0);
    if r == 0 || cols.is_empty() {
        return Err(Error::Invalid("hull of an empty point set".into()));
    }
    if r > max_dim {
        return Err(Error::guard("max-hull-dim", format!("dimension {r} > {max_dim}")));
    }
    if cols.len() > max_verts {
        return Err(Error::guard("max-hull-verts", format!("{} vertex pairs > {max_verts}", cols.len())));
    }
    let n_constraints = 2 * cols.len();
    if n_constraints > 128 {
        return Err(Error::guard("max-hull-verts", "constraint mask exceeds 128 bits"));
    }

    // constraint normals (±c_i, −1); cone = {x : n·x ≤ 0}
    let mut normals: Vec<Vec<BigInt>> = Vec::with_capacity(n_constraints);
    for c in cols {
        let mut plus: Vec<BigInt> = c.clone();
        plus.push(-BigInt::one());
        let mut minus: Vec<BigInt> = c.iter().map(|x| -x.clone()).collect();
        minus.push(-BigInt::one());
        normals.push(plus);
        normals.push(minus);
    }

    let d = r + 1;
    // greedy choice of d independent normals for the initial simplicial cone
    let mut base_idx: Vec<usize> = Vec::new();
    {
        let mut picked: Vec<Vec<BigInt>> = Vec::new();
        for (i, n) in normals.iter().enumerate() {
            let mut v = n.clone();
            crate::circuits::reduce_vector_for_rank(&picked, &mut v);
            if !v.iter().all(|x| x.is_zero()) {
                picked.push(v);
                base_idx.push(i);
                if base_idx.len() == d {
                    break;
                }
            }
        }
        if base_idx.len() < d {
            return Err(Error::Invalid("input points do not span the stated dimension".into()));
        }
    }

    // initial rays: columns of −N⁻¹ for the chosen normal matrix N
    let q = |x: &BigInt| BigRational::from(x.clone());
    let n_mat: Vec<Vec<BigRational>> =
        base_idx.iter().map(|&i| normals[i].iter().map(q).collect()).collect();
    let mut rays: Vec<Ray> = Vec::new();
    for j in 0..d {
        let mut e = vec![BigRational::zero(); d];
        e[j] = -BigRational::one();
        let sol = solve_rational(&n_mat, &e).expect("independent normals are invertible");
        let den_lcm = sol.iter().fold(BigInt::one(), |acc, x| {
            num_integer::lcm(acc, x.denom().clone())
        });
        let ints: Vec<BigInt> =
            sol.iter().map(|x| x.numer() * (&den_lcm / x.denom())).collect();
        rays.push(Ray { coords: primitive_ray(&ints), active: 0 });
    }

    // initialize activity bits for the base constraints
    let mut processed: Vec<usize> = base_idx.clone();
    for ray in &mut rays {
        for (bit, &ci) in processed.iter().enumerate() {
            if dot(&normals[ci], &ray.coords).is_zero() {
                ray.active |= 1u128 << bit;
            }
        }
    }

    // insert the remaining constraints
    for ci in 0..n_constraints {
        if base_idx.contains(&ci) {
            continue;
        }
        let bit = processed.len();
        let n = &normals[ci];
        let vals: Vec<BigInt> = rays.iter().map(|ray| dot(n, &ray.coords)).collect();
        let has_violation = vals.iter().any(|v| v.is_positive());
        if !has_violation {
            for (ray, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    ray.active |= 1u128 << bit;
                }
            }
            processed.push(ci);
            continue;
        }
        let plus: Vec<usize> =
            (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> =
            (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays: Vec<Ray> = Vec::new();
        for &ip in &plus {
            for &im in &minus {
                let common = rays[ip].active & rays[im].active;
                // necessary condition: adjacency needs d−2 common tight constraints
                if (common.count_ones() as usize) + 2 < d {
                    continue;
                }
                // combinatorial adjacency: no third ray is tight on all of `common`
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(iz, z)| iz == ip || iz == im || (z.active & common) != common);
                if !adjacent {
                    continue;
                }
                // y = s⁺·x⁻ − s⁻·x⁺ (positive combination, tight on n)
                let (sp, sm) = (&vals[ip], &vals[im]);
                let y: Vec<BigInt> = rays[ip]
                    .coords
                    .iter()
                    .zip(&rays[im].coords)
                    .map(|(xp, xm)| sp * xm - sm * xp)
                    .collect();
                new_rays.push(Ray { coords: primitive_ray(&y), active: 0 });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, ray) in rays.into_iter().enumerate() {
            if !vals[i].is_positive() {
                kept.push(ray);
            }
        }
        kept.extend(new_rays);
        processed.push(ci);
        // recompute activity of every ray on all processed constraints
        // (simplest exact bookkeeping; ray counts stay small at desk scale)
        for ray in &mut kept {
            ray.active = 0;
            for (b, &cj) in processed.iter().enumerate() {
                if dot(&normals[cj], &ray.coords).is_zero() {
                    ray.active |= 1u128 << b;
                }
            }
        }
        rays = kept;
    }

    // rays → facets
    let mut facets = Vec::with_capacity(rays.len());
    for ray in &rays {
        let t = ray.coords[r].clone();
        if !t.is_positive() {
            return Err(Error::Invalid("polar cone produced a ray at infinity".into()));
        }
        let p: Vec<BigInt> = ray.coords[..r].to_vec();
        debug_assert!(vec_gcd(&ray.coords).is_one() || p.iter().all(|x| x.is_zero()));
        let mut incident = Vec::new();
        for (i, c) in cols.iter().enumerate() {
            let v = dot_plain(&p, c);
            if v == t {
                incident.push(i as i64 + 1);
            } else if -&v == t {
                incident.push(-(i as i64 + 1));
            }
        }
        facets.push(FacetData { normal: p, offset: t, incident });
    }
    facets.sort_by(|a, b| (&a.normal, &a.offset).cmp(&(&b.normal, &b.offset)));
    facets.dedup();
    Ok(facets)
}

/// gcd-normalize a ray without flipping its sign (cones allow only
/// positive rescaling).
fn primitive_ray(v: &[BigInt]) -> Vec<BigInt> {
    let g = vec_gcd(v);
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

fn dot(n: &[BigInt], x: &[BigInt]) -> BigInt {
    n.iter().zip(x).map(|(a, b)| a * b).sum()
}

fn dot_plain(p: &[BigInt], c: &[BigInt]) -> BigInt {
    p.iter().zip(c).map(|(a, b)| a * b).sum()
}
