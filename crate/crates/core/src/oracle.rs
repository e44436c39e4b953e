//! Independent routes to the facet set, used to cross-check [`find_facets`].
//!
//! * [`brute_force_facets`] replaces the coplanarity graph with exhaustive
//!   subset enumeration.
//! * [`dual_cone_facets`] ignores virtual units entirely and enumerates the
//!   extreme rays of the cone of valid normals by double description.
//!
//! [`find_facets`]: crate::facets::find_facets

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dataset::{negative_ideal, Dataset};
use crate::error::{Error, Result};
use crate::facets::{generate_virtuals, FacetReport, Search, SearchConfig};
use crate::linalg::{dot_int, dot_mixed, primitive, primitive_integer, rank};
use crate::models::{classify, Classification};
use crate::Rational;

/// Default cap on the number of subsets the brute-force route may visit.
pub const DEFAULT_SUBSET_CAP: u128 = 2_000_000;

/// Largest `m + s` accepted by [`dual_cone_facets`].
pub const DUAL_CONE_MAX_DIM: usize = 8;

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}

/// Same pipeline as `find_facets`, but every subset of the pool of size
/// `m + s - 1` is a candidate.
pub fn brute_force_facets(d: &Dataset, cfg: &SearchConfig, cap: u128) -> Result<FacetReport> {
    let classification = classify(d)?;
    let pool = generate_virtuals(d, &classification, cfg);
    pool.check_boundary()?;
    let size = d.m() + d.s() - 1;
    let count = binomial(pool.len(), size);
    if count > cap {
        return Err(Error::ScaleGuard(format!(
            "brute force needs C({}, {size}) = {count} subsets, cap is {cap}",
            pool.len()
        )));
    }
    let pool_len = pool.len();
    let mut search = Search::new(d, pool)?;
    let mut subset: Vec<usize> = (0..size).collect();
    if size <= pool_len {
        loop {
            search.visit(&subset);
            if !next_combination(&mut subset, pool_len) {
                break;
            }
        }
    }
    search.finish(classification)
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// Canonical normals of every facet of the technology, computed as the
/// extreme rays of `{P : P_i <= 0 on inputs, P_r >= 0 on outputs,
/// P·z_j <= 0 for j in E}`.
///
/// A ray is kept when its tight generators (efficient units on the
/// hyperplane plus the disposal directions with zero coefficient) span
/// dimension `m + s - 1`, include at least one unit, and `P·w < 0` for the
/// negative ideal `w`.
pub fn dual_cone_facets(d: &Dataset, classification: &Classification) -> Result<Vec<Vec<BigInt>>> {
    let dim = d.m() + d.s();
    if dim > DUAL_CONE_MAX_DIM {
        return Err(Error::ScaleGuard(format!(
            "double description limited to m + s <= {DUAL_CONE_MAX_DIM}, got {dim}"
        )));
    }
    let w = negative_ideal(d)?;
    let units: Vec<Vec<BigInt>> = classification
        .efficient
        .iter()
        .map(|&k| primitive_integer(&d.dmus()[k].point()).expect("positive data"))
        .collect();

    // Generators g with constraint P·g <= 0: disposal directions then units.
    let mut generators: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut g = vec![BigInt::zero(); dim];
            g[i] = if i < d.m() {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            g
        })
        .collect();
    generators.extend(units.iter().cloned());

    let rays = double_description(&generators, d.m(), dim);

    let mut out = BTreeSet::new();
    for ray in rays {
        let tight: Vec<usize> = (0..generators.len())
            .filter(|&g| dot_int(&ray, &generators[g]).is_zero())
            .collect();
        if !tight.iter().any(|&g| g >= dim) {
            continue;
        }
        let vectors: Vec<Vec<Rational>> = tight
            .iter()
            .map(|&g| {
                generators[g]
                    .iter()
                    .cloned()
                    .map(Rational::from_integer)
                    .collect()
            })
            .collect();
        if rank(&vectors) != dim - 1 {
            continue;
        }
        if !dot_mixed(&ray, &w.point).is_negative() {
            continue;
        }
        out.insert(ray);
    }
    Ok(out.into_iter().collect())
}

struct Ray {
    v: Vec<BigInt>,
    /// Indices of constraints processed so far that are tight at `v`.
    zeros: BTreeSet<usize>,
}

/// Extreme rays of `{P : P·g <= 0 for all generators}`. The first `dim`
/// generators must be the coordinate disposal directions, whose cone is
/// simplicial and seeds the iteration.
fn double_description(generators: &[Vec<BigInt>], m: usize, dim: usize) -> Vec<Vec<BigInt>> {
    let mut rays: Vec<Ray> = (0..dim)
        .map(|i| {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = if i < m { -BigInt::one() } else { BigInt::one() };
            Ray {
                v,
                zeros: (0..dim).filter(|&j| j != i).collect(),
            }
        })
        .collect();

    for (c, g) in generators.iter().enumerate().skip(dim) {
        let values: Vec<BigInt> = rays.iter().map(|r| dot_int(&r.v, g)).collect();
        let mut next: Vec<Ray> = Vec::new();
        for (r, val) in rays.iter().zip(&values) {
            if !val.is_positive() {
                let mut zeros = r.zeros.clone();
                if val.is_zero() {
                    zeros.insert(c);
                }
                next.push(Ray {
                    v: r.v.clone(),
                    zeros,
                });
            }
        }
        for (p, vp) in values.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (q, vq) in values.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                if !adjacent(&rays, p, q, dim) {
                    continue;
                }
                let combined: Vec<BigInt> = rays[p]
                    .v
                    .iter()
                    .zip(&rays[q].v)
                    .map(|(a, b)| -vq * a + vp * b)
                    .collect();
                let Some(v) = primitive(combined) else {
                    continue;
                };
                let mut zeros: BTreeSet<usize> = rays[p]
                    .zeros
                    .intersection(&rays[q].zeros)
                    .copied()
                    .collect();
                zeros.insert(c);
                next.push(Ray { v, zeros });
            }
        }
        rays = next;
    }
    rays.into_iter().map(|r| r.v).collect()
}

/// Combinatorial adjacency test for two rays of a pointed cone.
fn adjacent(rays: &[Ray], p: usize, q: usize, dim: usize) -> bool {
    let common: BTreeSet<usize> = rays[p]
        .zeros
        .intersection(&rays[q].zeros)
        .copied()
        .collect();
    if common.len() + 2 < dim {
        return false;
    }
    !rays
        .iter()
        .enumerate()
        .any(|(i, r)| i != p && i != q && common.is_subset(&r.zeros))
}
