//! Exact integer and rational linear algebra helpers.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Cofactor expansion along a symbolic first row: for `rows` of length
/// `d - 1` with `d` columns, returns the vector `P` with
/// `P_j = (-1)^j det(rows without column j)`, so that `P · z` equals the
/// determinant of `[z; rows]`.
pub fn cofactor_normal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let d = rows.len() + 1;
    (0..d)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let det = determinant(&minor);
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// Rank of a set of rational vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Positive multiple of `v` with integer entries and gcd 1. `None` for the
/// zero vector.
pub fn primitive_integer(v: &[Rational]) -> Option<Vec<BigInt>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    primitive(ints)
}

/// Divides an integer vector by the gcd of its entries. `None` for zero.
pub fn primitive(v: Vec<BigInt>) -> Option<Vec<BigInt>> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    Some(v.into_iter().map(|x| x / &g).collect())
}

pub fn dot_int(p: &[BigInt], z: &[BigInt]) -> BigInt {
    p.iter().zip(z).map(|(a, b)| a * b).sum()
}

/// `P · z` for an integer normal and a rational point.
pub fn dot_mixed(p: &[BigInt], z: &[Rational]) -> Rational {
    p.iter().zip(z).fold(Rational::zero(), |acc, (a, b)| {
        acc + b * Rational::from_integer(a.clone())
    })
}

pub fn sign(v: &Rational) -> i8 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
