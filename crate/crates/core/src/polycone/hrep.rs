//! Extreme-ray enumeration for pointed cones given by linear inequalities,
//! by brute force over (d-1)-subsets of the defining normals. Desk scale by
//! design; the ambient dimension is capped upstream.

use num_traits::{Signed, Zero};

use crate::ratmath::{dot, linalg, primitive_integer_vector, RatMatrix, Rational};

pub(crate) fn index_combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            if n - i < k - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Extreme rays of the pointed cone {y in R^d : <a_i, y> >= 0 for all i}.
///
/// A nonzero ray is extreme iff its tight normals span a (d-1)-dimensional
/// space, so every extreme ray arises as the kernel of some rank-(d-1)
/// subset of the normals. Returned rays are primitive integer vectors,
/// deduplicated and sorted.
pub fn extreme_rays(normals: &[Vec<Rational>], d: usize) -> Vec<Vec<Rational>> {
    if d == 0 {
        return Vec::new();
    }
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    for subset in index_combinations(normals.len(), d - 1) {
        let m = RatMatrix::from_rows(subset.iter().map(|&i| normals[i].clone()).collect());
        let m = if subset.is_empty() {
            RatMatrix::zero(0, d)
        } else {
            m
        };
        let (rank, kernel) = linalg::rank_and_kernel(&m);
        if rank != d - 1 || kernel.len() != 1 {
            continue;
        }
        let candidate = &kernel[0];
        let mut pos = false;
        let mut neg = false;
        for a in normals {
            let v = dot(a, candidate);
            if v.is_positive() {
                pos = true;
            } else if v.is_negative() {
                neg = true;
            }
            if pos && neg {
                break;
            }
        }
        if pos && neg {
            continue;
        }
        let oriented = if neg {
            candidate.iter().map(|x| -x.clone()).collect::<Vec<_>>()
        } else {
            candidate.clone()
        };
        if oriented.iter().all(Zero::is_zero) {
            continue;
        }
        let mut canon = primitive_integer_vector(&oriented);
        // primitive_integer_vector normalizes the leading sign; restore the
        // feasible orientation if that flipped it.
        if normals.iter().any(|a| dot(a, &canon).is_negative()) {
            canon = canon.into_iter().map(|x| -x).collect();
        }
        if !rays.contains(&canon) {
            rays.push(canon);
        }
    }
    rays.sort();
    rays
}
