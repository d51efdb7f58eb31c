//! Deterministic instance generators shared by the integration suites.

#![allow(dead_code)]

use conefaces::ratmath::{rat, rat_int, RatMatrix, Rational};
use num_traits::Zero;

/// SplitMix64: tiny, deterministic, seedable.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform in 0..bound.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }
}

/// Random nonnegative matrix with the given edge density (percent) and
/// integer entries in 1..=max_entry on present positions.
pub fn random_nonneg_matrix(rng: &mut Rng, n: usize, density: u64, max_entry: u64) -> RatMatrix {
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = Vec::with_capacity(n);
        for _ in 0..n {
            if rng.chance(density) {
                row.push(rat_int(1 + rng.below(max_entry) as i64));
            } else {
                row.push(Rational::zero());
            }
        }
        rows.push(row);
    }
    RatMatrix::from_rows(rows)
}

/// Random 0/1 pattern matrix.
pub fn random_pattern_matrix(rng: &mut Rng, n: usize, density: u64) -> RatMatrix {
    random_nonneg_matrix(rng, n, density, 1)
}

/// Random nonnegative vector; roughly `density` percent of entries nonzero.
pub fn random_nonneg_vector(rng: &mut Rng, n: usize, density: u64) -> Vec<Rational> {
    (0..n)
        .map(|_| {
            if rng.chance(density) {
                rat(1 + rng.below(5) as i64, 1 + rng.below(3) as i64)
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// Applies a random permutation similarity, preserving nonnegativity and the
/// spectrum.
pub fn randomly_permuted(rng: &mut Rng, m: &RatMatrix) -> RatMatrix {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    let mut out = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(perm[i], perm[j])] = m[(i, j)].clone();
        }
    }
    out
}

/// Block upper-triangular nonnegative matrix over a random DAG of classes,
/// where every diagonal block is irreducible with constant row sums, so each
/// class radius (and the spectral radius) is an exact rational. A random
/// permutation similarity is applied at the end.
pub fn random_structured_rational_rho(rng: &mut Rng, n: usize) -> RatMatrix {
    // Partition into blocks of size 1..=3.
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = (1 + rng.below(3) as usize).min(left);
        sizes.push(s);
        left -= s;
    }
    let k = sizes.len();
    let offsets: Vec<usize> = sizes
        .iter()
        .scan(0usize, |acc, &s| {
            let o = *acc;
            *acc += s;
            Some(o)
        })
        .collect();
    let mut m = RatMatrix::zero(n, n);
    for (b, (&s, &o)) in sizes.iter().zip(&offsets).enumerate() {
        let _ = b;
        // Irreducible block with constant row sums a + b:
        // a * cycle + b * cycle^2 (cycle^2 read mod s).
        let a = 1 + rng.below(3) as i64;
        let c = 1 + rng.below(3) as i64;
        if s == 1 {
            // Allow zero diagonal on singleton classes.
            let v = rng.below(4) as i64;
            m[(o, o)] = rat_int(v);
        } else {
            for i in 0..s {
                m[(o + i, o + (i + 1) % s)] += rat_int(a);
                m[(o + i, o + (i + 2) % s)] += rat_int(c);
            }
        }
    }
    // Upper blocks along a random DAG (block order is already topological).
    for bi in 0..k {
        for bj in bi + 1..k {
            if !rng.chance(40) {
                continue;
            }
            for i in 0..sizes[bi] {
                for j in 0..sizes[bj] {
                    if rng.chance(50) {
                        m[(offsets[bi] + i, offsets[bj] + j)] = rat_int(1 + rng.below(2) as i64);
                    }
                }
            }
        }
    }
    randomly_permuted(rng, &m)
}

/// Nonnegative matrix with fully rational spectrum: upper triangular with
/// nonnegative rational diagonal, randomly permuted.
pub fn random_rational_spectrum_matrix(rng: &mut Rng, n: usize) -> RatMatrix {
    let diag_pool = [
        rat_int(0),
        rat(1, 2),
        rat_int(1),
        rat(3, 2),
        rat_int(2),
        rat_int(3),
    ];
    let mut m = RatMatrix::zero(n, n);
    for i in 0..n {
        m[(i, i)] = diag_pool[rng.below(diag_pool.len() as u64) as usize].clone();
        for j in i + 1..n {
            if rng.chance(40) {
                m[(i, j)] = rat_int(1 + rng.below(3) as i64);
            }
        }
    }
    randomly_permuted(rng, &m)
}

/// Random invertible integer matrix with entries in -2..=2.
pub fn random_invertible_matrix(rng: &mut Rng, n: usize) -> RatMatrix {
    loop {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = rat_int(rng.below(5) as i64 - 2);
            }
        }
        if conefaces::ratmath::rank(&m) == n {
            return m;
        }
    }
}

/// Brute-force initial subsets: S is initial iff the support of every column
/// P e_i, i in S, stays inside S.
pub fn brute_force_initial_subsets(p: &RatMatrix) -> Vec<Vec<usize>> {
    let n = p.rows();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let ok = members
            .iter()
            .all(|&i| (0..n).all(|r| p[(r, i)].is_zero() || mask >> r & 1 == 1));
        if ok {
            out.push(members);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Independent row-echelon rank for cross-checking.
pub fn naive_rank(m: &RatMatrix) -> usize {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let lead = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let factor = &rows[r][c] / &lead;
                for j in 0..cols {
                    let delta = &factor * &rows[rank][j];
                    rows[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}
