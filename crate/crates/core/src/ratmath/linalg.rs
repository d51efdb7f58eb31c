//! Exact elimination: rank, kernel bases, linear solves, minimal polynomials,
//! spectral projectors, and rank profiles. No tolerances anywhere.

use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::poly::RatPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Reduced row echelon form together with the pivot column list.
fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Pivot selection is exact; among the candidates prefer the entry
        // with the smallest representation to moderate coefficient growth.
        let mut pivot_row = None;
        let mut best_size = usize::MAX;
        for i in r..rows {
            let x = &a[(i, c)];
            if !x.is_zero() {
                let size = x.numer().bits() as usize + x.denom().bits() as usize;
                if size < best_size {
                    best_size = size;
                    pivot_row = Some(i);
                }
            }
        }
        let Some(p) = pivot_row else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = {
            let piv = a[(r, c)].clone();
            Rational::one() / piv
        };
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let factor = a[(i, c)].clone();
                for j in c..cols {
                    let delta = &factor * &a[(r, j)];
                    a[(i, j)] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).1.len()
}

/// Rank and a basis of the right kernel {v : Mv = 0}.
/// rank + |kernel basis| = number of columns.
pub fn rank_and_kernel(m: &RatMatrix) -> (usize, Vec<Vec<Rational>>) {
    let (red, pivots) = rref(m);
    let cols = m.cols();
    let rank = pivots.len();
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (row, &col) in pivots.iter().enumerate() {
            v[col] = Some(row);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut vec_out = vec![Rational::zero(); cols];
        vec_out[free] = Rational::one();
        for (col, pv) in pivot_set.iter().enumerate() {
            if let Some(row) = pv {
                vec_out[col] = -red[(*row, free)].clone();
            }
        }
        basis.push(vec_out);
    }
    (rank, basis)
}

/// One exact solution of Mx = b, if the system is consistent.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(m.rows(), b.len());
    let mut aug = RatMatrix::zero(m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols())] = b[i].clone();
    }
    let (red, pivots) = rref(&aug);
    if pivots.contains(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (row, &col) in pivots.iter().enumerate() {
        x[col] = red[(row, m.cols())].clone();
    }
    Some(x)
}

/// Exact inverse; None when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    assert!(m.is_square());
    let mut aug = RatMatrix::zero(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n + i)] = Rational::one();
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[..n] != (0..n).collect::<Vec<_>>()[..] {
        return None;
    }
    let mut inv = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = red[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// Incremental echelon basis that can express new vectors over the vectors
/// already inserted. Backbone of the Krylov minimal-polynomial computation.
struct EchelonSpan {
    dim: usize,
    // Echelonized vectors with their pivot positions, plus the coordinates of
    // each echelon vector over the original insertion order.
    rows: Vec<(Vec<Rational>, usize, Vec<Rational>)>,
    inserted: usize,
}

impl EchelonSpan {
    fn new(dim: usize) -> Self {
        EchelonSpan {
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    /// Reduces v against the span. Returns Ok(coords) when v is dependent,
    /// expressed over the inserted vectors; otherwise inserts and returns Err.
    fn insert_or_express(&mut self, v: &[Rational]) -> std::result::Result<Vec<Rational>, ()> {
        let mut w = v.to_vec();
        let mut coords = vec![Rational::zero(); self.inserted];
        for (row, pivot, row_coords) in &self.rows {
            let factor = w[*pivot].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let delta = &factor * &row[j];
                w[j] -= delta;
            }
            for (c, rc) in coords.iter_mut().zip(row_coords) {
                *c += &factor * rc;
            }
        }
        if let Some(pivot) = w.iter().position(|x| !x.is_zero()) {
            let lead = w[pivot].clone();
            let mut row = w;
            for x in &mut row {
                *x /= &lead;
            }
            let mut row_coords = vec![Rational::zero(); self.inserted + 1];
            // coordinates of the normalized residual: (e_new - coords)/lead
            for (i, c) in coords.iter().enumerate() {
                row_coords[i] = -(c / &lead);
            }
            row_coords[self.inserted] = Rational::one() / lead;
            for r in &mut self.rows {
                r.2.push(Rational::zero());
            }
            self.rows.push((row, pivot, row_coords));
            self.inserted += 1;
            Err(())
        } else {
            Ok(coords)
        }
    }
}

/// Monic polynomial of least degree with p(A)x = 0, computed by running the
/// Krylov sequence x, Ax, A²x, ... until the first linear dependence.
/// Returns the constant 1 exactly when x = 0.
pub fn local_minimal_polynomial(a: &RatMatrix, x: &[Rational]) -> RatPoly {
    let n = a.rows();
    assert!(a.is_square());
    assert_eq!(n, x.len());
    let mut span = EchelonSpan::new(n);
    let mut v = x.to_vec();
    for _ in 0..=n {
        match span.insert_or_express(&v) {
            Ok(coords) => {
                // A^k x = sum coords_j A^j x  =>  t^k - sum coords_j t^j
                let k = coords.len();
                let mut poly = vec![Rational::zero(); k + 1];
                poly[k] = Rational::one();
                for (j, c) in coords.into_iter().enumerate() {
                    poly[j] = -c;
                }
                return RatPoly::new(poly);
            }
            Err(()) => {
                v = a.matvec(&v);
            }
        }
    }
    unreachable!("Krylov sequence must become dependent within dim+1 steps");
}

/// Monic minimal polynomial of A: least common multiple of the local minimal
/// polynomials of the standard basis vectors, with early exit at full degree.
pub fn minimal_polynomial(a: &RatMatrix) -> RatPoly {
    let n = a.rows();
    assert!(a.is_square());
    if n == 0 {
        return RatPoly::one();
    }
    let mut acc = RatPoly::one();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        let local = local_minimal_polynomial(a, &e);
        acc = acc.lcm(&local);
        if acc.degree() == n {
            break;
        }
    }
    acc
}

/// Evaluates p(A) exactly.
pub fn poly_apply(p: &RatPoly, a: &RatMatrix) -> RatMatrix {
    let n = a.rows();
    let mut acc = RatMatrix::zero(n, n);
    for c in p.coeffs().iter().rev() {
        acc = &acc * a;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    acc
}

/// Projection onto the generalized eigenspace of λ along the sum of the other
/// generalized eigenspaces, as a polynomial in A.
///
/// Writing the minimal polynomial as m(t) = (t−λ)^k q(t) with q(λ) ≠ 0, the
/// projector is h(A) for the unique h ≡ 1 mod (t−λ)^k, h ≡ 0 mod q obtained
/// from the extended Euclidean identity on the coprime pair.
pub fn spectral_projector(a: &RatMatrix, lambda: &Rational) -> Result<RatMatrix> {
    let n = a.require_square()?;
    let m = minimal_polynomial(a);
    let k = m.root_multiplicity(lambda);
    if k == 0 {
        return Err(Error::NotAnEigenvalue(format!(
            "{} is not a root of the minimal polynomial",
            super::rational::format_rational(lambda)
        )));
    }
    let lin_pow = RatPoly::linear(lambda).pow(k as u32);
    let q = m.div_rem(&lin_pow).0;
    if q.degree() == 0 {
        // Single eigenvalue: the projector is the identity.
        return Ok(RatMatrix::identity(n));
    }
    let (_, v) = extended_gcd_bezout(&lin_pow, &q);
    // h = v*q satisfies h ≡ 1 mod (t−λ)^k and h ≡ 0 mod q.
    let h = v.mul(&q);
    Ok(poly_apply(&h, a))
}

/// Returns (u, v) with u·a + v·b = 1 for coprime a, b.
fn extended_gcd_bezout(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    let mut s0 = RatPoly::one();
    let mut s1 = RatPoly::zero();
    let mut t0 = RatPoly::zero();
    let mut t1 = RatPoly::one();
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        let t = t0.sub(&q.mul(&t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert!(r0.degree() == 0 && !r0.is_zero(), "inputs were not coprime");
    let lead = r0.coeff(0);
    let inv = Rational::one() / lead;
    (s0.scale(&inv), t0.scale(&inv))
}

/// Rank profile of A at a rational eigenvalue λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    /// Index of λ: least k with rank((A−λI)^k) = rank((A−λI)^{k+1}).
    pub index: usize,
    /// n − rank(A−λI).
    pub geometric_multiplicity: usize,
    /// Number of maximal Jordan blocks at λ.
    pub max_block_count: usize,
    /// rank((A−λI)^k) for k = 0, 1, ..., index+1 (or until n is exhausted).
    pub rank_sequence: Vec<usize>,
}

pub fn rank_profile_at(a: &RatMatrix, lambda: &Rational) -> Result<RankProfile> {
    let n = a.require_square()?;
    let shifted = -a.lambda_i_minus(lambda); // A − λI
    let mut ranks = vec![n];
    let mut power = RatMatrix::identity(n);
    let mut index = None;
    for _ in 1..=n + 1 {
        power = &power * &shifted;
        let r = rank(&power);
        ranks.push(r);
        let k = ranks.len() - 1;
        if ranks[k] == ranks[k - 1] {
            index = Some(k - 1);
            break;
        }
    }
    let index = index.unwrap_or(n);
    if index == 0 {
        return Err(Error::NotAnEigenvalue(format!(
            "{} is not an eigenvalue",
            super::rational::format_rational(lambda)
        )));
    }
    let geometric_multiplicity = n - ranks[1];
    let max_block_count = ranks[index - 1] - ranks[index];
    Ok(RankProfile {
        index,
        geometric_multiplicity,
        max_block_count,
        rank_sequence: ranks,
    })
}

/// True when λI − M is nonsingular exactly.
pub fn is_nonsingular_shift(m: &RatMatrix, lambda: &Rational) -> bool {
    rank(&m.lambda_i_minus(lambda)) == m.rows()
}

/// Expresses b over the span of the given vectors if possible.
pub fn in_span(vectors: &[Vec<Rational>], b: &[Rational]) -> bool {
    if vectors.is_empty() {
        return b.iter().all(Zero::is_zero);
    }
    let n = b.len();
    let mut m = RatMatrix::zero(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = v[i].clone();
        }
    }
    solve(&m, b).is_some()
}

/// True when the vectors are linearly independent, by exact rank.
pub fn linearly_independent(vectors: &[Vec<Rational>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let n = vectors[0].len();
    let mut m = RatMatrix::zero(n, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = v[i].clone();
        }
    }
    rank(&m) == vectors.len()
}

pub fn abs_rational(x: &Rational) -> Rational {
    if x.is_negative() {
        -x.clone()
    } else {
        x.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rational::{rat_int, Rational};

    #[test]
    fn rank_kernel_identity() {
        let m = RatMatrix::identity(2);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 2);
        assert!(k.is_empty());
    }

    #[test]
    fn rank_kernel_jordan_block() {
        let m = RatMatrix::from_integers(&[&[0, 1], &[0, 0]]);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![rat_int(1), rat_int(0)]]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = RatMatrix::from_integers(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let (r, basis) = rank_and_kernel(&m);
        assert_eq!(r + basis.len(), 3);
        for v in &basis {
            assert!(m.matvec(v).iter().all(num_traits::Zero::is_zero));
        }
    }

    #[test]
    fn section7_rank_example() {
        // A − I for [[1,1,1],[0,0,0],[0,0,0]] has rank 2 and a 1-dim kernel.
        let a = RatMatrix::from_integers(&[&[1, 1, 1], &[0, 0, 0], &[0, 0, 0]]);
        let shifted = -a.lambda_i_minus(&rat_int(1));
        let (r, k) = rank_and_kernel(&shifted);
        assert_eq!(r, 2);
        assert_eq!(k.len(), 1);
    }

    #[test]
    fn minimal_polynomials() {
        let id = RatMatrix::identity(3);
        assert_eq!(minimal_polynomial(&id), RatPoly::from_integers(&[-1, 1]));

        // [[1,1],[0,0]] satisfies A² = A and is not scalar: minimal polynomial t² − t.
        let a = RatMatrix::from_integers(&[&[1, 1], &[0, 0]]);
        assert_eq!(&a * &a, a);
        assert_eq!(minimal_polynomial(&a), RatPoly::from_integers(&[0, -1, 1]));

        // J2(1) ⊕ J1(1): (t−1)²
        let j = RatMatrix::from_integers(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(minimal_polynomial(&j), RatPoly::from_integers(&[1, -2, 1]));
    }

    #[test]
    fn local_minimal_polynomials() {
        let id = RatMatrix::identity(2);
        let x = vec![rat_int(3), rat_int(-1)];
        assert_eq!(
            local_minimal_polynomial(&id, &x),
            RatPoly::from_integers(&[-1, 1])
        );

        let j = RatMatrix::from_integers(&[&[0, 1], &[0, 0]]);
        let e2 = vec![rat_int(0), rat_int(1)];
        assert_eq!(
            local_minimal_polynomial(&j, &e2),
            RatPoly::from_integers(&[0, 0, 1])
        );

        let a = RatMatrix::from_integers(&[&[1, 1], &[0, 0]]);
        let e1 = vec![rat_int(1), rat_int(0)];
        assert_eq!(
            local_minimal_polynomial(&a, &e1),
            RatPoly::from_integers(&[-1, 1])
        );

        let zero = vec![Rational::zero(); 2];
        assert_eq!(local_minimal_polynomial(&a, &zero), RatPoly::one());
    }

    #[test]
    fn projector_examples() {
        let a = RatMatrix::from_rows(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(2)],
        ]);
        let e = spectral_projector(&a, &rat_int(2)).unwrap();
        assert_eq!(e, RatMatrix::from_integers(&[&[0, 0], &[0, 1]]));

        let j = RatMatrix::from_integers(&[&[0, 1], &[0, 0]]);
        let e = spectral_projector(&j, &rat_int(0)).unwrap();
        assert_eq!(e, RatMatrix::identity(2));

        let a = RatMatrix::from_integers(&[&[1, 1], &[0, 0]]);
        let e = spectral_projector(&a, &rat_int(1)).unwrap();
        assert_eq!(e, a, "projector at 1 reproduces the idempotent matrix");
        assert_eq!(&e * &e, e);
        assert!(spectral_projector(&a, &rat_int(7)).is_err());
    }

    #[test]
    fn rank_profile_examples() {
        // Nilpotent 4x4 with A² ≠ 0, A³ = 0.
        let a =
            RatMatrix::from_integers(&[&[0, 1, 1, 0], &[0, 0, 0, 1], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        let p = rank_profile_at(&a, &rat_int(0)).unwrap();
        assert_eq!(p.index, 3);
        assert_eq!(p.geometric_multiplicity, 2);

        let j = RatMatrix::from_integers(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        let p = rank_profile_at(&j, &rat_int(1)).unwrap();
        assert_eq!(
            (p.index, p.geometric_multiplicity, p.max_block_count),
            (2, 2, 1)
        );

        let p = rank_profile_at(&RatMatrix::identity(2), &rat_int(1)).unwrap();
        assert_eq!(
            (p.index, p.geometric_multiplicity, p.max_block_count),
            (1, 2, 2)
        );

        assert!(rank_profile_at(&RatMatrix::identity(2), &rat_int(3)).is_err());
    }

    #[test]
    fn companion_rank_profiles() {
        // Companion matrices of (t−λ)^k: index k, geometric multiplicity 1,
        // one maximal block.
        for lambda in [rat_int(2), rat_int(-1), crate::ratmath::rational::rat(1, 2)] {
            for k in 1..=4usize {
                let poly = RatPoly::linear(&lambda).pow(k as u32);
                let mut c = RatMatrix::zero(k, k);
                for i in 1..k {
                    c[(i, i - 1)] = Rational::from_integer(1.into());
                }
                for i in 0..k {
                    c[(i, k - 1)] = -poly.coeff(i);
                }
                let p = rank_profile_at(&c, &lambda).unwrap();
                assert_eq!(
                    (p.index, p.geometric_multiplicity, p.max_block_count),
                    (k, 1, 1),
                    "companion of power {k}"
                );
            }
        }
    }
}
