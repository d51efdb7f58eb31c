//! Chain constructors and condition checkers for maps preserving a
//! polyhedral cone: maximal orders of distinguished generalized
//! eigenvectors, chains of semi-distinguished invariant faces, the dual
//! uniqueness battery, and rank-one map analysis.

use num_traits::{One, Signed, Zero};

use super::{
    classify_face_poly_in, face_of, face_spectral_pair_poly, hrep, invariant_face_lattice,
    GeneratorCone, PolyFace, PolyFaceLattice,
};
use crate::error::{Error, Result};
use crate::ratmath::{
    coordinate_range, count_real_roots, dot, feasible_point, linalg, minimal_polynomial,
    rational_roots, RatMatrix, Rational,
};
use crate::spectra::{Radius, SpectralPair, ToleranceConfig};

/// Builds the constraint block {(λI−A)^k (Gc) = 0, Σc = 1} over c >= 0.
fn order_polytope(
    cone: &GeneratorCone,
    a: &RatMatrix,
    lambda: &Rational,
    k: u32,
) -> (RatMatrix, Vec<Rational>) {
    let n = cone.dimension();
    let m = cone.generators().len();
    let shifted = a.lambda_i_minus(lambda).pow(k);
    let image = &shifted * &cone.generator_matrix();
    let mut lhs = RatMatrix::zero(n + 1, m);
    for i in 0..n {
        for j in 0..m {
            lhs[(i, j)] = image[(i, j)].clone();
        }
    }
    for j in 0..m {
        lhs[(n, j)] = Rational::one();
    }
    let mut rhs = vec![Rational::zero(); n + 1];
    rhs[n] = Rational::one();
    (lhs, rhs)
}

/// True when some point of {x ∈ K, (λI−A)^k x = 0, normalized} has
/// (λI−A)^{k-1} x ≠ 0, decided by exact per-coordinate max/min sweeps.
fn order_witness_exists(
    cone: &GeneratorCone,
    a: &RatMatrix,
    lambda: &Rational,
    k: u32,
) -> Result<Option<bool>> {
    let (lhs, rhs) = order_polytope(cone, a, lambda, k);
    if feasible_point(&lhs, &rhs).is_none() {
        return Ok(None); // polytope empty: no distinguished vector at all
    }
    if k == 1 {
        return Ok(Some(true)); // nonzero by the normalization row
    }
    let probe = &a.lambda_i_minus(lambda).pow(k - 1) * &cone.generator_matrix();
    for row in 0..probe.rows() {
        let objective: Vec<Rational> = probe.row(row).to_vec();
        if objective.iter().all(Zero::is_zero) {
            continue;
        }
        let Some((hi, lo)) = coordinate_range(&lhs, &rhs, &objective) else {
            return Ok(None);
        };
        if hi.is_some_and(|v| v.is_positive()) || lo.is_some_and(|v| v.is_negative()) {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

/// The maximal order of distinguished generalized eigenvectors of A for λ:
/// the largest k for which the cone holds a vector of order exactly k.
pub fn max_distinguished_order(
    cone: &GeneratorCone,
    a: &RatMatrix,
    lambda: &Rational,
    _tol: &ToleranceConfig,
) -> Result<usize> {
    a.require_square()?;
    let n = cone.dimension();
    let mut best = 0usize;
    for k in 1..=n as u32 {
        match order_witness_exists(cone, a, lambda, k)? {
            Some(true) => best = k as usize,
            _ => break,
        }
    }
    if best == 0 {
        return Err(Error::NotDistinguished(format!(
            "{} has no eigenvector in the cone",
            crate::ratmath::format_rational(lambda)
        )));
    }
    Ok(best)
}

/// A maximal chain F_1 ⊂ ... ⊂ F_m of distinct semi-distinguished
/// A-invariant faces associated with λ, built top-down: for each order k a
/// minimal invariant subface of the previous member whose relative interior
/// holds a generalized eigenvector of order k. Ties are broken by the
/// lexicographically least generator set. The result is verified maximal by
/// exhaustive search over the invariant lattice.
pub fn rothblum_chain(
    cone: &GeneratorCone,
    a: &RatMatrix,
    lambda: &Rational,
    tol: &ToleranceConfig,
    cap: usize,
) -> Result<Vec<PolyFace>> {
    let m = max_distinguished_order(cone, a, lambda, tol)?;
    let lattice = invariant_face_lattice(cone, a, cap)?;
    let classifications: Vec<_> = lattice
        .faces
        .iter()
        .map(|f| classify_face_poly_in(cone, a, &lattice, f, tol))
        .collect::<Result<Vec<_>>>()?;

    let lambda_radius = Radius::Exact(lambda.clone());
    let qualifies = |idx: usize, k: usize| -> bool {
        let c = &classifications[idx];
        c.relint_gen_eigenvector == Some(true)
            && c.spectral_pair.order == k
            && c.spectral_pair.radius.approx_eq(&lambda_radius, tol)
    };

    let mut chain_rev: Vec<usize> = Vec::with_capacity(m);
    let mut parent: Option<usize> = None;
    for k in (1..=m).rev() {
        let mut candidates: Vec<usize> = (0..lattice.faces.len())
            .filter(|&i| {
                qualifies(i, k)
                    && parent
                        .is_none_or(|p| lattice.faces[i].is_strict_subface_of(&lattice.faces[p]))
            })
            .collect();
        // Keep only inclusion-minimal candidates; the canonical order of the
        // lattice makes the first one the lexicographically least.
        candidates.retain(|&i| {
            !(0..lattice.faces.len()).any(|j| {
                j != i
                    && qualifies(j, k)
                    && lattice.faces[j].is_strict_subface_of(&lattice.faces[i])
            })
        });
        let Some(&chosen) = candidates.first() else {
            return Err(Error::Internal(format!(
                "no invariant face with an order-{k} generalized eigenvector in its relative interior"
            )));
        };
        chain_rev.push(chosen);
        parent = Some(chosen);
    }
    chain_rev.reverse();

    // Every chain member must be semi-distinguished.
    for &idx in &chain_rev {
        if classifications[idx].semi_distinguished != Some(true) {
            return Err(Error::Internal(
                "chain member is not semi-distinguished".into(),
            ));
        }
    }

    // Exhaustive maximality: the longest chain of semi-distinguished faces
    // associated with λ has exactly m members.
    let eligible: Vec<usize> = (0..lattice.faces.len())
        .filter(|&i| {
            classifications[i].semi_distinguished == Some(true)
                && classifications[i]
                    .spectral_pair
                    .radius
                    .approx_eq(&lambda_radius, tol)
        })
        .collect();
    let longest = longest_inclusion_chain(&lattice.faces, &eligible);
    if longest != m {
        return Err(Error::Internal(format!(
            "maximality violated: found a chain of {longest} semi-distinguished faces, expected {m}"
        )));
    }

    Ok(chain_rev
        .into_iter()
        .map(|i| lattice.faces[i].clone())
        .collect())
}

fn longest_inclusion_chain(faces: &[PolyFace], eligible: &[usize]) -> usize {
    // Faces are in canonical order (size then lex), so inclusion goes from
    // earlier to later indices.
    let mut best = vec![0usize; faces.len()];
    let mut overall = 0;
    for (pos, &i) in eligible.iter().enumerate() {
        best[i] = 1;
        for &j in &eligible[..pos] {
            if faces[j].is_strict_subface_of(&faces[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
        overall = overall.max(best[i]);
    }
    overall
}

/// Verdicts for the three equivalent conditions on K being a
/// semi-distinguished invariant face of itself (the dual-uniqueness
/// battery). Requires every real eigenvalue of A to be rational.
#[derive(Clone, Debug)]
pub struct Theorem61Report {
    /// (a): the transpose map has, up to multiples, a unique distinguished
    /// eigenvector for the dual cone.
    pub unique_dual_distinguished_eigenvector: bool,
    /// (b): K is a semi-distinguished invariant face of itself.
    pub semi_distinguished_self: bool,
    /// (c): the spectral pair of K strictly dominates the pair of every
    /// proper invariant face.
    pub dominant_spectral_pair: bool,
    /// Count behind (a): extreme rays of the dual eigencones, totaled over
    /// all rational eigenvalues.
    pub dual_extreme_ray_count: usize,
    /// (a), (b), (c) must all agree over a polyhedral cone.
    pub equivalence_ok: bool,
}

pub fn check_theorem_61(
    cone: &GeneratorCone,
    a: &RatMatrix,
    tol: &ToleranceConfig,
    cap: usize,
) -> Result<Theorem61Report> {
    a.require_square()?;
    let minpoly = minimal_polynomial(a);
    let rational = rational_roots(&minpoly);
    if count_real_roots(&minpoly) != rational.len() {
        return Err(Error::ExactModeRequired(
            "the matrix has an irrational real eigenvalue".into(),
        ));
    }

    // (a): count extreme rays of N(λI − Aᵀ) ∩ K* over all rational
    // eigenvalues λ. K* is generated by the facet normals of K, so dual
    // membership is nonnegativity against the generators of K.
    let transpose = a.transpose();
    let mut ray_count = 0usize;
    for (lambda, _) in &rational {
        let shifted = transpose.lambda_i_minus(lambda);
        let (_, kernel) = linalg::rank_and_kernel(&shifted);
        if kernel.is_empty() {
            continue;
        }
        let d = kernel.len();
        // Inequalities in kernel coordinates: <g, B y> >= 0 for generators g.
        let normals: Vec<Vec<Rational>> = cone
            .generators()
            .iter()
            .map(|g| kernel.iter().map(|b| dot(g, b)).collect())
            .collect();
        ray_count += hrep::extreme_rays(&normals, d).len();
    }
    let condition_a = ray_count == 1;

    let lattice = invariant_face_lattice(cone, a, cap)?;
    let whole = lattice
        .faces
        .last()
        .expect("lattice holds the cone itself")
        .clone();
    let whole_class = classify_face_poly_in(cone, a, &lattice, &whole, tol)?;
    let condition_b = whole_class.semi_distinguished == Some(true);

    let whole_pair = whole_class.spectral_pair.clone();
    let mut condition_c = true;
    for f in &lattice.faces {
        if f.generators != whole.generators {
            let pair = face_spectral_pair_poly(cone, a, f, tol)?;
            if !pair.prec(&whole_pair, tol) {
                condition_c = false;
                break;
            }
        }
    }

    let equivalence_ok = condition_a == condition_b && condition_b == condition_c;
    Ok(Theorem61Report {
        unique_dual_distinguished_eigenvector: condition_a,
        semi_distinguished_self: condition_b,
        dominant_spectral_pair: condition_c,
        dual_extreme_ray_count: ray_count,
        equivalence_ok,
    })
}

/// Rank-one analysis of A = y zᵀ for boundary vectors y of K and z of K*.
#[derive(Clone, Debug)]
pub struct RankOneReport {
    /// ⟨z, y⟩ = 0.
    pub orthogonal: bool,
    /// (a): K is join-irreducible in its invariant-face lattice.
    pub whole_join_irreducible: bool,
    /// (b): y lies on exactly one facet, and that facet includes the face of
    /// K dual to the face of K* generated by z.
    pub unique_facet_including_dual: bool,
    /// (c): y lies on exactly one facet.
    pub unique_facet: bool,
    /// Number of facets containing y.
    pub facets_containing_y: usize,
    /// (a) ⇔ (b) always; (c) joins the equivalence when ⟨z, y⟩ = 0.
    pub equivalence_ok: bool,
}

pub fn rank_one_analysis(
    cone: &GeneratorCone,
    y: &[Rational],
    z: &[Rational],
    tol: &ToleranceConfig,
    cap: usize,
) -> Result<RankOneReport> {
    let n = cone.dimension();
    if y.len() != n || z.len() != n {
        return Err(Error::Dimension(
            "y and z must match the cone's dimension".into(),
        ));
    }
    if y.iter().all(Zero::is_zero) || z.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("y and z must be nonzero".into()));
    }
    if !cone.contains(y) {
        return Err(Error::NotInCone("y must lie in the cone".into()));
    }
    if !cone.dual_contains(z) {
        return Err(Error::NotInCone("z must lie in the dual cone".into()));
    }
    let y_face = face_of(cone, y)?;
    if y_face.generators.len() == cone.generators().len() {
        return Err(Error::InvalidArgument(
            "y lies in the interior of the cone".into(),
        ));
    }
    if cone.generators().iter().all(|g| dot(z, g).is_positive()) {
        return Err(Error::InvalidArgument(
            "z lies in the interior of the dual cone".into(),
        ));
    }

    // A = y z^T.
    let mut a = RatMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = &y[i] * &z[j];
        }
    }

    let orthogonal = dot(z, y).is_zero();

    let lattice = invariant_face_lattice(cone, &a, cap)?;
    let whole = lattice.faces.last().unwrap().clone();
    let class = classify_face_poly_in(cone, &a, &lattice, &whole, tol)?;
    let condition_a = class.join_irreducible;

    let tight_facets: Vec<usize> = (0..cone.facet_normals().len())
        .filter(|&f| dot(&cone.facet_normals()[f], y).is_zero())
        .collect();
    let condition_c = tight_facets.len() == 1;

    let condition_b = if condition_c {
        // d_{K*}(Φ(z)) = {x ∈ K : <z, x> = 0}; its generators are the ones
        // annihilated by z.
        let dual_face_gens: Vec<usize> = (0..cone.generators().len())
            .filter(|&g| dot(z, &cone.generators()[g]).is_zero())
            .collect();
        let facet = tight_facets[0];
        dual_face_gens
            .iter()
            .all(|&g| dot(&cone.facet_normals()[facet], &cone.generators()[g]).is_zero())
    } else {
        false
    };

    let equivalence_ok = condition_a == condition_b && (!orthogonal || condition_a == condition_c);
    Ok(RankOneReport {
        orthogonal,
        whole_join_irreducible: condition_a,
        unique_facet_including_dual: condition_b,
        unique_facet: condition_c,
        facets_containing_y: tight_facets.len(),
        equivalence_ok,
    })
}

/// Chains and pairs over an already-computed invariant lattice, exposed for
/// reuse by the front end and the cross-checks.
pub fn semi_distinguished_faces_at(
    cone: &GeneratorCone,
    a: &RatMatrix,
    lattice: &PolyFaceLattice,
    lambda: &Radius,
    tol: &ToleranceConfig,
) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, f) in lattice.faces.iter().enumerate() {
        let c = classify_face_poly_in(cone, a, lattice, f, tol)?;
        if c.semi_distinguished == Some(true) && c.spectral_pair.radius.approx_eq(lambda, tol) {
            out.push(i);
        }
    }
    Ok(out)
}

/// Spectral pair shorthand used by tests: the pair of the whole cone.
pub fn cone_spectral_pair(
    cone: &GeneratorCone,
    a: &RatMatrix,
    tol: &ToleranceConfig,
) -> Result<SpectralPair> {
    let all: Vec<usize> = (0..cone.generators().len()).collect();
    let face = PolyFace {
        generators: all,
        tight: Vec::new(),
        dim: cone.dimension(),
    };
    face_spectral_pair_poly(cone, a, &face, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;
    use crate::ratmath::rat_int;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn max_order_examples() {
        let k = GeneratorCone::orthant(4).unwrap();
        let nil = fixture("sec7-4x4-nilpotent").unwrap();
        assert_eq!(
            max_distinguished_order(&k, &nil, &Rational::zero(), &tol()).unwrap(),
            3
        );

        let ex = fixture("ex7.3").unwrap();
        assert_eq!(
            max_distinguished_order(&k, &ex, &Rational::zero(), &tol()).unwrap(),
            1
        );

        let k2 = GeneratorCone::orthant(2).unwrap();
        let id = RatMatrix::identity(2);
        assert_eq!(
            max_distinguished_order(&k2, &id, &Rational::one(), &tol()).unwrap(),
            1
        );
        assert!(max_distinguished_order(&k2, &id, &rat_int(3), &tol()).is_err());
    }

    #[test]
    fn rothblum_chain_nilpotent() {
        let k = GeneratorCone::orthant(4).unwrap();
        let nil = fixture("sec7-4x4-nilpotent").unwrap();
        let chain = rothblum_chain(&k, &nil, &Rational::zero(), &tol(), 4096).unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(chain[0].generators, vec![0]);
        assert_eq!(chain[1].generators, vec![0, 1]);
        assert_eq!(chain[2].generators, vec![0, 1, 2, 3]);
        for w in chain.windows(2) {
            assert!(w[0].is_strict_subface_of(&w[1]));
        }
    }

    #[test]
    fn rothblum_chain_ex73() {
        let k = GeneratorCone::orthant(4).unwrap();
        let ex = fixture("ex7.3").unwrap();
        let chain = rothblum_chain(&k, &ex, &Rational::zero(), &tol(), 4096).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(chain[0].generators, vec![3]);
    }

    #[test]
    fn theorem61_shift_map() {
        let k = GeneratorCone::orthant(2).unwrap();
        let shift = RatMatrix::from_integers(&[&[0, 1], &[0, 0]]);
        let rep = check_theorem_61(&k, &shift, &tol(), 4096).unwrap();
        assert!(rep.unique_dual_distinguished_eigenvector);
        assert!(rep.semi_distinguished_self);
        assert!(rep.dominant_spectral_pair);
        assert!(rep.equivalence_ok);
        assert_eq!(rep.dual_extreme_ray_count, 1);
    }

    #[test]
    fn theorem61_rank_one_split() {
        // A = e1 (e2 + e3)^T: the whole orthant splits as a join of two
        // invariant facets, so every condition fails.
        let k = GeneratorCone::orthant(3).unwrap();
        let a = RatMatrix::from_integers(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]]);
        let rep = check_theorem_61(&k, &a, &tol(), 4096).unwrap();
        assert!(!rep.unique_dual_distinguished_eigenvector);
        assert!(!rep.semi_distinguished_self);
        assert!(rep.equivalence_ok);
    }

    #[test]
    fn theorem61_identity() {
        let k = GeneratorCone::orthant(2).unwrap();
        let rep = check_theorem_61(&k, &RatMatrix::identity(2), &tol(), 4096).unwrap();
        assert!(!rep.unique_dual_distinguished_eigenvector);
        assert_eq!(rep.dual_extreme_ray_count, 2);
        assert!(!rep.semi_distinguished_self);
        assert!(rep.equivalence_ok);
    }

    #[test]
    fn rank_one_examples() {
        let k2 = GeneratorCone::orthant(2).unwrap();
        let rep = rank_one_analysis(
            &k2,
            &[rat_int(1), rat_int(0)],
            &[rat_int(0), rat_int(1)],
            &tol(),
            4096,
        )
        .unwrap();
        assert!(rep.orthogonal);
        assert!(rep.whole_join_irreducible);
        assert!(rep.unique_facet_including_dual);
        assert!(rep.unique_facet);
        assert!(rep.equivalence_ok);

        let k3 = GeneratorCone::orthant(3).unwrap();
        let rep = rank_one_analysis(
            &k3,
            &[rat_int(1), rat_int(0), rat_int(0)],
            &[rat_int(0), rat_int(1), rat_int(1)],
            &tol(),
            4096,
        )
        .unwrap();
        assert!(rep.orthogonal);
        assert!(!rep.whole_join_irreducible);
        assert!(!rep.unique_facet);
        assert!(rep.equivalence_ok);

        let rep = rank_one_analysis(
            &k3,
            &[rat_int(1), rat_int(1), rat_int(0)],
            &[rat_int(0), rat_int(0), rat_int(1)],
            &tol(),
            4096,
        )
        .unwrap();
        assert!(rep.orthogonal);
        assert!(rep.whole_join_irreducible);
        assert!(rep.unique_facet);
        assert!(rep.equivalence_ok);

        // Interior y is rejected.
        assert!(rank_one_analysis(
            &k2,
            &[rat_int(1), rat_int(1)],
            &[rat_int(0), rat_int(1)],
            &tol(),
            4096,
        )
        .is_err());
    }
}
