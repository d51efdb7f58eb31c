//! Finitely generated polyhedral proper cones: construction with certified
//! pointedness and fullness, facet enumeration, membership with dual
//! certificates, face lattices, invariant-face lattices for cone-preserving
//! maps, spectral pairs of faces, and face classification.
//!
//! Generators come first; facet normals are derived at construction and
//! cached on the value, which is immutable afterwards.

pub mod checkers;
pub mod hrep;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{dot, feasible_point, linalg, primitive_integer_vector, RatMatrix, Rational};
use crate::spectra::{spectral_pair, Radius, SpectralPair, ToleranceConfig};

pub use checkers::{
    check_theorem_61, max_distinguished_order, rank_one_analysis, rothblum_chain, RankOneReport,
    Theorem61Report,
};

/// Hard cap on the ambient dimension: facet enumeration is brute force.
pub const DIMENSION_CAP: usize = 8;

/// Default cap on face-lattice sizes.
pub const DEFAULT_LATTICE_CAP: usize = 4096;

/// A full pointed polyhedral cone, generator-first. Facet normals are
/// primitive integer vectors oriented so every generator is on the
/// nonnegative side; both certificates are established at construction.
#[derive(Clone, Debug)]
pub struct GeneratorCone {
    n: usize,
    generators: Vec<Vec<Rational>>,
    facet_normals: Vec<Vec<Rational>>,
    pub pointed: bool,
    pub full: bool,
}

/// A face of a generator cone: the generators lying on it, the full set of
/// facet normals vanishing on it, and its linear span dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFace {
    pub generators: Vec<usize>,
    pub tight: Vec<usize>,
    pub dim: usize,
}

impl PolyFace {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_subface_of(&self, other: &PolyFace) -> bool {
        self.generators.iter().all(|g| other.generators.contains(g))
    }

    pub fn is_strict_subface_of(&self, other: &PolyFace) -> bool {
        self.generators.len() < other.generators.len() && self.is_subface_of(other)
    }
}

/// A face lattice with Hasse covers, faces in canonical order (generator-set
/// size, then lexicographic).
#[derive(Clone, Debug)]
pub struct PolyFaceLattice {
    pub faces: Vec<PolyFace>,
    /// (lower, upper) index pairs of covering relations.
    pub covers: Vec<(usize, usize)>,
}

impl PolyFaceLattice {
    pub fn position(&self, face: &PolyFace) -> Option<usize> {
        self.faces
            .iter()
            .position(|f| f.generators == face.generators)
    }
}

/// Builds a cone from generators, certifying pointedness (by LP) and
/// fullness (by rank), and enumerating facets by brute force over
/// (n-1)-subsets of generators.
pub fn build_cone(generators: Vec<Vec<Rational>>) -> Result<GeneratorCone> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidCone("no generators given".into()));
    };
    let n = first.len();
    if n == 0 {
        return Err(Error::InvalidCone("zero-dimensional ambient space".into()));
    }
    if n > DIMENSION_CAP {
        return Err(Error::Dimension(format!(
            "ambient dimension {n} exceeds the cap {DIMENSION_CAP}"
        )));
    }
    if generators.iter().any(|g| g.len() != n) {
        return Err(Error::Dimension("generators of mixed dimension".into()));
    }
    if let Some(i) = generators.iter().position(|g| g.iter().all(Zero::is_zero)) {
        return Err(Error::InvalidCone(format!(
            "generator {} is the zero vector",
            i + 1
        )));
    }

    let gen_matrix = matrix_from_columns(n, &generators);
    if linalg::rank(&gen_matrix) != n {
        return Err(Error::InvalidCone(
            "not full: generators do not span the space".into(),
        ));
    }

    // Pointedness: Gc + Gc' = 0 with c, c' >= 0 summing to 1 is solvable
    // exactly when some nonzero x has both x and -x in the cone.
    let m = generators.len();
    let mut lhs = RatMatrix::zero(n + 1, 2 * m);
    for j in 0..m {
        for i in 0..n {
            lhs[(i, j)] = generators[j][i].clone();
            lhs[(i, m + j)] = generators[j][i].clone();
        }
        lhs[(n, j)] = Rational::one();
        lhs[(n, m + j)] = Rational::one();
    }
    let mut rhs = vec![Rational::zero(); n + 1];
    rhs[n] = Rational::one();
    if let Some(cert) = feasible_point(&lhs, &rhs) {
        let witness: Vec<Rational> = (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| &generators[j][i] * &cert[j])
                    .sum::<Rational>()
            })
            .collect();
        let rendered: Vec<String> = witness
            .iter()
            .map(crate::ratmath::format_rational)
            .collect();
        return Err(Error::InvalidCone(format!(
            "not pointed: x and -x both lie in the cone for x = ({})",
            rendered.join(", ")
        )));
    }

    // Facets: for every (n-1)-subset of generators spanning a hyperplane,
    // keep its normal when all generators sit on one side.
    let mut facet_normals: Vec<Vec<Rational>> = Vec::new();
    for subset in hrep::index_combinations(m, n - 1) {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&j| generators[j].clone()).collect();
        let mat = if rows.is_empty() {
            RatMatrix::zero(0, n)
        } else {
            RatMatrix::from_rows(rows)
        };
        let (rank, kernel) = linalg::rank_and_kernel(&mat);
        if rank != n - 1 || kernel.len() != 1 {
            continue;
        }
        let normal = &kernel[0];
        let mut pos = false;
        let mut neg = false;
        for g in &generators {
            let v = dot(normal, g);
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
        let oriented: Vec<Rational> = if neg {
            normal.iter().map(|x| -x.clone()).collect()
        } else {
            normal.clone()
        };
        let mut canon = primitive_integer_vector(&oriented);
        if generators.iter().any(|g| dot(&canon, g).is_negative()) {
            canon = canon.into_iter().map(|x| -x).collect();
        }
        if !facet_normals.contains(&canon) {
            facet_normals.push(canon);
        }
    }
    facet_normals.sort();
    if facet_normals.is_empty() {
        return Err(Error::InvalidCone(
            "no facets found; cone is degenerate".into(),
        ));
    }
    Ok(GeneratorCone {
        n,
        generators,
        facet_normals,
        pointed: true,
        full: true,
    })
}

fn matrix_from_columns(n: usize, cols: &[Vec<Rational>]) -> RatMatrix {
    let mut m = RatMatrix::zero(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = c[i].clone();
        }
    }
    m
}

impl GeneratorCone {
    /// The nonnegative orthant with the standard basis as generators.
    pub fn orthant(n: usize) -> Result<GeneratorCone> {
        let gens: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        build_cone(gens)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<Rational>] {
        &self.generators
    }

    pub fn facet_normals(&self) -> &[Vec<Rational>] {
        &self.facet_normals
    }

    pub fn generator_matrix(&self) -> RatMatrix {
        matrix_from_columns(self.n, &self.generators)
    }

    /// Membership by facet normals alone (exact; the cone is full, so the
    /// facet description is complete).
    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facet_normals.iter().all(|z| !dot(z, x).is_negative())
    }

    /// Dual-cone membership: nonnegative against every generator.
    pub fn dual_contains(&self, z: &[Rational]) -> bool {
        self.generators.iter().all(|g| !dot(z, g).is_negative())
    }

    /// Relative-interior point of a face: the sum of its generators.
    pub fn relint_point(&self, face: &PolyFace) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for &g in &face.generators {
            for i in 0..self.n {
                out[i] += &self.generators[g][i];
            }
        }
        out
    }

    fn face_from_generator_set(&self, gen_set: Vec<usize>) -> PolyFace {
        let tight: Vec<usize> = (0..self.facet_normals.len())
            .filter(|&z| {
                gen_set
                    .iter()
                    .all(|&g| dot(&self.facet_normals[z], &self.generators[g]).is_zero())
            })
            .collect();
        let cols: Vec<Vec<Rational>> = gen_set
            .iter()
            .map(|&g| self.generators[g].clone())
            .collect();
        let dim = if cols.is_empty() {
            0
        } else {
            linalg::rank(&matrix_from_columns(self.n, &cols))
        };
        PolyFace {
            generators: gen_set,
            tight,
            dim,
        }
    }
}

/// Membership with cross-validated certificates: a nonnegative combination
/// on success, a violated facet normal on failure.
#[derive(Clone, Debug)]
pub struct Membership {
    pub inside: bool,
    /// Coefficients over the generators when inside.
    pub combination: Option<Vec<Rational>>,
    /// Index of a violated facet normal when outside.
    pub violated_facet: Option<usize>,
}

pub fn membership(cone: &GeneratorCone, x: &[Rational]) -> Result<Membership> {
    if x.len() != cone.n {
        return Err(Error::Dimension(format!(
            "vector has dimension {}, cone lives in dimension {}",
            x.len(),
            cone.n
        )));
    }
    let lhs = cone.generator_matrix();
    let lp = feasible_point(&lhs, x);
    let violated = cone
        .facet_normals
        .iter()
        .position(|z| dot(z, x).is_negative());
    match (&lp, violated) {
        (Some(_), None) | (None, Some(_)) => {}
        _ => {
            return Err(Error::Internal(
                "membership certificates disagree between primal and dual".into(),
            ))
        }
    }
    Ok(Membership {
        inside: lp.is_some(),
        combination: lp,
        violated_facet: violated,
    })
}

/// Smallest face containing x: intersect over the facets tight at x.
pub fn face_of(cone: &GeneratorCone, x: &[Rational]) -> Result<PolyFace> {
    if !cone.contains(x) {
        return Err(Error::NotInCone("face_of needs a cone member".into()));
    }
    if x.iter().all(Zero::is_zero) {
        return Ok(cone.face_from_generator_set(Vec::new()));
    }
    let tight_at_x: Vec<usize> = (0..cone.facet_normals.len())
        .filter(|&z| dot(&cone.facet_normals[z], x).is_zero())
        .collect();
    let gen_set: Vec<usize> = (0..cone.generators.len())
        .filter(|&g| {
            tight_at_x
                .iter()
                .all(|&z| dot(&cone.facet_normals[z], &cone.generators[g]).is_zero())
        })
        .collect();
    Ok(cone.face_from_generator_set(gen_set))
}

/// The full face lattice, by closing under single-facet refinements starting
/// from the cone itself.
pub fn face_lattice(cone: &GeneratorCone, cap: usize) -> Result<PolyFaceLattice> {
    let all_gens: Vec<usize> = (0..cone.generators.len()).collect();
    let top = cone.face_from_generator_set(all_gens);
    let mut faces: Vec<PolyFace> = vec![top];
    let mut queue = vec![0usize];
    while let Some(idx) = queue.pop() {
        let current = faces[idx].clone();
        for z in 0..cone.facet_normals.len() {
            if current.tight.contains(&z) {
                continue;
            }
            let refined: Vec<usize> = current
                .generators
                .iter()
                .copied()
                .filter(|&g| dot(&cone.facet_normals[z], &cone.generators[g]).is_zero())
                .collect();
            if faces.iter().any(|f| f.generators == refined) {
                continue;
            }
            let face = cone.face_from_generator_set(refined);
            faces.push(face);
            if faces.len() > cap {
                return Err(Error::CapExceeded {
                    size: faces.len(),
                    cap,
                });
            }
            queue.push(faces.len() - 1);
        }
    }
    if !faces.iter().any(|f| f.generators.is_empty()) {
        faces.push(cone.face_from_generator_set(Vec::new()));
        if faces.len() > cap {
            return Err(Error::CapExceeded { size: faces.len(), cap });
        }
    }
    faces.sort_by(|a, b| {
        a.generators
            .len()
            .cmp(&b.generators.len())
            .then_with(|| a.generators.cmp(&b.generators))
    });
    let covers = hasse_covers(&faces);
    Ok(PolyFaceLattice { faces, covers })
}

fn hasse_covers(faces: &[PolyFace]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, low) in faces.iter().enumerate() {
        for (j, high) in faces.iter().enumerate() {
            if i == j || !low.is_strict_subface_of(high) {
                continue;
            }
            let between = faces.iter().enumerate().any(|(k, mid)| {
                k != i && k != j && low.is_strict_subface_of(mid) && mid.is_strict_subface_of(high)
            });
            if !between {
                covers.push((i, j));
            }
        }
    }
    covers
}

/// AK ⊆ K, checked on generators.
pub fn is_cone_preserving(cone: &GeneratorCone, a: &RatMatrix) -> Result<bool> {
    if a.rows() != cone.n || a.cols() != cone.n {
        return Err(Error::Dimension(
            "matrix does not match the cone's dimension".into(),
        ));
    }
    Ok(cone.generators.iter().all(|g| cone.contains(&a.matvec(g))))
}

/// True when the face is invariant under a cone-preserving map: every
/// generator of the face maps into the cone and stays tight on the face's
/// facet set.
pub fn face_is_invariant(cone: &GeneratorCone, a: &RatMatrix, face: &PolyFace) -> bool {
    face.generators.iter().all(|&g| {
        let image = a.matvec(&cone.generators[g]);
        cone.contains(&image)
            && face
                .tight
                .iter()
                .all(|&z| dot(&cone.facet_normals[z], &image).is_zero())
    })
}

/// The sublattice of A-invariant faces, with closure under meet and join
/// verified.
pub fn invariant_face_lattice(
    cone: &GeneratorCone,
    a: &RatMatrix,
    cap: usize,
) -> Result<PolyFaceLattice> {
    if !is_cone_preserving(cone, a)? {
        return Err(Error::InvalidArgument(
            "matrix does not preserve the cone".into(),
        ));
    }
    let full = face_lattice(cone, cap)?;
    let faces: Vec<PolyFace> = full
        .faces
        .into_iter()
        .filter(|f| face_is_invariant(cone, a, f))
        .collect();
    // Meet and join of invariant faces must stay in the list.
    for i in 0..faces.len() {
        for j in i + 1..faces.len() {
            let meet: Vec<usize> = faces[i]
                .generators
                .iter()
                .copied()
                .filter(|g| faces[j].generators.contains(g))
                .collect();
            if !faces.iter().any(|f| f.generators == meet) {
                return Err(Error::Internal(
                    "invariant faces not closed under meet".into(),
                ));
            }
            let mut joined = cone.relint_point(&faces[i]);
            for (t, v) in joined.iter_mut().zip(cone.relint_point(&faces[j])) {
                *t += v;
            }
            let join = face_of(cone, &joined)?;
            if !faces.iter().any(|f| f.generators == join.generators) {
                return Err(Error::Internal(
                    "invariant faces not closed under join".into(),
                ));
            }
        }
    }
    let covers = hasse_covers(&faces);
    Ok(PolyFaceLattice { faces, covers })
}

/// Smallest A-invariant face containing x, via the face generated by
/// (I + A)^{n-1} x.
pub fn smallest_invariant_face_poly(
    cone: &GeneratorCone,
    a: &RatMatrix,
    x: &[Rational],
) -> Result<PolyFace> {
    if !cone.contains(x) {
        return Err(Error::NotInCone(
            "smallest invariant face needs a cone member".into(),
        ));
    }
    let reach = a.plus_identity().pow(cone.n as u32 - 1);
    face_of(cone, &reach.matvec(x))
}

/// Spectral pair of a face: the pair of any relative-interior point; the
/// canonical one is the sum of the face's generators.
pub fn face_spectral_pair_poly(
    cone: &GeneratorCone,
    a: &RatMatrix,
    face: &PolyFace,
    tol: &ToleranceConfig,
) -> Result<SpectralPair> {
    if face.is_zero() {
        return Ok(SpectralPair::zero());
    }
    spectral_pair(a, &cone.relint_point(face), tol)
}

/// Classification of an invariant face. The relative-interior eigenvector
/// flags need a rational face radius; they are None otherwise.
#[derive(Clone, Debug)]
pub struct PolyFaceClassification {
    pub invariant: bool,
    pub join_irreducible: bool,
    pub relint_gen_eigenvector: Option<bool>,
    pub relint_eigenvector: Option<bool>,
    pub semi_distinguished: Option<bool>,
    pub distinguished: bool,
    pub associated: Radius,
    pub spectral_pair: SpectralPair,
}

pub fn classify_face_poly(
    cone: &GeneratorCone,
    a: &RatMatrix,
    face: &PolyFace,
    tol: &ToleranceConfig,
    cap: usize,
) -> Result<PolyFaceClassification> {
    let lattice = invariant_face_lattice(cone, a, cap)?;
    classify_face_poly_in(cone, a, &lattice, face, tol)
}

/// Classification against a precomputed invariant-face lattice.
pub fn classify_face_poly_in(
    cone: &GeneratorCone,
    a: &RatMatrix,
    invariant: &PolyFaceLattice,
    face: &PolyFace,
    tol: &ToleranceConfig,
) -> Result<PolyFaceClassification> {
    let Some(face_idx) = invariant.position(face) else {
        return Err(Error::InvalidArgument(
            "classification is defined for invariant faces".into(),
        ));
    };
    let face = &invariant.faces[face_idx];
    let pair = face_spectral_pair_poly(cone, a, face, tol)?;
    let associated = pair.radius.clone();

    // Join-irreducibility inside the invariant lattice: the join of all
    // proper invariant subfaces must fall short of the face itself.
    let join_irreducible = if face.is_zero() {
        true
    } else {
        let mut accum = vec![Rational::zero(); cone.dimension()];
        for sub in &invariant.faces {
            if sub.is_strict_subface_of(face) {
                for (t, v) in accum.iter_mut().zip(cone.relint_point(sub)) {
                    *t += v;
                }
            }
        }
        let join = face_of(cone, &accum)?;
        join.generators != face.generators
    };

    // Distinguished: every nonzero proper invariant subface has a strictly
    // smaller radius.
    let mut distinguished = !face.is_zero();
    for sub in &invariant.faces {
        if !sub.is_zero() && sub.is_strict_subface_of(face) {
            let sub_pair = face_spectral_pair_poly(cone, a, sub, tol)?;
            if !sub_pair.radius.lt(&associated, tol) {
                distinguished = false;
                break;
            }
        }
    }

    let (relint_gen_eigenvector, relint_eigenvector) = match associated.exact() {
        None => (None, None),
        Some(rho) => {
            let rho = rho.clone();
            let gen = relint_witness_exists(cone, a, face, &rho, face.dim.max(1) as u32)?;
            let eig = relint_witness_exists(cone, a, face, &rho, 1)?;
            (Some(gen), Some(eig))
        }
    };
    let semi_distinguished = relint_gen_eigenvector.map(|g| join_irreducible && g);
    Ok(PolyFaceClassification {
        invariant: true,
        join_irreducible,
        relint_gen_eigenvector,
        relint_eigenvector,
        semi_distinguished,
        distinguished,
        associated,
        spectral_pair: pair,
    })
}

/// Does the relative interior of the face hold a vector annihilated by
/// (ρI − A)^power? Tested as feasibility of (ρI − A)^power G c = 0 with
/// every generator coefficient at least one.
fn relint_witness_exists(
    cone: &GeneratorCone,
    a: &RatMatrix,
    face: &PolyFace,
    rho: &Rational,
    power: u32,
) -> Result<bool> {
    if face.is_zero() {
        return Ok(false);
    }
    let shift = a.lambda_i_minus(rho).pow(power);
    let cols: Vec<Vec<Rational>> = face
        .generators
        .iter()
        .map(|&g| cone.generators()[g].clone())
        .collect();
    let shifted_gens = &shift * &matrix_from_columns(cone.dimension(), &cols);
    let prob = crate::ratmath::LpProblem::new(
        shifted_gens,
        vec![Rational::zero(); cone.dimension()],
        vec![Some(Rational::one()); face.generators.len()],
        vec![Rational::zero(); face.generators.len()],
        crate::ratmath::LpSense::Minimize,
    );
    Ok(matches!(
        crate::ratmath::lp_solve(&prob),
        crate::ratmath::LpOutcome::Optimal { .. }
    ))
}

/// Parses the JSON cone format {"n": int, "generators": [["1","0","1"], ...]}
/// with rational strings.
pub fn parse_cone_json(text: &str) -> Result<GeneratorCone> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("cone JSON: {e}")))?;
    let n = value
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Error::Parse("cone JSON needs an integer field \"n\"".into()))?
        as usize;
    let gens_value = value
        .get("generators")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("cone JSON needs a \"generators\" array".into()))?;
    let mut generators = Vec::with_capacity(gens_value.len());
    for (gi, gen) in gens_value.iter().enumerate() {
        let arr = gen
            .as_array()
            .ok_or_else(|| Error::Parse(format!("generator {} is not an array", gi + 1)))?;
        if arr.len() != n {
            return Err(Error::Parse(format!(
                "generator {} has {} entries, expected {}",
                gi + 1,
                arr.len(),
                n
            )));
        }
        let mut v = Vec::with_capacity(n);
        for entry in arr {
            let s = match entry {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(x) => x.to_string(),
                _ => return Err(Error::Parse("generator entries must be strings".into())),
            };
            v.push(crate::ratmath::parse_rational(&s)?);
        }
        generators.push(v);
    }
    build_cone(generators)
}

/// Renders a cone in the JSON input format.
pub fn cone_to_json(cone: &GeneratorCone) -> serde_json::Value {
    serde_json::json!({
        "n": cone.dimension(),
        "generators": cone
            .generators()
            .iter()
            .map(|g| g.iter().map(crate::ratmath::format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{rat_int, RatMatrix};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn square_cone() -> GeneratorCone {
        build_cone(vec![
            vec![rat_int(1), rat_int(0), rat_int(1)],
            vec![rat_int(-1), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
            vec![rat_int(0), rat_int(-1), rat_int(1)],
        ])
        .unwrap()
    }

    #[test]
    fn orthant_self_dual() {
        let k = GeneratorCone::orthant(4).unwrap();
        let mut normals = k.facet_normals().to_vec();
        normals.sort();
        let mut expected = k.generators().to_vec();
        expected.sort();
        assert_eq!(normals, expected);
    }

    #[test]
    fn square_cone_facets() {
        let k = square_cone();
        let mut expected = [
            vec![rat_int(1), rat_int(1), rat_int(1)],
            vec![rat_int(-1), rat_int(1), rat_int(1)],
            vec![rat_int(1), rat_int(-1), rat_int(1)],
            vec![rat_int(-1), rat_int(-1), rat_int(1)],
        ];
        expected.sort();
        assert_eq!(k.facet_normals(), &expected[..]);
    }

    #[test]
    fn unpointed_rejected() {
        let err = build_cone(vec![vec![rat_int(1)], vec![rat_int(-1)]]).unwrap_err();
        assert!(matches!(err, Error::InvalidCone(ref m) if m.contains("not pointed")));
    }

    #[test]
    fn membership_certificates() {
        let k = GeneratorCone::orthant(3).unwrap();
        let inside = membership(&k, &[rat_int(1), rat_int(0), rat_int(2)]).unwrap();
        assert!(inside.inside && inside.combination.is_some());

        let k = square_cone();
        let out = membership(&k, &[rat_int(0), rat_int(0), rat_int(-1)]).unwrap();
        assert!(!out.inside);
        let violated = out.violated_facet.unwrap();
        assert!(dot(
            &k.facet_normals()[violated],
            &[rat_int(0), rat_int(0), rat_int(-1)]
        )
        .is_negative());

        let zero = membership(&k, &[rat_int(0), rat_int(0), rat_int(0)]).unwrap();
        assert!(zero.inside);
    }

    #[test]
    fn face_of_examples() {
        let k = GeneratorCone::orthant(3).unwrap();
        let f = face_of(&k, &[rat_int(1), rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(f.generators, vec![0, 1]);
        assert_eq!(f.dim, 2);

        let k = square_cone();
        let interior = face_of(&k, &[rat_int(0), rat_int(0), rat_int(1)]).unwrap();
        assert_eq!(interior.generators, vec![0, 1, 2, 3]);

        let zero = face_of(&k, &[rat_int(0), rat_int(0), rat_int(0)]).unwrap();
        assert!(zero.is_zero());
        assert_eq!(zero.tight.len(), k.facet_normals().len());
    }

    #[test]
    fn face_lattice_counts() {
        let k = GeneratorCone::orthant(3).unwrap();
        assert_eq!(face_lattice(&k, 4096).unwrap().faces.len(), 8);

        let k = square_cone();
        assert_eq!(face_lattice(&k, 4096).unwrap().faces.len(), 10);

        let ray = build_cone(vec![vec![rat_int(1)]]).unwrap();
        assert_eq!(face_lattice(&ray, 4096).unwrap().faces.len(), 2);
    }

    #[test]
    fn cone_preserving_checks() {
        let k = GeneratorCone::orthant(2).unwrap();
        let nonneg = RatMatrix::from_integers(&[&[1, 2], &[0, 1]]);
        assert!(is_cone_preserving(&k, &nonneg).unwrap());
        let rot = RatMatrix::from_integers(&[&[0, -1], &[1, 0]]);
        assert!(!is_cone_preserving(&k, &rot).unwrap());
        let k3 = square_cone();
        assert!(is_cone_preserving(&k3, &RatMatrix::identity(3)).unwrap());
    }

    #[test]
    fn invariant_lattice_shift_example() {
        // A e2 = e1 leaves only 0, the ray of e1, and the whole orthant.
        let k = GeneratorCone::orthant(2).unwrap();
        let a = RatMatrix::from_integers(&[&[0, 1], &[0, 0]]);
        let lat = invariant_face_lattice(&k, &a, 4096).unwrap();
        let gens: Vec<Vec<usize>> = lat.faces.iter().map(|f| f.generators.clone()).collect();
        assert_eq!(gens, vec![vec![], vec![0], vec![0, 1]]);

        let id_lat = invariant_face_lattice(&k, &RatMatrix::identity(2), 4096).unwrap();
        assert_eq!(id_lat.faces.len(), 4);
    }

    #[test]
    fn smallest_invariant_face_examples() {
        let k = GeneratorCone::orthant(3).unwrap();
        let a = crate::fixtures::fixture("sec7-3x3").unwrap();
        let f =
            smallest_invariant_face_poly(&k, &a, &[rat_int(0), rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(f.generators, vec![0, 1]);

        let id = RatMatrix::identity(3);
        let x = vec![rat_int(2), rat_int(0), rat_int(1)];
        let f = smallest_invariant_face_poly(&k, &id, &x).unwrap();
        assert_eq!(f, face_of(&k, &x).unwrap());

        let zero = vec![rat_int(0); 3];
        assert!(smallest_invariant_face_poly(&k, &id, &zero)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn face_pairs_and_classification() {
        let k = GeneratorCone::orthant(2).unwrap();
        let a = crate::fixtures::fixture("sec4-2x2").unwrap();
        let lat = invariant_face_lattice(&k, &a, 4096).unwrap();
        let whole = lat.faces.last().unwrap();
        let pair = face_spectral_pair_poly(&k, &a, whole, &tol()).unwrap();
        assert_eq!(pair.radius.exact().unwrap(), &rat_int(1));
        assert_eq!(pair.order, 1);

        let zero_pair = face_spectral_pair_poly(&k, &a, &lat.faces[0], &tol()).unwrap();
        assert!(zero_pair.exact_eq(&SpectralPair::zero()));

        // A = shift on the orthant plane: the whole cone is join-irreducible
        // and semi-distinguished with generalized eigenvector (1,1) of order 2.
        let shift = RatMatrix::from_integers(&[&[0, 1], &[0, 0]]);
        let lat = invariant_face_lattice(&k, &shift, 4096).unwrap();
        let whole = lat.faces.last().unwrap().clone();
        let c = classify_face_poly_in(&k, &shift, &lat, &whole, &tol()).unwrap();
        assert!(c.join_irreducible);
        assert_eq!(c.relint_gen_eigenvector, Some(true));
        assert_eq!(c.relint_eigenvector, Some(false));
        assert_eq!(c.semi_distinguished, Some(true));
        assert!(!c.distinguished);

        // The extreme ray of e1 is distinguished under the identity.
        let id = RatMatrix::identity(2);
        let lat = invariant_face_lattice(&k, &id, 4096).unwrap();
        let ray = lat
            .faces
            .iter()
            .find(|f| f.generators == vec![0])
            .unwrap()
            .clone();
        let c = classify_face_poly_in(&k, &id, &lat, &ray, &tol()).unwrap();
        assert!(c.distinguished);
        assert_eq!(c.relint_eigenvector, Some(true));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"n": 3, "generators": [["1","0","1"],["-1","0","1"],["0","1","1"],["0","-1","1"]]}"#;
        let k = parse_cone_json(text).unwrap();
        assert_eq!(k.dimension(), 3);
        let rendered = cone_to_json(&k).to_string();
        let k2 = parse_cone_json(&rendered).unwrap();
        assert_eq!(k.generators(), k2.generators());
    }
}
