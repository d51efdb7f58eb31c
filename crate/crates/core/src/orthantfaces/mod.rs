//! Faces of the nonnegative orthant, encoded as index subsets.
//!
//! The invariant faces of the orthant under a nonnegative matrix are exactly
//! the faces supported on initial subsets, so the whole lattice lives on the
//! class structure and every flag of the classification is derived
//! combinatorially. Kernel-based definitions serve only as test oracles.

pub mod checkers;
pub mod vectors;

use crate::classes::{
    classes_in_subset, enumerate_initial_subsets, final_classes_in_collection, initial_closure,
    is_initial, ClassStructure, InitialSubset,
};
use crate::error::{Error, Result};
use crate::ratmath::{support, Rational};
use crate::spectra::{Radius, SpectralPair, ToleranceConfig};

pub use checkers::{
    check_conditions_64, check_theorem_71, check_theorem_72, Conditions64Report, Theorem71Report,
    Theorem72Report,
};
pub use vectors::{eigencone_basis, fv_vector, nonnegative_basis, ConeVector};

/// A face F_I = {x >= 0 : supp(x) ⊆ I} of the nonnegative orthant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubsetFace {
    /// 0-based indices, ascending.
    pub indices: Vec<usize>,
}

impl SubsetFace {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        SubsetFace { indices }
    }

    pub fn zero() -> Self {
        SubsetFace {
            indices: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn is_subface_of(&self, other: &SubsetFace) -> bool {
        self.indices.iter().all(|i| other.contains(*i))
    }

    pub fn is_strict_subface_of(&self, other: &SubsetFace) -> bool {
        self.indices.len() < other.indices.len() && self.is_subface_of(other)
    }

    pub fn comparable(&self, other: &SubsetFace) -> bool {
        self.is_subface_of(other) || other.is_subface_of(self)
    }

    pub fn union(&self, other: &SubsetFace) -> SubsetFace {
        let mut v = self.indices.clone();
        v.extend_from_slice(&other.indices);
        SubsetFace::new(v)
    }

    /// Standard relative-interior point: the indicator vector of I.
    pub fn indicator(&self, n: usize) -> Vec<Rational> {
        use num_traits::{One, Zero};
        let mut v = vec![Rational::zero(); n];
        for &i in &self.indices {
            v[i] = Rational::one();
        }
        v
    }

    /// Renders 1-based, e.g. "{2,3,4}".
    pub fn display(&self) -> String {
        crate::classes::format_class(&self.indices)
    }
}

impl From<InitialSubset> for SubsetFace {
    fn from(s: InitialSubset) -> Self {
        SubsetFace { indices: s.members }
    }
}

/// The lattice of invariant faces with Hasse covers; faces in canonical
/// order (size, then lexicographic).
#[derive(Clone, Debug)]
pub struct SubsetFaceLattice {
    pub faces: Vec<SubsetFace>,
    pub covers: Vec<(usize, usize)>,
}

impl SubsetFaceLattice {
    pub fn position(&self, face: &SubsetFace) -> Option<usize> {
        self.faces.iter().position(|f| f == face)
    }
}

/// All invariant faces of the orthant: exactly the faces of initial subsets.
pub fn invariant_face_lattice(structure: &ClassStructure, cap: usize) -> Result<SubsetFaceLattice> {
    let faces: Vec<SubsetFace> = enumerate_initial_subsets(structure, cap)?
        .into_iter()
        .map(SubsetFace::from)
        .collect();
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
    Ok(SubsetFaceLattice { faces, covers })
}

/// Smallest invariant face containing a nonnegative vector: the face of the
/// initial closure of its support.
pub fn smallest_invariant_face(structure: &ClassStructure, x: &[Rational]) -> Result<SubsetFace> {
    use num_traits::Signed;
    if x.len() != structure.dimension() {
        return Err(Error::Dimension(
            "vector length does not match the matrix".into(),
        ));
    }
    if x.iter().any(Signed::is_negative) {
        return Err(Error::InvalidArgument("vector must be nonnegative".into()));
    }
    Ok(SubsetFace::from(initial_closure(&support(x), structure)))
}

/// The radius associated with a face: the largest class radius inside the
/// initial closure of its index set. Exact representatives win ties.
pub fn face_radius(structure: &ClassStructure, indices: &[usize], tol: &ToleranceConfig) -> Radius {
    let closed = initial_closure(indices, structure);
    let inside = classes_in_subset(structure, &closed.members);
    crate::classes::max_radius(inside.iter().map(|&c| &structure.classes()[c].radius), tol)
        .unwrap_or_else(Radius::zero)
}

/// Spectral pair of a face: radius is the maximal class radius in the
/// initial closure, order the longest chain of classes attaining it.
pub fn face_spectral_pair(
    structure: &ClassStructure,
    indices: &[usize],
    tol: &ToleranceConfig,
) -> SpectralPair {
    let closed = initial_closure(indices, structure);
    if closed.is_empty() {
        return SpectralPair::zero();
    }
    let radius = face_radius(structure, &closed.members, tol);
    let inside = classes_in_subset(structure, &closed.members);
    let attaining: Vec<usize> = inside
        .into_iter()
        .filter(|&c| structure.classes()[c].radius.approx_eq(&radius, tol))
        .collect();
    let (order, _) = crate::classes::longest_chain_among(structure, &attaining);
    SpectralPair::new(radius, order)
}

/// Full combinatorial classification of a face. For a non-initial index set
/// only `invariant` is false; the remaining flags describe the initial
/// closure.
#[derive(Clone, Debug)]
pub struct FaceClassification {
    pub invariant: bool,
    pub minimal_nonzero: bool,
    pub join_irreducible: bool,
    pub relint_gen_eigenvector: bool,
    pub relint_eigenvector: bool,
    pub semi_distinguished: bool,
    pub distinguished: bool,
    pub associated: Radius,
    pub spectral_pair: SpectralPair,
}

pub fn classify_face(
    structure: &ClassStructure,
    indices: &[usize],
    tol: &ToleranceConfig,
) -> FaceClassification {
    let invariant = is_initial(indices, structure);
    let closed = initial_closure(indices, structure);
    let spectral_pair = face_spectral_pair(structure, &closed.members, tol);
    let associated = spectral_pair.radius.clone();
    if closed.is_empty() {
        return FaceClassification {
            invariant,
            minimal_nonzero: false,
            join_irreducible: true,
            relint_gen_eigenvector: false,
            relint_eigenvector: false,
            semi_distinguished: false,
            distinguished: false,
            associated,
            spectral_pair,
        };
    }
    let collection = classes_in_subset(structure, &closed.members);
    let finals = final_classes_in_collection(structure, &collection);
    let minimal_nonzero = collection.len() == 1;
    let join_irreducible = finals.len() == 1;
    let common_value = finals.iter().all(|&a| {
        structure.classes()[a]
            .radius
            .approx_eq(&structure.classes()[finals[0]].radius, tol)
    });
    let relint_gen_eigenvector = common_value
        && finals
            .iter()
            .all(|&a| structure.classes()[a].semi_distinguished);
    let relint_eigenvector =
        common_value && finals.iter().all(|&a| structure.classes()[a].distinguished);
    FaceClassification {
        invariant,
        minimal_nonzero,
        join_irreducible,
        relint_gen_eigenvector,
        relint_eigenvector,
        semi_distinguished: join_irreducible && relint_gen_eigenvector,
        distinguished: join_irreducible && relint_eigenvector,
        associated,
        spectral_pair,
    }
}

/// Distinguished eigenvalues with their witnessing classes:
/// {ρ(P_αα) : α distinguished}, deduplicated under the tolerance.
pub fn distinguished_eigenvalues(
    structure: &ClassStructure,
    tol: &ToleranceConfig,
) -> Vec<(Radius, Vec<usize>)> {
    crate::classes::distinguished_eigenvalue_groups(structure, tol)
}

/// The invariant face {x >= 0 : sp(x) ⪯ (λ, k)}: the union of the faces
/// determined by classes whose face pair is bounded by (λ, k).
pub fn sublevel_face(
    structure: &ClassStructure,
    lambda: &Radius,
    k: usize,
    tol: &ToleranceConfig,
) -> Result<SubsetFace> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "the order bound must be at least 1".into(),
        ));
    }
    if lambda.value() < 0.0 {
        return Err(Error::InvalidArgument(
            "the radius bound must be nonnegative".into(),
        ));
    }
    let bound = SpectralPair::new(lambda.clone(), k);
    let mut out = SubsetFace::zero();
    for c in 0..structure.class_count() {
        let face = crate::classes::initial_set_of_class(c, structure);
        let pair = face_spectral_pair(structure, &face.members, tol);
        if pair.preceq(&bound, tol) {
            out = out.union(&SubsetFace::from(face));
        }
    }
    Ok(out)
}

/// The invariant face {x >= 0 : ρ_x < λ}.
pub fn strict_sublevel_face(
    structure: &ClassStructure,
    lambda: &Radius,
    tol: &ToleranceConfig,
) -> Result<SubsetFace> {
    if lambda.value() <= 0.0 {
        return Err(Error::InvalidArgument(
            "the radius bound must be positive".into(),
        ));
    }
    let mut out = SubsetFace::zero();
    for c in 0..structure.class_count() {
        let face = crate::classes::initial_set_of_class(c, structure);
        let radius = face_radius(structure, &face.members, tol);
        if radius.lt(lambda, tol) {
            out = out.union(&SubsetFace::from(face));
        }
    }
    Ok(out)
}
