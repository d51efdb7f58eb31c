//! DOT renderings of the class condensation and of invariant-face Hasse
//! diagrams. Node order is canonical and output is byte-deterministic.

use std::fmt::Write;

use crate::classes::{format_class, format_radius, ClassStructure};
use crate::orthantfaces::{classify_face, SubsetFaceLattice};
use crate::polycone::{classify_face_poly_in, GeneratorCone, PolyFaceLattice};
use crate::ratmath::RatMatrix;
use crate::spectra::ToleranceConfig;

/// Class condensation digraph: one node per class, edges are accessibility
/// covers, labels carry the member set, the radius, and taxonomy letters.
pub fn classes_dot(structure: &ClassStructure) -> String {
    let mut out = String::from("digraph classes {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, c) in structure.classes().iter().enumerate() {
        let mut letters = String::new();
        if c.basic {
            letters.push_str("[B]");
        }
        if c.distinguished {
            letters.push_str("[D]");
        }
        if c.semi_distinguished {
            letters.push_str("[SD]");
        }
        let label = format!(
            "{} rho={}{}{}",
            format_class(&c.members),
            format_radius(&c.radius),
            if letters.is_empty() { "" } else { " " },
            letters
        );
        let _ = writeln!(out, "  c{i} [label=\"{label}\"];");
    }
    for (a, b) in structure.access_covers() {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    out.push_str("}\n");
    out
}

/// Invariant-face Hasse diagram of the orthant; Hasse covers only, node
/// labels carry the index set, the face radius, the spectral pair, and the
/// classification letters M/J/D/SD.
pub fn faces_dot(
    structure: &ClassStructure,
    lattice: &SubsetFaceLattice,
    tol: &ToleranceConfig,
) -> String {
    let mut out = String::from("digraph faces {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, face) in lattice.faces.iter().enumerate() {
        let c = classify_face(structure, &face.indices, tol);
        let mut letters = String::new();
        if c.minimal_nonzero {
            letters.push('M');
        }
        if c.join_irreducible {
            letters.push('J');
        }
        if c.distinguished {
            letters.push('D');
        }
        if c.semi_distinguished {
            letters.push_str("SD");
        }
        let label = format!(
            "{} rho={} sp={}{}{}",
            face.display(),
            format_radius(&c.associated),
            c.spectral_pair,
            if letters.is_empty() { "" } else { " " },
            letters
        );
        let _ = writeln!(out, "  f{i} [label=\"{label}\"];");
    }
    for (low, high) in &lattice.covers {
        let _ = writeln!(out, "  f{low} -> f{high};");
    }
    out.push_str("}\n");
    out
}

/// Invariant-face Hasse diagram for a generator cone; faces are labeled by
/// generator index sets.
pub fn poly_faces_dot(
    cone: &GeneratorCone,
    a: &RatMatrix,
    lattice: &PolyFaceLattice,
    tol: &ToleranceConfig,
) -> String {
    let mut out = String::from("digraph faces {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, face) in lattice.faces.iter().enumerate() {
        let class = classify_face_poly_in(cone, a, lattice, face, tol);
        let label = match class {
            Ok(c) => {
                let mut letters = String::new();
                if c.join_irreducible {
                    letters.push('J');
                }
                if c.distinguished {
                    letters.push('D');
                }
                if c.semi_distinguished == Some(true) {
                    letters.push_str("SD");
                }
                format!(
                    "{} sp={}{}{}",
                    format_class(&face.generators),
                    c.spectral_pair,
                    if letters.is_empty() { "" } else { " " },
                    letters
                )
            }
            Err(_) => format_class(&face.generators),
        };
        let _ = writeln!(out, "  f{i} [label=\"{label}\"];");
    }
    for (low, high) in &lattice.covers {
        let _ = writeln!(out, "  f{low} -> f{high};");
    }
    out.push_str("}\n");
    out
}
