//! The combinatorial layer of a nonnegative matrix: digraph, classes
//! (strongly connected components), accessibility, class taxonomy, initial
//! subsets, and class-chain computations.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratmath::{format_rational, RatMatrix, Rational};
use crate::spectra::{nonneg_spectral_radius, Radius, ToleranceConfig};

/// Bit mask over class indices; class counts are bounded by the matrix
/// dimension, capped at 64.
type ClassMask = u64;

#[derive(Clone, Debug)]
pub struct ClassInfo {
    /// Vertex members, 0-based, ascending.
    pub members: Vec<usize>,
    /// ρ(P_αα), exact when provably rational.
    pub radius: Radius,
    /// Radius ties with ρ(P).
    pub basic: bool,
    /// No other class has access to it.
    pub initial: bool,
    /// Has access to no other class.
    pub is_final: bool,
    /// Every other class with access to it has strictly smaller radius.
    pub distinguished: bool,
    /// Every other class with access to it has weakly smaller radius.
    pub semi_distinguished: bool,
}

/// Strongly connected component decomposition of G(P) with the accessibility
/// partial order, per-class Perron roots, and the taxonomy flags.
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct ClassStructure {
    n: usize,
    matrix: RatMatrix,
    classes: Vec<ClassInfo>,
    /// access[a] has bit b set iff class a has access to class b (reflexive).
    access: Vec<ClassMask>,
    class_of: Vec<usize>,
    spectral_radius: Radius,
}

/// An initial subset: an ancestor-closed union of classes, i.e. a set I with
/// no edges entering it from the outside.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct InitialSubset {
    pub members: Vec<usize>,
}

impl InitialSubset {
    pub fn empty() -> Self {
        InitialSubset {
            members: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &InitialSubset) -> bool {
        self.members.iter().all(|i| other.contains(*i))
    }

    pub fn union(&self, other: &InitialSubset) -> InitialSubset {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        InitialSubset { members }
    }

    pub fn intersection(&self, other: &InitialSubset) -> InitialSubset {
        InitialSubset {
            members: self
                .members
                .iter()
                .filter(|i| other.contains(**i))
                .copied()
                .collect(),
        }
    }
}

/// Computes the class structure of a nonnegative matrix: an edge i -> j
/// exists iff p_ij != 0, classes are the strongly connected components,
/// accessibility is the reflexive-transitive closure on the condensation,
/// and the radii feed the taxonomy flags.
pub fn build_classes(p: &RatMatrix, tol: &ToleranceConfig) -> Result<ClassStructure> {
    let n = p.require_square()?;
    p.require_nonnegative()?;
    if n > 64 {
        return Err(Error::Dimension(format!(
            "dimension {n} exceeds the supported cap of 64"
        )));
    }

    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| !p[(i, j)].is_zero()).collect())
        .collect();
    let comps = tarjan_scc(&adjacency);

    // Order classes topologically (ancestors first), tie-broken by smallest
    // member, so downstream output is deterministic.
    let mut comps: Vec<Vec<usize>> = comps
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_by_key(|c| c[0]);
    let order = topological_order(&comps, &adjacency);
    let comps: Vec<Vec<usize>> = order.into_iter().map(|i| comps[i].clone()).collect();

    let k = comps.len();
    let mut class_of = vec![0usize; n];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            class_of[v] = ci;
        }
    }

    // Direct edges between classes, then reflexive-transitive closure.
    let mut direct = vec![0 as ClassMask; k];
    for (ci, comp) in comps.iter().enumerate() {
        direct[ci] |= 1 << ci;
        for &v in comp {
            for &w in &adjacency[v] {
                direct[ci] |= 1 << class_of[w];
            }
        }
    }
    let mut access = direct.clone();
    // Classes are topologically ordered, so one reverse sweep closes the
    // relation.
    for a in (0..k).rev() {
        let mut targets = access[a];
        while targets != 0 {
            let b = targets.trailing_zeros() as usize;
            targets &= targets - 1;
            if b != a {
                access[a] |= access[b];
            }
        }
    }

    let radii: Vec<Radius> = comps
        .iter()
        .map(|comp| nonneg_spectral_radius(&p.principal_submatrix(comp), tol))
        .collect();
    let spectral_radius = max_radius(radii.iter(), tol).unwrap_or_else(Radius::zero);

    let mut classes = Vec::with_capacity(k);
    for (ci, comp) in comps.iter().enumerate() {
        let radius = radii[ci].clone();
        let accessed_by: Vec<usize> = (0..k)
            .filter(|&b| b != ci && access[b] >> ci & 1 == 1)
            .collect();
        let distinguished = accessed_by.iter().all(|&b| radii[b].lt(&radius, tol));
        let semi_distinguished = accessed_by.iter().all(|&b| radii[b].le(&radius, tol));
        classes.push(ClassInfo {
            members: comp.clone(),
            basic: radius.approx_eq(&spectral_radius, tol),
            initial: accessed_by.is_empty(),
            is_final: access[ci] == 1 << ci,
            distinguished,
            semi_distinguished,
            radius,
        });
    }

    Ok(ClassStructure {
        n,
        matrix: p.clone(),
        classes,
        access,
        class_of,
        spectral_radius,
    })
}

/// Maximum of a family of radii under the tolerance policy, preferring an
/// exact representative among near-ties.
pub fn max_radius<'a>(
    radii: impl Iterator<Item = &'a Radius>,
    tol: &ToleranceConfig,
) -> Option<Radius> {
    let mut best: Option<Radius> = None;
    for r in radii {
        match &best {
            None => best = Some(r.clone()),
            Some(cur) => {
                if cur.approx_eq(r, tol) {
                    if r.is_exact() && !cur.is_exact() {
                        best = Some(r.clone());
                    }
                } else if r.value() > cur.value() {
                    best = Some(r.clone());
                }
            }
        }
    }
    best
}

fn topological_order(comps: &[Vec<usize>], adjacency: &[Vec<usize>]) -> Vec<usize> {
    let k = comps.len();
    let mut class_of = vec![0usize; adjacency.len()];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            class_of[v] = ci;
        }
    }
    let mut preds = vec![0usize; k];
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (ci, comp) in comps.iter().enumerate() {
        for &v in comp {
            for &w in &adjacency[v] {
                let cj = class_of[w];
                if cj != ci && !succs[ci].contains(&cj) {
                    succs[ci].push(cj);
                    preds[cj] += 1;
                }
            }
        }
    }
    let mut ready: Vec<usize> = (0..k).filter(|&c| preds[c] == 0).collect();
    ready.sort_unstable_by_key(|&c| comps[c][0]);
    let mut order = Vec::with_capacity(k);
    while let Some(c) = ready.pop() {
        order.push(c);
        for &d in &succs[c] {
            preds[d] -= 1;
            if preds[d] == 0 {
                ready.push(d);
            }
        }
        ready.sort_unstable_by_key(|&c| std::cmp::Reverse(comps[c][0]));
    }
    debug_assert_eq!(order.len(), k);
    order
}

fn tarjan_scc(graph: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        graph: &'a [Vec<usize>],
        index: usize,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        comps: Vec<Vec<usize>>,
    }
    fn connect(v: usize, s: &mut State) {
        s.idx[v] = Some(s.index);
        s.low[v] = s.index;
        s.index += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for &w in &s.graph[v] {
            if s.idx[w].is_none() {
                connect(w, s);
                s.low[v] = s.low[v].min(s.low[w]);
            } else if s.on_stack[w] {
                s.low[v] = s.low[v].min(s.idx[w].unwrap());
            }
        }
        if s.low[v] == s.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().expect("stack underflow");
                s.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            s.comps.push(comp);
        }
    }
    let n = graph.len();
    let mut state = State {
        graph,
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if state.idx[v].is_none() {
            connect(v, &mut state);
        }
    }
    state.comps
}

impl ClassStructure {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of_vertex(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn spectral_radius(&self) -> &Radius {
        &self.spectral_radius
    }

    /// Class a has access to class b (reflexive).
    pub fn has_access(&self, a: usize, b: usize) -> bool {
        self.access[a] >> b & 1 == 1
    }

    /// Cover edges of the accessibility order on classes (transitive
    /// reduction of the condensation).
    pub fn access_covers(&self) -> Vec<(usize, usize)> {
        let k = self.classes.len();
        let mut covers = Vec::new();
        for a in 0..k {
            for b in 0..k {
                if a == b || !self.has_access(a, b) {
                    continue;
                }
                let intermediate = (0..k)
                    .any(|c| c != a && c != b && self.has_access(a, c) && self.has_access(c, b));
                if !intermediate {
                    covers.push((a, b));
                }
            }
        }
        covers
    }

    /// Distinguished classes whose radius ties with λ.
    pub fn distinguished_classes_at(&self, lambda: &Radius, tol: &ToleranceConfig) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| {
                self.classes[c].distinguished && self.classes[c].radius.approx_eq(lambda, tol)
            })
            .collect()
    }

    /// Semi-distinguished classes whose radius ties with λ.
    pub fn semi_distinguished_classes_at(
        &self,
        lambda: &Radius,
        tol: &ToleranceConfig,
    ) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| {
                self.classes[c].semi_distinguished && self.classes[c].radius.approx_eq(lambda, tol)
            })
            .collect()
    }
}

/// True iff P_{S'S} = 0: no edge from outside S enters S; equivalently S is
/// closed under "has access to S".
pub fn is_initial(s: &[usize], structure: &ClassStructure) -> bool {
    let p = &structure.matrix;
    let in_s = index_flags(structure.n, s);
    for i in 0..structure.n {
        if in_s[i] {
            continue;
        }
        for &j in s {
            if !p[(i, j)].is_zero() {
                return false;
            }
        }
    }
    true
}

fn index_flags(n: usize, s: &[usize]) -> Vec<bool> {
    let mut flags = vec![false; n];
    for &i in s {
        assert!(i < n, "index out of range");
        flags[i] = true;
    }
    flags
}

/// Smallest initial subset containing S: the union of all classes having
/// access to S. Idempotent and monotone.
pub fn initial_closure(s: &[usize], structure: &ClassStructure) -> InitialSubset {
    let mut class_mask: ClassMask = 0;
    for &v in s {
        assert!(v < structure.n, "index out of range");
        class_mask |= 1 << structure.class_of[v];
    }
    let mut members = Vec::new();
    for (ci, info) in structure.classes.iter().enumerate() {
        if structure.access[ci] & class_mask != 0 {
            members.extend_from_slice(&info.members);
        }
    }
    members.sort_unstable();
    InitialSubset { members }
}

/// The initial subset determined by a class: the union of all classes having
/// access to it.
pub fn initial_set_of_class(class_idx: usize, structure: &ClassStructure) -> InitialSubset {
    initial_closure(&structure.classes[class_idx].members, structure)
}

/// Classes contained in an initial subset, and among them the final ones
/// (those with access to no other class inside the subset).
pub fn classes_in_subset(structure: &ClassStructure, members: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = members.iter().map(|&v| structure.class_of[v]).collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub fn final_classes_in_collection(structure: &ClassStructure, collection: &[usize]) -> Vec<usize> {
    collection
        .iter()
        .copied()
        .filter(|&a| {
            collection
                .iter()
                .all(|&b| b == a || !structure.has_access(a, b))
        })
        .collect()
}

/// All initial subsets, i.e. all ancestor-closed unions of classes,
/// enumerated over the class condensation and returned in canonical order
/// (by size, then lexicographically).
pub fn enumerate_initial_subsets(
    structure: &ClassStructure,
    cap: usize,
) -> Result<Vec<InitialSubset>> {
    let k = structure.classes.len();
    // Direct predecessor masks: classes with direct-or-transitive access.
    // Ancestor closure only needs the transitive relation.
    let mut ancestors: Vec<ClassMask> = vec![0; k];
    for a in 0..k {
        for b in 0..k {
            if a != b && structure.has_access(a, b) {
                ancestors[b] |= 1 << a;
            }
        }
    }
    let mut masks: Vec<ClassMask> = vec![0];
    // Classes are in topological order (ancestors first): extend each
    // partial selection class by class.
    for c in 0..k {
        let need = ancestors[c];
        let mut next = Vec::with_capacity(masks.len() * 2);
        for m in &masks {
            next.push(*m);
            if m & need == need {
                next.push(m | 1 << c);
            }
        }
        if next.len() > cap {
            return Err(Error::CapExceeded {
                size: next.len(),
                cap,
            });
        }
        masks = next;
    }
    let mut subsets: Vec<InitialSubset> = masks
        .into_iter()
        .map(|m| {
            let mut members = Vec::new();
            for c in 0..k {
                if m >> c & 1 == 1 {
                    members.extend_from_slice(&structure.classes[c].members);
                }
            }
            members.sort_unstable();
            InitialSubset { members }
        })
        .collect();
    subsets.sort_by(|a, b| {
        a.members
            .len()
            .cmp(&b.members.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    subsets.dedup();
    Ok(subsets)
}

/// Longest chain of basic classes under accessibility, with one witnessing
/// chain (deterministic). Realizes the index of ρ(P).
pub fn longest_basic_chain(structure: &ClassStructure) -> (usize, Vec<usize>) {
    let eligible: Vec<usize> = (0..structure.classes.len())
        .filter(|&c| structure.classes[c].basic)
        .collect();
    longest_chain_among(structure, &eligible)
}

/// Longest chain of semi-distinguished classes associated with λ; its length
/// is the maximal order of distinguished generalized eigenvectors for λ.
pub fn longest_semidistinguished_chain(
    structure: &ClassStructure,
    lambda: &Radius,
    tol: &ToleranceConfig,
) -> Result<(usize, Vec<usize>)> {
    if structure.distinguished_classes_at(lambda, tol).is_empty() {
        return Err(Error::NotDistinguished(format!(
            "{lambda} matches no distinguished class radius"
        )));
    }
    let eligible = structure.semi_distinguished_classes_at(lambda, tol);
    Ok(longest_chain_among(structure, &eligible))
}

/// Longest chain (totally ordered by accessibility) among the given classes.
pub fn longest_chain_among(structure: &ClassStructure, eligible: &[usize]) -> (usize, Vec<usize>) {
    // Classes are topologically ordered (ancestors first); a chain following
    // accessibility descends in that order, so a reverse DP suffices.
    let k = structure.classes.len();
    let mut in_set = vec![false; k];
    for &c in eligible {
        in_set[c] = true;
    }
    let mut best_len = vec![0usize; k];
    let mut best_next: Vec<Option<usize>> = vec![None; k];
    for a in (0..k).rev() {
        if !in_set[a] {
            continue;
        }
        best_len[a] = 1;
        for b in a + 1..k {
            if in_set[b] && b != a && structure.has_access(a, b) {
                let cand = 1 + best_len[b];
                let better = cand > best_len[a]
                    || (cand == best_len[a]
                        && best_next[a].is_some_and(|cur| {
                            structure.classes[b].members < structure.classes[cur].members
                        }));
                if better {
                    best_len[a] = cand;
                    best_next[a] = Some(b);
                }
            }
        }
    }
    let Some(&start) = eligible.iter().max_by(|&&a, &&b| {
        best_len[a].cmp(&best_len[b]).then_with(|| {
            structure.classes[b]
                .members
                .cmp(&structure.classes[a].members)
        })
    }) else {
        return (0, Vec::new());
    };
    let mut chain = Vec::new();
    let mut cur = Some(start);
    while let Some(c) = cur {
        chain.push(c);
        cur = best_next[c];
    }
    (best_len[start], chain)
}

/// Formats a class's member set 1-based, e.g. "{2,3}".
pub fn format_class(members: &[usize]) -> String {
    let inner: Vec<String> = members.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Formats a class radius for labels.
pub fn format_radius(r: &Radius) -> String {
    match r {
        Radius::Exact(x) => format_rational(x),
        Radius::Approx(v) => format!("{:.6}", v),
    }
}

/// Rational radius value of a class, when exact.
pub fn exact_radius(structure: &ClassStructure, class_idx: usize) -> Option<Rational> {
    structure.classes[class_idx].radius.exact().cloned()
}

/// Convenience: the radius as f64 (used in reports).
pub fn radius_value(r: &Radius) -> f64 {
    r.value()
}

/// All distinct distinguished eigenvalues with their witnessing classes,
/// deduplicated under the tolerance and sorted ascending. Exact values are
/// preferred as representatives.
pub fn distinguished_eigenvalue_groups(
    structure: &ClassStructure,
    tol: &ToleranceConfig,
) -> Vec<(Radius, Vec<usize>)> {
    let mut groups: Vec<(Radius, Vec<usize>)> = Vec::new();
    for (ci, info) in structure.classes.iter().enumerate() {
        if !info.distinguished {
            continue;
        }
        match groups
            .iter_mut()
            .find(|(r, _)| r.approx_eq(&info.radius, tol))
        {
            Some((r, list)) => {
                if info.radius.is_exact() && !r.is_exact() {
                    *r = info.radius.clone();
                }
                list.push(ci);
            }
            None => groups.push((info.radius.clone(), vec![ci])),
        }
    }
    groups.sort_by(|a, b| a.0.value().partial_cmp(&b.0.value()).unwrap());
    groups
}
