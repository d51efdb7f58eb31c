//! Eigenvector machinery on the orthant: the classical eigenvectors
//! supported on the closure of a distinguished class, the simplicial
//! eigencone basis, and the nonnegative basis of a generalized eigenspace.

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::classes::{initial_set_of_class, ClassStructure};
use crate::error::{Error, Result};
use crate::ratmath::{linalg, lp_solve, LpOutcome, LpProblem, LpSense, RatMatrix, Rational};
use crate::spectra::{Radius, ToleranceConfig};

/// A cone vector produced in exact or numeric mode.
#[derive(Clone, Debug)]
pub enum ConeVector {
    Exact(Vec<Rational>),
    Numeric(Vec<f64>),
}

impl ConeVector {
    pub fn len(&self) -> usize {
        match self {
            ConeVector::Exact(v) => v.len(),
            ConeVector::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ConeVector::Exact(_))
    }

    /// Support of the vector. Exact entries compare against zero; numeric
    /// entries against a small absolute threshold (the vectors are
    /// normalized to maximum entry one).
    pub fn support(&self) -> Vec<usize> {
        match self {
            ConeVector::Exact(v) => crate::ratmath::support(v),
            ConeVector::Numeric(v) => v
                .iter()
                .enumerate()
                .filter(|(_, x)| x.abs() > 1e-9)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            ConeVector::Exact(v) => v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect(),
            ConeVector::Numeric(v) => v.clone(),
        }
    }
}

/// The unique (up to scale) eigenvector of P supported exactly on the
/// closure of a distinguished class, normalized to maximum entry one.
///
/// Exact mode runs when the class radius is rational: the Perron vector of
/// the class block comes from an exact kernel, and the strictly dominated
/// remainder solves a nonsingular linear system. Otherwise power iteration
/// on the closure block (plus identity) runs to the residual threshold.
pub fn fv_vector(
    structure: &ClassStructure,
    class_idx: usize,
    tol: &ToleranceConfig,
) -> Result<ConeVector> {
    let info = &structure.classes()[class_idx];
    if !info.distinguished {
        return Err(Error::NotDistinguished(format!(
            "class {} is not distinguished",
            crate::classes::format_class(&info.members)
        )));
    }
    let closure = initial_set_of_class(class_idx, structure);
    let p = structure.matrix();
    match info.radius.exact() {
        Some(lambda) => {
            let lambda = lambda.clone();
            let alpha = &info.members;
            let rest: Vec<usize> = closure
                .members
                .iter()
                .copied()
                .filter(|i| !alpha.contains(i))
                .collect();

            // Perron vector of the class block, from the exact kernel.
            let block = p.principal_submatrix(alpha);
            let shifted = block.lambda_i_minus(&lambda);
            let (_, kernel) = linalg::rank_and_kernel(&shifted);
            if kernel.len() != 1 {
                return Err(Error::Internal(format!(
                    "class eigenspace has dimension {}, expected 1",
                    kernel.len()
                )));
            }
            let mut u = kernel.into_iter().next().unwrap();
            if u.iter().any(Signed::is_negative) {
                let all_nonpos = u.iter().all(|x| !x.is_positive());
                if !all_nonpos {
                    return Err(Error::Internal("class eigenvector changes sign".into()));
                }
                for x in &mut u {
                    *x = -x.clone();
                }
            }
            if u.iter().any(Zero::is_zero) {
                return Err(Error::Internal("class eigenvector has a zero entry".into()));
            }

            let mut full = vec![Rational::zero(); structure.dimension()];
            for (pos, &i) in alpha.iter().enumerate() {
                full[i] = u[pos].clone();
            }
            if !rest.is_empty() {
                // (λI − P_JJ) x_J = P_Jα u, nonsingular since every other
                // class in the closure has a strictly smaller radius.
                let p_jj = p.submatrix(&rest, &rest);
                let p_ja = p.submatrix(&rest, alpha);
                let rhs = p_ja.matvec(&u);
                let lhs = p_jj.lambda_i_minus(&lambda);
                let Some(x_j) = linalg::solve(&lhs, &rhs) else {
                    return Err(Error::Internal("dominated block system is singular".into()));
                };
                for (pos, &i) in rest.iter().enumerate() {
                    if !x_j[pos].is_positive() {
                        return Err(Error::Internal(
                            "eigenvector entry vanishes on the closure".into(),
                        ));
                    }
                    full[i] = x_j[pos].clone();
                }
            }
            // Sanity: an exact eigenvector supported exactly on the closure.
            let image = p.matvec(&full);
            let scaled: Vec<Rational> = full.iter().map(|x| x * &lambda).collect();
            if image != scaled {
                return Err(Error::Internal("exact eigenvector equation failed".into()));
            }
            let max = full.iter().max().cloned().unwrap();
            let normalized: Vec<Rational> = full.iter().map(|x| x / &max).collect();
            Ok(ConeVector::Exact(normalized))
        }
        None => {
            let idx = &closure.members;
            let block = p.principal_submatrix(idx).to_f64();
            let m = idx.len();
            let lambda = info.radius.value();
            let mut x = vec![1.0f64; m];
            let budget = tol.max_iters.min(200_000);
            let mut converged = false;
            for _ in 0..budget {
                let y: Vec<f64> = (0..m)
                    .map(|i| block[i].iter().zip(&x).map(|(a, v)| a * v).sum::<f64>() + x[i])
                    .collect();
                let max = y.iter().cloned().fold(0.0f64, f64::max);
                x = y.into_iter().map(|v| v / max).collect();
                let residual = (0..m)
                    .map(|i| {
                        let bx: f64 = block[i].iter().zip(&x).map(|(a, v)| a * v).sum();
                        (bx - lambda * x[i]).abs()
                    })
                    .fold(0.0f64, f64::max);
                if residual <= tol.power_tol * lambda.max(1.0) {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(Error::NoConvergence(budget));
            }
            let max = x.iter().cloned().fold(0.0f64, f64::max);
            let mut full = vec![0.0f64; structure.dimension()];
            for (pos, &i) in idx.iter().enumerate() {
                full[i] = x[pos] / max;
            }
            Ok(ConeVector::Numeric(full))
        }
    }
}

/// One eigenvector per distinguished class associated with λ: the extreme
/// vectors of the eigencone N(λI − P) ∩ K, which is simplicial.
pub fn eigencone_basis(
    structure: &ClassStructure,
    lambda: &Radius,
    tol: &ToleranceConfig,
) -> Result<Vec<ConeVector>> {
    let witnesses = structure.distinguished_classes_at(lambda, tol);
    if witnesses.is_empty() {
        return Err(Error::NotDistinguished(format!(
            "{lambda} matches no distinguished class"
        )));
    }
    let vectors: Vec<ConeVector> = witnesses
        .iter()
        .map(|&c| fv_vector(structure, c, tol))
        .collect::<Result<_>>()?;
    // Supports are pairwise incomparable, which already forces linear
    // independence; exact vectors get the rank check too.
    for i in 0..vectors.len() {
        for j in 0..vectors.len() {
            if i != j {
                let si = vectors[i].support();
                let sj = vectors[j].support();
                if si.iter().all(|v| sj.contains(v)) {
                    return Err(Error::Internal("eigencone supports are nested".into()));
                }
            }
        }
    }
    let exact: Vec<Vec<Rational>> = vectors
        .iter()
        .filter_map(|v| match v {
            ConeVector::Exact(x) => Some(x.clone()),
            ConeVector::Numeric(_) => None,
        })
        .collect();
    if exact.len() == vectors.len() && !linalg::linearly_independent(&exact) {
        return Err(Error::Internal(
            "eigencone basis is linearly dependent".into(),
        ));
    }
    Ok(vectors)
}

/// A basis of the span of the nonnegative generalized eigenvectors for a
/// rational distinguished eigenvalue: one vector per semi-distinguished
/// class associated with λ, strictly positive exactly on the class closure.
///
/// Each vector comes from an exact feasibility program on the closure block
/// Q: maximize t subject to (λI − Q)^d w = 0, Σw = 1, w_i ≥ t; the theorem
/// guarantees an optimum with t > 0.
pub fn nonnegative_basis(
    structure: &ClassStructure,
    lambda: &Rational,
    tol: &ToleranceConfig,
) -> Result<Vec<Vec<Rational>>> {
    let lambda_radius = Radius::Exact(lambda.clone());
    if structure
        .distinguished_classes_at(&lambda_radius, tol)
        .is_empty()
    {
        return Err(Error::NotDistinguished(format!(
            "{} is not a distinguished eigenvalue",
            crate::ratmath::format_rational(lambda)
        )));
    }
    let classes = structure.semi_distinguished_classes_at(&lambda_radius, tol);
    let n = structure.dimension();
    let p = structure.matrix();
    let mut basis = Vec::with_capacity(classes.len());
    for c in classes {
        let closure = initial_set_of_class(c, structure);
        let idx = &closure.members;
        let d = idx.len();
        let q = p.principal_submatrix(idx);
        let annihilator = q.lambda_i_minus(lambda).pow(d as u32);

        // Variables: w_0..w_{d-1}, t, s_0..s_{d-1} with w_i - t - s_i = 0.
        let vars = 2 * d + 1;
        let mut lhs = RatMatrix::zero(d + 1 + d, vars);
        let mut rhs = vec![Rational::zero(); d + 1 + d];
        for i in 0..d {
            for j in 0..d {
                lhs[(i, j)] = annihilator[(i, j)].clone();
            }
        }
        for j in 0..d {
            lhs[(d, j)] = Rational::one();
        }
        rhs[d] = Rational::one();
        for i in 0..d {
            lhs[(d + 1 + i, i)] = Rational::one();
            lhs[(d + 1 + i, d)] = -Rational::one();
            lhs[(d + 1 + i, d + 1 + i)] = -Rational::one();
        }
        let mut objective = vec![Rational::zero(); vars];
        objective[d] = Rational::one();
        let prob = LpProblem::nonnegative(lhs, rhs, objective, LpSense::Maximize);
        let outcome = lp_solve(&prob);
        let LpOutcome::Optimal { value, point } = outcome else {
            return Err(Error::Internal(
                "no nonnegative generalized eigenvector on the closure".into(),
            ));
        };
        if !value.is_positive() {
            return Err(Error::Internal(
                "no strictly positive generalized eigenvector on the closure".into(),
            ));
        }
        let mut full = vec![Rational::zero(); n];
        for (pos, &i) in idx.iter().enumerate() {
            full[i] = point[pos].clone();
        }
        // Exactness checks: annihilated at full power, supported exactly on
        // the closure.
        let killed = p.lambda_i_minus(lambda).pow(n as u32).matvec(&full);
        if killed.iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal(
                "basis vector is not a generalized eigenvector".into(),
            ));
        }
        if crate::ratmath::support(&full) != *idx {
            return Err(Error::Internal("basis vector support mismatch".into()));
        }
        basis.push(full);
    }
    if !linalg::linearly_independent(&basis) {
        return Err(Error::Internal(
            "nonnegative basis is linearly dependent".into(),
        ));
    }
    Ok(basis)
}
