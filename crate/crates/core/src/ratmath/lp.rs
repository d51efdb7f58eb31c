//! Exact simplex over the rationals with Bland's anti-cycling rule.
//!
//! Small and dense on purpose: every feasibility or optimization question in
//! this library is a desk-scale polytope derived from a cone or a kernel.

use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpSense {
    Maximize,
    Minimize,
}

/// Equality-constrained problem with per-variable lower bounds
/// (None = free variable).
#[derive(Clone, Debug)]
pub struct LpProblem {
    pub eq_lhs: RatMatrix,
    pub eq_rhs: Vec<Rational>,
    pub lower_bounds: Vec<Option<Rational>>,
    pub objective: Vec<Rational>,
    pub sense: LpSense,
}

impl LpProblem {
    pub fn new(
        eq_lhs: RatMatrix,
        eq_rhs: Vec<Rational>,
        lower_bounds: Vec<Option<Rational>>,
        objective: Vec<Rational>,
        sense: LpSense,
    ) -> Self {
        assert_eq!(eq_lhs.rows(), eq_rhs.len(), "rhs length mismatch");
        assert_eq!(eq_lhs.cols(), lower_bounds.len(), "bound count mismatch");
        assert_eq!(eq_lhs.cols(), objective.len(), "objective length mismatch");
        LpProblem {
            eq_lhs,
            eq_rhs,
            lower_bounds,
            objective,
            sense,
        }
    }

    /// All variables bounded below by zero.
    pub fn nonnegative(
        eq_lhs: RatMatrix,
        eq_rhs: Vec<Rational>,
        objective: Vec<Rational>,
        sense: LpSense,
    ) -> Self {
        let n = eq_lhs.cols();
        LpProblem::new(
            eq_lhs,
            eq_rhs,
            vec![Some(Rational::zero()); n],
            objective,
            sense,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    /// Optimal value and an attaining point, both exact.
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Unbounded,
    Infeasible,
}

impl LpOutcome {
    pub fn optimal_value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Solves the problem exactly. Terminates on every input (Bland's rule).
pub fn lp_solve(prob: &LpProblem) -> LpOutcome {
    // Reduce to standard form min c·y, Ay = b, y >= 0.
    // Bounded variables are shifted; free variables split into a difference.
    let n = prob.eq_lhs.cols();
    let m = prob.eq_lhs.rows();
    let mut col_map: Vec<(usize, Option<usize>)> = Vec::with_capacity(n); // (plus col, minus col)
    let mut std_cols = 0usize;
    for lb in &prob.lower_bounds {
        match lb {
            Some(_) => {
                col_map.push((std_cols, None));
                std_cols += 1;
            }
            None => {
                col_map.push((std_cols, Some(std_cols + 1)));
                std_cols += 2;
            }
        }
    }
    let mut a = RatMatrix::zero(m, std_cols);
    let mut b = prob.eq_rhs.clone();
    for j in 0..n {
        let (plus, minus) = col_map[j];
        for i in 0..m {
            let coeff = prob.eq_lhs[(i, j)].clone();
            if coeff.is_zero() {
                continue;
            }
            if let Some(lb) = &prob.lower_bounds[j] {
                // x = y + lb
                if !lb.is_zero() {
                    b[i] -= &coeff * lb;
                }
                a[(i, plus)] = coeff;
            } else {
                a[(i, plus)] = coeff.clone();
                a[(i, minus.unwrap())] = -coeff;
            }
        }
    }
    let mut c = vec![Rational::zero(); std_cols];
    let mut obj_offset = Rational::zero();
    let negate = prob.sense == LpSense::Maximize;
    for j in 0..n {
        let (plus, minus) = col_map[j];
        let mut coeff = prob.objective[j].clone();
        if let Some(lb) = &prob.lower_bounds[j] {
            if !lb.is_zero() {
                obj_offset += &coeff * lb;
            }
        }
        if negate {
            coeff = -coeff;
        }
        c[plus] = coeff.clone();
        if let Some(mi) = minus {
            c[mi] = -coeff;
        }
    }

    match simplex_standard(&a, &b, &c) {
        StandardOutcome::Infeasible => LpOutcome::Infeasible,
        StandardOutcome::Unbounded => LpOutcome::Unbounded,
        StandardOutcome::Optimal { value, point } => {
            let mut x = Vec::with_capacity(n);
            for j in 0..n {
                let (plus, minus) = col_map[j];
                let mut v = point[plus].clone();
                if let Some(mi) = minus {
                    v -= &point[mi];
                }
                if let Some(lb) = &prob.lower_bounds[j] {
                    v += lb;
                }
                x.push(v);
            }
            let mut val = value;
            if negate {
                val = -val;
            }
            val += obj_offset;
            LpOutcome::Optimal {
                value: val,
                point: x,
            }
        }
    }
}

enum StandardOutcome {
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
    Unbounded,
    Infeasible,
}

/// Two-phase simplex for min c·x, Ax = b, x >= 0.
fn simplex_standard(a: &RatMatrix, b: &[Rational], c: &[Rational]) -> StandardOutcome {
    let m = a.rows();
    let n = a.cols();

    // Tableau columns: structural 0..n, artificial n..n+m, rhs last.
    let width = n + m + 1;
    let mut t = vec![vec![Rational::zero(); width]; m];
    for i in 0..m {
        let flip = b[i].is_negative();
        for j in 0..n {
            t[i][j] = if flip {
                -a[(i, j)].clone()
            } else {
                a[(i, j)].clone()
            };
        }
        t[i][n + i] = Rational::one();
        t[i][width - 1] = if flip { -b[i].clone() } else { b[i].clone() };
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); width];
    for row in &t {
        for (j, v) in row.iter().enumerate() {
            phase1[j] += v;
        }
    }
    for j in n..n + m {
        phase1[j] = Rational::zero();
    }
    run_simplex(&mut t, &mut basis, &mut phase1, n + m);
    if !phase1[width - 1].is_zero() {
        return StandardOutcome::Infeasible;
    }

    // Drive remaining artificial variables out of the basis.
    for i in 0..m {
        if basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| !t[i][j].is_zero()) {
                pivot(&mut t, &mut basis, i, j);
            }
            // A fully zero structural row is a redundant constraint; the
            // artificial stays basic at value zero, which is harmless.
        }
    }

    // Phase 2: reduced costs for the real objective.
    let mut obj = vec![Rational::zero(); width];
    for (j, cj) in c.iter().enumerate() {
        obj[j] = -cj.clone();
    }
    for i in 0..m {
        if basis[i] < n && !obj[basis[i]].is_zero() {
            let factor = obj[basis[i]].clone();
            for j in 0..width {
                let delta = &factor * &t[i][j];
                obj[j] -= delta;
            }
        }
    }
    if !run_simplex(&mut t, &mut basis, &mut obj, n) {
        return StandardOutcome::Unbounded;
    }

    let mut point = vec![Rational::zero(); n];
    for i in 0..m {
        if basis[i] < n {
            point[basis[i]] = t[i][width - 1].clone();
        }
    }
    // The objective row is -c + c_B B^{-1}(A|b); its rhs entry is the value.
    let value = obj[width - 1].clone();
    StandardOutcome::Optimal { value, point }
}

/// Bland's rule simplex sweep over the first `active_cols` columns.
/// Returns false on unboundedness. The objective row holds negated reduced
/// costs, so an entering column is one with a positive entry.
fn run_simplex(
    t: &mut [Vec<Rational>],
    basis: &mut [usize],
    obj: &mut [Rational],
    active_cols: usize,
) -> bool {
    let m = t.len();
    let width = obj.len();
    loop {
        // Entering: smallest index with positive objective-row coefficient.
        let Some(enter) = (0..active_cols).find(|&j| obj[j].is_positive()) else {
            return true;
        };
        // Leaving: minimal ratio, ties by smallest basis index.
        let mut best: Option<(Rational, usize, usize)> = None; // (ratio, basis var, row)
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let candidate = (ratio, basis[i], i);
                best = match best {
                    None => Some(candidate),
                    Some(cur) => {
                        if candidate.0 < cur.0 || (candidate.0 == cur.0 && candidate.1 < cur.1) {
                            Some(candidate)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        let Some((_, _, row)) = best else {
            return false;
        };
        pivot_with_obj(t, basis, obj, row, enter);
    }
}

fn pivot(t: &mut [Vec<Rational>], basis: &mut [usize], row: usize, col: usize) {
    let width = t[0].len();
    let inv = {
        let p = t[row][col].clone();
        assert!(!p.is_zero());
        Rational::new(p.denom().clone(), p.numer().clone())
    };
    for j in 0..width {
        let v = &t[row][j] * &inv;
        t[row][j] = v;
    }
    for i in 0..t.len() {
        if i != row && !t[i][col].is_zero() {
            let factor = t[i][col].clone();
            for j in 0..width {
                let delta = &factor * &t[row][j];
                t[i][j] -= delta;
            }
        }
    }
    basis[row] = col;
}

fn pivot_with_obj(
    t: &mut [Vec<Rational>],
    basis: &mut [usize],
    obj: &mut [Rational],
    row: usize,
    col: usize,
) {
    pivot(t, basis, row, col);
    if !obj[col].is_zero() {
        let factor = obj[col].clone();
        for j in 0..obj.len() {
            let delta = &factor * &t[row][j];
            obj[j] -= delta;
        }
    }
}

/// Feasibility of {Ax = b, x >= 0}: one exact point, or None.
pub fn feasible_point(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let prob = LpProblem::nonnegative(
        a.clone(),
        b.to_vec(),
        vec![Rational::zero(); a.cols()],
        LpSense::Minimize,
    );
    match lp_solve(&prob) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}

/// Exact maximum and minimum of c·x over {Ax = b, x >= 0}, or None when the
/// polytope is empty. Unbounded directions report None in that slot.
pub fn coordinate_range(
    a: &RatMatrix,
    b: &[Rational],
    c: &[Rational],
) -> Option<(Option<Rational>, Option<Rational>)> {
    let max = lp_solve(&LpProblem::nonnegative(
        a.clone(),
        b.to_vec(),
        c.to_vec(),
        LpSense::Maximize,
    ));
    if max == LpOutcome::Infeasible {
        return None;
    }
    let min = lp_solve(&LpProblem::nonnegative(
        a.clone(),
        b.to_vec(),
        c.to_vec(),
        LpSense::Minimize,
    ));
    let hi = match max {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    };
    let lo = match min {
        LpOutcome::Optimal { value, .. } => Some(value),
        _ => None,
    };
    Some((hi, lo))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rational::{rat, rat_int};

    #[test]
    fn symmetric_split() {
        // maximize t s.t. x1 + x2 = 1, x1 >= t, x2 >= t
        // vars: x1, x2, t, s1, s2 with x_i - t - s_i = 0
        let a =
            RatMatrix::from_integers(&[&[1, 1, 0, 0, 0], &[1, 0, -1, -1, 0], &[0, 1, -1, 0, -1]]);
        let prob = LpProblem::nonnegative(
            a,
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0), rat_int(0)],
            LpSense::Maximize,
        );
        let out = lp_solve(&prob);
        match out {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, rat(1, 2));
                assert_eq!(point[0], rat(1, 2));
                assert_eq!(point[1], rat(1, 2));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn span_of_e1_has_no_positive_point() {
        // maximize t s.t. x = (c, 0) with c free: x1 - c = 0, x2 = 0, x1 >= t, x2 >= t.
        // vars: x1, x2, c(free), t; slacks s1, s2.
        let a = RatMatrix::from_integers(&[
            &[1, 0, -1, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0],
            &[1, 0, 0, -1, -1, 0],
            &[0, 1, 0, -1, 0, -1],
        ]);
        let zero = Rational::zero;
        let prob = LpProblem::new(
            a,
            vec![zero(), zero(), zero(), zero()],
            vec![
                Some(zero()),
                Some(zero()),
                None,
                Some(zero()),
                Some(zero()),
                Some(zero()),
            ],
            vec![zero(), zero(), zero(), rat_int(1), zero(), zero()],
            LpSense::Maximize,
        );
        match lp_solve(&prob) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat_int(0)),
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn infeasible_system() {
        // x1 = 1 and x1 = 2
        let a = RatMatrix::from_integers(&[&[1], &[1]]);
        let prob = LpProblem::nonnegative(
            a,
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(0)],
            LpSense::Maximize,
        );
        assert_eq!(lp_solve(&prob), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detection() {
        // maximize x1 with x1 - x2 = 0: unbounded along the diagonal.
        let a = RatMatrix::from_integers(&[&[1, -1]]);
        let prob = LpProblem::nonnegative(
            a,
            vec![rat_int(0)],
            vec![rat_int(1), rat_int(0)],
            LpSense::Maximize,
        );
        assert_eq!(lp_solve(&prob), LpOutcome::Unbounded);
    }

    #[test]
    fn degenerate_cycling_guard() {
        // Classic degenerate instance; Bland's rule must terminate.
        let a = RatMatrix::from_rows(vec![
            vec![
                rat(1, 4),
                rat_int(-8),
                rat_int(-1),
                rat_int(9),
                rat_int(1),
                rat_int(0),
                rat_int(0),
            ],
            vec![
                rat(1, 2),
                rat_int(-12),
                rat(-1, 2),
                rat_int(3),
                rat_int(0),
                rat_int(1),
                rat_int(0),
            ],
            vec![
                rat_int(0),
                rat_int(0),
                rat_int(1),
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(1),
            ],
        ]);
        let prob = LpProblem::nonnegative(
            a,
            vec![rat_int(0), rat_int(0), rat_int(1)],
            vec![
                rat(3, 4),
                rat_int(-150),
                rat(1, 50),
                rat_int(-6),
                rat_int(0),
                rat_int(0),
                rat_int(0),
            ],
            LpSense::Maximize,
        );
        match lp_solve(&prob) {
            LpOutcome::Optimal { value, point } => {
                // Hand-checked optimum: a = 1, c = 1 (slacks 3/4, 0, 0),
                // value 3/4 + 1/50.
                assert_eq!(value, rat(77, 100));
                assert_eq!(point[0], rat_int(1));
                assert_eq!(point[2], rat_int(1));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn solution_satisfies_constraints_exactly() {
        let a = RatMatrix::from_integers(&[&[2, 1, 3], &[1, 0, 1]]);
        let b = vec![rat_int(7), rat_int(3)];
        let prob = LpProblem::nonnegative(
            a.clone(),
            b.clone(),
            vec![rat_int(1), rat_int(2), rat_int(-1)],
            LpSense::Maximize,
        );
        if let LpOutcome::Optimal { point, .. } = lp_solve(&prob) {
            assert_eq!(a.matvec(&point), b);
        } else {
            panic!("expected optimum");
        }
    }
}
