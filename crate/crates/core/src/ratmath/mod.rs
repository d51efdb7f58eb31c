//! Exact rational arithmetic: scalars, vectors, matrices, polynomials,
//! elimination-based kernels and projectors, and a small exact LP solver.
//!
//! Everything in this module is tolerance-free. All values are immutable
//! after construction and every operation is a pure function.

pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use linalg::{
    in_span, inverse, linearly_independent, local_minimal_polynomial, minimal_polynomial,
    poly_apply, rank, rank_and_kernel, rank_profile_at, solve, spectral_projector, RankProfile,
};
pub use lp::{coordinate_range, feasible_point, lp_solve, LpOutcome, LpProblem, LpSense};
pub use matrix::RatMatrix;
pub use poly::{
    count_real_roots, rational_roots, squarefree_decompose, RatPoly, SquareFreeDecomposition,
};
pub use rational::{
    add_vectors, dot, format_rational, is_nonnegative_vector, is_zero_vector, parse_rational,
    primitive_integer_vector, rat, rat_int, scale_vector, support, Rational,
};
