//! Spectral quantities that need numerics: root moduli, Perron roots,
//! spectral pairs, the Perron-Schaefer verdict, and distinguished-eigenvector
//! extraction.
//!
//! The division of labor is strict: orders and multiplicities come from exact
//! squarefree structure, and floating point only decides which moduli tie
//! with the peripheral one. Anything that touches a kernel demands a rational
//! eigenvalue.

pub mod roots;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ratmath::{
    self, is_zero_vector, local_minimal_polynomial, minimal_polynomial, rational_roots,
    spectral_projector, squarefree_decompose, RatMatrix, RatPoly, Rational,
};

pub use roots::{all_roots, max_root_modulus};

/// Numeric policy: relative comparison tolerance, power-iteration threshold,
/// iteration cap, and the seed used to restart stalled iterations.
#[derive(Clone, Debug)]
pub struct ToleranceConfig {
    pub rel_eps: f64,
    pub power_tol: f64,
    pub max_iters: usize,
    pub retry_seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            rel_eps: 1e-9,
            power_tol: 1e-12,
            max_iters: 1_000_000,
            retry_seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn with_rel_eps(rel_eps: f64) -> Self {
        ToleranceConfig {
            rel_eps,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = self.rel_eps > 0.0 && self.power_tol > 0.0;
        if !positive || self.max_iters == 0 {
            return Err(Error::InvalidArgument(
                "tolerances must be strictly positive and max_iters >= 1".into(),
            ));
        }
        Ok(())
    }

    /// a ≈ b iff |a − b| <= rel_eps · max(1, |a|, |b|).
    pub fn approx_eq_f64(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.rel_eps * a.abs().max(b.abs()).max(1.0)
    }
}

/// A nonnegative spectral quantity, exact when provably rational.
#[derive(Clone, Debug)]
pub enum Radius {
    Exact(Rational),
    Approx(f64),
}

impl Radius {
    pub fn zero() -> Self {
        Radius::Exact(Rational::zero())
    }

    pub fn value(&self) -> f64 {
        match self {
            Radius::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Radius::Approx(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Radius::Exact(r) => Some(r),
            Radius::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Radius::Exact(_))
    }

    /// Equality under the tolerance policy; exact when both sides are exact.
    pub fn approx_eq(&self, other: &Radius, tol: &ToleranceConfig) -> bool {
        match (self, other) {
            (Radius::Exact(a), Radius::Exact(b)) => a == b,
            _ => tol.approx_eq_f64(self.value(), other.value()),
        }
    }

    pub fn approx_eq_rational(&self, other: &Rational, tol: &ToleranceConfig) -> bool {
        self.approx_eq(&Radius::Exact(other.clone()), tol)
    }

    /// Strictly less, beyond tolerance when either side is numeric.
    pub fn lt(&self, other: &Radius, tol: &ToleranceConfig) -> bool {
        match (self, other) {
            (Radius::Exact(a), Radius::Exact(b)) => a < b,
            _ => !self.approx_eq(other, tol) && self.value() < other.value(),
        }
    }

    pub fn le(&self, other: &Radius, tol: &ToleranceConfig) -> bool {
        self.lt(other, tol) || self.approx_eq(other, tol)
    }

    /// |a − b| as a plain float, the margin reported in audits.
    pub fn margin(&self, other: &Radius) -> f64 {
        (self.value() - other.value()).abs()
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Exact(r) => write!(f, "{}", ratmath::format_rational(r)),
            Radius::Approx(v) => write!(f, "{v:.12}"),
        }
    }
}

/// Ordered pair (local spectral radius, order), compared lexicographically.
#[derive(Clone, Debug)]
pub struct SpectralPair {
    pub radius: Radius,
    pub order: usize,
}

impl SpectralPair {
    /// The convention for the zero vector and the zero face.
    pub fn zero() -> Self {
        SpectralPair {
            radius: Radius::zero(),
            order: 0,
        }
    }

    pub fn new(radius: Radius, order: usize) -> Self {
        SpectralPair { radius, order }
    }

    pub fn approx_eq(&self, other: &SpectralPair, tol: &ToleranceConfig) -> bool {
        self.order == other.order && self.radius.approx_eq(&other.radius, tol)
    }

    /// Equality with both radii exact; used where a test demands exactness.
    pub fn exact_eq(&self, other: &SpectralPair) -> bool {
        self.order == other.order
            && matches!(
                (&self.radius, &other.radius),
                (Radius::Exact(a), Radius::Exact(b)) if a == b
            )
    }

    pub fn cmp_with(&self, other: &SpectralPair, tol: &ToleranceConfig) -> Ordering {
        if self.radius.lt(&other.radius, tol) {
            Ordering::Less
        } else if other.radius.lt(&self.radius, tol) {
            Ordering::Greater
        } else {
            self.order.cmp(&other.order)
        }
    }

    /// The lexicographic ordering: (ξ1, ξ2) ⪯ (η1, η2) iff ξ1 < η1, or
    /// ξ1 = η1 and ξ2 <= η2.
    pub fn preceq(&self, other: &SpectralPair, tol: &ToleranceConfig) -> bool {
        self.cmp_with(other, tol) != Ordering::Greater
    }

    pub fn prec(&self, other: &SpectralPair, tol: &ToleranceConfig) -> bool {
        self.cmp_with(other, tol) == Ordering::Less
    }

    pub fn max_with(&self, other: &SpectralPair, tol: &ToleranceConfig) -> SpectralPair {
        if self.cmp_with(other, tol) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for SpectralPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.radius, self.order)
    }
}

/// Spectral radius of a nonnegative matrix by power iteration on B + I with
/// Collatz-Wielandt bracketing, minus one. Falls back to the exact minimal
/// polynomial's root modulus when the bracket stalls (reducible blocks).
pub fn perron_root(b: &RatMatrix, tol: &ToleranceConfig) -> f64 {
    assert!(b.is_square(), "perron_root needs a square matrix");
    debug_assert!(
        b.first_negative_entry().is_none(),
        "perron_root needs a nonnegative matrix"
    );
    let n = b.rows();
    if n == 0 {
        return 0.0;
    }
    let shifted: Vec<Vec<f64>> = {
        let mut m = b.to_f64();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += 1.0;
        }
        m
    };
    let budget = tol.max_iters.min(20_000);
    let mut x = vec![1.0f64; n];
    for attempt in 0..2 {
        if attempt == 1 {
            // Stalled: restart once from a seeded perturbation before giving
            // up on iteration entirely.
            let mut state = tol.retry_seed.wrapping_add(0x9E3779B97F4A7C15);
            x = (0..n)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    1.0 + 0.5 * ((state % 1024) as f64) / 1024.0
                })
                .collect();
        }
        for _ in 0..budget {
            let y: Vec<f64> = shifted
                .iter()
                .map(|row| row.iter().zip(&x).map(|(a, v)| a * v).sum())
                .collect();
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            for (yi, xi) in y.iter().zip(&x) {
                let ratio = yi / xi;
                lo = lo.min(ratio);
                hi = hi.max(ratio);
            }
            if hi - lo <= tol.power_tol * hi.max(1.0) {
                return (hi + lo) / 2.0 - 1.0;
            }
            let max = y.iter().cloned().fold(0.0f64, f64::max);
            x = y.into_iter().map(|v| v / max).collect();
        }
    }
    let minpoly = minimal_polynomial(b);
    if minpoly.degree() == 0 {
        return 0.0;
    }
    max_root_modulus(&minpoly, tol).unwrap_or(f64::NAN)
}

/// Spectral radius of a nonnegative matrix as a `Radius`: exact whenever the
/// radius is provably rational (1x1 block, constant row sums, or a rational
/// root of the minimal polynomial matching the numeric estimate).
pub fn nonneg_spectral_radius(b: &RatMatrix, tol: &ToleranceConfig) -> Radius {
    let n = b.rows();
    if n == 0 {
        return Radius::zero();
    }
    if n == 1 {
        return Radius::Exact(b[(0, 0)].clone());
    }
    let first_sum: Rational = b.row(0).iter().sum();
    if (1..n).all(|i| b.row(i).iter().sum::<Rational>() == first_sum) {
        return Radius::Exact(first_sum);
    }
    let numeric = perron_root(b, tol);
    let minpoly = minimal_polynomial(b);
    let mut best: Option<Rational> = None;
    for (r, _) in rational_roots(&minpoly) {
        if !r.is_negative() && tol.approx_eq_f64(r.to_f64().unwrap_or(f64::NAN), numeric) {
            best = Some(match best {
                Some(prev) if prev >= r => prev,
                _ => r,
            });
        }
    }
    match best {
        Some(r) => Radius::Exact(r),
        None => Radius::Approx(numeric),
    }
}

/// Spectral pair of a vector: ((local spectral radius), (order)).
///
/// The pair of the zero vector is (0, 0). Orders come from exact squarefree
/// multiplicities of the local minimal polynomial; only the identification of
/// the factors attaining the peripheral modulus is numeric. The radius is
/// exact whenever an attaining factor has a rational root of that modulus.
pub fn spectral_pair(a: &RatMatrix, x: &[Rational], tol: &ToleranceConfig) -> Result<SpectralPair> {
    a.require_square()?;
    if x.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "vector length {} does not match matrix dimension {}",
            x.len(),
            a.rows()
        )));
    }
    if is_zero_vector(x) {
        return Ok(SpectralPair::zero());
    }
    let mu = local_minimal_polynomial(a, x);
    pair_from_annihilator(&mu, tol)
}

/// Shared tail of `spectral_pair`: pair extraction from a monic annihilating
/// polynomial of degree >= 1.
pub(crate) fn pair_from_annihilator(mu: &RatPoly, tol: &ToleranceConfig) -> Result<SpectralPair> {
    debug_assert!(mu.degree() >= 1);
    let decomp = squarefree_decompose(mu);
    let mut factor_moduli = Vec::with_capacity(decomp.factors.len());
    let mut rho = 0.0f64;
    for (f, _) in &decomp.factors {
        let m = max_root_modulus(f, tol)?;
        rho = rho.max(m);
        factor_moduli.push(m);
    }
    let mut order = 0usize;
    let mut exact: Option<Rational> = None;
    for ((f, mult), m) in decomp.factors.iter().zip(&factor_moduli) {
        if !tol.approx_eq_f64(*m, rho) {
            continue;
        }
        order = order.max(*mult);
        for (r, _) in rational_roots(f) {
            let abs = if r.is_negative() {
                -r.clone()
            } else {
                r.clone()
            };
            if tol.approx_eq_f64(abs.to_f64().unwrap_or(f64::NAN), rho) {
                exact = Some(match exact.take() {
                    Some(prev) if prev >= abs => prev,
                    _ => abs,
                });
            }
        }
    }
    let radius = match exact {
        Some(r) => Radius::Exact(r),
        None => Radius::Approx(rho),
    };
    Ok(SpectralPair::new(radius, order))
}

/// Peripheral spectrum summary and the Perron-Schaefer verdict.
#[derive(Clone, Debug)]
pub struct PeripheralReport {
    pub spectral_radius: Radius,
    /// Index of the spectral radius, when it is attained by a real root.
    pub index_at_radius: Option<usize>,
    /// Moduli of the peripheral roots, one entry per attaining squarefree
    /// factor (descending).
    pub peripheral_moduli: Vec<f64>,
    /// (rational eigenvalue, its index) for every rational root of the
    /// minimal polynomial.
    pub rational_eigenvalue_indices: Vec<(Rational, usize)>,
    /// True iff every peripheral factor's multiplicity is bounded by the
    /// multiplicity of a factor attaining the radius as a real root.
    pub perron_schaefer: bool,
}

pub fn peripheral_report(a: &RatMatrix, tol: &ToleranceConfig) -> Result<PeripheralReport> {
    a.require_square()?;
    let minpoly = minimal_polynomial(a);
    if minpoly.degree() == 0 {
        // 0x0 matrix; degenerate but total.
        return Ok(PeripheralReport {
            spectral_radius: Radius::zero(),
            index_at_radius: Some(0),
            peripheral_moduli: Vec::new(),
            rational_eigenvalue_indices: Vec::new(),
            perron_schaefer: true,
        });
    }
    let decomp = squarefree_decompose(&minpoly);
    let mut rho = 0.0f64;
    let mut factor_data = Vec::new();
    for (f, mult) in &decomp.factors {
        let roots = all_roots(f, tol)?;
        let m = roots.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        rho = rho.max(m);
        factor_data.push((f.clone(), *mult, roots, m));
    }
    let mut index_at_radius: Option<usize> = None;
    let mut peripheral_moduli = Vec::new();
    for (f, mult, roots, m) in &factor_data {
        if !tol.approx_eq_f64(*m, rho) {
            continue;
        }
        peripheral_moduli.push(*m);
        let exact_real = rational_roots(f).iter().any(|(r, _)| {
            !r.is_negative() && tol.approx_eq_f64(r.to_f64().unwrap_or(f64::NAN), rho)
        });
        let numeric_real = roots
            .iter()
            .any(|z| z.im.abs() <= tol.rel_eps * rho.max(1.0) && tol.approx_eq_f64(z.re, rho));
        if exact_real || numeric_real {
            index_at_radius = Some(index_at_radius.map_or(*mult, |v: usize| v.max(*mult)));
        }
    }
    peripheral_moduli.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let perron_schaefer = match index_at_radius {
        None => false,
        Some(nu) => factor_data
            .iter()
            .all(|(_, mult, _, m)| !tol.approx_eq_f64(*m, rho) || *mult <= nu),
    };
    let spectral_radius = {
        let mut exact: Option<Rational> = None;
        for (f, _, _, m) in &factor_data {
            if !tol.approx_eq_f64(*m, rho) {
                continue;
            }
            for (r, _) in rational_roots(f) {
                let abs = if r.is_negative() {
                    -r.clone()
                } else {
                    r.clone()
                };
                if tol.approx_eq_f64(abs.to_f64().unwrap_or(f64::NAN), rho) {
                    exact = Some(match exact.take() {
                        Some(prev) if prev >= abs => prev,
                        _ => abs,
                    });
                }
            }
        }
        match exact {
            Some(r) => Radius::Exact(r),
            None => Radius::Approx(rho),
        }
    };
    let rational_eigenvalue_indices = rational_roots(&minpoly);
    Ok(PeripheralReport {
        spectral_radius,
        index_at_radius,
        peripheral_moduli,
        rational_eigenvalue_indices,
        perron_schaefer,
    })
}

/// Order of x relative to A: the order component of the spectral pair.
pub fn max_order_in_representation(
    a: &RatMatrix,
    x: &[Rational],
    tol: &ToleranceConfig,
) -> Result<usize> {
    if is_zero_vector(x) {
        return Err(Error::InvalidArgument(
            "order of the zero vector is undefined".into(),
        ));
    }
    Ok(spectral_pair(a, x, tol)?.order)
}

/// True when the factor of the local minimal polynomial attaining the order
/// has a real root equal to the local spectral radius (within tolerance).
/// For a map preserving a cone that contains x this always holds.
pub fn order_attained_at_radius(
    a: &RatMatrix,
    x: &[Rational],
    tol: &ToleranceConfig,
) -> Result<bool> {
    if is_zero_vector(x) {
        return Err(Error::InvalidArgument("zero vector".into()));
    }
    let mu = local_minimal_polynomial(a, x);
    let decomp = squarefree_decompose(&mu);
    let mut data = Vec::new();
    let mut rho = 0.0f64;
    for (f, mult) in &decomp.factors {
        let roots = all_roots(f, tol)?;
        let m = roots.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        rho = rho.max(m);
        data.push((f, *mult, roots, m));
    }
    let order = data
        .iter()
        .filter(|(_, _, _, m)| tol.approx_eq_f64(*m, rho))
        .map(|(_, mult, _, _)| *mult)
        .max()
        .unwrap_or(0);
    Ok(data.iter().any(|(f, mult, roots, m)| {
        *mult == order
            && tol.approx_eq_f64(*m, rho)
            && (rational_roots(f).iter().any(|(r, _)| {
                !r.is_negative() && tol.approx_eq_f64(r.to_f64().unwrap_or(f64::NAN), rho)
            }) || roots
                .iter()
                .any(|z| z.im.abs() <= tol.rel_eps * rho.max(1.0) && tol.approx_eq_f64(z.re, rho)))
    }))
}

/// Extracts the distinguished eigenvector (A − ρ_x I)^{ord−1} E x for a
/// rational local spectral radius; E is the spectral projector at ρ_x.
pub fn extract_distinguished_eigenvector(
    a: &RatMatrix,
    x: &[Rational],
    tol: &ToleranceConfig,
) -> Result<Vec<Rational>> {
    if is_zero_vector(x) {
        return Err(Error::InvalidArgument(
            "cannot extract from the zero vector".into(),
        ));
    }
    let pair = spectral_pair(a, x, tol)?;
    let Some(rho) = pair.radius.exact().cloned() else {
        return Err(Error::ExactModeRequired(
            "extraction requires a rational local spectral radius".into(),
        ));
    };
    let projector = spectral_projector(a, &rho)?;
    let mut v = projector.matvec(x);
    let shifted = -a.lambda_i_minus(&rho); // A − ρI
    for _ in 1..pair.order {
        v = shifted.matvec(&v);
    }
    if is_zero_vector(v.as_slice()) {
        return Err(Error::Internal("extracted eigenvector is zero".into()));
    }
    let av = a.matvec(&v);
    let rv: Vec<Rational> = v.iter().map(|t| t * &rho).collect();
    if av != rv {
        return Err(Error::Internal(
            "extracted vector is not an eigenvector".into(),
        ));
    }
    Ok(v)
}
