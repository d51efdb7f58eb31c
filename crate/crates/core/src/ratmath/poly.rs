//! Polynomials over the rationals: exact arithmetic, gcd, Yun squarefree
//! decomposition, rational root extraction, and Sturm real-root counting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};

/// Polynomial with rational coefficients in ascending degree order.
/// Canonical form: no trailing zero coefficients; the zero polynomial is the
/// empty list.
#[derive(Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatPoly::new(vec![c])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        RatPoly::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    /// t − λ.
    pub fn linear(lambda: &Rational) -> Self {
        RatPoly::new(vec![-lambda.clone(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        RatPoly::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return RatPoly::zero();
        }
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn add(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact Euclidean division; panics on division by zero.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.degree() < divisor.degree() || self.is_zero() {
            return (RatPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dn = divisor.degree();
        let lead = divisor.leading();
        let mut quot = vec![Rational::zero(); self.degree() - dn + 1];
        for k in (dn..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] / &lead;
            quot[k - dn] = q.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let delta = &q * d;
                rem[k - dn + j] -= delta;
            }
        }
        rem.truncate(dn);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn divides(&self, other: &RatPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd via the Euclidean algorithm, normalizing each remainder to
    /// keep coefficient growth in check.
    pub fn gcd(&self, rhs: &RatPoly) -> RatPoly {
        let mut a = self.monic();
        let mut b = rhs.monic();
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.div_rem(&b).1.monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let g = self.gcd(rhs);
        self.mul(rhs).div_rem(&g).0.monic()
    }

    /// Product of the distinct irreducible factors (the radical), monic.
    pub fn squarefree_part(&self) -> RatPoly {
        if self.is_zero() || self.degree() == 0 {
            return RatPoly::one();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Multiplicity of λ as a root, by repeated exact division.
    pub fn root_multiplicity(&self, lambda: &Rational) -> usize {
        let factor = RatPoly::linear(lambda);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() && p.eval(lambda).is_zero() {
            p = p.div_rem(&factor).0;
            m += 1;
        }
        m
    }

    /// Number of trailing zero coefficients, i.e. the multiplicity of the
    /// root zero.
    pub fn trailing_zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("{}*t", format_rational(c)),
                _ => format!("{}*t^{}", format_rational(c), k),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A squarefree decomposition p = lead * Π factor_i^multiplicity_i with
/// pairwise-coprime monic squarefree factors.
#[derive(Clone, Debug)]
pub struct SquareFreeDecomposition {
    pub factors: Vec<(RatPoly, usize)>,
}

impl SquareFreeDecomposition {
    /// Rebuilds the monic polynomial the decomposition came from.
    pub fn reassemble(&self) -> RatPoly {
        let mut acc = RatPoly::one();
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u32));
        }
        acc
    }

    pub fn max_multiplicity(&self) -> usize {
        self.factors.iter().map(|(_, m)| *m).max().unwrap_or(0)
    }
}

/// Yun's algorithm. Requires a nonzero input; constants decompose into no
/// factors.
pub fn squarefree_decompose(p: &RatPoly) -> SquareFreeDecomposition {
    assert!(
        !p.is_zero(),
        "squarefree decomposition of the zero polynomial"
    );
    let f = p.monic();
    if f.degree() == 0 {
        return SquareFreeDecomposition {
            factors: Vec::new(),
        };
    }
    let df = f.derivative();
    let mut factors = Vec::new();
    let g = f.gcd(&df);
    let mut a = f.div_rem(&g).0;
    let mut b = df.div_rem(&g).0;
    let mut mult = 1usize;
    loop {
        let c = b.sub(&a.derivative());
        if c.is_zero() {
            if a.degree() > 0 {
                factors.push((a.monic(), mult));
            }
            break;
        }
        let d = a.gcd(&c);
        if d.degree() > 0 {
            factors.push((d.monic(), mult));
        }
        a = a.div_rem(&d).0;
        b = c.div_rem(&d).0;
        mult += 1;
        if a.degree() == 0 {
            break;
        }
    }
    SquareFreeDecomposition { factors }
}

/// All rational roots of a nonzero polynomial, with multiplicities,
/// found exactly: candidate fractions from divisors of the cleared integer
/// coefficients, verified by exact evaluation.
pub fn rational_roots(p: &RatPoly) -> Vec<(Rational, usize)> {
    assert!(!p.is_zero(), "rational roots of the zero polynomial");
    let mut roots = Vec::new();
    let zero_order = p.trailing_zero_order();
    if zero_order > 0 {
        roots.push((Rational::zero(), zero_order));
    }
    // Work with the squarefree part of the deflated polynomial; recover each
    // root's multiplicity from the original afterwards.
    let deflated = RatPoly::new(p.coeffs()[zero_order..].to_vec());
    if deflated.degree() == 0 {
        return roots;
    }
    let sf = deflated.squarefree_part();
    for r in rational_roots_squarefree(&sf) {
        let m = p.root_multiplicity(&r);
        debug_assert!(m > 0);
        roots.push((r, m));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

fn rational_roots_squarefree(p: &RatPoly) -> Vec<Rational> {
    debug_assert!(p.eval(&Rational::zero()) != Rational::zero() || p.degree() == 0);
    match p.degree() {
        0 => return Vec::new(),
        1 => {
            let r = -p.coeff(0) / p.coeff(1);
            return vec![r];
        }
        _ => {}
    }
    // Clear denominators to integer coefficients.
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * &den_lcm).to_integer())
        .collect();
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let p_divs = divisors(&a0);
    let q_divs = divisors(&an);
    let mut found = Vec::new();
    for num in &p_divs {
        for den in &q_divs {
            for sign in [1i64, -1] {
                let cand = Rational::new(num * BigInt::from(sign), den.clone());
                if p.eval(&cand).is_zero() && !found.contains(&cand) {
                    found.push(cand);
                }
            }
        }
    }
    found
}

/// Positive divisors by trial division. Intended for the desk-scale integers
/// that arise from small matrices.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(!n.is_zero());
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    loop {
        let d_sq = &d * &d;
        if d_sq > n {
            break;
        }
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

/// Number of distinct real roots, counted exactly with a Sturm chain.
pub fn count_real_roots(p: &RatPoly) -> usize {
    assert!(!p.is_zero());
    let sf = p.squarefree_part();
    if sf.degree() == 0 {
        return 0;
    }
    let mut chain = vec![sf.clone(), sf.derivative()];
    while !chain.last().unwrap().is_zero() {
        let k = chain.len();
        let rem = chain[k - 2].div_rem(&chain[k - 1]).1;
        chain.push(rem.neg());
    }
    chain.pop();
    let sign_at_inf = |q: &RatPoly, neg: bool| -> i8 {
        if q.is_zero() {
            return 0;
        }
        let lead = q.leading();
        let mut s = if lead.is_positive() { 1i8 } else { -1 };
        if neg && q.degree() % 2 == 1 {
            s = -s;
        }
        s
    };
    let variations = |neg: bool| -> usize {
        let signs: Vec<i8> = chain
            .iter()
            .map(|q| sign_at_inf(q, neg))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(true) - variations(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rational::{rat, rat_int};

    #[test]
    fn div_rem_exact() {
        // (t-1)(t-2) = t^2 - 3t + 2
        let p = RatPoly::from_integers(&[2, -3, 1]);
        let d = RatPoly::from_integers(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, RatPoly::from_integers(&[-2, 1]));
    }

    #[test]
    fn squarefree_examples() {
        // t^3 - t^2 = t^2 (t - 1)
        let p = RatPoly::from_integers(&[0, 0, -1, 1]);
        let d = squarefree_decompose(&p);
        assert_eq!(d.factors.len(), 2);
        let t = RatPoly::from_integers(&[0, 1]);
        let t_minus_1 = RatPoly::from_integers(&[-1, 1]);
        assert!(d.factors.contains(&(t_minus_1, 1)));
        assert!(d.factors.contains(&(t, 2)));
        assert_eq!(d.reassemble(), p.monic());

        // (t-1)^2 expanded
        let p = RatPoly::from_integers(&[1, -2, 1]);
        let d = squarefree_decompose(&p);
        assert_eq!(d.factors, vec![(RatPoly::from_integers(&[-1, 1]), 2)]);

        // squarefree irreducible stays put
        let p = RatPoly::from_integers(&[-1, -1, 1]);
        let d = squarefree_decompose(&p);
        assert_eq!(d.factors, vec![(p.monic(), 1)]);
    }

    #[test]
    fn rational_roots_examples() {
        let p = RatPoly::from_integers(&[0, -1, 1]); // t^2 - t
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![(rat_int(0), 1), (rat_int(1), 1)]);

        let p = RatPoly::from_integers(&[-2, 0, 1]); // t^2 - 2
        assert!(rational_roots(&p).is_empty());

        let p = RatPoly::from_integers(&[0, 0, 0, 1]); // t^3
        assert_eq!(rational_roots(&p), vec![(rat_int(0), 3)]);

        // (2t-1)(t+3): root 1/2 from a non-monic polynomial
        let p = RatPoly::from_integers(&[-3, 5, 2]);
        let roots = rational_roots(&p);
        assert_eq!(roots, vec![(rat_int(-3), 1), (rat(1, 2), 1)]);
    }

    #[test]
    fn sturm_counts() {
        // t^2 - 2: two real roots
        assert_eq!(count_real_roots(&RatPoly::from_integers(&[-2, 0, 1])), 2);
        // t^2 + 1: none
        assert_eq!(count_real_roots(&RatPoly::from_integers(&[1, 0, 1])), 0);
        // t^3 - t: three
        assert_eq!(count_real_roots(&RatPoly::from_integers(&[0, -1, 0, 1])), 3);
        // (t^2+1)(t-1): one
        assert_eq!(
            count_real_roots(&RatPoly::from_integers(&[-1, 1, -1, 1])),
            1
        );
    }

    #[test]
    fn gcd_and_lcm_monic() {
        let a = RatPoly::from_integers(&[0, -1, 1]); // t(t-1)
        let b = RatPoly::from_integers(&[0, 1]); // t
        assert_eq!(a.gcd(&b), b.monic());
        assert_eq!(a.lcm(&b), a.monic());
    }
}
