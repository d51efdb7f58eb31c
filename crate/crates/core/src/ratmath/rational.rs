use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Stored in lowest terms with positive denominator;
/// every arithmetic operation is exact.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor used pervasively by fixtures and tests.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses "p/q", "p", or a plain decimal literal such as "0.25".
///
/// Decimal literals are converted by their digits (0.25 -> 1/4), never via a
/// binary float round trip.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        let int_digits = if int_digits.is_empty() {
            "0"
        } else {
            int_digits
        };
        if !int_digits.bytes().all(|b| b.is_ascii_digit())
            || frac_part.is_empty()
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(Error::Parse(format!("bad decimal literal {s:?}")));
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let int_val: BigInt = int_digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal literal {s:?}")))?;
        let frac_val: BigInt = frac_part
            .parse()
            .map_err(|_| Error::Parse(format!("bad decimal literal {s:?}")))?;
        let numer = (int_val * &scale + frac_val) * BigInt::from(sign);
        return Ok(Rational::new(numer, scale));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer literal {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// Renders "p/q", or just "p" when the denominator is one. This is the
/// serialization used by every external format.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Support of a vector: indices of nonzero entries.
pub fn support(v: &[Rational]) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_nonnegative_vector(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn scale_vector(v: &[Rational], c: &Rational) -> Vec<Rational> {
    v.iter().map(|x| x * c).collect()
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Rescales to a primitive integer vector: entries become coprime integers,
/// and the first nonzero entry is positive. Canonical form for rays and
/// facet normals.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let mut den_lcm = BigInt::one();
    for x in v {
        if !x.is_zero() {
            den_lcm = den_lcm.lcm(x.denom());
        }
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &den_lcm).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -x.clone();
            }
        }
    }
    out.into_iter().map(Rational::from_integer).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-2/4").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2.50").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.2.3").is_err());
    }

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn primitive_vector_canonical_sign() {
        let v = vec![rat(0, 1), rat(-1, 2), rat(-3, 2)];
        let p = primitive_integer_vector(&v);
        assert_eq!(p, vec![rat_int(0), rat_int(1), rat_int(3)]);
    }
}
