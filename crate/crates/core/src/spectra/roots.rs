//! Polynomial root moduli via simultaneous (Aberth-Ehrlich) iteration on the
//! squarefree part. Used only for modulus comparisons; anything feeding an
//! exact kernel goes through `ratmath` instead.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ratmath::poly::RatPoly;
use crate::spectra::ToleranceConfig;

/// Largest modulus over all complex roots of a nonzero polynomial of
/// degree >= 1, with relative error well inside `tol.rel_eps`.
pub fn max_root_modulus(p: &RatPoly, tol: &ToleranceConfig) -> Result<f64> {
    assert!(
        !p.is_zero() && p.degree() >= 1,
        "need a nonzero polynomial of degree >= 1"
    );
    Ok(all_roots(p, tol)?
        .iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max))
}

/// All complex roots of the squarefree part, to f64 accuracy. The returned
/// list contains each distinct root once; multiplicities are not represented.
pub fn all_roots(p: &RatPoly, tol: &ToleranceConfig) -> Result<Vec<Complex64>> {
    let zero_order = p.trailing_zero_order();
    let deflated = RatPoly::new(p.coeffs()[zero_order..].to_vec());
    let mut roots = Vec::new();
    if zero_order > 0 {
        roots.push(Complex64::new(0.0, 0.0));
    }
    let sf = deflated.squarefree_part();
    match sf.degree() {
        0 => {}
        1 => {
            let r = -(sf.coeff(0) / sf.coeff(1));
            roots.push(Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0));
        }
        _ => roots.extend(aberth(&sf, tol)?),
    }
    Ok(roots)
}

fn aberth(p: &RatPoly, tol: &ToleranceConfig) -> Result<Vec<Complex64>> {
    let deg = p.degree();
    let lead = p.leading().to_f64().unwrap_or(1.0);
    let coeffs: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN) / lead)
        .collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::Internal(
            "polynomial coefficients overflow f64".into(),
        ));
    }
    let radius = 1.0 + coeffs[..deg].iter().map(|c| c.abs()).fold(0.0f64, f64::max);
    // Deterministic start: points on a circle with an irrational-ish twist so
    // no starting point sits on a symmetry axis.
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let eval = |x: Complex64| -> (Complex64, Complex64) {
        // p(x) and p'(x) by Horner on the monic coefficients.
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        (v, d)
    };

    let sweeps = 1000usize.min(tol.max_iters);
    for _ in 0..sweeps {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = if d.norm() == 0.0 {
                Complex64::new(1e-12, 1e-12)
            } else {
                v / d
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() == 0.0 {
                newton
            } else {
                newton / denom
            };
            z[i] -= step;
            let rel = step.norm() / (1.0 + z[i].norm());
            max_step = max_step.max(rel);
        }
        if max_step < 1e-14 {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence(sweeps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn simple_moduli() {
        // roots 1 and 2
        let p = RatPoly::from_integers(&[2, -3, 1]);
        assert!((max_root_modulus(&p, &tol()).unwrap() - 2.0).abs() < 1e-12);
        // roots +-i
        let p = RatPoly::from_integers(&[1, 0, 1]);
        assert!((max_root_modulus(&p, &tol()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_ratio_modulus() {
        // t^2 - t - 1: dominant root (1+sqrt(5))/2
        let p = RatPoly::from_integers(&[-1, -1, 1]);
        let expected = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((max_root_modulus(&p, &tol()).unwrap() - expected).abs() < 1e-9);
    }

    #[test]
    fn repeated_roots_deflated() {
        // (t-3)^4: squarefree part keeps full accuracy
        let p = RatPoly::from_integers(&[81, -108, 54, -12, 1]);
        assert!((max_root_modulus(&p, &tol()).unwrap() - 3.0).abs() < 1e-10);
        // t^5: only the zero root
        let p = RatPoly::from_integers(&[0, 0, 0, 0, 0, 1]);
        assert_eq!(max_root_modulus(&p, &tol()).unwrap(), 0.0);
    }

    #[test]
    fn eighth_roots_of_unity() {
        // t^8 - 1
        let mut coeffs = vec![0i64; 9];
        coeffs[0] = -1;
        coeffs[8] = 1;
        let p = RatPoly::from_integers(&coeffs);
        let roots = all_roots(&p, &tol()).unwrap();
        assert_eq!(roots.len(), 8);
        for z in roots {
            assert!((z.norm() - 1.0).abs() < 1e-10);
        }
    }
}
