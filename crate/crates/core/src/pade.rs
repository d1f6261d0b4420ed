//! Diagonal Pade approximants P_r(z)/P_r(-z) to e^{-z}: exact integer
//! coefficients, zero locations with the Saff-Varga annulus checks, the
//! exact integral remainder, and the sector remainder bound.

use std::sync::Mutex;
use std::sync::OnceLock;

use rug::ops::Pow;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::num::{
    aberth_roots_from_circle, bits_for_digits, float, float_zero, XComplex, XPolynomial,
    ABERTH_MAX_ITERATIONS,
};
use crate::quad;

pub const MAX_ORDER: u32 = 64;

/// P_r(z) = sum_k (-1)^k (2r-k)!/(k!(r-k)!) z^k together with its zeros
/// once [`pade_zeros`] has filled them.
#[derive(Clone, Debug)]
pub struct PadeApproximant {
    pub r: u32,
    /// Signed exact integer coefficients, ascending degree.
    pub coeffs: Vec<Integer>,
    pub zeros: Vec<XComplex>,
}

/// The unique positive root of mu e^{1+mu} = 1, at the tier precision.
pub fn saff_varga_mu(digits: u32) -> Result<Float> {
    static CACHE: OnceLock<Mutex<Vec<(u32, Float)>>> = OnceLock::new();
    let prec = bits_for_digits(digits)?;
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap();
    if let Some((_, mu)) = guard.iter().find(|(p, _)| *p == prec) {
        return Ok(mu.clone());
    }
    let mut mu = float(prec, 0.28);
    for _ in 0..64 {
        // f = mu e^{1+mu} - 1, f' = (1+mu) e^{1+mu}
        let e = Float::with_val(prec, &mu + &Float::with_val(prec, 1)).exp();
        let f = Float::with_val(prec, &mu * &e) - 1u32;
        let fp = (Float::with_val(prec, &mu) + 1u32) * &e;
        let step = f / fp;
        mu -= &step;
        if step.abs() < Float::with_val(prec, 1.0) >> (prec - 4) {
            break;
        }
    }
    guard.push((prec, mu.clone()));
    Ok(mu)
}

/// Exact coefficients of P_r; zeros left unfilled.
pub fn pade_poly(r: u32) -> Result<PadeApproximant> {
    if r < 1 || r > MAX_ORDER {
        return Err(Error::InvalidInput(format!(
            "r must lie in 1..={MAX_ORDER}, got {r}"
        )));
    }
    // c_0 = (2r)!/r!, then c_{k+1} = -c_k (r-k) / ((k+1)(2r-k)); every
    // step divides exactly because c_k (r-k) = c_{k+1} (k+1)(2r-k) holds
    // over the integers
    let mut c = Integer::from(Integer::factorial(2 * r));
    c /= Integer::from(Integer::factorial(r));
    let mut coeffs = Vec::with_capacity(r as usize + 1);
    coeffs.push(c.clone());
    for k in 0..r {
        let mut next = coeffs[k as usize].clone();
        next *= -(Integer::from(r - k));
        let den = Integer::from(k + 1) * Integer::from(2 * r - k);
        debug_assert!(next.is_divisible(&den));
        next /= den;
        coeffs.push(next);
    }
    Ok(PadeApproximant {
        r,
        coeffs,
        zeros: Vec::new(),
    })
}

fn poly_at_precision(p: &PadeApproximant, prec: u32) -> XPolynomial {
    let coeffs = p
        .coeffs
        .iter()
        .map(|c| XComplex::new(Float::with_val(prec, c), Float::new(prec)))
        .collect();
    XPolynomial::new(coeffs).expect("leading coefficient is 1")
}

/// Roots of P_r with the Saff-Varga annulus and half-plane checks enforced;
/// a violated bound is an error because it can only mean the root finder
/// went wrong.
pub fn pade_zeros(r: u32, digits: u32) -> Result<PadeApproximant> {
    let prec = bits_for_digits(digits)?;
    let mut pade = pade_poly(r)?;
    let poly = poly_at_precision(&pade, prec);
    let radius = float(prec, 1.4 * r as f64);
    let tol = 10f64.powi(-((digits as i32) + 2));
    let mut zeros = aberth_roots_from_circle(&poly, tol, &radius, ABERTH_MAX_ITERATIONS)?;
    // deterministic presentation: ascending imaginary part, then real part
    zeros.sort_by(|a, b| {
        a.im.partial_cmp(&b.im)
            .unwrap()
            .then(a.re.partial_cmp(&b.re).unwrap())
    });

    let mu = saff_varga_mu(digits)?;
    let lower = Float::with_val(prec, &mu * &float(prec, 2.0 * r as f64));
    let upper = float(prec, 2.0 * r as f64 + 4.0 / 3.0);
    let two_mu = Float::with_val(prec, &mu * &float(prec, 2.0));
    let max_arg = (1.0 / r as f64).acos() + 1e-12;
    for (i, z) in zeros.iter().enumerate() {
        let abs = z.abs();
        if !(abs > lower.clone() && abs < upper.clone()) {
            return Err(Error::BoundViolation {
                root_index: i,
                value: format!("{z}"),
                which: format!("|a| outside (2 r mu, 2r + 4/3) = ({lower}, {upper})"),
            });
        }
        if z.re <= two_mu {
            return Err(Error::BoundViolation {
                root_index: i,
                value: format!("{z}"),
                which: "Re a <= 2 mu".into(),
            });
        }
        if z.arg().to_f64().abs() > max_arg {
            return Err(Error::BoundViolation {
                root_index: i,
                value: format!("{z}"),
                which: "|arg a| > arccos(1/r)".into(),
            });
        }
    }
    pade.zeros = zeros;
    Ok(pade)
}

/// P_r(z)/P_r(-z) by Horner at the tier precision.
pub fn pade_ratio(r: u32, z: &XComplex, digits: u32) -> Result<XComplex> {
    let prec = bits_for_digits(digits)?;
    let pade = pade_poly(r)?;
    let poly = poly_at_precision(&pade, prec);
    let zz = z.with_prec(prec);
    let num = poly.eval(&zz);
    let den = poly.eval(&(-&zz));
    let scale = poly.coefficient_scale(&zz.abs());
    let guard = Float::with_val(prec, 10).pow(Float::with_val(prec, -(digits as f64) / 2.0)) * &scale;
    let den_abs = den.abs();
    if den_abs < guard {
        return Err(Error::PoleProximity {
            denominator: den_abs.to_f64(),
            guard: guard.to_f64(),
        });
    }
    Ok(&num / &den)
}

/// Remainder of the Pade approximation at z, three ways:
/// direct e^{-z} - P_r(z)/P_r(-z); the exact integral representation
/// (-1)^{r+1} z^{2r+1} / (r! P_r(-z)) int_0^1 e^{-tz} (1-t)^r t^r dt; and
/// the sector bound 2 |z|^r / ((sin t0)^r (2 r mu sin t0 + |z|)^r).
#[derive(Clone, Debug)]
pub struct PadeRemainder {
    pub direct: XComplex,
    pub integral: XComplex,
    pub bound: Float,
}

pub const DEFAULT_THETA0: f64 = std::f64::consts::PI / 6.0;

pub fn pade_remainder(r: u32, z: &XComplex, theta0: f64, digits: u32) -> Result<PadeRemainder> {
    let prec = bits_for_digits(digits)?;
    if z.re.is_sign_negative() && !z.re.is_zero() {
        return Err(Error::InvalidInput(
            "remainder bound regime needs Re z >= 0".into(),
        ));
    }
    if !(theta0 > 0.0 && theta0 < std::f64::consts::FRAC_PI_2) {
        return Err(Error::InvalidInput("theta0 must lie in (0, pi/2)".into()));
    }
    let arg = z.arg().to_f64().abs();
    if !z.is_zero() && arg > std::f64::consts::FRAC_PI_2 - theta0 + 1e-12 {
        return Err(Error::InvalidInput(format!(
            "|arg z| = {arg} exceeds pi/2 - theta0"
        )));
    }
    let zz = z.with_prec(prec);

    let ratio = pade_ratio(r, &zz, digits)?;
    let direct = &(-&zz).exp() - &ratio;

    // integral representation
    let pade = pade_poly(r)?;
    let poly = poly_at_precision(&pade, prec);
    let den = poly.eval(&(-&zz));
    let integrand = |t: &Float| -> XComplex {
        let one_minus = Float::with_val(prec, 1) - t;
        let mut w = Float::with_val(prec, Pow::pow(&one_minus, r));
        w *= Float::with_val(prec, Pow::pow(t, r));
        (-&zz.scale(t)).exp().scale(&w)
    };
    let a = float_zero(prec);
    let b = float(prec, 1.0);
    let tol = {
        let e = float(prec, -(digits as f64) - 6.0);
        Float::with_val(prec, Pow::pow(&float(prec, 10.0), &e))
    };
    let (quad_val, _) = quad::integrate(&integrand, &a, &b, &tol, prec)?;
    let mut front = zz.powi(2 * r + 1);
    if r % 2 == 0 {
        front = -&front;
    }
    let r_fact = Float::with_val(prec, Integer::from(Integer::factorial(r)));
    let integral = &(&front / &den).scale(&r_fact.recip()) * &quad_val;

    // sector bound
    let mu = saff_varga_mu(digits)?;
    let sin_t0 = float(prec, theta0).sin();
    let abs_z = zz.abs();
    let mut base = Float::with_val(prec, &mu * &float(prec, 2.0 * r as f64));
    base *= &sin_t0;
    base += &abs_z;
    base *= &sin_t0;
    // bound = 2 (|z| / ((2 r mu sin t0 + |z|) sin t0))^r
    let ratio_b = Float::with_val(prec, &abs_z / &base);
    let bound = Float::with_val(prec, Pow::pow(&ratio_b, r)) * 2u32;

    Ok(PadeRemainder {
        direct,
        integral,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_is_two_minus_z() {
        let p = pade_poly(1).unwrap();
        assert_eq!(p.coeffs, vec![Integer::from(2), Integer::from(-1)]);
    }

    #[test]
    fn p2_is_twelve_minus_six_z_plus_z2() {
        let p = pade_poly(2).unwrap();
        assert_eq!(
            p.coeffs,
            vec![Integer::from(12), Integer::from(-6), Integer::from(1)]
        );
    }

    #[test]
    fn leading_constant_for_r3() {
        // (2r)!/r! = 6!/3! = 120
        let p = pade_poly(3).unwrap();
        assert_eq!(p.coeffs[0], Integer::from(120));
        assert_eq!(*p.coeffs.last().unwrap(), Integer::from(-1));
    }

    #[test]
    fn mu_solves_its_equation() {
        let mu = saff_varga_mu(32).unwrap();
        assert!((mu.to_f64() - 0.278464542761).abs() < 1e-11);
        let prec = 128;
        let e = Float::with_val(prec, &mu + &Float::with_val(prec, 1)).exp();
        let res = Float::with_val(prec, &mu * &e) - 1u32;
        assert!(res.abs().to_f64() < 1e-35);
    }

    #[test]
    fn zeros_r1_and_r2_closed_forms() {
        let p = pade_zeros(1, 32).unwrap();
        assert_eq!(p.zeros.len(), 1);
        assert!((p.zeros[0].re.to_f64() - 2.0).abs() < 1e-30);

        // 12 - 6z + z^2 has roots 3 +- i sqrt(3)
        let p = pade_zeros(2, 32).unwrap();
        let s3 = 3f64.sqrt();
        assert!((p.zeros[0].re.to_f64() - 3.0).abs() < 1e-28);
        assert!((p.zeros[0].im.to_f64() + s3).abs() < 1e-28);
        assert!((p.zeros[1].im.to_f64() - s3).abs() < 1e-28);
    }

    #[test]
    fn zeros_satisfy_bounds_up_to_twenty() {
        for r in 1..=20 {
            let p = pade_zeros(r, 32).unwrap();
            assert_eq!(p.zeros.len(), r as usize);
        }
    }

    #[test]
    fn conjugate_symmetry_of_zeros() {
        let p = pade_zeros(7, 32).unwrap();
        for z in &p.zeros {
            let conj = z.conj();
            let found = p
                .zeros
                .iter()
                .any(|w| (w - &conj).abs().to_f64() < 1e-25);
            assert!(found, "conjugate of {z} missing");
        }
    }

    #[test]
    fn ratio_at_origin_is_one() {
        let prec = 128;
        let v = pade_ratio(1, &XComplex::zero(prec), 32).unwrap();
        assert!((&v - &XComplex::one(prec)).abs().to_f64() < 1e-36);
    }

    #[test]
    fn small_z_error_matches_cubic_term() {
        // e^{-z} - (2-z)/(2+z) = z^3/12 + O(z^4)
        let prec = 128;
        let z = XComplex::from_f64(prec, 0.01, 0.0);
        let v = pade_ratio(1, &z, 32).unwrap();
        let err = &(-&z).exp() - &v;
        // z^3/12 - z^4/12 + O(z^5)
        let expect = 0.01f64.powi(3) / 12.0;
        assert!((err.re.to_f64() - expect).abs() < 1e-9);
    }

    #[test]
    fn remainder_zero_at_origin() {
        let prec = 128;
        let rem = pade_remainder(1, &XComplex::zero(prec), DEFAULT_THETA0, 32).unwrap();
        assert!(rem.direct.abs().to_f64() < 1e-36);
        assert!(rem.integral.abs().to_f64() < 1e-36);
    }

    #[test]
    fn remainder_integral_matches_direct() {
        let prec = 128;
        let z = XComplex::from_f64(prec, 0.01, 0.0);
        let rem = pade_remainder(1, &z, DEFAULT_THETA0, 32).unwrap();
        assert!((rem.direct.re.to_f64() - 8.33e-8).abs() < 1e-9);
        let gap = (&rem.direct - &rem.integral).abs().to_f64();
        assert!(gap < 1e-28, "gap {gap:e}");
    }

    #[test]
    fn remainder_respects_bound() {
        let prec = 128;
        let z = XComplex::from_f64(prec, 2.0, 0.0);
        let rem = pade_remainder(5, &z, DEFAULT_THETA0, 32).unwrap();
        assert!(rem.direct.abs() <= rem.bound);
    }

    #[test]
    fn ratio_accuracy_at_r4() {
        // |e^{-1} - ratio| must sit under the theta0 = pi/4 bound
        let prec = 128;
        let z = XComplex::from_f64(prec, 1.0, 0.0);
        let rem = pade_remainder(4, &z, std::f64::consts::FRAC_PI_4, 32).unwrap();
        assert!(rem.direct.abs() <= rem.bound);
    }

    #[test]
    fn rejects_left_half_plane() {
        let prec = 128;
        let z = XComplex::from_f64(prec, -1.0, 0.0);
        assert!(pade_remainder(3, &z, DEFAULT_THETA0, 32).is_err());
    }
}
