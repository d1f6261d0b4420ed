use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::ops::CompleteRound;
use rug::Float;

use super::{parse_float, pi, reduce_angle};
use crate::error::Result;

/// Extended-precision complex scalar. Both parts carry the same mantissa
/// width; operations round each real step once, so results at a fixed
/// precision are bit-reproducible.
#[derive(Clone, PartialEq)]
pub struct XComplex {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for XComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

impl fmt::Display for XComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl XComplex {
    pub fn new(re: Float, im: Float) -> Self {
        XComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        XComplex::new(Float::new(prec), Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        XComplex::from_f64(prec, 1.0, 0.0)
    }

    pub fn i(prec: u32) -> Self {
        XComplex::from_f64(prec, 0.0, 1.0)
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        XComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        XComplex::new(re, im)
    }

    /// Parse a pair of decimal strings.
    pub fn parse(prec: u32, re: &str, im: &str) -> Result<Self> {
        Ok(XComplex::new(parse_float(prec, re)?, parse_float(prec, im)?))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Round/extend both parts to a new working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        XComplex::new(
            Float::with_val(prec, &self.re),
            Float::with_val(prec, &self.im),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        XComplex::new(self.re.clone(), (-&self.im).complete(self.im.prec()))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let prec = self.prec().max(k.prec());
        XComplex::new(
            (&self.re * k).complete(prec),
            (&self.im * k).complete(prec),
        )
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        let prec = self.prec();
        self.scale(&Float::with_val(prec, k))
    }

    /// Multiplication by i.
    pub fn mul_i(&self) -> Self {
        XComplex::new(
            (-&self.im).complete(self.im.prec()),
            self.re.clone(),
        )
    }

    pub fn norm_sqr(&self) -> Float {
        let prec = self.prec();
        let mut s = Float::with_val(prec, &self.re * &self.re);
        s += Float::with_val(prec, &self.im * &self.im);
        s
    }

    pub fn abs(&self) -> Float {
        let prec = self.prec();
        Float::with_val(prec, self.re.hypot_ref(&self.im))
    }

    /// Principal argument in (-pi, pi]. A zero imaginary part on the
    /// negative real axis yields +pi (boundary value from above).
    pub fn arg(&self) -> Float {
        let prec = self.prec();
        if self.im.is_zero() {
            if self.re.is_sign_negative() && !self.re.is_zero() {
                return pi(prec);
            }
            return Float::new(prec);
        }
        Float::with_val(prec, self.im.atan2_ref(&self.re))
    }

    pub fn recip(&self) -> Self {
        let prec = self.prec();
        let q = self.norm_sqr();
        XComplex::new(
            Float::with_val(prec, &self.re / &q),
            -Float::with_val(prec, &self.im / &q),
        )
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let m = Float::with_val(prec, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(prec));
        XComplex::new(Float::with_val(prec, &m * &c), Float::with_val(prec, &m * &s))
    }

    /// Principal logarithm: imaginary part in (-pi, pi], cut on the
    /// negative real axis with the boundary value from above.
    pub fn ln(&self) -> Self {
        let prec = self.prec();
        let r = self.abs();
        XComplex::new(Float::with_val(prec, r.ln_ref()), self.arg())
    }

    /// Principal square root; see [`principal_sqrt`].
    pub fn sqrt(&self) -> Self {
        principal_sqrt(self)
    }

    /// Principal rational power z^(num/den) = exp((num/den) Log z).
    pub fn pow_ratio(&self, num: i32, den: u32) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return if num > 0 {
                XComplex::zero(prec)
            } else {
                XComplex::new(Float::with_val(prec, f64::INFINITY), Float::new(prec))
            };
        }
        let mut l = self.ln();
        let f = Float::with_val(prec, num) / Float::with_val(prec, den);
        l = l.scale(&f);
        l.exp()
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, n: u32) -> Self {
        let prec = self.prec();
        let mut acc = XComplex::one(prec);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Reduce the imaginary part into (-pi, pi] (for values that live on a
    /// logarithmic scale).
    pub fn reduce_im(&self) -> Self {
        XComplex::new(self.re.clone(), reduce_angle(&self.im))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Principal square root. The result w has Re w >= 0 and w^2 = z; for z on
/// the negative real axis the branch is the boundary value from above, so
/// Im w > 0 there.
pub fn principal_sqrt(z: &XComplex) -> XComplex {
    let prec = z.prec();
    if z.im.is_zero() {
        if z.re.is_sign_negative() && !z.re.is_zero() {
            let m = Float::with_val(prec, (-&z.re).complete(prec).sqrt_ref());
            return XComplex::new(Float::new(prec), m);
        }
        let m = Float::with_val(prec, z.re.sqrt_ref());
        return XComplex::new(m, Float::new(prec));
    }
    let r = z.abs();
    if z.re.is_sign_negative() {
        // v = sqrt((r - re)/2), stable when re < 0
        let mut v2 = Float::with_val(prec, &r - &z.re);
        v2 /= 2u32;
        let v = v2.sqrt();
        let re = Float::with_val(prec, z.im.abs_ref()) / (Float::with_val(prec, &v) * 2u32);
        let im = if z.im.is_sign_negative() { -v } else { v };
        XComplex::new(re, im)
    } else {
        let mut u2 = Float::with_val(prec, &r + &z.re);
        u2 /= 2u32;
        let u = u2.sqrt();
        let im = Float::with_val(prec, &z.im) / (Float::with_val(prec, &u) * 2u32);
        XComplex::new(u, im)
    }
}

impl Add for &XComplex {
    type Output = XComplex;
    fn add(self, rhs: &XComplex) -> XComplex {
        let prec = self.prec().max(rhs.prec());
        XComplex::new(
            (&self.re + &rhs.re).complete(prec),
            (&self.im + &rhs.im).complete(prec),
        )
    }
}

impl Sub for &XComplex {
    type Output = XComplex;
    fn sub(self, rhs: &XComplex) -> XComplex {
        let prec = self.prec().max(rhs.prec());
        XComplex::new(
            (&self.re - &rhs.re).complete(prec),
            (&self.im - &rhs.im).complete(prec),
        )
    }
}

impl Mul for &XComplex {
    type Output = XComplex;
    fn mul(self, rhs: &XComplex) -> XComplex {
        let prec = self.prec().max(rhs.prec());
        let mut re = Float::with_val(prec, &self.re * &rhs.re);
        re -= Float::with_val(prec, &self.im * &rhs.im);
        let mut im = Float::with_val(prec, &self.re * &rhs.im);
        im += Float::with_val(prec, &self.im * &rhs.re);
        XComplex::new(re, im)
    }
}

impl Div for &XComplex {
    type Output = XComplex;
    fn div(self, rhs: &XComplex) -> XComplex {
        let prec = self.prec().max(rhs.prec());
        let q = rhs.norm_sqr();
        let mut re = Float::with_val(prec, &self.re * &rhs.re);
        re += Float::with_val(prec, &self.im * &rhs.im);
        re /= &q;
        let mut im = Float::with_val(prec, &self.im * &rhs.re);
        im -= Float::with_val(prec, &self.re * &rhs.im);
        im /= &q;
        XComplex::new(re, im)
    }
}

impl Neg for &XComplex {
    type Output = XComplex;
    fn neg(self) -> XComplex {
        let prec = self.prec();
        XComplex::new((-&self.re).complete(prec), (-&self.im).complete(prec))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREC: u32 = 128;

    fn close(a: &Float, b: f64, tol: f64) -> bool {
        (Float::with_val(PREC, a - Float::with_val(PREC, b)))
            .abs()
            .to_f64()
            < tol
    }

    #[test]
    fn sqrt_positive_real() {
        let z = XComplex::from_f64(PREC, 4.0, 0.0);
        let w = principal_sqrt(&z);
        assert!(close(&w.re, 2.0, 1e-35));
        assert!(w.im.is_zero());
    }

    #[test]
    fn sqrt_negative_real_branch_from_above() {
        let z = XComplex::from_f64(PREC, -1.0, 0.0);
        let w = principal_sqrt(&z);
        assert!(w.re.is_zero());
        assert!(close(&w.im, 1.0, 1e-35));
        // negative zero imaginary part still counts as the cut itself
        let z = XComplex::new(Float::with_val(PREC, -1.0), Float::with_val(PREC, -0.0));
        let w = principal_sqrt(&z);
        assert!(w.im > 0);
    }

    #[test]
    fn sqrt_two_i() {
        let z = XComplex::from_f64(PREC, 0.0, 2.0);
        let w = principal_sqrt(&z);
        assert!(close(&w.re, 1.0, 1e-35));
        assert!(close(&w.im, 1.0, 1e-35));
    }

    #[test]
    fn sqrt_squares_back() {
        let z = XComplex::from_f64(PREC, -3.25, 0.5);
        let w = principal_sqrt(&z);
        let back = &w * &w;
        let d = &back - &z;
        assert!(d.abs().to_f64() < 1e-35);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let z = XComplex::from_f64(PREC, 0.3, -2.2);
        let back = z.exp().ln();
        let d = &back - &z;
        assert!(d.abs().to_f64() < 1e-36);
    }

    #[test]
    fn ln_on_cut_from_above() {
        let z = XComplex::from_f64(PREC, -2.0, 0.0);
        let l = z.ln();
        let p = pi(PREC);
        assert!((Float::with_val(PREC, &l.im - &p)).abs().to_f64() < 1e-36);
    }

    #[test]
    fn division_agrees_with_multiplication() {
        let a = XComplex::from_f64(PREC, 1.5, -0.7);
        let b = XComplex::from_f64(PREC, -0.2, 3.1);
        let q = &a / &b;
        let back = &q * &b;
        let d = &back - &a;
        assert!(d.abs().to_f64() < 1e-36);
    }

    #[test]
    fn pow_ratio_matches_sqrt() {
        let z = XComplex::from_f64(PREC, 2.0, 5.0);
        let a = z.pow_ratio(1, 2);
        let b = principal_sqrt(&z);
        let d = &a - &b;
        assert!(d.abs().to_f64() < 1e-36);
    }
}
