use rug::Float;

use super::xcomplex::XComplex;
use crate::error::{Error, Result};

/// Dense polynomial with extended-precision complex coefficients, stored in
/// ascending degree.
#[derive(Clone, Debug)]
pub struct XPolynomial {
    coeffs: Vec<XComplex>,
}

impl XPolynomial {
    /// Build from ascending coefficients; trailing (exactly) zero
    /// coefficients are trimmed so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<XComplex>) -> Result<Self> {
        while coeffs.len() > 1 && coeffs.last().map(XComplex::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() || coeffs.iter().all(XComplex::is_zero) {
            return Err(Error::InvalidInput(
                "polynomial must have a nonzero coefficient".into(),
            ));
        }
        if coeffs.last().map(XComplex::is_zero).unwrap_or(true) {
            return Err(Error::InvalidInput(
                "leading coefficient must be nonzero after normalization".into(),
            ));
        }
        Ok(XPolynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[XComplex] {
        &self.coeffs
    }

    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(XComplex::prec).max().unwrap_or(64)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &XComplex) -> XComplex {
        let mut acc = self.coeffs.last().expect("nonempty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn derivative(&self) -> XPolynomial {
        let prec = self.prec();
        if self.degree() == 0 {
            return XPolynomial {
                coeffs: vec![XComplex::zero(prec)],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Float::with_val(prec, k as u32)))
            .collect();
        XPolynomial { coeffs }
    }

    /// Scale of the coefficients at radius |z|: sum_k |c_k| |z|^k. Used as
    /// the backward-error yardstick for root residuals.
    pub fn coefficient_scale(&self, abs_z: &Float) -> Float {
        let prec = self.prec();
        let mut scale = Float::new(prec);
        let mut pow = Float::with_val(prec, 1);
        for c in &self.coeffs {
            scale += c.abs() * &pow;
            pow *= abs_z;
        }
        scale
    }

    /// Cauchy root bound: 1 + max_k |c_k| / |c_n|.
    pub fn cauchy_bound(&self) -> Float {
        let prec = self.prec();
        let lead = self.coeffs.last().expect("nonempty").abs();
        let mut m = Float::new(prec);
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let v = c.abs();
            if v > m {
                m = v;
            }
        }
        Float::with_val(prec, &m / &lead) + 1u32
    }

    /// Monic product of (z - root_i), at the precision of the roots.
    pub fn from_roots(roots: &[XComplex]) -> XPolynomial {
        let prec = roots.iter().map(XComplex::prec).max().unwrap_or(64);
        let mut coeffs = vec![XComplex::one(prec)];
        for r in roots {
            let mut next = vec![XComplex::zero(prec); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * r);
            }
            coeffs = next;
        }
        XPolynomial { coeffs }
    }
}
