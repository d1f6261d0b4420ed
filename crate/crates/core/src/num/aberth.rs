use rug::Float;

use super::polynomial::XPolynomial;
use super::xcomplex::XComplex;
use super::{float, pi};
use crate::error::{Error, Result};

pub const ABERTH_MAX_ITERATIONS: usize = 200;

/// Simultaneous Aberth-Ehrlich root finding with initial points on the
/// Cauchy-bound circle and the default iteration cap.
pub fn aberth_roots(p: &XPolynomial, tol: f64) -> Result<Vec<XComplex>> {
    let radius = p.cauchy_bound();
    aberth_roots_from_circle(p, tol, &radius, ABERTH_MAX_ITERATIONS)
}

/// Same iteration, but seeded on a caller-chosen circle (the Pade zeros are
/// known to sit in an annulus around |z| = 1.4 r, which makes a much better
/// start than the Cauchy bound) and with a caller-chosen iteration cap.
pub fn aberth_roots_from_circle(
    p: &XPolynomial,
    tol: f64,
    radius: &Float,
    max_iterations: usize,
) -> Result<Vec<XComplex>> {
    let degree = p.degree();
    if degree < 1 {
        return Err(Error::InvalidInput("degree must be at least 1".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput("tol must be positive".into()));
    }
    let prec = p.prec();
    let dp = p.derivative();

    // Equispaced start with a fixed angular offset; the offset keeps the
    // start set disjoint from real-axis symmetries of the root set.
    let two_pi = pi(prec) * 2u32;
    let offset = float(prec, 0.3572);
    let mut roots: Vec<XComplex> = (0..degree)
        .map(|k| {
            let mut theta = Float::with_val(prec, &two_pi * k as u32);
            theta /= degree as u32;
            theta += &offset;
            let (s, c) = theta.sin_cos(Float::new(prec));
            XComplex::new(Float::with_val(prec, radius * &c), Float::with_val(prec, radius * &s))
        })
        .collect();

    let mut worst_residual = f64::INFINITY;
    for _ in 0..max_iterations {
        let mut converged = true;
        worst_residual = 0.0;
        for i in 0..degree {
            let pv = p.eval(&roots[i]);
            let scale = p.coefficient_scale(&roots[i].abs());
            let residual = Float::with_val(prec, pv.abs() / &scale).to_f64();
            worst_residual = worst_residual.max(residual);
            if residual <= tol {
                continue;
            }
            converged = false;
            let dv = dp.eval(&roots[i]);
            if dv.is_zero() {
                // nudge off a critical point
                roots[i] = &roots[i] + &XComplex::from_f64(prec, 1e-3, 1e-3);
                continue;
            }
            let newton = &pv / &dv;
            let mut repulsion = XComplex::zero(prec);
            for j in 0..degree {
                if j == i {
                    continue;
                }
                let d = &roots[i] - &roots[j];
                if d.is_zero() {
                    continue;
                }
                repulsion = &repulsion + &d.recip();
            }
            let denom = &XComplex::one(prec) - &(&newton * &repulsion);
            let step = if denom.is_zero() { newton } else { &newton / &denom };
            roots[i] = &roots[i] - &step;
        }
        if converged {
            return Ok(roots);
        }
    }

    Err(Error::NoConvergence {
        iterations: max_iterations,
        worst_residual,
    })
}
