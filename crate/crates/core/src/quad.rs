//! Adaptive Gauss-Legendre quadrature over a real parameter with complex
//! integrand values. Shared by the Airy oscillatory-integral oracle and the
//! Pade remainder integral.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use rug::Float;

use crate::error::{Error, Result};
use crate::num::{float, float_zero, XComplex};

const NODES: usize = 24;
const MAX_DEPTH: usize = 24;

fn node_cache() -> &'static Mutex<HashMap<(usize, u32), (Vec<Float>, Vec<Float>)>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), (Vec<Float>, Vec<Float>)>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton on the
/// Legendre recurrence at working precision.
fn gauss_legendre(n: usize, prec: u32) -> (Vec<Float>, Vec<Float>) {
    if let Some(hit) = node_cache().lock().unwrap().get(&(n, prec)) {
        return hit.clone();
    }
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let pi = crate::num::pi(prec);
    for i in 0..n {
        // Chebyshev-style initial guess
        let mut theta = Float::with_val(prec, 4 * i as u32 + 3);
        theta *= &pi;
        theta /= 4 * n as u32 + 2;
        let mut x = -theta.cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, &x, prec);
            let step = Float::with_val(prec, &p / &dp);
            x -= &step;
            let thresh = Float::with_val(prec, 2f64.powi(-(prec as i32) + 6));
            if step.abs() < thresh {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, &x, prec);
        let one_minus_x2 = Float::with_val(prec, 1) - Float::with_val(prec, &x * &x);
        let w = Float::with_val(prec, 2) / (one_minus_x2 * Float::with_val(prec, &dp * &dp));
        nodes.push(x);
        weights.push(w);
    }
    node_cache()
        .lock()
        .unwrap()
        .insert((n, prec), (nodes.clone(), weights.clone()));
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for k in 2..=n {
        let k_f = float(prec, k as f64);
        let a = Float::with_val(prec, 2 * k as u32 - 1) * x * &p1;
        let b = Float::with_val(prec, k as u32 - 1) * &p0;
        let p2 = (a - b) / &k_f;
        p0 = p1;
        p1 = p2;
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = (Float::with_val(prec, x * &p1) - &p0) * Float::with_val(prec, n as u32);
    let den = Float::with_val(prec, x * x) - 1u32;
    let dp = num / den;
    (p1, dp)
}

fn panel<F>(f: &F, a: &Float, b: &Float, prec: u32) -> XComplex
where
    F: Fn(&Float) -> XComplex,
{
    let (nodes, weights) = gauss_legendre(NODES, prec);
    let half = Float::with_val(prec, b - a) / 2u32;
    let mid = Float::with_val(prec, a + b) / 2u32;
    let mut acc = XComplex::zero(prec);
    for (x, w) in nodes.iter().zip(&weights) {
        let t = Float::with_val(prec, &half * x) + &mid;
        let v = f(&t);
        acc = &acc + &v.scale(w);
    }
    acc.scale(&half)
}

/// Adaptive bisection: a panel is accepted when one panel and its two
/// halves agree within the absolute tolerance share assigned to it.
pub fn integrate<F>(f: &F, a: &Float, b: &Float, abs_tol: &Float, prec: u32) -> Result<(XComplex, Float)>
where
    F: Fn(&Float) -> XComplex,
{
    fn recurse<F>(
        f: &F,
        a: &Float,
        b: &Float,
        coarse: XComplex,
        tol: &Float,
        prec: u32,
        depth: usize,
        err_acc: &mut Float,
    ) -> Result<XComplex>
    where
        F: Fn(&Float) -> XComplex,
    {
        let mid = Float::with_val(prec, a + b) / 2u32;
        let left = panel(f, a, &mid, prec);
        let right = panel(f, &mid, b, prec);
        let fine = &left + &right;
        let diff = (&fine - &coarse).abs();
        if diff <= *tol || depth >= MAX_DEPTH {
            if depth >= MAX_DEPTH && diff > *tol {
                return Err(Error::QuadratureFailure {
                    estimate: diff.to_f64(),
                    target: tol.to_f64(),
                });
            }
            *err_acc += diff;
            return Ok(fine);
        }
        let half_tol = Float::with_val(prec, tol / 2u32);
        let l = recurse(f, a, &mid, left, &half_tol, prec, depth + 1, err_acc)?;
        let r = recurse(f, &mid, b, right, &half_tol, prec, depth + 1, err_acc)?;
        Ok(&l + &r)
    }

    let coarse = panel(f, a, b, prec);
    let mut err = float_zero(prec);
    let value = recurse(f, a, b, coarse, abs_tol, prec, 0, &mut err)?;
    Ok((value, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_exponential() {
        let prec = 192;
        let f = |t: &Float| XComplex::from_real(t.clone().exp());
        let a = float_zero(prec);
        let b = float(prec, 1.0);
        let tol = float(prec, 1e-40);
        let (v, _) = integrate(&f, &a, &b, &tol, prec).unwrap();
        let expect = float(prec, 1.0).exp() - 1u32;
        let err = (v.re - expect).abs();
        assert!(err.to_f64() < 1e-38, "error {:e}", err.to_f64());
        assert!(v.im.clone().abs().to_f64() < 1e-38);
    }

    #[test]
    fn integrates_oscillatory() {
        let prec = 192;
        // int_0^pi exp(i t) dt = 2i
        let f = |t: &Float| {
            let z = XComplex::new(float_zero(prec), t.clone());
            z.exp()
        };
        let a = float_zero(prec);
        let b = crate::num::pi(prec);
        let tol = float(prec, 1e-40);
        let (v, _) = integrate(&f, &a, &b, &tol, prec).unwrap();
        assert!(v.re.clone().abs().to_f64() < 1e-38);
        assert!((v.im.to_f64() - 2.0).abs() < 1e-38);
    }
}
