//! Extended-precision complex arithmetic, polynomial roots, and log-scaled
//! determinants. Everything downstream builds on the two fixed precision
//! tiers exposed here.

mod aberth;
mod logdet;
mod polynomial;
mod xcomplex;

pub use aberth::{aberth_roots, aberth_roots_from_circle, ABERTH_MAX_ITERATIONS};
pub use logdet::{logdet_lu, LogDet};
pub use polynomial::XPolynomial;
pub use xcomplex::{principal_sqrt, XComplex};

use crate::error::{Error, Result};
use rug::Float;

/// Working mantissa bits for a decimal-digit tier. The two tiers carry
/// 128 and 256 bits (38 and 77 decimal digits), leaving guard digits over
/// the promised 32 and 64.
pub fn bits_for_digits(digits: u32) -> Result<u32> {
    match digits {
        32 => Ok(128),
        64 => Ok(256),
        other => Err(Error::InvalidInput(format!(
            "digits must be 32 or 64, got {other}"
        ))),
    }
}

/// The higher tier, used when auto-escalating ill-conditioned work.
pub const HIGH_DIGITS: u32 = 64;

pub fn float(prec: u32, value: f64) -> Float {
    Float::with_val(prec, value)
}

/// Exact rational constant at working precision; use instead of an f64
/// literal whenever the value is not dyadic.
pub fn float_ratio(prec: u32, num: i64, den: u64) -> Float {
    let mut v = Float::with_val(prec, num);
    v /= Float::with_val(prec, den);
    v
}

pub fn float_zero(prec: u32) -> Float {
    Float::with_val(prec, 0)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Pi)
}

/// Parse a decimal string at the given precision.
pub fn parse_float(prec: u32, s: &str) -> Result<Float> {
    let incomplete = Float::parse(s)
        .map_err(|e| Error::InvalidInput(format!("bad decimal literal {s:?}: {e}")))?;
    Ok(Float::with_val(prec, incomplete))
}

/// Reduce an angle into (-pi, pi].
pub fn reduce_angle(theta: &Float) -> Float {
    let prec = theta.prec();
    let two_pi = pi(prec) * 2u32;
    let mut t = theta.clone();
    // k = round(theta / 2pi)
    let k = Float::with_val(prec, &t / &two_pi).round();
    t -= k * &two_pi;
    let p = pi(prec);
    if t > p {
        t -= &two_pi;
    } else if t <= -p.clone() {
        t += &two_pi;
    }
    t
}
