//! Complex Airy functions Ai_nu(z) = Ai(omega^nu z) in all Stokes sectors,
//! derivative jets of arbitrary order, the 2x2 Airy parametrix with jump
//! verification, and an oscillatory-integral quadrature oracle used only by
//! tests.
//!
//! Backends: a Maclaurin series (run at internally boosted precision so the
//! e^{2|zeta|} cancellation never eats into the tier) below the switch
//! radius, and the standard asymptotic expansion with exact rational
//! coefficients u_k, r_k above it, rotated through the connection identity
//! Ai_0 + omega Ai_1 + omega^2 Ai_2 = 0 when the argument leaves the safe
//! cone |arg z| <= 2pi/3.

use std::sync::Mutex;
use std::sync::OnceLock;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::num::{bits_for_digits, float, float_ratio, float_zero, parse_float, pi, XComplex};
use crate::quad;

/// Ai(0) to 200 significant digits; the series amplifies the literal's own
/// rounding by e^{(4/3)|z|^{3/2}}, so the worst case (|z| = 30 at the
/// 64-digit tier) needs about 172 of them.
const AI0_LITERAL: &str = "0.35502805388781723926006318600418317639797917419917724058332651030081004245012671295717424605404027168842044873034949583975829267044616193710504024002258538638400990260103571281905156820329024916964477";
/// Ai'(0) to 200 significant digits.
const AIP0_LITERAL: &str = "-0.25881940379280679840518356018920396347909113835493458221000181385610277267679028065419640582727538431337119321178913338127503595216762601478505098984841944663202964488880560187838330512695052512829334";

/// Series/asymptotic switch radius per working precision.
pub fn switch_radius(prec: u32) -> f64 {
    if prec <= 192 {
        12.0
    } else {
        24.0
    }
}

fn digits_of_prec(prec: u32) -> u32 {
    prec / 4
}

/// A value/derivative pair with the backend's cancellation flag.
#[derive(Clone, Debug)]
pub struct AiryPair {
    pub ai: XComplex,
    pub aip: XComplex,
    pub precision_loss: bool,
}

/// omega^k = e^{2 pi i k / 3}.
pub fn omega_pow(prec: u32, k: i32) -> XComplex {
    let k = k.rem_euclid(3);
    if k == 0 {
        return XComplex::one(prec);
    }
    let mut theta = pi(prec) * 2u32;
    theta *= k as u32;
    theta /= 3u32;
    let (s, c) = theta.sin_cos(Float::new(prec));
    XComplex::new(c, s)
}

fn unit_phase(prec: u32, numerator: i32, denominator: u32) -> XComplex {
    let mut theta = pi(prec);
    theta *= numerator;
    theta /= denominator;
    let (s, c) = theta.sin_cos(Float::new(prec));
    XComplex::new(c, s)
}

/// Maclaurin evaluation of (Ai(z), Ai'(z)). Accurate at full target
/// precision on |z| <= 15 (32-digit tier) / |z| <= 30 (64-digit tier); the
/// `precision_loss` flag fires when the estimated cancellation exceeds the
/// margin left by the internal precision boost.
pub fn airy_series(z: &XComplex) -> AiryPair {
    let prec = z.prec();
    // predictable cancellation: boost the working precision by
    // 2*(2/3)|z|^{3/2} nats worth of bits, then round back
    let abs_z = z.abs().to_f64();
    let boost = (1.93 * abs_z.powf(1.5)).ceil() as u32 + 24;
    let wprec = prec + boost;

    let zw = z.with_prec(wprec);
    let z3 = &(&zw * &zw) * &zw;

    let c1 = parse_float(wprec, AI0_LITERAL).expect("embedded literal");
    let c2 = parse_float(wprec, AIP0_LITERAL).expect("embedded literal");

    // f  = sum a_k z^{3k},      a_0 = 1,  a_{k+1} = a_k/((3k+2)(3k+3))
    // g  = sum b_k z^{3k+1},    b_0 = z,  b_{k+1} = b_k/((3k+3)(3k+4))
    // f' = sum 3k a_k z^{3k-1}, g' = sum (3k+1) b_k z^{3k}
    let mut f = XComplex::one(wprec);
    let mut fp = XComplex::zero(wprec);
    let mut g = zw.clone();
    let mut gp = XComplex::one(wprec);

    let mut a_term = XComplex::one(wprec); // a_k z^{3k}
    let mut b_term = zw.clone(); // b_k z^{3k+1}
    let mut max_term = float(wprec, 1.0);

    let eps = float(wprec, 1.0) >> (wprec + 8);
    let mut k: u32 = 0;
    if !zw.is_zero() {
        loop {
            let div_a = float(wprec, ((3 * k + 2) * (3 * k + 3)) as f64);
            let div_b = float(wprec, ((3 * k + 3) * (3 * k + 4)) as f64);
            a_term = &a_term * &z3;
            a_term = a_term.scale(&div_a.recip());
            b_term = &b_term * &z3;
            b_term = b_term.scale(&div_b.recip());
            k += 1;

            f = &f + &a_term;
            g = &g + &b_term;
            let fp_term = (&a_term / &zw).scale(&float(wprec, (3 * k) as f64));
            fp = &fp + &fp_term;
            let gp_term = (&b_term / &zw).scale(&float(wprec, (3 * k + 1) as f64));
            gp = &gp + &gp_term;

            let ta = a_term.abs();
            let tb = b_term.abs();
            if ta > max_term {
                max_term = ta.clone();
            }
            if tb > max_term {
                max_term = tb.clone();
            }
            let bound = Float::with_val(wprec, &eps * &max_term);
            if (ta <= bound && tb <= bound) || k > 4000 {
                break;
            }
        }
    }

    let ai = &f.scale(&c1) + &g.scale(&c2);
    let aip = &fp.scale(&c1) + &gp.scale(&c2);

    // cancellation diagnostic: bits between the largest partial term and
    // the result, versus the boost that absorbed them
    let result_abs = ai.abs();
    let cancelled_bits = match (max_term.get_exp(), result_abs.get_exp()) {
        (Some(top), Some(bottom)) => (top - bottom).max(0) as u32,
        _ => 0,
    };
    let digits = digits_of_prec(prec);
    let cancelled_digits = (cancelled_bits as f64 * 0.30103) as u32;
    let boost_digits = (boost as f64 * 0.30103) as u32;
    let precision_loss = cancelled_digits + 10 > digits + boost_digits;

    AiryPair {
        ai: ai.with_prec(prec),
        aip: aip.with_prec(prec),
        precision_loss,
    }
}

fn u_ratio(k: u32) -> Rational {
    // u_{k+1} / u_k = (6k+1)(6k+3)(6k+5) / (216 (k+1)(2k+1))
    let num = Rational::from(((6 * k + 1) as u64) * ((6 * k + 3) as u64) * ((6 * k + 5) as u64));
    let den = Rational::from(216u64 * ((k + 1) as u64) * ((2 * k + 1) as u64));
    num / den
}

/// Exact rationals u_k = Gamma(3k+1/2) / (54^k k! Gamma(k+1/2)).
pub fn airy_u_coefficients(kmax: usize) -> Vec<Rational> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1)]));
    let mut guard = cache.lock().unwrap();
    while guard.len() <= kmax {
        let k = guard.len() as u32 - 1;
        let next = guard.last().unwrap().clone() * u_ratio(k);
        guard.push(next);
    }
    guard[..=kmax].to_vec()
}

/// Exact rationals r_k = -(6k+1)/(6k-1) u_k for k >= 1, with r_0 = 1; the
/// derivative series of the parametrix expansion uses exactly these.
pub fn airy_r_coefficients(kmax: usize) -> Vec<Rational> {
    airy_u_coefficients(kmax)
        .into_iter()
        .enumerate()
        .map(|(k, u)| {
            if k == 0 {
                u
            } else {
                let k = k as u64;
                -u * Rational::from((6 * k + 1, 6 * k - 1))
            }
        })
        .collect()
}

/// Asymptotic evaluation of (Ai(z), Ai'(z)) for |arg z| < pi:
///   Ai  ~  e^{-zeta} / (2 sqrt(pi) z^{1/4}) sum (-1)^k u_k zeta^{-k}
///   Ai' ~ -z^{1/4} e^{-zeta} / (2 sqrt(pi)) sum (-1)^k r_k zeta^{-k}
/// with zeta = (2/3) z^{3/2}. Terms are summed until they fall below the
/// working precision or start growing; if the smallest term is still above
/// `rel_target` the tail is declared divergent.
pub fn airy_asymptotic(z: &XComplex, kmax: usize, rel_target: f64) -> Result<AiryPair> {
    let prec = z.prec();
    if z.is_zero() || (z.im.is_zero() && z.re.is_sign_negative()) {
        return Err(Error::InvalidInput(
            "asymptotic expansion needs |arg z| < pi and z != 0".into(),
        ));
    }
    let zeta = z.pow_ratio(3, 2).scale(&float_ratio(prec, 2, 3));
    let inv_zeta = zeta.recip();

    let us = airy_u_coefficients(kmax);
    let rs = airy_r_coefficients(kmax);

    let mut s_ai = XComplex::one(prec);
    let mut s_aip = XComplex::one(prec);
    let mut pow = XComplex::one(prec); // (-1/zeta)^k
    let mut smallest = f64::INFINITY;
    let mut prev = f64::INFINITY;
    let eps = 2f64.powi(-(prec as i32) + 2);
    for k in 1..=kmax {
        pow = &pow * &inv_zeta;
        pow = -&pow;
        let tu = pow.scale(&Float::with_val(prec, &us[k]));
        let tr = pow.scale(&Float::with_val(prec, &rs[k]));
        let mag = tu.abs().to_f64().max(tr.abs().to_f64());
        if mag > prev {
            // past the optimal truncation point
            break;
        }
        s_ai = &s_ai + &tu;
        s_aip = &s_aip + &tr;
        smallest = smallest.min(mag);
        prev = mag;
        if mag < eps {
            break;
        }
    }
    if smallest > rel_target {
        return Err(Error::DivergentTail {
            smallest_term: smallest,
            target: rel_target,
        });
    }

    let quarter = z.pow_ratio(1, 4);
    let e_min_zeta = (-&zeta).exp();
    let two_sqrt_pi = {
        let p = pi(prec).sqrt();
        p * 2u32
    };
    let ai = &(&s_ai * &e_min_zeta) / &quarter.scale(&two_sqrt_pi);
    let aip = -&(&(&s_aip * &e_min_zeta) * &quarter).scale(&two_sqrt_pi.recip());
    Ok(AiryPair {
        ai,
        aip,
        precision_loss: false,
    })
}

/// Backend dispatcher at the precision of `z`: series inside the switch
/// radius; direct asymptotics in the cone |arg z| <= 2pi/3; otherwise the
/// connection identity applied once, with both rotated arguments evaluated
/// asymptotically.
pub(crate) fn airy_eval(z: &XComplex) -> Result<AiryPair> {
    let prec = z.prec();
    let abs_z = z.abs().to_f64();
    if abs_z <= switch_radius(prec) {
        return Ok(airy_series(z));
    }
    let digits = digits_of_prec(prec);
    let rel_target = 10f64.powi(-(digits.saturating_sub(10) as i32));
    let arg = z.arg().to_f64();
    let two_thirds_pi = 2.0 * std::f64::consts::PI / 3.0;
    if arg.abs() <= two_thirds_pi + 1e-12 {
        return airy_asymptotic(z, 400, rel_target);
    }
    // rotate: Ai(z) = -omega Ai(omega z) - omega^2 Ai(omega^2 z)
    //         Ai'(z) = -omega^2 Ai'(omega z) - omega Ai'(omega^2 z)
    let w1 = omega_pow(prec, 1);
    let w2 = omega_pow(prec, 2);
    let z1 = &w1 * z;
    let z2 = &w2 * z;
    let p1 = airy_asymptotic(&z1, 400, rel_target)?;
    let p2 = airy_asymptotic(&z2, 400, rel_target)?;
    let ai = -&(&(&w1 * &p1.ai) + &(&w2 * &p2.ai));
    let aip = -&(&(&w2 * &p1.aip) + &(&w1 * &p2.aip));
    Ok(AiryPair {
        ai,
        aip,
        precision_loss: p1.precision_loss || p2.precision_loss,
    })
}

/// Ai_nu(z) = Ai(omega^nu z) and its first m derivatives in z.
#[derive(Clone, Debug)]
pub struct AiryJet {
    pub z: XComplex,
    pub nu: u8,
    /// values[k] = d^k/dz^k Ai(omega^nu z), k = 0..=m
    pub values: Vec<XComplex>,
    pub precision_loss: bool,
    /// Set when |values[m]| exceeds 10^{digits/2}; the caller should raise
    /// the tier before trusting high-order determinant rows.
    pub growth_warning: bool,
}

pub fn airy_jet(z: &XComplex, nu: u8, m: usize, digits: u32) -> Result<AiryJet> {
    let prec = bits_for_digits(digits)?;
    airy_jet_prec(&z.with_prec(prec), nu, m, digits)
}

/// Jet at the precision already carried by `z`; `digits` only scales the
/// growth warning threshold.
pub(crate) fn airy_jet_prec(z: &XComplex, nu: u8, m: usize, digits: u32) -> Result<AiryJet> {
    if nu > 2 {
        return Err(Error::InvalidInput(format!(
            "nu must be 0, 1 or 2, got {nu}"
        )));
    }
    let prec = z.prec();
    let w = &omega_pow(prec, nu as i32) * z;
    let pair = airy_eval(&w)?;

    let mut values = Vec::with_capacity(m + 1);
    values.push(pair.ai.clone());
    if m >= 1 {
        values.push(&omega_pow(prec, nu as i32) * &pair.aip);
    }
    // F'' = z F (omega^{3 nu} = 1 makes the rotated jet satisfy the plain
    // Airy recurrence), hence F^{(k+2)} = z F^{(k)} + k F^{(k-1)}
    for k in 0..m.saturating_sub(1) {
        let mut next = z * &values[k];
        if k >= 1 {
            next = &next + &values[k - 1].scale(&float(prec, k as f64));
        }
        values.push(next);
    }

    let growth_limit = 10f64.powi((digits / 2) as i32);
    let growth_warning = values
        .last()
        .map(|v| v.abs().to_f64() > growth_limit)
        .unwrap_or(false);

    Ok(AiryJet {
        z: z.clone(),
        nu,
        values,
        precision_loss: pair.precision_loss,
        growth_warning,
    })
}

/// Independent test oracle: Ai(z) = 1/(2 pi) int_C e^{i(s^3/3 + s z)} ds
/// with C running from e^{5 i pi/6} infinity through the origin and out
/// along e^{i pi/6} infinity. Adaptive Gauss quadrature at a fixed high
/// internal precision; never used by production paths.
pub fn airy_quadrature_oracle(z: &XComplex) -> Result<XComplex> {
    let abs_z = z.abs().to_f64();
    if abs_z > 30.0 {
        return Err(Error::InvalidInput("oracle regime is |z| <= 30".into()));
    }
    // headroom for the oscillatory peak e^{(2/3)|z|^{3/2}}
    let peak_bits = (0.97 * abs_z.powf(1.5)).ceil() as u32 + 32;
    let prec = 320 + peak_bits;
    let zq = z.with_prec(prec);

    // truncation: e^{-L^3/3 + |z| L} below the tolerance with margin
    let target_digits = 26.0;
    let mut upper = 8.0f64;
    while upper.powi(3) / 3.0 - abs_z * upper < (target_digits + 12.0) * std::f64::consts::LN_10 {
        upper += 1.0;
    }

    let abs_tol = {
        let e = float(prec, -(target_digits + 6.0));
        let ten = float(prec, 10.0);
        Float::with_val(prec, rug::ops::Pow::pow(&ten, &e))
    };

    let mut total = XComplex::zero(prec);
    for (num, positive) in [(1i32, true), (5i32, false)] {
        let ray = unit_phase(prec, num, 6);
        let f = |t: &Float| -> XComplex {
            // s = t e^{i num pi/6}; integrand e^{i(s^3/3 + s z)}
            let s = ray.scale(t);
            let s3 = (&(&s * &s) * &s).scale(&float_ratio(prec, 1, 3));
            let exponent = (&s3 + &(&s * &zq)).mul_i();
            exponent.exp()
        };
        let a = float_zero(prec);
        let b = float(prec, upper);
        let (val, _err) = quad::integrate(&f, &a, &b, &abs_tol, prec)?;
        let contribution = &ray * &val;
        total = if positive {
            &total + &contribution
        } else {
            &total - &contribution
        };
    }
    let two_pi = pi(prec) * 2u32;
    Ok(total.scale(&two_pi.recip()).with_prec(z.prec().max(128)))
}

// ---------------------------------------------------------------------------
// Airy parametrix
// ---------------------------------------------------------------------------

/// Jump-ray angles; theta0 separates regions IV and I, theta_plus I and II,
/// theta_minus III and IV. R_- (angle pi) always separates II from III.
#[derive(Clone, Copy, Debug)]
pub struct ContourConfig {
    pub theta0: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        ContourConfig {
            theta0: 0.0,
            theta_plus: 2.0 * std::f64::consts::PI / 3.0,
            theta_minus: -2.0 * std::f64::consts::PI / 3.0,
        }
    }
}

impl ContourConfig {
    pub fn validate(&self) -> Result<()> {
        let pi3 = std::f64::consts::PI / 3.0;
        let pi_f = std::f64::consts::PI;
        if !(self.theta0 > -pi3 && self.theta0 < pi3) {
            return Err(Error::InvalidInput(format!(
                "theta0 must lie in (-pi/3, pi/3), got {}",
                self.theta0
            )));
        }
        if !(self.theta_plus > pi3 && self.theta_plus < pi_f) {
            return Err(Error::InvalidInput(format!(
                "theta_plus must lie in (pi/3, pi), got {}",
                self.theta_plus
            )));
        }
        if !(self.theta_minus > -pi_f && self.theta_minus < -pi3) {
            return Err(Error::InvalidInput(format!(
                "theta_minus must lie in (-pi, -pi/3), got {}",
                self.theta_minus
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    I,
    II,
    III,
    IV,
}

#[derive(Clone, Debug)]
pub struct ParametrixValue {
    pub zeta: XComplex,
    pub region: Region,
    pub matrix: [[XComplex; 2]; 2],
}

const RAY_ANGULAR_TOL: f64 = 1e-15;

/// Region membership with the half-open convention [theta, next theta)
/// counterclockwise; an OnRay error inside the angular tolerance.
pub fn classify_region(zeta: &XComplex, rays: &ContourConfig) -> Result<Region> {
    rays.validate()?;
    let a = zeta.arg().to_f64();
    let pi_f = std::f64::consts::PI;
    let dist = |ray: f64| -> f64 {
        let mut d = (a - ray).rem_euclid(2.0 * pi_f);
        if d > pi_f {
            d = 2.0 * pi_f - d;
        }
        d
    };
    for ray in [rays.theta0, rays.theta_plus, rays.theta_minus, pi_f] {
        let d = dist(ray);
        if d < RAY_ANGULAR_TOL {
            return Err(Error::OnRay { distance: d });
        }
    }
    Ok(if a >= rays.theta0 && a < rays.theta_plus {
        Region::I
    } else if a >= rays.theta_plus {
        Region::II
    } else if a < rays.theta_minus {
        Region::III
    } else {
        Region::IV
    })
}

/// The parametrix formula of one region, evaluated regardless of where
/// `zeta` actually lies (the entries are entire, so this doubles as the
/// boundary value from either side of a ray). Columns are
/// (value, zeta-derivative) pairs of the indicated rotated Airy functions,
/// scaled by sqrt(2 pi) e^{-i pi/12} and e^{-i pi sigma_3/6}.
pub fn parametrix_in_region(zeta: &XComplex, region: Region) -> Result<[[XComplex; 2]; 2]> {
    let prec = zeta.prec();
    let digits = digits_of_prec(prec).max(32);
    let jet = |nu: u8| -> Result<(XComplex, XComplex)> {
        let j = airy_jet_prec(zeta, nu, 1, digits)?;
        Ok((j.values[0].clone(), j.values[1].clone()))
    };
    let w1 = omega_pow(prec, 1);
    let w2 = omega_pow(prec, 2);

    let (col1, col2) = match region {
        Region::I => (jet(0)?, jet(2)?),
        Region::II => {
            let j1 = jet(1)?;
            let neg = -&w1;
            ((&neg * &j1.0, &neg * &j1.1), jet(2)?)
        }
        Region::III => {
            let j1 = jet(1)?;
            let j2 = jet(2)?;
            let neg = -&w2;
            ((&neg * &j2.0, &neg * &j2.1), (&neg * &j1.0, &neg * &j1.1))
        }
        Region::IV => {
            let j1 = jet(1)?;
            let neg = -&w2;
            (jet(0)?, (&neg * &j1.0, &neg * &j1.1))
        }
    };

    let sqrt_two_pi = {
        let p = pi(prec) * 2u32;
        p.sqrt()
    };
    let prefactor = unit_phase(prec, -1, 12).scale(&sqrt_two_pi);
    let scale1 = &prefactor * &unit_phase(prec, -1, 6);
    let scale2 = &prefactor * &unit_phase(prec, 1, 6);

    Ok([
        [&col1.0 * &scale1, &col2.0 * &scale2],
        [&col1.1 * &scale1, &col2.1 * &scale2],
    ])
}

/// The Airy parametrix A(zeta) for the region containing zeta.
pub fn airy_parametrix(
    zeta: &XComplex,
    rays: &ContourConfig,
    digits: u32,
) -> Result<ParametrixValue> {
    let prec = bits_for_digits(digits)?;
    let z = zeta.with_prec(prec);
    let region = classify_region(&z, rays)?;
    let matrix = parametrix_in_region(&z, region)?;
    Ok(ParametrixValue {
        zeta: z,
        region,
        matrix,
    })
}

pub fn det2(m: &[[XComplex; 2]; 2]) -> XComplex {
    &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
}

fn inv2(m: &[[XComplex; 2]; 2]) -> [[XComplex; 2]; 2] {
    let d = det2(m);
    let inv_d = d.recip();
    [
        [&m[1][1] * &inv_d, -&(&m[0][1] * &inv_d)],
        [-&(&m[1][0] * &inv_d), &m[0][0] * &inv_d],
    ]
}

fn mul2(a: &[[XComplex; 2]; 2], b: &[[XComplex; 2]; 2]) -> [[XComplex; 2]; 2] {
    let e = |i: usize, j: usize| -> XComplex { &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]) };
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Evaluate A_-^{-1} A_+ on each configured ray at radius rho (the plus
/// side lies to the left of the ray orientation: theta0 points outward, the
/// other three point toward the origin) and return the largest entrywise
/// deviation from the constant jump matrices
///   theta0: [[1,1],[0,1]]   theta+-: [[1,0],[1,1]]   R_-: [[0,1],[-1,0]].
pub fn verify_parametrix_jumps(rho: f64, rays: &ContourConfig, digits: u32) -> Result<Float> {
    if !(rho > 0.0) {
        return Err(Error::InvalidInput("rho must be positive".into()));
    }
    rays.validate()?;
    let prec = bits_for_digits(digits)?;
    let one = XComplex::one(prec);
    let zero = XComplex::zero(prec);

    let upper = [[one.clone(), one.clone()], [zero.clone(), one.clone()]];
    let lower = [[one.clone(), zero.clone()], [one.clone(), one.clone()]];
    let i_sigma2 = [[zero.clone(), one.clone()], [-&one, zero.clone()]];

    let cases: [(f64, Region, Region, &[[XComplex; 2]; 2]); 4] = [
        (rays.theta0, Region::I, Region::IV, &upper),
        (rays.theta_plus, Region::I, Region::II, &lower),
        (rays.theta_minus, Region::III, Region::IV, &lower),
        (std::f64::consts::PI, Region::II, Region::III, &i_sigma2),
    ];

    let mut worst = float_zero(prec);
    for (theta, plus, minus, expected) in cases {
        let theta_f = float(prec, theta);
        let (s, c) = theta_f.sin_cos(Float::new(prec));
        let rho_f = float(prec, rho);
        let zeta = XComplex::new(
            Float::with_val(prec, &c * &rho_f),
            Float::with_val(prec, &s * &rho_f),
        );
        let a_plus = parametrix_in_region(&zeta, plus)?;
        let a_minus = parametrix_in_region(&zeta, minus)?;
        let jump = mul2(&inv2(&a_minus), &a_plus);
        for i in 0..2 {
            for j in 0..2 {
                let d = (&jump[i][j] - &expected[i][j]).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREC: u32 = 128;

    fn c(re: f64, im: f64) -> XComplex {
        XComplex::from_f64(PREC, re, im)
    }

    fn assert_close(a: &XComplex, re: &str, im: &str, tol: f64) {
        let expect = XComplex::parse(PREC, re, im).unwrap();
        let d = (a - &expect).abs().to_f64();
        assert!(d < tol, "difference {d:e} exceeds {tol:e}; got {a:?}");
    }

    #[test]
    fn series_at_zero() {
        let p = airy_series(&c(0.0, 0.0));
        assert_close(&p.ai, AI0_LITERAL, "0", 1e-37);
        assert_close(&p.aip, AIP0_LITERAL, "0", 1e-37);
    }

    #[test]
    fn series_at_one() {
        // frozen from the quadrature oracle (the airy_oracle integration
        // test re-derives this agreement live)
        let p = airy_series(&c(1.0, 0.0));
        assert_close(
            &p.ai,
            "0.13529241631288141552414742351546630617494414298833070600910205476",
            "0",
            1e-37,
        );
    }

    #[test]
    fn second_derivative_at_zero_vanishes() {
        let jet = airy_jet(&c(0.0, 0.0), 0, 2, 32).unwrap();
        assert!(jet.values[2].abs().to_f64() < 1e-38);
    }

    #[test]
    fn u_and_r_low_order() {
        let us = airy_u_coefficients(2);
        assert_eq!(us[1], Rational::from((5, 72)));
        assert_eq!(us[2], Rational::from((385, 10368)));
        let rs = airy_r_coefficients(1);
        assert_eq!(rs[0], Rational::from(1));
        assert_eq!(rs[1], Rational::from((-7, 72)));
    }

    #[test]
    fn series_asymptotic_overlap_at_twenty() {
        let z = c(20.0, 0.0);
        let s = airy_series(&z);
        let a = airy_asymptotic(&z, 400, 1e-22).unwrap();
        let rel = (&s.ai - &a.ai).abs().to_f64() / s.ai.abs().to_f64();
        assert!(rel < 1e-25, "relative gap {rel:e}");
        let rel_p = (&s.aip - &a.aip).abs().to_f64() / s.aip.abs().to_f64();
        assert!(rel_p < 1e-25, "derivative relative gap {rel_p:e}");
    }

    #[test]
    fn jet_rotated_argument() {
        // Ai_1(1) = Ai(omega)
        let jet = airy_jet(&c(1.0, 0.0), 1, 0, 32).unwrap();
        assert_close(
            &jet.values[0],
            "0.55665285725717976855900068528961106765712923740759994515016357780",
            "-0.24327256400505006388890410835756223292915099204628601183271851186",
            1e-33,
        );
    }

    #[test]
    fn connection_identity_at_two() {
        let z = c(2.0, 0.0);
        let j0 = airy_jet(&z, 0, 0, 32).unwrap();
        let j1 = airy_jet(&z, 1, 0, 32).unwrap();
        let j2 = airy_jet(&z, 2, 0, 32).unwrap();
        let w1 = omega_pow(PREC, 1);
        let w2 = omega_pow(PREC, 2);
        let sum = &(&j0.values[0] + &(&w1 * &j1.values[0])) + &(&w2 * &j2.values[0]);
        assert!(
            sum.abs().to_f64() < 1e-28,
            "residual {:e}",
            sum.abs().to_f64()
        );
    }

    #[test]
    fn jet_recurrence_closes_exactly() {
        let z = c(1.3, -0.4);
        let jet = airy_jet(&z, 1, 8, 32).unwrap();
        let zz = z.with_prec(PREC);
        for k in 0..=6usize {
            let mut expect = &zz * &jet.values[k];
            if k >= 1 {
                expect = &expect + &jet.values[k - 1].scale(&float(PREC, k as f64));
            }
            assert_eq!(jet.values[k + 2], expect);
        }
    }

    #[test]
    fn oracle_matches_series_on_sample_points() {
        for (re, im) in [(0.0, 0.0), (1.0, 0.0), (-2.0, 0.0)] {
            let z = c(re, im);
            let s = airy_series(&z);
            let o = airy_quadrature_oracle(&z).unwrap();
            let d = (&s.ai - &o).abs().to_f64();
            assert!(d < 1e-24, "oracle gap {d:e} at {re}+{im}i");
        }
    }

    #[test]
    fn oracle_rejects_far_field() {
        assert!(airy_quadrature_oracle(&c(40.0, 0.0)).is_err());
    }

    #[test]
    fn parametrix_unimodular_at_one_plus_i() {
        let v = airy_parametrix(&c(1.0, 1.0), &ContourConfig::default(), 32).unwrap();
        let d = det2(&v.matrix);
        let gap = (&d - &XComplex::one(PREC)).abs().to_f64();
        assert!(gap < 1e-28, "det deviates by {gap:e}");
    }

    #[test]
    fn region_membership() {
        let rays = ContourConfig::default();
        let z = XComplex::from_f64(PREC, 2.0 * (0.1f64).cos(), 2.0 * (0.1f64).sin());
        assert_eq!(classify_region(&z, &rays).unwrap(), Region::I);
        assert_eq!(classify_region(&c(-1.0, 0.5), &rays).unwrap(), Region::II);
        assert_eq!(classify_region(&c(-1.0, -0.5), &rays).unwrap(), Region::III);
        assert_eq!(classify_region(&c(1.0, -1.0), &rays).unwrap(), Region::IV);
        match classify_region(&c(2.0, 0.0), &rays) {
            Err(Error::OnRay { .. }) => {}
            other => panic!("expected OnRay, got {other:?}"),
        }
    }

    #[test]
    fn jump_residuals_small_at_rho_two() {
        let worst = verify_parametrix_jumps(2.0, &ContourConfig::default(), 32).unwrap();
        assert!(worst.to_f64() < 1e-25, "worst {:e}", worst.to_f64());
    }

    #[test]
    fn divergent_tail_reported() {
        // |z| far too small for an asymptotic tail at 1e-30
        let z = c(2.0, 0.0);
        match airy_asymptotic(&z, 400, 1e-30) {
            Err(Error::DivergentTail { .. }) => {}
            other => panic!("expected DivergentTail, got {other:?}"),
        }
    }
}
