//! The generalized Kontsevich integral as a log-scaled Airy determinant:
//! sector bookkeeping for the eigenvalues, the determinant assembly with
//! row-wise exponential folding, Miwa times, and the d_n jump factor.

use rug::Float;

use crate::airy::airy_jet_prec;
use crate::error::{Error, Result};
use crate::num::{
    bits_for_digits, float, float_ratio, logdet_lu, pi, principal_sqrt, reduce_angle, XComplex,
    HIGH_DIGITS,
};

/// One eigenvalue list per sector, plus the shift x. Invariants enforced on
/// construction: no zero eigenvalue, pairwise distances above
/// 10^{-digits/4}, and every y strictly inside its assigned sector.
#[derive(Clone, Debug)]
pub struct SpectrumPartition {
    pub x: XComplex,
    pub y0: Vec<XComplex>,
    pub y1: Vec<XComplex>,
    pub y2: Vec<XComplex>,
    pub digits: u32,
}

/// Sectors of regular asymptotics for sqrt(y) e^{(2/3) y^3} Ai_nu(y^2):
///   S_0 = (-pi/2, pi/2),  S_1 = (pi/6, 7pi/6),  S_2 = (5pi/6, 11pi/6),
/// all as open sectors mod 2pi.
pub fn sector_membership(y: &XComplex) -> Vec<u8> {
    let mut out = Vec::new();
    if y.is_zero() {
        return out;
    }
    let prec = y.prec();
    let a = y.arg();
    let pi_p = pi(prec);
    let frac = |num: i32, den: u32| -> Float {
        let mut v = pi_p.clone();
        v *= num;
        v /= den;
        v
    };
    // S_0
    if a > frac(-1, 2) && a < frac(1, 2) {
        out.push(0);
    }
    // S_1: (pi/6, pi] together with (-pi, -5pi/6)
    if (a > frac(1, 6) && a <= pi_p.clone()) || a < frac(-5, 6) {
        out.push(1);
    }
    // S_2: (5pi/6, pi] together with (-pi, -pi/6)
    if (a > frac(5, 6) && a <= pi_p.clone()) || a < frac(-1, 6) {
        out.push(2);
    }
    out
}

impl SpectrumPartition {
    pub fn new(
        x: XComplex,
        y0: Vec<XComplex>,
        y1: Vec<XComplex>,
        y2: Vec<XComplex>,
        digits: u32,
    ) -> Result<Self> {
        let prec = bits_for_digits(digits)?;
        let part = SpectrumPartition {
            x: x.with_prec(prec),
            y0: y0.iter().map(|y| y.with_prec(prec)).collect(),
            y1: y1.iter().map(|y| y.with_prec(prec)).collect(),
            y2: y2.iter().map(|y| y.with_prec(prec)).collect(),
            digits,
        };
        part.validate()?;
        Ok(part)
    }

    pub fn n(&self) -> usize {
        self.y0.len() + self.y1.len() + self.y2.len()
    }

    /// All eigenvalues in block order, with their assigned sector.
    pub fn assigned(&self) -> Vec<(XComplex, u8)> {
        let mut out = Vec::with_capacity(self.n());
        for y in &self.y0 {
            out.push((y.clone(), 0u8));
        }
        for y in &self.y1 {
            out.push((y.clone(), 1u8));
        }
        for y in &self.y2 {
            out.push((y.clone(), 2u8));
        }
        out
    }

    fn validate(&self) -> Result<()> {
        if self.n() == 0 {
            return Err(Error::InvalidPartition("no eigenvalues given".into()));
        }
        let all = self.assigned();
        for (i, (y, nu)) in all.iter().enumerate() {
            if y.is_zero() {
                return Err(Error::InvalidPartition(format!(
                    "eigenvalue {i} is zero"
                )));
            }
            if !sector_membership(y).contains(nu) {
                return Err(Error::InvalidPartition(format!(
                    "eigenvalue {i} = {y} lies outside sector S_{nu}"
                )));
            }
        }
        let min_dist = 10f64.powf(-(self.digits as f64) / 4.0);
        for i in 0..all.len() {
            for j in i + 1..all.len() {
                let d = (&all[i].0 - &all[j].0).abs().to_f64();
                if d <= min_dist {
                    return Err(Error::InvalidPartition(format!(
                        "eigenvalues {i} and {j} closer than 10^(-digits/4): |diff| = {d:e}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The (lambda, mu) split of the squared eigenvalues: lambda_j = y^2
    /// for Re y > 0, mu_j = y^2 for Re y <= 0.
    pub fn lambda_mu(&self) -> (Vec<XComplex>, Vec<XComplex>) {
        let mut lambdas = Vec::new();
        let mut mus = Vec::new();
        for (y, _) in self.assigned() {
            let sq = &y * &y;
            if y.re.is_sign_negative() || y.re.is_zero() {
                mus.push(sq);
            } else {
                lambdas.push(sq);
            }
        }
        (lambdas, mus)
    }
}

/// log Z_n with the imaginary part reduced to (-pi, pi].
#[derive(Clone, Debug)]
pub struct KontsevichResult {
    pub log_z: XComplex,
    pub n: usize,
    pub digits_lost_estimate: u32,
    /// Tier the value was actually computed at (after any auto-retry).
    pub digits_used: u32,
}

/// Assemble and evaluate log Z_n at one fixed tier; no retry.
pub(crate) fn log_zn_at_tier(p: &SpectrumPartition, digits: u32) -> Result<KontsevichResult> {
    let prec = bits_for_digits(digits)?;
    let n = p.n();
    let x = p.x.with_prec(prec);
    let assigned: Vec<(XComplex, u8)> = p
        .assigned()
        .into_iter()
        .map(|(y, nu)| (y.with_prec(prec), nu))
        .collect();

    // rows: e^{(2/3) y^3 + x y} Ai_nu^{(k-1)}(y^2 + x), k = 1..n
    let mut matrix: Vec<Vec<XComplex>> = Vec::with_capacity(n);
    let two_thirds = float_ratio(prec, 2, 3);
    for (y, nu) in &assigned {
        let y3 = &(y * y) * y;
        let theta = &y3.scale(&two_thirds) + &(&x * y);
        let fold = theta.exp();
        let lambda = &(y * y) + &x;
        let jet = airy_jet_prec(&lambda, *nu, n.saturating_sub(1), digits)?;
        let row: Vec<XComplex> = jet.values.iter().map(|v| v * &fold).collect();
        matrix.push(row);
    }

    let det = logdet_lu(&matrix, digits)?;

    // n log(2 sqrt(pi)) + (n1 - n2) Log(-omega) + sum (1/2) Log y
    // - sum_{j<k} Log(y_j - y_k) + log det
    let two_sqrt_pi = {
        let v = pi(prec).sqrt();
        v * 2u32
    };
    let mut log_z = XComplex::from_real(Float::with_val(prec, two_sqrt_pi.ln_ref()) * n as u32);

    // Log(-omega) = -i pi / 3
    let n1 = p.y1.len() as i64;
    let n2 = p.y2.len() as i64;
    let mut log_neg_omega = pi(prec);
    log_neg_omega /= 3u32;
    log_neg_omega *= -(n1 - n2) as i64;
    // the line above yields +(n2 - n1) pi/3; it enters as the imaginary part
    log_z = &log_z + &XComplex::new(Float::new(prec), log_neg_omega);

    for (y, _) in &assigned {
        log_z = &log_z + &y.ln().scale_f64(0.5);
    }
    for j in 0..n {
        for k in j + 1..n {
            let diff = &assigned[j].0 - &assigned[k].0;
            log_z = &log_z - &diff.ln();
        }
    }
    log_z = &log_z + &det.to_complex();

    Ok(KontsevichResult {
        log_z: log_z.reduce_im(),
        n,
        digits_lost_estimate: det.digits_lost,
        digits_used: digits,
    })
}

/// log of the generalized Kontsevich determinant. Retries once at the
/// 64-digit tier when the pivot monitor reports more than digits - 8
/// digits lost; still-ill-conditioned results are an error.
pub fn log_zn(p: &SpectrumPartition, digits: u32) -> Result<KontsevichResult> {
    bits_for_digits(digits)?;
    let result = log_zn_at_tier(p, digits)?;
    if result.digits_lost_estimate + 8 <= digits {
        return Ok(result);
    }
    if digits < HIGH_DIGITS {
        let retried = log_zn_at_tier(p, HIGH_DIGITS)?;
        if retried.digits_lost_estimate + 8 <= HIGH_DIGITS {
            return Ok(retried);
        }
        return Err(Error::IllConditioned {
            digits_lost: retried.digits_lost_estimate,
            digits: HIGH_DIGITS,
        });
    }
    Err(Error::IllConditioned {
        digits_lost: result.digits_lost_estimate,
        digits,
    })
}

/// |log Z_n(A) - log Z_n(B)| with the imaginary parts compared mod 2 pi.
pub fn log_gap(a: &XComplex, b: &XComplex) -> Float {
    let prec = a.prec().max(b.prec());
    let dre = Float::with_val(prec, &a.re - &b.re);
    let dim = reduce_angle(&Float::with_val(prec, &a.im - &b.im));
    Float::with_val(prec, dre.hypot_ref(&dim))
}

/// Gap between two sector assignments of the same eigenvalue list.
/// `assign_a`/`assign_b` give the sector of each entry of `ys`; they may
/// differ only where the point lies in a sector overlap (enforced by the
/// partition validation).
pub fn assignment_gap(
    x: &XComplex,
    ys: &[XComplex],
    assign_a: &[u8],
    assign_b: &[u8],
    digits: u32,
) -> Result<Float> {
    if assign_a.len() != ys.len() || assign_b.len() != ys.len() {
        return Err(Error::InvalidInput(
            "assignments must cover every eigenvalue".into(),
        ));
    }
    let build = |assign: &[u8]| -> Result<SpectrumPartition> {
        let mut blocks: [Vec<XComplex>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (y, &nu) in ys.iter().zip(assign) {
            if nu > 2 {
                return Err(Error::InvalidInput(format!("sector {nu} out of range")));
            }
            blocks[nu as usize].push(y.clone());
        }
        let [b0, b1, b2] = blocks;
        SpectrumPartition::new(x.clone(), b0, b1, b2, digits)
    };
    let za = log_zn(&build(assign_a)?, digits)?;
    let zb = log_zn(&build(assign_b)?, digits)?;
    Ok(log_gap(&za.log_z, &zb.log_z))
}

/// Miwa times T_k = -2^{-(2k+1)/3} / (2k+1)!! * sum_j y_j^{-(2k+1)}.
#[derive(Clone, Debug)]
pub struct MiwaTimes {
    pub times: Vec<XComplex>,
}

pub fn miwa_times(ys: &[XComplex], kmax: usize) -> Result<MiwaTimes> {
    if ys.iter().any(XComplex::is_zero) {
        return Err(Error::InvalidInput("eigenvalues must be nonzero".into()));
    }
    let prec = ys.iter().map(XComplex::prec).max().unwrap_or(128);
    let mut times = Vec::with_capacity(kmax + 1);
    let mut double_factorial = float(prec, 1.0); // (2k+1)!!
    for k in 0..=kmax as u32 {
        if k > 0 {
            double_factorial *= 2 * k + 1;
        }
        let mut power_sum = XComplex::zero(prec);
        for y in ys {
            let p = y.with_prec(prec).powi(2 * k + 1).recip();
            power_sum = &power_sum + &p;
        }
        // 2^{-(2k+1)/3}
        let e = float_ratio(prec, -((2 * k + 1) as i64), 3);
        let scale = Float::with_val(prec, rug::ops::Pow::pow(&float(prec, 2.0), &e));
        let t = -&power_sum.scale(&Float::with_val(prec, &scale / &double_factorial));
        times.push(t);
    }
    Ok(MiwaTimes { times })
}

/// t_{2j+1} = -2^{(2j+1)/3} (T_j - delta_{j,1}) / (2j+1)!!.
pub fn witten_time_map(miwa: &[XComplex]) -> Vec<XComplex> {
    let prec = miwa.iter().map(XComplex::prec).max().unwrap_or(128);
    let mut out = Vec::with_capacity(miwa.len());
    let mut double_factorial = float(prec, 1.0);
    for (j, t_j) in miwa.iter().enumerate() {
        if j > 0 {
            double_factorial *= (2 * j + 1) as u32;
        }
        let e = float_ratio(prec, 2 * j as i64 + 1, 3);
        let scale = Float::with_val(prec, rug::ops::Pow::pow(&float(prec, 2.0), &e));
        let mut shifted = t_j.with_prec(prec);
        if j == 1 {
            shifted = &shifted - &XComplex::one(prec);
        }
        out.push(-&shifted.scale(&Float::with_val(prec, &scale / &double_factorial)));
    }
    out
}

/// d_n(lambda) = prod_j (sqrt(mu_j) + sqrt(lambda)) / (sqrt(mu_j) - sqrt(lambda))
///             * prod_j (sqrt(lambda_j) - sqrt(lambda)) / (sqrt(lambda_j) + sqrt(lambda)),
/// all roots principal.
pub fn dn_eval(lambda: &XComplex, lambdas: &[XComplex], mus: &[XComplex]) -> Result<XComplex> {
    let prec = lambda
        .prec()
        .max(lambdas.iter().chain(mus).map(XComplex::prec).max().unwrap_or(0));
    let root = principal_sqrt(&lambda.with_prec(prec));
    let mut value = XComplex::one(prec);
    // 10^{-digits/2} with digits = prec/4, as in the ratio guards
    let guard_abs = 10f64.powf(-(prec as f64) / 8.0);
    let mut apply = |num: XComplex, den: XComplex| -> Result<()> {
        let den_abs = den.abs().to_f64();
        let scale = num.abs().to_f64().max(1.0);
        if den_abs < guard_abs * scale {
            return Err(Error::PoleProximity {
                denominator: den_abs,
                guard: guard_abs * scale,
            });
        }
        value = &value * &(&num / &den);
        Ok(())
    };
    for mu in mus {
        let s = principal_sqrt(&mu.with_prec(prec));
        apply(&s + &root, &s - &root)?;
    }
    for l in lambdas {
        let s = principal_sqrt(&l.with_prec(prec));
        apply(&s - &root, &s + &root)?;
    }
    Ok(value)
}
