//! Eigenvalue configurations built from Pade zeros, u = 2 d^2/dx^2 log Z - x
//! by high-order finite differences, and residuals of the Painleve-I
//! hierarchy ODE (2N+1) t L_N[u] + u + x = 0, including the gap between
//! differently binned tau functions.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::kontsevich::{
    log_gap, log_zn_at_tier, sector_membership, SpectrumPartition,
};
use crate::lenard::{eval_diffpoly_complex, lenard};
use crate::num::{bits_for_digits, float, pi, reduce_angle, XComplex, HIGH_DIGITS};
use crate::pade::pade_zeros;

pub const MAX_HIERARCHY_INDEX: u32 = 6;
pub const MAX_PADE_ORDER: u32 = 20;
pub const DEFAULT_FD_STEP: f64 = 0.015625; // 2^-6

/// A Thm-style configuration: the n = r(2N+1) zeros of P_r(2 t y^{2N+1})
/// binned into sectors so that the requested (k_+, k_0, k_-) is realized.
#[derive(Clone, Debug)]
pub struct P1Config {
    pub n_hierarchy: u32,
    pub r: u32,
    pub t: XComplex,
    pub k_plus: i32,
    pub k_zero: i32,
    pub k_minus: i32,
    pub n: usize,
    pub y0: Vec<XComplex>,
    pub y1: Vec<XComplex>,
    pub y2: Vec<XComplex>,
    /// Squared eigenvalues split by half-plane: lambda for Re y > 0,
    /// mu for Re y <= 0.
    pub lambdas: Vec<XComplex>,
    pub mus: Vec<XComplex>,
    /// sector assigned to each kappa = -N..N, by index kappa + N
    pub cluster_sectors: Vec<u8>,
    pub digits: u32,
}

impl P1Config {
    pub fn partition_at(&self, x: &XComplex) -> Result<SpectrumPartition> {
        SpectrumPartition::new(
            x.clone(),
            self.y0.clone(),
            self.y1.clone(),
            self.y2.clone(),
            self.digits,
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Quadrant {
    Q1,
    Q2,
    Q3,
    Q4,
}

fn quadrant_of(y: &XComplex) -> Option<Quadrant> {
    let a = y.arg().to_f64();
    let fp = std::f64::consts::FRAC_PI_2;
    let tol = 1e-12;
    for boundary in [0.0, fp, std::f64::consts::PI, -fp] {
        if (a - boundary).abs() < tol || (a - boundary).abs() > 2.0 * std::f64::consts::PI - tol {
            return None;
        }
    }
    Some(if a > 0.0 && a < fp {
        Quadrant::Q1
    } else if a >= fp {
        Quadrant::Q2
    } else if a <= -fp {
        Quadrant::Q3
    } else {
        Quadrant::Q4
    })
}

fn wrap_kappa(k: i32, modulus: i32) -> i32 {
    let half = (modulus - 1) / 2;
    let mut v = k.rem_euclid(modulus);
    if v > half {
        v -= modulus;
    }
    v
}

/// Build the configuration for the requested k-triple by enumerating all
/// consecutive binnings of the kappa-clusters, keeping those whose points
/// sit strictly inside the target sectors, and matching the quadrant
/// counting rules
///   k_0 = #(Q2 clusters in Y2) - #(Q3 clusters in Y1)
///   k_- = -floor(N/2) + #(Q1 clusters in Y1)
///   k_+ =  floor(N/2) - #(Q4 clusters in Y2).
pub fn build_config(
    n_hierarchy: u32,
    r: u32,
    t: &XComplex,
    k_plus: i32,
    k_zero: i32,
    k_minus: i32,
    digits: u32,
) -> Result<P1Config> {
    let prec = bits_for_digits(digits)?;
    if n_hierarchy < 1 || n_hierarchy > MAX_HIERARCHY_INDEX {
        return Err(Error::InvalidInput(format!(
            "N must lie in 1..={MAX_HIERARCHY_INDEX}, got {n_hierarchy}"
        )));
    }
    if r < 1 || r > MAX_PADE_ORDER {
        return Err(Error::InvalidInput(format!(
            "r must lie in 1..={MAX_PADE_ORDER}, got {r}"
        )));
    }
    if t.is_zero() {
        return Err(Error::InvalidInput("t must be nonzero".into()));
    }
    if t.arg().to_f64().abs() > std::f64::consts::FRAC_PI_4 + 1e-12 {
        return Err(Error::InvalidInput(
            "|arg t| must not exceed pi/4 at desk scale".into(),
        ));
    }
    if !(k_plus > k_minus && k_plus >= k_zero && k_zero >= k_minus) {
        return Err(Error::InfeasibleBinning {
            k_plus,
            k_zero,
            k_minus,
            reason: "need k_+ > k_- and k_+ >= k_0 >= k_-".into(),
        });
    }

    let big_n = n_hierarchy as i32;
    let modulus = 2 * big_n + 1;
    let zeros = pade_zeros(r, digits)?.zeros;
    let t_prec = t.with_prec(prec);

    // clusters Y_kappa = e^{2 pi i kappa/(2N+1)} (a_j / (2t))^{1/(2N+1)}
    let two_t = t_prec.scale(&float(prec, 2.0));
    let mut clusters: Vec<Vec<XComplex>> = Vec::with_capacity(modulus as usize);
    for kappa in -big_n..=big_n {
        let mut theta = pi(prec) * 2u32;
        theta *= kappa;
        theta /= modulus as u32;
        let (s, c) = theta.sin_cos(Float::new(prec));
        let rot = XComplex::new(c, s);
        let pts = zeros
            .iter()
            .map(|a| {
                let base = (&a.with_prec(prec) / &two_t).pow_ratio(1, modulus as u32);
                &rot * &base
            })
            .collect();
        clusters.push(pts);
    }

    let eligible: Vec<Vec<u8>> = clusters
        .iter()
        .map(|pts| {
            (0u8..3)
                .filter(|nu| pts.iter().all(|y| sector_membership(y).contains(nu)))
                .collect()
        })
        .collect();
    let quadrants: Vec<Option<Quadrant>> = clusters
        .iter()
        .map(|pts| {
            let qs: Vec<Option<Quadrant>> = pts.iter().map(quadrant_of).collect();
            let first = qs[0]?;
            if qs.iter().all(|q| *q == Some(first)) {
                Some(first)
            } else {
                None
            }
        })
        .collect();

    let idx = |kappa: i32| -> usize { (kappa + big_n) as usize };
    let floor_half_n = big_n / 2;

    // enumerate consecutive binnings: Y0 = [lo0..=hi0], then l1 clusters
    // counterclockwise into Y1, the rest into Y2
    for lo0 in -big_n..=0 {
        'candidate: for hi0 in 0..=big_n {
            let len0 = hi0 - lo0 + 1;
            let rest = modulus - len0;
            for l1 in 0..=rest {
                let mut sectors = vec![0u8; modulus as usize];
                for kappa in lo0..=hi0 {
                    sectors[idx(kappa)] = 0;
                }
                for step in 0..rest {
                    let kappa = wrap_kappa(hi0 + 1 + step, modulus);
                    sectors[idx(kappa)] = if step < l1 { 1 } else { 2 };
                }
                // clusters must fit their sectors
                let fits = (0..modulus as usize)
                    .all(|i| eligible[i].contains(&sectors[i]));
                if !fits {
                    continue;
                }
                // quadrant counting
                let mut q1_to_1 = 0i32;
                let mut q4_to_2 = 0i32;
                let mut q2_to_2 = 0i32;
                let mut q3_to_1 = 0i32;
                for kappa in -big_n..=big_n {
                    let i = idx(kappa);
                    let sector = sectors[i];
                    if sector == 0 {
                        continue;
                    }
                    let Some(q) = quadrants[i] else {
                        // a straddling cluster only matters when queried
                        if matches!(sector, 1 | 2) {
                            continue 'candidate;
                        }
                        continue;
                    };
                    match (q, sector) {
                        (Quadrant::Q1, 1) => q1_to_1 += 1,
                        (Quadrant::Q4, 2) => q4_to_2 += 1,
                        (Quadrant::Q2, 2) => q2_to_2 += 1,
                        (Quadrant::Q3, 1) => q3_to_1 += 1,
                        _ => {}
                    }
                }
                let triple = (
                    floor_half_n - q4_to_2,
                    q2_to_2 - q3_to_1,
                    -floor_half_n + q1_to_1,
                );
                if triple != (k_plus, k_zero, k_minus) {
                    continue;
                }

                // materialize the partition in kappa order per block
                let mut y_blocks: [Vec<XComplex>; 3] = [Vec::new(), Vec::new(), Vec::new()];
                for kappa in -big_n..=big_n {
                    let i = idx(kappa);
                    y_blocks[sectors[i] as usize].extend(clusters[i].iter().cloned());
                }
                let [y0, y1, y2] = y_blocks;

                let mut lambdas = Vec::new();
                let mut mus = Vec::new();
                for y in y0.iter().chain(&y1).chain(&y2) {
                    let sq = y * y;
                    if y.re.is_sign_negative() || y.re.is_zero() {
                        mus.push(sq);
                    } else {
                        lambdas.push(sq);
                    }
                }

                let cfg = P1Config {
                    n_hierarchy,
                    r,
                    t: t_prec.clone(),
                    k_plus,
                    k_zero,
                    k_minus,
                    n: (modulus as usize) * r as usize,
                    y0,
                    y1,
                    y2,
                    lambdas,
                    mus,
                    cluster_sectors: sectors,
                    digits,
                };
                // final safety net: the partition constructor re-validates
                cfg.partition_at(&XComplex::zero(prec)).map_err(|e| {
                    Error::SectorViolation(format!("constructed binning invalid: {e}"))
                })?;
                return Ok(cfg);
            }
        }
    }

    Err(Error::InfeasibleBinning {
        k_plus,
        k_zero,
        k_minus,
        reason: format!(
            "no consecutive assignment of the {} clusters realizes the triple at r = {r}",
            modulus
        ),
    })
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

/// Exact Fornberg weights at 0 for unit-spaced integer offsets: result[m][j]
/// is the weight of f(offset_j) in the m-th derivative.
pub fn fd_weights(offsets: &[i64], m_max: usize) -> Vec<Vec<Rational>> {
    let n = offsets.len();
    let mut c = vec![vec![Rational::new(); m_max + 1]; n];
    c[0][0] = Rational::from(1);
    let mut c1 = Rational::from(1);
    let mut c4 = Rational::from(offsets[0]);
    for i in 1..n {
        let mn = i.min(m_max);
        let mut c2 = Rational::from(1);
        let c5 = c4.clone();
        c4 = Rational::from(offsets[i]);
        for j in 0..i {
            let c3 = Rational::from(offsets[i] - offsets[j]);
            c2 *= &c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    let prev_deriv = c[i - 1][k - 1].clone();
                    let prev_same = c[i - 1][k].clone();
                    c[i][k] = (prev_deriv * Rational::from(k as u32) - prev_same * &c5)
                        * Rational::from(&c1 / &c2);
                }
                c[i][0] = -(c[i - 1][0].clone() * &c5) * Rational::from(&c1 / &c2);
            }
            for k in (1..=mn).rev() {
                let same = c[j][k].clone();
                let lower = c[j][k - 1].clone();
                c[j][k] = (same * &c4 - lower * Rational::from(k as u32)) / &c3;
            }
            c[j][0] = c[j][0].clone() * Rational::from(&c4 / &c3);
        }
        c1 = c2;
    }
    (0..=m_max)
        .map(|m| (0..n).map(|j| c[j][m].clone()).collect())
        .collect()
}

/// u and its x-derivatives through the requested order, from stencil
/// evaluations of log Z_n:
///   u = 2 F'' - x,  u_x = 2 F''' - 1,  u^{(k)} = 2 F^{(k+2)} for k >= 2.
#[derive(Clone, Debug)]
pub struct UJet {
    /// values[k] = u^{(k)}(x), complex to cover complex t configurations
    pub values: Vec<XComplex>,
    pub digits_used: u32,
    pub cancelled_digits: u32,
}

pub fn u_jet(cfg: &P1Config, x: &Float, h: f64, order: usize, digits: u32) -> Result<UJet> {
    bits_for_digits(digits)?;
    if !(h > 0.0) {
        return Err(Error::InvalidInput("fd step must be positive".into()));
    }
    match u_jet_at_tier(cfg, x, h, order, digits) {
        Ok(jet) => Ok(jet),
        Err(Error::StepTooSmall { .. }) | Err(Error::IllConditioned { .. })
            if digits < HIGH_DIGITS =>
        {
            u_jet_at_tier(cfg, x, h, order, HIGH_DIGITS)
        }
        Err(e) => Err(e),
    }
}

fn u_jet_at_tier(cfg: &P1Config, x: &Float, h: f64, order: usize, digits: u32) -> Result<UJet> {
    let prec = bits_for_digits(digits)?;
    let m_max = order + 2;
    let s = (m_max + 1) / 2 + 2;
    let offsets: Vec<i64> = (-(s as i64)..=s as i64).collect();
    let weights = fd_weights(&offsets, m_max);

    let x_prec = Float::with_val(prec, x);
    let h_prec = float(prec, h);

    // stencil evaluations at one fixed tier
    let mut f_values = Vec::with_capacity(offsets.len());
    let mut worst_lost = 0u32;
    for &j in &offsets {
        let xj = Float::with_val(prec, &x_prec + &(h_prec.clone() * Float::with_val(prec, j)));
        let part = cfg.partition_at(&XComplex::from_real(xj))?;
        let z = log_zn_at_tier(&part, digits)?;
        worst_lost = worst_lost.max(z.digits_lost_estimate);
        f_values.push(z.log_z);
    }
    if worst_lost + 8 > digits {
        return Err(Error::IllConditioned {
            digits_lost: worst_lost,
            digits,
        });
    }

    // unwrap the phases outward from the center so finite differences see a
    // continuous branch of Im log Z
    let center = s;
    let mut unwrapped = f_values.clone();
    for dir in [1i64, -1] {
        let mut prev = unwrapped[center].im.clone();
        let mut step = 1i64;
        loop {
            let idx = center as i64 + dir * step;
            if idx < 0 || idx as usize >= unwrapped.len() {
                break;
            }
            let idx = idx as usize;
            let jump = reduce_angle(&Float::with_val(prec, &unwrapped[idx].im - &prev));
            let adjusted = Float::with_val(prec, &prev + &jump);
            unwrapped[idx] = XComplex::new(unwrapped[idx].re.clone(), adjusted);
            prev = unwrapped[idx].im.clone();
            step += 1;
        }
    }

    let mut f_derivs = Vec::with_capacity(m_max + 1);
    let mut cancelled_digits = 0u32;
    for m in 0..=m_max {
        let mut acc = XComplex::zero(prec);
        let mut abs_acc = Float::new(prec);
        for (j, w) in weights[m].iter().enumerate() {
            let wf = Float::with_val(prec, w);
            let term = unwrapped[j].scale(&wf);
            abs_acc += term.abs();
            acc = &acc + &term;
        }
        let h_pow = Float::with_val(prec, rug::ops::Pow::pow(&h_prec, m as u32));
        let deriv = acc.scale(&h_pow.clone().recip());
        if m >= 2 {
            let denom = deriv.abs().to_f64().abs().max(1e-300);
            let cancel = ((abs_acc / &h_pow).to_f64() / denom).log10().max(0.0) as u32;
            cancelled_digits = cancelled_digits.max(cancel.min(9999));
        }
        f_derivs.push(deriv);
    }
    if cancelled_digits + 10 > digits {
        return Err(Error::StepTooSmall {
            cancelled_digits,
            digits,
        });
    }

    let mut values = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut v = f_derivs[k + 2].scale(&float(prec, 2.0));
        if k == 0 {
            v = &v - &XComplex::from_real(x_prec.clone());
        } else if k == 1 {
            v = &v - &XComplex::one(prec);
        }
        values.push(v);
    }
    Ok(UJet {
        values,
        digits_used: digits,
        cancelled_digits,
    })
}

/// The spec-shaped 5-tuple (u, u_x, u_xx, u_xxx, u_xxxx).
pub fn u_from_log_z(
    cfg: &P1Config,
    x: &Float,
    h: f64,
    digits: u32,
) -> Result<(XComplex, XComplex, XComplex, XComplex, XComplex)> {
    let jet = u_jet(cfg, x, h, 4, digits)?;
    let mut it = jet.values.into_iter();
    Ok((
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ))
}

/// Residuals of (2N+1) t L_N[u] + u + x over a grid of x values.
#[derive(Clone, Debug)]
pub struct ResidualReport {
    pub x_grid: Vec<f64>,
    pub u_values: Vec<Float>,
    pub residuals: Vec<Float>,
    pub fd_errors: Vec<Float>,
    pub fd_step: f64,
}

fn residual_from_jet(cfg: &P1Config, jet: &UJet, x: &Float) -> Result<XComplex> {
    let l_n = lenard(cfg.n_hierarchy as usize)?;
    let l_val = eval_diffpoly_complex(&l_n, &jet.values)?;
    let prec = l_val.prec();
    let factor = cfg
        .t
        .with_prec(prec)
        .scale(&float(prec, (2 * cfg.n_hierarchy + 1) as f64));
    let mut res = &factor * &l_val;
    res = &res + &jet.values[0];
    res = &res + &XComplex::from_real(Float::with_val(prec, x));
    Ok(res)
}

pub fn ode_residual(
    cfg: &P1Config,
    x_grid: &[f64],
    h: f64,
    digits: u32,
) -> Result<ResidualReport> {
    let order = (2 * cfg.n_hierarchy as usize).saturating_sub(2);
    let mut u_values = Vec::with_capacity(x_grid.len());
    let mut residuals = Vec::with_capacity(x_grid.len());
    let mut fd_errors = Vec::with_capacity(x_grid.len());
    let prec = bits_for_digits(digits)?;
    for &x in x_grid {
        let xf = float(prec, x);
        let jet_coarse = u_jet(cfg, &xf, h, order, digits)?;
        let jet_fine = u_jet(cfg, &xf, h / 2.0, order, digits)?;
        let res_coarse = residual_from_jet(cfg, &jet_coarse, &xf)?;
        let res_fine = residual_from_jet(cfg, &jet_fine, &xf)?;
        let err = (&res_coarse - &res_fine).abs() / 63u32;
        u_values.push(jet_fine.values[0].re.clone());
        residuals.push(res_fine.abs());
        fd_errors.push(err);
    }
    Ok(ResidualReport {
        x_grid: x_grid.to_vec(),
        u_values,
        residuals,
        fd_errors,
        fd_step: h,
    })
}

/// sum_{k=1}^{N} (2k+1) t_{2k+1} L_k[u] + x, evaluated from a supplied jet;
/// `t_odd[k-1]` is t_{2k+1}.
pub fn general_residual(t_odd: &[XComplex], jet: &[XComplex], x: &Float) -> Result<Float> {
    let prec = jet
        .iter()
        .map(XComplex::prec)
        .max()
        .unwrap_or(128)
        .max(x.prec());
    let mut acc = XComplex::from_real(Float::with_val(prec, x));
    for (k, t) in t_odd.iter().enumerate() {
        let k1 = k + 1;
        let l = lenard(k1)?;
        let val = eval_diffpoly_complex(&l, jet)?;
        let scaled = &t.scale(&float(prec, (2 * k1 + 1) as f64)) * &val;
        acc = &acc + &scaled;
    }
    Ok(acc.abs())
}

/// |log Z_n(binning A) - log Z_n(binning B)| at x = 0 for one eigenvalue
/// multiset under two k-triples.
pub fn stokes_gap(
    n_hierarchy: u32,
    r: u32,
    t: &XComplex,
    k_a: (i32, i32, i32),
    k_b: (i32, i32, i32),
    digits: u32,
) -> Result<Float> {
    let prec = bits_for_digits(digits)?;
    let cfg_a = build_config(n_hierarchy, r, t, k_a.0, k_a.1, k_a.2, digits)?;
    let cfg_b = build_config(n_hierarchy, r, t, k_b.0, k_b.1, k_b.2, digits)?;
    let x = XComplex::zero(prec);
    let za = log_zn_at_tier(&cfg_a.partition_at(&x)?, digits)?;
    let zb = log_zn_at_tier(&cfg_b.partition_at(&x)?, digits)?;
    Ok(log_gap(&za.log_z, &zb.log_z))
}
