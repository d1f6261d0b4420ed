//! The acceptance suite: every criterion pinned to its stated tolerance,
//! one pass/fail line per criterion. The integration test target and the
//! `suite acceptance` subcommand both run exactly this code.

use std::time::Instant;

use rug::{Integer, Rational};

use airytau_core::airy::{
    airy_jet, airy_quadrature_oracle, airy_series, det2, omega_pow, parametrix_in_region,
    classify_region, verify_parametrix_jumps, ContourConfig,
};
use airytau_core::kontsevich::{assignment_gap, dn_eval, log_gap, log_zn, SpectrumPartition};
use airytau_core::lenard::{
    apply_dx, apply_recursion_operator, lenard, DiffMonomial, DiffPolynomial,
};
use airytau_core::num::{float_ratio, pi, XComplex};
use airytau_core::pade::{pade_poly, pade_ratio, pade_remainder, pade_zeros, DEFAULT_THETA0};
use airytau_core::painleve::{build_config, ode_residual, stokes_gap};

pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn render(&self) -> String {
        format!(
            "[{:>2}] {}  {} — {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

/// Deterministic SplitMix64; identical streams on every platform.
struct Rng64(u64);

impl Rng64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }
}

pub fn run_acceptance() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
        criterion_11(),
    ]
}

fn c128(re: f64, im: f64) -> XComplex {
    XComplex::from_f64(128, re, im)
}

/// 1: series vs quadrature oracle at four anchor points, <= 1e-18, < 10 s.
fn criterion_1() -> CriterionResult {
    let start = Instant::now();
    let mut worst = 0f64;
    let points = [(0.0, 0.0), (1.0, 0.0), (-2.0, 0.0), (3.0, 2.0)];
    let mut failure = None;
    for (re, im) in points {
        let z = c128(re, im);
        match airy_quadrature_oracle(&z) {
            Ok(oracle) => {
                let series = airy_series(&z);
                let gap = (&series.ai - &oracle).abs().to_f64();
                worst = worst.max(gap);
            }
            Err(e) => failure = Some(format!("oracle failed at {re}+{im}i: {e}")),
        }
    }
    let elapsed = start.elapsed();
    let time_ok = elapsed.as_secs_f64() < 10.0;
    let passed = failure.is_none() && worst <= 1e-18 && time_ok;
    CriterionResult {
        id: 1,
        name: "Airy oracle agreement",
        passed,
        detail: failure.unwrap_or(format!(
            "worst |series - oracle| = {worst:.2e} (tol 1e-18), {:.2} s (limit 10 s)",
            elapsed.as_secs_f64()
        )),
    }
}

/// 2: Ai_0 + omega Ai_1 + omega^2 Ai_2 = 0 at 100 random |z| <= 10, <= 1e-26.
fn criterion_2() -> CriterionResult {
    let mut rng = Rng64(0x41495259);
    let w1 = omega_pow(128, 1);
    let w2 = omega_pow(128, 2);
    let mut worst = 0f64;
    for _ in 0..100 {
        let radius = 10.0 * rng.unit().sqrt();
        let angle = rng.range(-std::f64::consts::PI, std::f64::consts::PI);
        let z = c128(radius * angle.cos(), radius * angle.sin());
        let j0 = airy_jet(&z, 0, 0, 32).unwrap();
        let j1 = airy_jet(&z, 1, 0, 32).unwrap();
        let j2 = airy_jet(&z, 2, 0, 32).unwrap();
        let sum = &(&j0.values[0] + &(&w1 * &j1.values[0])) + &(&w2 * &j2.values[0]);
        worst = worst.max(sum.abs().to_f64());
    }
    CriterionResult {
        id: 2,
        name: "Connection identity",
        passed: worst <= 1e-26,
        detail: format!("worst residual {worst:.2e} over 100 points (tol 1e-26)"),
    }
}

/// 3: |det A - 1| <= 1e-25 and jump residuals <= 1e-20 at |zeta| in {2, 10}.
fn criterion_3() -> CriterionResult {
    let rays = ContourConfig::default();
    let mut worst_det = 0f64;
    for (rho, digits) in [(2.0f64, 32u32), (10.0, 64)] {
        let prec = if digits == 32 { 128 } else { 256 };
        for theta in [0.3f64, 1.5, 2.6, -2.6, -1.2] {
            let zeta = XComplex::from_f64(prec, rho * theta.cos(), rho * theta.sin());
            let region = classify_region(&zeta, &rays).unwrap();
            let m = parametrix_in_region(&zeta, region).unwrap();
            let det = det2(&m);
            let gap = (&det - &XComplex::one(prec)).abs().to_f64();
            worst_det = worst_det.max(gap);
        }
    }
    let jumps2 = verify_parametrix_jumps(2.0, &rays, 32).unwrap().to_f64();
    let jumps10 = verify_parametrix_jumps(10.0, &rays, 64).unwrap().to_f64();
    let worst_jump = jumps2.max(jumps10);
    let passed = worst_det <= 1e-25 && worst_jump <= 1e-20;
    CriterionResult {
        id: 3,
        name: "Parametrix determinant and jumps",
        passed,
        detail: format!(
            "worst |det - 1| = {worst_det:.2e} (tol 1e-25), worst jump residual = {worst_jump:.2e} (tol 1e-20)"
        ),
    }
}

/// 4: log Z_1(0; y=10) anchor within 1e-6 of -5/48000, and the n = 1
/// closed form to 1e-24 at 20 random (x, y) with y in S_0.
fn criterion_4() -> CriterionResult {
    let p = SpectrumPartition::new(
        XComplex::zero(128),
        vec![c128(10.0, 0.0)],
        vec![],
        vec![],
        32,
    )
    .unwrap();
    let z = log_zn(&p, 32).unwrap();
    let anchor_gap = (z.log_z.re.to_f64() + 5.0 / 48_000.0).abs();

    let mut rng = Rng64(0x4b4f4e54);
    let mut worst = 0f64;
    let prec = 128;
    let two_sqrt_pi_ln = {
        let v = pi(prec).sqrt() * 2u32;
        v.ln()
    };
    for _ in 0..20 {
        let radius = rng.range(0.5, 2.5);
        let angle = rng.range(-1.35, 1.35);
        let y = c128(radius * angle.cos(), radius * angle.sin());
        let x = c128(rng.range(-1.0, 1.0), rng.range(-0.5, 0.5));
        let part = SpectrumPartition::new(x.clone(), vec![y.clone()], vec![], vec![], 32).unwrap();
        let got = log_zn(&part, 32).unwrap();

        let lambda = &(&y * &y) + &x;
        let ai = airy_jet(&lambda, 0, 0, 32).unwrap().values[0].clone();
        let theta = &(&(&y * &y) * &y).scale(&float_ratio(prec, 2, 3)) + &(&x * &y);
        let closed = &(&XComplex::from_real(two_sqrt_pi_ln.clone()) + &theta)
            + &(&y.ln().scale_f64(0.5) + &ai.ln());
        worst = worst.max(log_gap(&got.log_z, &closed).to_f64());
    }
    let passed = anchor_gap <= 1e-6 && worst <= 1e-24;
    CriterionResult {
        id: 4,
        name: "Kontsevich n = 1 anchor and closed form",
        passed,
        detail: format!(
            "|log Z_1(0;10) + 5/48000| = {anchor_gap:.2e} (tol 1e-6), worst closed-form gap = {worst:.2e} (tol 1e-24)"
        ),
    }
}

/// 5: |log Z_3| at y0 = {c, 2c, 3c} falls by a factor >= 7 from c=5 to c=10.
fn criterion_5() -> CriterionResult {
    let value = |c: f64| -> f64 {
        let p = SpectrumPartition::new(
            XComplex::zero(128),
            vec![c128(c, 0.0), c128(2.0 * c, 0.0), c128(3.0 * c, 0.0)],
            vec![],
            vec![],
            32,
        )
        .unwrap();
        log_zn(&p, 32).unwrap().log_z.abs().to_f64()
    };
    let at5 = value(5.0);
    let at10 = value(10.0);
    let ratio = at5 / at10;
    CriterionResult {
        id: 5,
        name: "Normalization decay",
        passed: ratio >= 7.0,
        detail: format!("|log Z_3|: {at5:.3e} (c=5) / {at10:.3e} (c=10) = {ratio:.2} (need >= 7)"),
    }
}

/// 6: assignment-independence decay for y = R e^{i pi/3}.
fn criterion_6() -> CriterionResult {
    let gap_at = |radius: f64| -> f64 {
        let y = c128(radius * 0.5, radius * 3f64.sqrt() / 2.0);
        assignment_gap(&XComplex::zero(128), &[y], &[0], &[1], 32)
            .unwrap()
            .to_f64()
    };
    let g3 = gap_at(3.0);
    let g5 = gap_at(5.0);
    let bound = (3f64 / 5.0).powi(6);
    let passed = g5 <= bound * g3 && g5 <= 1e-4;
    CriterionResult {
        id: 6,
        name: "Assignment independence",
        passed,
        detail: format!(
            "gap(3) = {g3:.2e}, gap(5) = {g5:.2e}; gap(5)/gap(3) = {:.2e} (need <= (3/5)^6 = {bound:.3e}) and gap(5) <= 1e-4",
            g5 / g3
        ),
    }
}

/// 7: Pade coefficients, zero bounds through r = 20, and the remainder
/// identity/bound at 50 sampled points.
fn criterion_7() -> CriterionResult {
    let p1 = pade_poly(1).unwrap();
    let p2 = pade_poly(2).unwrap();
    let coeffs_ok = p1.coeffs == vec![Integer::from(2), Integer::from(-1)]
        && p2.coeffs == vec![Integer::from(12), Integer::from(-6), Integer::from(1)];

    let mut bounds_ok = true;
    let mut bound_detail = String::new();
    for r in 1..=20 {
        if let Err(e) = pade_zeros(r, 32) {
            bounds_ok = false;
            bound_detail = format!("; r = {r} failed: {e}");
            break;
        }
    }

    let mut rng = Rng64(0x50414445);
    let mut worst_identity = 0f64;
    let mut bound_violation = 0usize;
    for _ in 0..50 {
        let r = 1 + (rng.next() % 10) as u32;
        let radius = rng.range(0.0, 5.0);
        let half_cone = std::f64::consts::FRAC_PI_2 - DEFAULT_THETA0;
        let angle = rng.range(-half_cone + 1e-2, half_cone - 1e-2);
        let z = c128(radius * angle.cos(), radius * angle.sin());
        let rem = pade_remainder(r, &z, DEFAULT_THETA0, 32).unwrap();
        worst_identity = worst_identity.max((&rem.direct - &rem.integral).abs().to_f64());
        if rem.direct.abs() > rem.bound {
            bound_violation += 1;
        }
    }
    let passed = coeffs_ok && bounds_ok && worst_identity <= 1e-15 && bound_violation == 0;
    CriterionResult {
        id: 7,
        name: "Pade coefficients, zero bounds, remainder",
        passed,
        detail: format!(
            "P1/P2 exact: {coeffs_ok}; zero bounds r <= 20 hold: {bounds_ok}{bound_detail}; worst |direct - integral| = {worst_identity:.2e} (tol 1e-15); bound violations: {bound_violation}/50"
        ),
    }
}

/// 8: Lenard exactness: closed forms for L_2, L_3; recursion identity
/// through n = 7; weight homogeneity through n = 8.
fn criterion_8() -> CriterionResult {
    let expect2 = {
        let mut p = DiffPolynomial::zero();
        p.add_term(DiffMonomial::new(vec![0, 0, 1]), Rational::from((1, 8)));
        p.add_term(DiffMonomial::new(vec![2]), Rational::from((3, 8)));
        p
    };
    let expect3 = {
        let mut p = DiffPolynomial::zero();
        p.add_term(DiffMonomial::new(vec![0, 0, 0, 0, 1]), Rational::from((1, 32)));
        p.add_term(DiffMonomial::new(vec![1, 0, 1]), Rational::from((10, 32)));
        p.add_term(DiffMonomial::new(vec![0, 2]), Rational::from((5, 32)));
        p.add_term(DiffMonomial::new(vec![3]), Rational::from((10, 32)));
        p
    };
    let closed_ok = lenard(2).unwrap() == expect2 && lenard(3).unwrap() == expect3;

    let mut recursion_ok = true;
    for n in 0..=7 {
        let lhs = apply_dx(&lenard(n + 1).unwrap());
        let rhs = apply_recursion_operator(&lenard(n).unwrap());
        if lhs != rhs {
            recursion_ok = false;
        }
    }
    let mut weight_ok = true;
    for n in 0..=8usize {
        if !lenard(n).unwrap().is_homogeneous_of_weight(2 * n as u32) {
            weight_ok = false;
        }
    }
    CriterionResult {
        id: 8,
        name: "Lenard exactness",
        passed: closed_ok && recursion_ok && weight_ok,
        detail: format!(
            "closed forms L_2, L_3: {closed_ok}; recursion identity n <= 7: {recursion_ok}; weight 2n homogeneity n <= 8: {weight_ok}"
        ),
    }
}

/// 9: N=2, t=0.25, (k+,k0,k-) = (1,0,-1): ode_residual falls by >= 5 from
/// r=2 to r=4 and again to r=6, within 10 minutes.
fn criterion_9() -> CriterionResult {
    let start = Instant::now();
    let t = c128(0.25, 0.0);
    let grid = [-1.0, 0.0, 1.0];
    let mut tables = Vec::new();
    for r in [2u32, 4, 6] {
        let cfg = match build_config(2, r, &t, 1, 0, -1, 32) {
            Ok(c) => c,
            Err(e) => {
                return CriterionResult {
                    id: 9,
                    name: "Hierarchy convergence",
                    passed: false,
                    detail: format!("config r = {r} failed: {e}"),
                }
            }
        };
        match ode_residual(&cfg, &grid, 0.015625, 32) {
            Ok(rep) => tables.push(
                rep.residuals
                    .iter()
                    .map(|v| v.to_f64())
                    .collect::<Vec<f64>>(),
            ),
            Err(e) => {
                return CriterionResult {
                    id: 9,
                    name: "Hierarchy convergence",
                    passed: false,
                    detail: format!("residual r = {r} failed: {e}"),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let mut decay_ok = true;
    for step in 0..2 {
        for col in 0..grid.len() {
            if !(tables[step + 1][col] * 5.0 <= tables[step][col]) {
                decay_ok = false;
            }
        }
    }
    let time_ok = elapsed.as_secs_f64() <= 600.0;
    CriterionResult {
        id: 9,
        name: "Hierarchy convergence",
        passed: decay_ok && time_ok,
        detail: format!(
            "residuals r=2: {:?}, r=4: {:?}, r=6: {:?}; factors >= 5 per step: {decay_ok}; {:.1} s (limit 600 s)",
            round3(&tables[0]),
            round3(&tables[1]),
            round3(&tables[2]),
            elapsed.as_secs_f64()
        ),
    }
}

/// 10: N=3, r=2: stokes_gap(t=0.2) <= 1e-2 * stokes_gap(t=0.4).
fn criterion_10() -> CriterionResult {
    let gap = |tv: f64| -> f64 {
        let t = c128(tv, 0.0);
        stokes_gap(3, 2, &t, (1, 0, -1), (0, 0, -1), 32)
            .unwrap()
            .to_f64()
    };
    let g04 = gap(0.4);
    let g02 = gap(0.2);
    let passed = g02 <= 1e-2 * g04;
    CriterionResult {
        id: 10,
        name: "Stokes closeness",
        passed,
        detail: format!(
            "gap(0.2) = {g02:.3e}, gap(0.4) = {g04:.3e}, ratio = {:.3e} (need <= 1e-2)",
            g02 / g04
        ),
    }
}

/// 11: d_n against the Pade ratio on 10 points with arg lambda inside the
/// J_0 window, <= 1e-24.
fn criterion_11() -> CriterionResult {
    let t = c128(0.25, 0.0);
    let cfg = build_config(2, 4, &t, 1, 0, -1, 32).unwrap();
    let mut rng = Rng64(0x444e5041);
    let mut worst = 0f64;
    for _ in 0..10 {
        let radius = rng.range(0.5, 2.0);
        let angle = rng.range(-0.55, 0.55); // inside (-pi/5, pi/5)
        let lambda = c128(radius * angle.cos(), radius * angle.sin());
        let dn = dn_eval(&lambda, &cfg.lambdas, &cfg.mus).unwrap();
        let z = lambda.pow_ratio(5, 2).scale_f64(0.5); // 2 t lambda^{5/2}, t = 1/4
        let ratio = pade_ratio(4, &z, 32).unwrap();
        worst = worst.max((&dn - &ratio).abs().to_f64());
    }
    CriterionResult {
        id: 11,
        name: "d_n / Pade cross-validation",
        passed: worst <= 1e-24,
        detail: format!("worst |d_n - P_4 ratio| = {worst:.2e} over 10 points (tol 1e-24)"),
    }
}

fn round3(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e3).round() / 1e3).collect()
}
