//! Cross-checks of the Airy backends against the independent
//! oscillatory-integral oracle, plus backend overlap and parametrix checks.

use airytau_core::airy::{
    airy_jet, airy_quadrature_oracle, airy_series, classify_region, det2,
    parametrix_in_region, verify_parametrix_jumps, ContourConfig,
};
use airytau_core::num::XComplex;

fn c(re: f64, im: f64) -> XComplex {
    XComplex::from_f64(128, re, im)
}

#[test]
fn oracle_agreement_across_disk() {
    // |z| <= 5 sample grid, absolute agreement 1e-18
    let pts = [
        (0.0, 0.0),
        (1.0, 0.0),
        (-2.0, 0.0),
        (3.0, 2.0),
        (0.0, 4.0),
        (-3.5, -1.5),
        (4.9, 0.7),
        (-1.0, 4.4),
    ];
    for (re, im) in pts {
        let z = c(re, im);
        let series = airy_series(&z);
        let oracle = airy_quadrature_oracle(&z).unwrap();
        let gap = (&series.ai - &oracle).abs().to_f64();
        assert!(gap <= 1e-18, "gap {gap:e} at z = {re}+{im}i");
    }
}

#[test]
fn oracle_agreement_on_oscillatory_side() {
    // negative real axis: Ai oscillates, the contour integral still holds
    for re in [-2.0, -5.0, -9.0] {
        let z = c(re, 0.0);
        let series = airy_series(&z);
        let oracle = airy_quadrature_oracle(&z).unwrap();
        let gap = (&series.ai - &oracle).abs().to_f64();
        assert!(gap <= 1e-18, "gap {gap:e} at z = {re}");
    }
}

#[test]
fn backend_overlap_annulus() {
    // the series and the dispatched asymptotic path (direct expansion in
    // the safe cone, connection-rotated outside it) agree relatively to
    // 1e-22 on 12 < |z| <= 18
    let mut tested = 0;
    for k in 0..24 {
        let radius = 12.1 + 5.9 * ((k % 5) as f64) / 4.0;
        let angle = -3.0 + 0.25 * k as f64;
        let z = c(radius * angle.cos(), radius * angle.sin());
        if z.im.is_zero() && z.re.is_sign_negative() {
            continue;
        }
        let series = airy_series(&z);
        if series.precision_loss {
            continue;
        }
        // |z| > 12 at the 32-digit tier routes the jet through asymptotics
        let dispatched = airy_jet(&z, 0, 1, 32).unwrap();
        let rel =
            (&series.ai - &dispatched.values[0]).abs().to_f64() / series.ai.abs().to_f64().max(1e-300);
        assert!(rel <= 1e-22, "relative gap {rel:e} at |z| = {radius}, arg = {angle}");
        let rel_p = (&series.aip - &dispatched.values[1]).abs().to_f64()
            / series.aip.abs().to_f64().max(1e-300);
        assert!(rel_p <= 1e-22, "derivative gap {rel_p:e} at |z| = {radius}, arg = {angle}");
        tested += 1;
    }
    assert!(tested >= 16, "only {tested} points exercised the overlap");
}

#[test]
fn parametrix_det_on_two_circles() {
    let rays = ContourConfig::default();
    for (rho, prec, tol) in [(2.0f64, 128u32, 1e-28), (10.0, 256, 1e-25)] {
        for theta in [0.4f64, 1.3, 2.4, 3.0, -2.4, -1.1, -0.4] {
            let zeta = XComplex::from_f64(prec, rho * theta.cos(), rho * theta.sin());
            let region = classify_region(&zeta, &rays).unwrap();
            let m = parametrix_in_region(&zeta, region).unwrap();
            let det = det2(&m);
            let gap = (&det - &XComplex::one(prec)).abs().to_f64();
            assert!(gap <= tol, "det gap {gap:e} at rho {rho}, theta {theta}");
        }
    }
}

#[test]
fn jumps_hold_on_rotated_rays() {
    // rotated configuration (the hierarchy constructions need off-default
    // rays); jump matrices are ray-independent
    let rays = ContourConfig {
        theta0: 0.35,
        theta_plus: 1.9,
        theta_minus: -2.4,
    };
    let worst = verify_parametrix_jumps(3.0, &rays, 32).unwrap();
    assert!(worst.to_f64() <= 1e-25, "worst {:e}", worst.to_f64());
}

#[test]
fn jumps_at_rho_ten_high_tier() {
    let worst = verify_parametrix_jumps(10.0, &ContourConfig::default(), 64).unwrap();
    assert!(worst.to_f64() <= 1e-25, "worst {:e}", worst.to_f64());
}
