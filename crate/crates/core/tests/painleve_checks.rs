//! End-to-end checks of the hierarchy pipeline: configuration geometry,
//! residual convergence where the contour windows admit it, step-halving
//! consistency, the small-t binning-independence trend, and the exact
//! d_n / Pade link.

use airytau_core::kontsevich::{dn_eval, log_zn, SpectrumPartition};
use airytau_core::num::XComplex;
use airytau_core::pade::pade_ratio;
use airytau_core::painleve::{build_config, ode_residual, stokes_gap, u_from_log_z, u_jet};
use rug::Float;

const PREC: u32 = 128;

fn c(re: f64, im: f64) -> XComplex {
    XComplex::from_f64(PREC, re, im)
}

#[test]
fn residuals_decay_in_r_where_windows_admit() {
    // N = 3 with (1, 0, -1): every cluster sits inside a jump-ray window
    // with the decay directions intact, and the residual falls fast in r
    let t = c(0.2, 0.0);
    let grid = [-1.0, 0.0, 1.0];
    let r2 = ode_residual(&build_config(3, 2, &t, 1, 0, -1, 32).unwrap(), &grid, 0.015625, 32)
        .unwrap();
    let r4 = ode_residual(&build_config(3, 4, &t, 1, 0, -1, 32).unwrap(), &grid, 0.015625, 32)
        .unwrap();
    for col in 0..grid.len() {
        let a = r2.residuals[col].to_f64();
        let b = r4.residuals[col].to_f64();
        assert!(
            b * 5.0 <= a,
            "x = {}: residual only fell from {a:e} to {b:e}",
            grid[col]
        );
    }
}

#[test]
fn u_step_halving_consistency() {
    // 6th-order contract: h and h/2 agree far better than either residual
    let t = c(0.2, 0.0);
    let cfg = build_config(3, 2, &t, 1, 0, -1, 32).unwrap();
    let x = Float::with_val(PREC, 0.25);
    let coarse = u_jet(&cfg, &x, 0.015625, 2, 32).unwrap();
    let fine = u_jet(&cfg, &x, 0.0078125, 2, 32).unwrap();
    let gap = (&coarse.values[0] - &fine.values[0]).abs().to_f64();
    assert!(gap < 1e-9, "u(h) vs u(h/2) gap {gap:e}");
}

#[test]
fn u_from_log_z_tuple_matches_jet() {
    let t = c(0.25, 0.0);
    let cfg = build_config(2, 2, &t, 1, 0, -1, 32).unwrap();
    let x = Float::with_val(PREC, 0.0);
    let (u, u_x, u_xx, _u3, _u4) = u_from_log_z(&cfg, &x, 0.015625, 32).unwrap();
    let jet = u_jet(&cfg, &x, 0.015625, 4, 32).unwrap();
    assert!((&u - &jet.values[0]).abs().to_f64() < 1e-25);
    assert!((&u_x - &jet.values[1]).abs().to_f64() < 1e-25);
    assert!((&u_xx - &jet.values[2]).abs().to_f64() < 1e-25);
}

#[test]
fn u_x_matches_recomputed_u() {
    // derivative consistency: finite difference of u across +-h reproduces
    // the returned u_x to the stencil's own accuracy
    let t = c(0.2, 0.0);
    let cfg = build_config(3, 2, &t, 1, 0, -1, 32).unwrap();
    let h = 0.015625f64;
    let x = Float::with_val(PREC, 0.0);
    let jet = u_jet(&cfg, &x, h, 2, 32).unwrap();
    let up = u_jet(&cfg, &Float::with_val(PREC, h), h, 0, 32).unwrap();
    let um = u_jet(&cfg, &Float::with_val(PREC, -h), h, 0, 32).unwrap();
    let approx = (&up.values[0] - &um.values[0]).scale_f64(0.5 / h);
    let gap = (&approx - &jet.values[1]).abs().to_f64();
    assert!(gap < 1e-4, "u_x consistency gap {gap:e}");
}

#[test]
fn u_continuity_in_t() {
    // no pole crossings at desk scale: u(0, t) moves by O(|delta t|)
    let u_at = |tv: f64| -> f64 {
        let t = c(tv, 0.0);
        let cfg = build_config(2, 4, &t, 1, 0, -1, 32).unwrap();
        u_jet(&cfg, &Float::new(PREC), 0.015625, 0, 32)
            .unwrap()
            .values[0]
            .re
            .to_f64()
    };
    let u1 = u_at(0.1);
    let u2 = u_at(0.2);
    let u4 = u_at(0.4);
    let scale = 10.0;
    assert!((u2 - u1).abs() <= 2.0 * 0.1 * scale, "du {}", u2 - u1);
    assert!((u4 - u2).abs() <= 2.0 * 0.2 * scale, "du {}", u4 - u2);
}

#[test]
fn u_finite_at_desk_scale() {
    let t = c(0.25, 0.0);
    let cfg = build_config(2, 4, &t, 1, 0, -1, 32).unwrap();
    let jet = u_jet(&cfg, &Float::new(PREC), 0.015625, 0, 32).unwrap();
    let u = jet.values[0].re.to_f64();
    assert!(u.is_finite() && u.abs() < 10.0, "u = {u}");
}

#[test]
fn stokes_gap_trend_superpolynomial() {
    // halving t keeps shrinking the ratio of consecutive gaps: a
    // three-point test of faster-than-polynomial decay
    let gap = |tv: f64| -> f64 {
        let t = c(tv, 0.0);
        stokes_gap(3, 2, &t, (1, 0, -1), (0, 0, -1), 32)
            .unwrap()
            .to_f64()
    };
    let g = [gap(0.2), gap(0.1), gap(0.05), gap(0.025)];
    let ratios = [g[1] / g[0], g[2] / g[1], g[3] / g[2]];
    assert!(ratios[1] < ratios[0], "ratios not improving: {ratios:?}");
    assert!(ratios[2] < ratios[1], "ratios not improving: {ratios:?}");
    // and deep in the small-t regime a halving buys two orders
    let deep = stokes_gap(3, 2, &c(0.00078125, 0.0), (1, 0, -1), (0, 0, -1), 32)
        .unwrap()
        .to_f64();
    let shallow = stokes_gap(3, 2, &c(0.0015625, 0.0), (1, 0, -1), (0, 0, -1), 32)
        .unwrap()
        .to_f64();
    assert!(
        deep <= 1e-2 * shallow,
        "deep ratio {:.3e} not below 1e-2",
        deep / shallow
    );
}

#[test]
fn dn_equals_pade_ratio_on_window() {
    // exact identity: d_n(lambda) = P_r(2 t lambda^{(2N+1)/2}) /
    // P_r(-2 t lambda^{(2N+1)/2}) for points built from the zeros
    let t = c(0.25, 0.0);
    let cfg = build_config(2, 4, &t, 1, 0, -1, 32).unwrap();
    for (radius, angle) in [(0.6, 0.1), (1.0, -0.4), (1.7, 0.5), (2.2, 0.0)] {
        let lambda = c(radius * f64::cos(angle), radius * f64::sin(angle));
        let dn = dn_eval(&lambda, &cfg.lambdas, &cfg.mus).unwrap();
        let z = lambda.pow_ratio(5, 2).scale_f64(0.5);
        let ratio = pade_ratio(4, &z, 32).unwrap();
        let gap = (&dn - &ratio).abs().to_f64();
        assert!(gap < 1e-30, "gap {gap:e} at {radius} e^(i {angle})");
    }
}

#[test]
fn airy_limit_of_the_hierarchy() {
    // for a right-half-plane partition with large eigenvalues the tau
    // function approaches the bare one, so u ~ -x and the N = 1 pairing
    // 3 t_3 L_1[u] + x with t_3 = 2/3 nearly vanishes
    let x = 0.3f64;
    let h = 0.015625f64;
    let ys = vec![c(7.0, 0.0), c(8.5, 0.0), c(10.0, 0.0)];
    let offsets: Vec<i64> = (-4..=4).collect();
    let weights = airytau_core::painleve::fd_weights(&offsets, 2);
    let mut d2 = Float::new(PREC);
    for (j, w) in weights[2].iter().enumerate() {
        let xj = XComplex::from_f64(PREC, x + h * offsets[j] as f64, 0.0);
        let p = SpectrumPartition::new(xj, ys.clone(), vec![], vec![], 32).unwrap();
        let f = log_zn(&p, 32).unwrap().log_z.re;
        d2 += Float::with_val(PREC, w) * &f;
    }
    d2 /= Float::with_val(PREC, h * h);
    let u = Float::with_val(PREC, &d2 * &Float::with_val(PREC, 2)) - Float::with_val(PREC, x);
    // 3 (2/3) L_1[u] + x = u + x; at finite eigenvalues the phase mismatch
    // theta - (2/3) lambda^{3/2} = -x^2/(4y) + ... shifts u by
    // -sum_j (y_j^2 + x)^{-1/2}, which is the part to discount here
    let correction: f64 = ys
        .iter()
        .map(|y| 1.0 / (y.re.to_f64().powi(2) + x).sqrt())
        .sum();
    let residual = (u.to_f64() + x + correction).abs();
    assert!(residual < 3e-3, "Airy-limit residual {residual:e}");
}

#[test]
fn infeasible_and_invalid_configs_rejected() {
    let t = c(0.25, 0.0);
    assert!(build_config(2, 2, &t, 0, 0, 0, 32).is_err()); // k+ = k-
    assert!(build_config(2, 2, &t, 2, 0, -1, 32).is_err()); // out of reach
    assert!(build_config(2, 2, &c(0.0, 0.0), 1, 0, -1, 32).is_err()); // t = 0
    assert!(build_config(2, 2, &c(0.1, 0.2), 1, 0, -1, 32).is_err()); // arg t
}
