//! Property tests for the numeric substrate and the module-level
//! invariants that quantify over random inputs.

use proptest::prelude::*;

use airytau_core::kontsevich::{assignment_gap, log_gap, log_zn, miwa_times, SpectrumPartition};
use airytau_core::num::{
    aberth_roots, logdet_lu, principal_sqrt, XComplex, XPolynomial,
};
use airytau_core::pade::{pade_poly, pade_ratio, pade_zeros};
use rug::Float;

const PREC: u32 = 128;

fn c(re: f64, im: f64) -> XComplex {
    XComplex::from_f64(PREC, re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // principal_sqrt(z)^2 recovers z to 1e-28 relative for |z| <= 100
    #[test]
    fn sqrt_squares_back(re in -100.0..100.0f64, im in -100.0..100.0f64) {
        let z = c(re, im);
        prop_assume!(z.abs().to_f64() > 1e-6);
        let w = principal_sqrt(&z);
        prop_assert!(!w.re.is_sign_negative() || w.re.is_zero());
        let back = &w * &w;
        let rel = (&back - &z).abs().to_f64() / z.abs().to_f64();
        prop_assert!(rel <= 1e-28, "relative error {rel:e}");
    }

    // the branch lands in the closed right half plane with the cut from above
    #[test]
    fn sqrt_branch_convention(mag in 0.01..50.0f64) {
        let z = c(-mag, 0.0);
        let w = principal_sqrt(&z);
        prop_assert!(w.re.is_zero());
        prop_assert!(w.im > 0);
    }

    // monic reconstruction from Aberth roots recovers the coefficients
    #[test]
    fn aberth_reconstruction(seed in 0u64..2000) {
        let degree = 2 + (seed % 7) as usize;
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for _ in 0..degree {
            coeffs.push(c(2.0 * next(), 2.0 * next()));
        }
        coeffs.push(c(1.0, 0.0)); // monic
        let p = XPolynomial::new(coeffs.clone()).unwrap();
        let roots = aberth_roots(&p, 1e-30).unwrap();
        let rebuilt = XPolynomial::from_roots(&roots);
        for (a, b) in p.coeffs().iter().zip(rebuilt.coeffs()) {
            let gap = (a - b).abs().to_f64();
            prop_assert!(gap <= 1e-16 * (1.0 + a.abs().to_f64()), "coefficient gap {gap:e}");
        }
    }

    // P_r has real coefficients and conjugation-closed zeros
    #[test]
    fn pade_conjugate_symmetry(r in 1u32..=12) {
        let zeros = pade_zeros(r, 32).unwrap().zeros;
        for z in &zeros {
            let conj = z.conj();
            let found = zeros.iter().any(|w| (w - &conj).abs().to_f64() < 1e-24);
            prop_assert!(found);
        }
    }

    // log Z is invariant (mod 2 pi i) under permutations within a block
    #[test]
    fn kontsevich_permutation_invariance(swap in 0usize..3) {
        let mut ys = vec![c(1.1, 0.3), c(2.0, -0.5), c(1.4, 0.0)];
        let x = c(0.2, 0.0);
        let base = SpectrumPartition::new(x.clone(), ys.clone(), vec![], vec![], 32).unwrap();
        let za = log_zn(&base, 32).unwrap();
        ys.swap(swap, (swap + 1) % 3);
        let permuted = SpectrumPartition::new(x, ys, vec![], vec![], 32).unwrap();
        let zb = log_zn(&permuted, 32).unwrap();
        prop_assert!(log_gap(&za.log_z, &zb.log_z).to_f64() < 1e-28);
    }
}

#[test]
fn logdet_of_known_lu_product() {
    // build M = L U with unit-lower L and a fixed upper factor; the log
    // determinant must equal the diagonal data of U
    let n = 20usize;
    let mut state = 0x5eedu64;
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
    };
    let mut l = vec![vec![XComplex::zero(PREC); n]; n];
    let mut u = vec![vec![XComplex::zero(PREC); n]; n];
    let mut expected_log = Float::new(PREC);
    let mut expected_arg = Float::new(PREC);
    for i in 0..n {
        for j in 0..n {
            if i > j {
                l[i][j] = c(0.8 * next(), 0.8 * next());
            } else if i == j {
                l[i][j] = XComplex::one(PREC);
                let d = c(next() + 2.5, next()); // kept away from zero
                expected_log += d.abs().ln();
                expected_arg += d.arg();
                u[i][j] = d;
            }
            if i < j {
                u[i][j] = c(next(), next());
            }
        }
    }
    let mut m = vec![vec![XComplex::zero(PREC); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = XComplex::zero(PREC);
            for k in 0..n {
                acc = &acc + &(&l[i][k] * &u[k][j]);
            }
            m[i][j] = acc;
        }
    }
    let det = logdet_lu(&m, 32).unwrap();
    let log_gap_val = Float::with_val(PREC, &det.log_abs - &expected_log)
        .abs()
        .to_f64();
    assert!(log_gap_val < 1e-30, "log|det| gap {log_gap_val:e}");
    let arg_gap = airytau_core::num::reduce_angle(&Float::with_val(PREC, &det.arg - &expected_arg))
        .abs()
        .to_f64();
    assert!(arg_gap < 1e-30, "arg gap {arg_gap:e}");
}

#[test]
fn pade_taylor_matching_order() {
    // (e^{-z} - P_r(z)/P_r(-z)) / z^{2r+1} stays within 20% along rays as
    // |z| shrinks through 1e-1, 1e-2, 1e-3
    for r in 1u32..=3 {
        for ray in 0..10 {
            let angle = -1.0 + 0.2 * ray as f64; // inside the Re z >= 0 cone
            let mut ratios = Vec::new();
            for mag_exp in 1..=3 {
                let mag = 10f64.powi(-mag_exp);
                let z = XComplex::from_f64(256, mag * angle.cos(), mag * angle.sin());
                let v = pade_ratio(r, &z, 64).unwrap();
                let diff = &(-&z).exp() - &v;
                let denom = z.powi(2 * r + 1);
                ratios.push((&diff / &denom).abs().to_f64());
            }
            let max = ratios.iter().cloned().fold(0.0, f64::max);
            let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(
                (max - min) / max < 0.2,
                "r = {r}, ray {ray}: ratios {ratios:?} vary by more than 20%"
            );
        }
    }
}

#[test]
fn overlap_gap_decays_faster_than_sixth_power() {
    // along the pi/3 ray the assignment gap decays beyond any power; check
    // the sixth-power ratio test at three radii
    let gap_at = |radius: f64| -> f64 {
        let y = c(radius * 0.5, radius * 3f64.sqrt() / 2.0);
        assignment_gap(&XComplex::zero(PREC), &[y], &[0], &[1], 32)
            .unwrap()
            .to_f64()
    };
    let g = [gap_at(2.0), gap_at(3.0), gap_at(4.0)];
    assert!(g[1] / g[0] < (2.0f64 / 3.0).powi(6), "{g:?}");
    assert!(g[2] / g[1] < (3.0f64 / 4.0).powi(6), "{g:?}");
}

#[test]
fn miwa_times_decay_with_large_eigenvalues() {
    // T_k shrinks like max |y|^{-2k-1}
    let t_small = miwa_times(&[c(5.0, 0.0), c(6.0, 1.0)], 3).unwrap();
    let t_large = miwa_times(&[c(50.0, 0.0), c(60.0, 10.0)], 3).unwrap();
    for k in 0..=3usize {
        let shrink = t_large.times[k].abs().to_f64() / t_small.times[k].abs().to_f64();
        let cap = 10f64.powi(-(2 * k as i32 + 1)) * 3.0;
        assert!(shrink < cap, "T_{k} shrank only by {shrink:e}");
    }
}

#[test]
fn pade_poly_coefficient_magnitudes_exact_at_r64() {
    // (2r)!/r! at r = 64 spans far beyond machine integers
    let p = pade_poly(64).unwrap();
    assert_eq!(p.coeffs.len(), 65);
    let c0 = p.coeffs[0].to_string();
    assert!(c0.len() > 100, "leading coefficient suspiciously short: {c0}");
}
