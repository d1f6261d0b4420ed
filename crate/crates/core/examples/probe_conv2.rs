use airytau_core::kontsevich::{log_zn, SpectrumPartition};
use airytau_core::num::{float_ratio, pi, XComplex};
use airytau_core::pade::pade_zeros;
use airytau_core::painleve::{build_config, ode_residual, stokes_gap};
use rug::Float;

// y-clusters for kappa = -N..N, manually binned
fn clusters(n_big: i32, r: u32, t: f64, prec: u32) -> Vec<Vec<XComplex>> {
    let modulus = 2 * n_big + 1;
    let zeros = pade_zeros(r, 32).unwrap().zeros;
    let two_t = XComplex::from_f64(prec, 2.0 * t, 0.0);
    (-n_big..=n_big)
        .map(|kappa| {
            let mut theta = pi(prec) * 2u32;
            theta *= kappa;
            theta /= modulus as u32;
            let (s, c) = theta.sin_cos(Float::new(prec));
            let rot = XComplex::new(c, s);
            zeros
                .iter()
                .map(|a| &rot * &(&a.with_prec(prec) / &two_t).pow_ratio(1, modulus as u32))
                .collect()
        })
        .collect()
}

fn main() {
    let prec = 128;
    let _ = float_ratio(prec, 1, 3);

    // N=2 "region-default" binning D: Y0 = {0}, Y1 = {1,2}, Y2 = {-1,-2}
    println!("N=2 t=0.25 binning D (Y0 = {{kappa 0}}):");
    for r in 1u32..=6 {
        let cl = clusters(2, r, 0.25, prec);
        let idx = |k: i32| (k + 2) as usize;
        let y0 = cl[idx(0)].clone();
        let mut y1 = cl[idx(1)].clone();
        y1.extend(cl[idx(2)].iter().cloned());
        let mut y2 = cl[idx(-1)].clone();
        y2.extend(cl[idx(-2)].iter().cloned());
        let p = SpectrumPartition::new(XComplex::zero(prec), y0, y1, y2, 32).unwrap();
        let z = log_zn(&p, 32).unwrap();
        println!(
            "  r={r}: log Z(0) = {:+.14}  (lost {})",
            z.log_z.re.to_f64(),
            z.digits_lost_estimate
        );
    }

    // N=3 with the public (1,0,-1) binning: should converge
    println!("N=3 t=0.2 public binning (1,0,-1):");
    for r in 1u32..=4 {
        let t = XComplex::from_f64(prec, 0.2, 0.0);
        let cfg = build_config(3, r, &t, 1, 0, -1, 32).unwrap();
        let p = cfg.partition_at(&XComplex::zero(prec)).unwrap();
        let z = log_zn(&p, 32).unwrap();
        println!(
            "  r={r}: log Z(0) = {:+.14}  (lost {})",
            z.log_z.re.to_f64(),
            z.digits_lost_estimate
        );
    }

    // N=3 residual decay with the public (1,0,-1)
    println!("N=3 t=0.2 residuals at x in {{-1,0,1}}:");
    for r in [1u32, 2, 3] {
        let t = XComplex::from_f64(prec, 0.2, 0.0);
        let cfg = build_config(3, r, &t, 1, 0, -1, 32).unwrap();
        let rep = ode_residual(&cfg, &[-1.0, 0.0, 1.0], 0.015625, 32).unwrap();
        let res: Vec<f64> = rep.residuals.iter().map(|v| v.to_f64()).collect();
        println!("  r={r}: {res:?}");
    }

    // stokes gap at small t
    println!("N=3 r=2 stokes gaps:");
    for t in [0.4f64, 0.2, 0.1, 0.05, 0.025] {
        let tc = XComplex::from_f64(prec, t, 0.0);
        let gap = stokes_gap(3, 2, &tc, (1, 0, -1), (0, 0, -1), 32).unwrap();
        println!("  t={t}: gap = {:e}", gap.to_f64());
    }
}
