use std::time::Instant;

use airytau_core::kontsevich::{assignment_gap, log_zn, SpectrumPartition};
use airytau_core::num::XComplex;
use airytau_core::painleve::{build_config, ode_residual, stokes_gap};

fn main() {
    let prec = 128;

    // criterion 5: normalization decay
    for c in [5.0, 10.0] {
        let p = SpectrumPartition::new(
            XComplex::zero(prec),
            vec![
                XComplex::from_f64(prec, c, 0.0),
                XComplex::from_f64(prec, 2.0 * c, 0.0),
                XComplex::from_f64(prec, 3.0 * c, 0.0),
            ],
            vec![],
            vec![],
            32,
        )
        .unwrap();
        let z = log_zn(&p, 32).unwrap();
        println!(
            "crit5 c={c}: |log Z3| = {:e} (digits_lost {})",
            z.log_z.abs().to_f64(),
            z.digits_lost_estimate
        );
    }

    // criterion 6: assignment gap for y = R e^{i pi/3}
    for r in [3.0f64, 5.0] {
        let y = XComplex::from_f64(prec, r * 0.5, r * 3f64.sqrt() / 2.0);
        let gap = assignment_gap(&XComplex::zero(prec), &[y], &[0], &[1], 32).unwrap();
        println!("crit6 R={r}: gap = {:e}", gap.to_f64());
    }

    // criterion 10: stokes gap N=3 r=2
    for t in [0.4f64, 0.2] {
        let tc = XComplex::from_f64(prec, t, 0.0);
        let start = Instant::now();
        let gap = stokes_gap(3, 2, &tc, (1, 0, -1), (0, 0, -1), 32).unwrap();
        println!(
            "crit10 t={t}: gap = {:e}  ({:?})",
            gap.to_f64(),
            start.elapsed()
        );
    }

    // criterion 9: residual decay N=2 t=0.25
    let t = XComplex::from_f64(prec, 0.25, 0.0);
    for r in [2u32, 4, 6] {
        let start = Instant::now();
        let cfg = build_config(2, r, &t, 1, 0, -1, 32).unwrap();
        let rep = ode_residual(&cfg, &[-1.0, 0.0, 1.0], 0.015625, 32).unwrap();
        let res: Vec<f64> = rep.residuals.iter().map(|v| v.to_f64()).collect();
        let fde: Vec<f64> = rep.fd_errors.iter().map(|v| v.to_f64()).collect();
        let us: Vec<f64> = rep.u_values.iter().map(|v| v.to_f64()).collect();
        println!(
            "crit9 r={r}: residuals {res:?}\n         u {us:?}\n         fd_err {fde:?}  ({:?})",
            start.elapsed()
        );
    }
}
