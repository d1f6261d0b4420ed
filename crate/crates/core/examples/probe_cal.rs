use airytau_core::num::XComplex;
use airytau_core::painleve::{build_config, ode_residual, stokes_gap, u_jet};
use rug::Float;
use std::time::Instant;

fn main() {
    let prec = 128;

    // N=3 residual decay across r = 2, 4 (criterion-9-style spacing)
    let t = XComplex::from_f64(prec, 0.2, 0.0);
    for r in [2u32, 4] {
        let start = Instant::now();
        let cfg = build_config(3, r, &t, 1, 0, -1, 32).unwrap();
        let rep = ode_residual(&cfg, &[-1.0, 0.0, 1.0], 0.015625, 32).unwrap();
        let res: Vec<f64> = rep.residuals.iter().map(|v| v.to_f64()).collect();
        println!("N=3 r={r}: residuals {res:?} ({:?})", start.elapsed());
    }

    // u(0, t) continuity for N=2 r=4 (divergent-but-finite binning A)
    for tv in [0.1f64, 0.2, 0.4] {
        let t = XComplex::from_f64(prec, tv, 0.0);
        let cfg = build_config(2, 4, &t, 1, 0, -1, 32).unwrap();
        let jet = u_jet(&cfg, &Float::with_val(prec, 0), 0.015625, 0, 32).unwrap();
        println!("N=2 r=4 t={tv}: u(0) = {:+.10}", jet.values[0].re.to_f64());
    }

    // small-t stokes gaps
    for tv in [0.0125f64, 0.00625] {
        let t = XComplex::from_f64(prec, tv, 0.0);
        let start = Instant::now();
        let gap = stokes_gap(3, 2, &t, (1, 0, -1), (0, 0, -1), 32).unwrap();
        println!("stokes t={tv}: gap = {:e} ({:?})", gap.to_f64(), start.elapsed());
    }
}
