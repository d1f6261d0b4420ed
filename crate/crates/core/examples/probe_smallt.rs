use airytau_core::num::XComplex;
use airytau_core::painleve::{build_config, ode_residual, u_jet};
use rug::Float;

fn main() {
    let prec = 128;
    for tv in [0.05f64, 0.1, 0.25] {
        let t = XComplex::from_f64(prec, tv, 0.0);
        for r in [1u32, 2, 3, 4] {
            let cfg = build_config(2, r, &t, 1, 0, -1, 32).unwrap();
            let jet = u_jet(&cfg, &Float::with_val(prec, 0), 0.015625, 2, 32).unwrap();
            let rep = ode_residual(&cfg, &[0.0], 0.015625, 32).unwrap();
            println!(
                "t={tv} r={r}: u(0) = {:+.12}  residual = {:.3e}",
                jet.values[0].re.to_f64(),
                rep.residuals[0].to_f64()
            );
        }
        println!();
    }
}
