use airytau_core::airy::airy_jet;
use airytau_core::kontsevich::log_zn;
use airytau_core::num::XComplex;
use airytau_core::painleve::{build_config, u_jet};
use rug::Float;

fn main() {
    let prec = 128;
    // n = 1 check: u(x) = 2 d^2/dx^2 log Ai(y^2 + x) - x against the
    // logarithmic-derivative closed form 2 lambda - 2 (Ai'/Ai)^2 - x
    let y = XComplex::from_f64(prec, 2.0, 0.0);
    for xv in [0.0f64, 0.3, -0.7] {
        let x = Float::with_val(prec, xv);
        let lambda = &(&y * &y) + &XComplex::from_real(x.clone());
        let jet = airy_jet(&lambda, 0, 1, 32).unwrap();
        let ratio = &jet.values[1] / &jet.values[0];
        let closed = &(&lambda - &(&ratio * &ratio)).scale_f64(2.0)
            - &XComplex::from_real(x.clone());

        // via the partition + FD route
        let cfg_like = airytau_core::kontsevich::SpectrumPartition::new(
            XComplex::from_real(x.clone()),
            vec![y.clone()],
            vec![],
            vec![],
            32,
        )
        .unwrap();
        let _ = log_zn(&cfg_like, 32).unwrap();

        // FD on a synthetic single-eigenvalue "config": reuse u_jet by
        // building a fake P1Config is awkward; instead do FD here directly
        let h = 0.015625f64;
        let mut f = Vec::new();
        let offsets: Vec<i64> = (-5..=5).collect();
        for &j in &offsets {
            let xj = Float::with_val(prec, &x + &Float::with_val(prec, j as f64 * h));
            let p = airytau_core::kontsevich::SpectrumPartition::new(
                XComplex::from_real(xj),
                vec![y.clone()],
                vec![],
                vec![],
                32,
            )
            .unwrap();
            f.push(log_zn(&p, 32).unwrap().log_z.re);
        }
        let w = airytau_core::painleve::fd_weights(&offsets, 2);
        let mut d2 = Float::new(prec);
        for (j, wj) in w[2].iter().enumerate() {
            d2 += Float::with_val(prec, wj) * &f[j];
        }
        d2 /= Float::with_val(prec, h * h);
        let u_fd = Float::with_val(prec, &d2 * &Float::with_val(prec, 2)) - &x;
        println!(
            "n=1 x={xv}: closed {:.20}  fd {:.20}  diff {:e}",
            closed.re.to_f64(),
            u_fd.to_f64(),
            (closed.re.to_f64() - u_fd.to_f64()).abs()
        );
    }

    // N=2 config route at r=1 and r=2: u from u_jet
    let t = XComplex::from_f64(prec, 0.25, 0.0);
    for r in [1u32, 2, 3] {
        let cfg = build_config(2, r, &t, 1, 0, -1, 32).unwrap();
        let jet = u_jet(&cfg, &Float::with_val(prec, 0), 0.015625, 2, 32).unwrap();
        println!(
            "N=2 r={r}: u(0) = {:.12} + {:.2e} i, u_xx(0) = {:.12}",
            jet.values[0].re.to_f64(),
            jet.values[0].im.to_f64(),
            jet.values[2].re.to_f64()
        );
    }
}
