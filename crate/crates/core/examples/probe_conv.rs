use airytau_core::kontsevich::log_zn;
use airytau_core::num::XComplex;
use airytau_core::painleve::build_config;
use rug::Float;

fn main() {
    let prec = 128;
    for tv in [0.1f64, 0.25] {
        let t = XComplex::from_f64(prec, tv, 0.0);
        for r in 1u32..=6 {
            let cfg = build_config(2, r, &t, 1, 0, -1, 32).unwrap();
            let mut line = format!("t={tv} r={r}: log Z(x) =");
            for xv in [0.0f64, 0.5] {
                let x = XComplex::from_real(Float::with_val(prec, xv));
                let p = cfg.partition_at(&x).unwrap();
                let z = log_zn(&p, 32).unwrap();
                line += &format!(
                    "  [{:+.10} {:+.3e}i | lost {}]",
                    z.log_z.re.to_f64(),
                    z.log_z.im.to_f64(),
                    z.digits_lost_estimate
                );
            }
            println!("{line}");
        }
        println!();
    }
}
