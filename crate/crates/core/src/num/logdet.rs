use rug::Float;

use super::xcomplex::XComplex;
use super::{float_zero, pi, reduce_angle};
use crate::error::{Error, Result};

/// Log-scaled determinant: det = exp(log_abs) * exp(i arg), arg in (-pi, pi].
#[derive(Clone, Debug)]
pub struct LogDet {
    pub log_abs: Float,
    pub arg: Float,
    /// Set when some pivot fell below 10^(-digits/2) times the max row norm.
    pub near_singular: bool,
    /// ceil(log10(max row norm / min pivot)); the caller's conditioning gauge.
    pub digits_lost: u32,
}

impl LogDet {
    pub fn to_complex(&self) -> XComplex {
        XComplex::new(self.log_abs.clone(), self.arg.clone())
    }
}

/// LU with partial pivoting on a dense square matrix, accumulating the
/// determinant on a log scale. The phase is reduced mod 2pi after every
/// pivot so it never grows.
pub fn logdet_lu(matrix: &[Vec<XComplex>], digits: u32) -> Result<LogDet> {
    let n = matrix.len();
    if n == 0 || matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidInput("matrix must be square and nonempty".into()));
    }
    let prec = matrix
        .iter()
        .flat_map(|r| r.iter().map(XComplex::prec))
        .max()
        .unwrap();

    let mut a: Vec<Vec<XComplex>> = matrix
        .iter()
        .map(|row| row.iter().map(|e| e.with_prec(prec)).collect())
        .collect();

    let mut max_row_norm = float_zero(prec);
    for row in &a {
        let mut norm = float_zero(prec);
        for e in row {
            norm += e.abs();
        }
        if norm > max_row_norm {
            max_row_norm = norm;
        }
    }

    let mut log_abs = float_zero(prec);
    let mut arg = float_zero(prec);
    let mut min_pivot: Option<Float> = None;
    let pi_prec = pi(prec);

    for col in 0..n {
        // pick the largest pivot in this column
        let mut best = col;
        let mut best_abs = a[col][col].abs();
        for row in col + 1..n {
            let v = a[row][col].abs();
            if v > best_abs {
                best_abs = v;
                best = row;
            }
        }
        if best_abs.is_zero() {
            return Err(Error::SingularMatrix { column: col });
        }
        if best != col {
            a.swap(best, col);
            arg += &pi_prec;
            arg = reduce_angle(&arg);
        }
        let pivot = a[col][col].clone();
        log_abs += best_abs.clone().ln();
        arg += pivot.arg();
        arg = reduce_angle(&arg);
        match &min_pivot {
            Some(m) if *m <= best_abs => {}
            _ => min_pivot = Some(best_abs),
        }

        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &pivot;
            for k in col + 1..n {
                let sub = &factor * &a[col][k];
                a[row][k] = &a[row][k] - &sub;
            }
        }
    }

    let min_pivot = min_pivot.expect("n >= 1");
    let guard = Float::with_val(prec, 10).pow_f(-(digits as f64) / 2.0) * &max_row_norm;
    let near_singular = min_pivot < guard;
    let ratio = Float::with_val(prec, &max_row_norm / &min_pivot);
    let digits_lost = if ratio <= 1 {
        0
    } else {
        ratio.log10().ceil().to_f64().max(0.0) as u32
    };

    Ok(LogDet {
        log_abs,
        arg,
        near_singular,
        digits_lost,
    })
}

trait PowF {
    fn pow_f(self, e: f64) -> Float;
}

impl PowF for Float {
    fn pow_f(self, e: f64) -> Float {
        let prec = self.prec();
        let ex = Float::with_val(prec, e);
        Float::with_val(prec, rug::ops::Pow::pow(&self, &ex))
    }
}
