//! Exact differential-polynomial algebra over the variables
//! u, u_x, u_xx, ... with arbitrary-precision rational coefficients, and
//! the Lenard-Magri polynomials L_n generated by
//!   d/dx L_{n+1} = (1/4 d^3 + u d + 1/2 u_x) L_n,  L_0 = 1,  L_n[0] = 0.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;
use std::sync::OnceLock;

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::num::XComplex;

pub const MAX_LENARD_INDEX: usize = 8;

/// u^{e_0} u_x^{e_1} ... u_{(m)}^{e_m}; trailing zero exponents trimmed.
/// The weight counts u_{(k)} as k + 2, making d/dx weight-homogeneous of
/// degree one and L_n of weight 2n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMonomial {
    exponents: Vec<u32>,
}

impl DiffMonomial {
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        DiffMonomial { exponents }
    }

    pub fn constant() -> Self {
        DiffMonomial { exponents: Vec::new() }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(k, e)| e * (k as u32 + 2))
            .sum()
    }

    /// Highest derivative order appearing (None for a constant).
    pub fn max_order(&self) -> Option<usize> {
        if self.exponents.is_empty() {
            None
        } else {
            Some(self.exponents.len() - 1)
        }
    }

    fn bump(&self, k: usize, delta: i32) -> DiffMonomial {
        let len = self.exponents.len().max(k + 1);
        let mut e = self.exponents.clone();
        e.resize(len, 0);
        e[k] = (e[k] as i32 + delta) as u32;
        DiffMonomial::new(e)
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiffMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // graded lexicographic: weight first, then the exponent list
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (k, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match k {
                0 => write!(f, "u")?,
                1..=4 => write!(f, "u_{}", "x".repeat(k))?,
                _ => write!(f, "u_({k})")?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse differential polynomial; zero coefficients never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DiffPolynomial {
    terms: BTreeMap<DiffMonomial, Rational>,
}

impl DiffPolynomial {
    pub fn zero() -> Self {
        DiffPolynomial::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = DiffPolynomial::default();
        p.add_term(DiffMonomial::constant(), c);
        p
    }

    pub fn one() -> Self {
        DiffPolynomial::constant(Rational::from(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &DiffMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: DiffMonomial, c: Rational) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &DiffPolynomial) -> DiffPolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> DiffPolynomial {
        if *k == 0 {
            return DiffPolynomial::zero();
        }
        let mut out = DiffPolynomial::default();
        for (m, c) in self.terms() {
            out.add_term(m.clone(), c.clone() * k);
        }
        out
    }

    /// Multiply by the variable u_{(k)}.
    pub fn mul_var(&self, k: usize) -> DiffPolynomial {
        let mut out = DiffPolynomial::default();
        for (m, c) in self.terms() {
            out.add_term(m.bump(k, 1), c.clone());
        }
        out
    }

    /// True when every monomial has the given weight.
    pub fn is_homogeneous_of_weight(&self, w: u32) -> bool {
        self.terms.keys().all(|m| m.weight() == w)
    }

    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight();
        if it.all(|m| m.weight() == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Highest derivative order appearing in any monomial.
    pub fn max_order(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.max_order()).max()
    }
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if m.is_constant() {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

/// Total x-derivative by the Leibniz rule, u_{(k)} -> u_{(k+1)}.
pub fn apply_dx(p: &DiffPolynomial) -> DiffPolynomial {
    let mut out = DiffPolynomial::default();
    for (m, c) in p.terms() {
        for (k, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let new_m = m.bump(k, -1).bump(k + 1, 1);
            out.add_term(new_m, c.clone() * Rational::from(e));
        }
    }
    out
}

/// (1/4 d^3 + u d + 1/2 u_x) P.
pub fn apply_recursion_operator(p: &DiffPolynomial) -> DiffPolynomial {
    let dp = apply_dx(p);
    let d3p = apply_dx(&apply_dx(&dp));
    let quarter = d3p.scale(&Rational::from((1, 4)));
    let u_dp = dp.mul_var(0);
    let half_ux = p.mul_var(1).scale(&Rational::from((1, 2)));
    quarter.add(&u_dp).add(&half_ux)
}

/// All monomials of the given weight, in the graded-lex order.
pub fn monomials_of_weight(w: u32) -> Vec<DiffMonomial> {
    fn gen(remaining: u32, var: usize, prefix: Vec<u32>, out: &mut Vec<DiffMonomial>) {
        if remaining == 0 {
            out.push(DiffMonomial::new(prefix));
            return;
        }
        let var_weight = (var + 2) as u32;
        if var_weight > remaining {
            return;
        }
        for count in 0..=remaining / var_weight {
            let mut p = prefix.clone();
            p.resize(var + 1, 0);
            p[var] = count;
            gen(remaining - count * var_weight, var + 1, p, out);
        }
    }

    if w == 0 {
        return vec![DiffMonomial::constant()];
    }
    let mut out = Vec::new();
    gen(w, 0, Vec::new(), &mut out);
    out.sort();
    out
}

/// Exact antiderivative in x: the unique Q with dQ/dx = P and no constant
/// term. P must be weight-homogeneous; NotExact when P is not a total
/// derivative.
pub fn integrate_dx(p: &DiffPolynomial) -> Result<DiffPolynomial> {
    if p.is_zero() {
        return Ok(DiffPolynomial::zero());
    }
    let w = p
        .weight()
        .ok_or_else(|| Error::InvalidInput("integrand must be weight-homogeneous".into()))?;
    if w == 0 {
        return Err(Error::NotExact);
    }
    let basis = monomials_of_weight(w - 1);
    if basis.is_empty() {
        return Err(Error::NotExact);
    }

    // columns: dx of each basis monomial; rows: monomials of weight w
    let mut row_index: BTreeMap<DiffMonomial, usize> = BTreeMap::new();
    for m in p.terms.keys() {
        let next = row_index.len();
        row_index.entry(m.clone()).or_insert(next);
    }
    let mut columns: Vec<DiffPolynomial> = Vec::with_capacity(basis.len());
    for q in &basis {
        let mut single = DiffPolynomial::default();
        single.add_term(q.clone(), Rational::from(1));
        let dq = apply_dx(&single);
        for m in dq.terms.keys() {
            let next = row_index.len();
            row_index.entry(m.clone()).or_insert(next);
        }
        columns.push(dq);
    }

    let n_rows = row_index.len();
    let n_cols = basis.len();
    let mut a = vec![vec![Rational::new(); n_cols + 1]; n_rows];
    for (j, dq) in columns.iter().enumerate() {
        for (m, c) in dq.terms() {
            a[row_index[m]][j] = c.clone();
        }
    }
    for (m, c) in p.terms() {
        a[row_index[m]][n_cols] = c.clone();
    }

    // exact Gaussian elimination on the augmented system
    let mut pivot_row_of_col = vec![usize::MAX; n_cols];
    let mut row = 0;
    for col in 0..n_cols {
        let Some(pr) = (row..n_rows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let inv = a[row][col].clone().recip();
        for k in col..=n_cols {
            a[row][k] = a[row][k].clone() * &inv;
        }
        for r in 0..n_rows {
            if r != row && a[r][col] != 0 {
                let factor = a[r][col].clone();
                for k in col..=n_cols {
                    let sub = a[row][k].clone() * &factor;
                    a[r][k] = a[r][k].clone() - sub;
                }
            }
        }
        pivot_row_of_col[col] = row;
        row += 1;
        if row == n_rows {
            break;
        }
    }
    // consistency: no nonzero rhs left in zero rows
    for r in 0..n_rows {
        if a[r][..n_cols].iter().all(|v| *v == 0) && a[r][n_cols] != 0 {
            return Err(Error::NotExact);
        }
    }

    let mut out = DiffPolynomial::default();
    for (col, q) in basis.iter().enumerate() {
        let pr = pivot_row_of_col[col];
        if pr != usize::MAX && a[pr][n_cols] != 0 {
            out.add_term(q.clone(), a[pr][n_cols].clone());
        }
    }
    debug_assert_eq!(&apply_dx(&out), p);
    Ok(out)
}

/// L_n, cached; exact rational coefficients throughout.
pub fn lenard(n: usize) -> Result<DiffPolynomial> {
    if n > MAX_LENARD_INDEX {
        return Err(Error::InvalidInput(format!(
            "lenard index capped at {MAX_LENARD_INDEX}, got {n}"
        )));
    }
    static CACHE: OnceLock<Mutex<Vec<DiffPolynomial>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![DiffPolynomial::one()]));
    let mut guard = cache.lock().unwrap();
    while guard.len() <= n {
        let prev = guard.last().unwrap();
        let rhs = apply_recursion_operator(prev);
        let next = integrate_dx(&rhs)?;
        let w = 2 * guard.len() as u32;
        if !next.is_homogeneous_of_weight(w) {
            return Err(Error::InvalidInput(format!(
                "lenard({}) failed weight-{w} homogeneity",
                guard.len()
            )));
        }
        guard.push(next);
    }
    Ok(guard[n].clone())
}

/// Numeric substitution over extended reals: samples = [u, u_x, ..., u_{(m)}].
pub fn eval_diffpoly(p: &DiffPolynomial, samples: &[Float]) -> Result<Float> {
    let complex_samples: Vec<XComplex> = samples.iter().map(|s| XComplex::from_real(s.clone())).collect();
    Ok(eval_diffpoly_complex(p, &complex_samples)?.re)
}

/// Same substitution with complex samples (needed for complex times t).
pub fn eval_diffpoly_complex(p: &DiffPolynomial, samples: &[XComplex]) -> Result<XComplex> {
    let prec = samples.iter().map(XComplex::prec).max().unwrap_or(128);
    let needed = p.max_order().map(|m| m + 1).unwrap_or(0);
    if samples.len() < needed {
        return Err(Error::MissingDerivative {
            needed,
            got: samples.len(),
        });
    }
    let mut acc = XComplex::zero(prec);
    for (m, c) in p.terms() {
        let mut term = XComplex::new(Float::with_val(prec, c), Float::new(prec));
        for (k, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = &term * &samples[k].powi(e);
            }
        }
        acc = &acc + &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> DiffMonomial {
        DiffMonomial::new(e.to_vec())
    }

    fn poly(terms: &[(&[u32], (i64, u64))]) -> DiffPolynomial {
        let mut p = DiffPolynomial::default();
        for (e, (num, den)) in terms {
            p.add_term(mono(e), Rational::from((*num, *den)));
        }
        p
    }

    #[test]
    fn dx_of_u_squared() {
        let p = poly(&[(&[2], (1, 1))]);
        let expect = poly(&[(&[1, 1], (2, 1))]);
        assert_eq!(apply_dx(&p), expect);
    }

    #[test]
    fn dx_of_constant_is_zero() {
        assert!(apply_dx(&DiffPolynomial::one()).is_zero());
    }

    #[test]
    fn dx_leibniz_on_u_uxx() {
        // u u_xx -> u_x u_xx + u u_xxx
        let p = poly(&[(&[1, 0, 1], (1, 1))]);
        let expect = poly(&[(&[0, 1, 1], (1, 1)), (&[1, 0, 0, 1], (1, 1))]);
        assert_eq!(apply_dx(&p), expect);
    }

    #[test]
    fn recursion_operator_on_one() {
        let out = apply_recursion_operator(&DiffPolynomial::one());
        let expect = poly(&[(&[0, 1], (1, 2))]);
        assert_eq!(out, expect);
    }

    #[test]
    fn recursion_operator_on_half_u() {
        // u/2 -> u_xxx/8 + (3/4) u u_x
        let p = poly(&[(&[1], (1, 2))]);
        let out = apply_recursion_operator(&p);
        let expect = poly(&[(&[0, 0, 0, 1], (1, 8)), (&[1, 1], (3, 4))]);
        assert_eq!(out, expect);
    }

    #[test]
    fn recursion_operator_raises_weight_by_three() {
        let p = lenard(2).unwrap();
        let out = apply_recursion_operator(&p);
        assert_eq!(out.weight(), Some(7));
    }

    #[test]
    fn integrate_half_ux() {
        let p = poly(&[(&[0, 1], (1, 2))]);
        let q = integrate_dx(&p).unwrap();
        assert_eq!(q, poly(&[(&[1], (1, 2))]));
    }

    #[test]
    fn integrate_two_u_ux() {
        let p = poly(&[(&[1, 1], (2, 1))]);
        let q = integrate_dx(&p).unwrap();
        assert_eq!(q, poly(&[(&[2], (1, 1))]));
    }

    #[test]
    fn ux_squared_is_not_exact() {
        let p = poly(&[(&[0, 2], (1, 1))]);
        match integrate_dx(&p) {
            Err(Error::NotExact) => {}
            other => panic!("expected NotExact, got {other:?}"),
        }
    }

    #[test]
    fn lenard_zero_is_one() {
        assert_eq!(lenard(0).unwrap(), DiffPolynomial::one());
    }

    #[test]
    fn lenard_one_is_half_u() {
        assert_eq!(lenard(1).unwrap(), poly(&[(&[1], (1, 2))]));
    }

    #[test]
    fn lenard_two_matches_closed_form() {
        // (u_xx + 3 u^2)/8
        let expect = poly(&[(&[0, 0, 1], (1, 8)), (&[2], (3, 8))]);
        assert_eq!(lenard(2).unwrap(), expect);
    }

    #[test]
    fn lenard_three_matches_closed_form() {
        // (u_xxxx + 10 u u_xx + 5 u_x^2 + 10 u^3)/32
        let expect = poly(&[
            (&[0, 0, 0, 0, 1], (1, 32)),
            (&[1, 0, 1], (10, 32)),
            (&[0, 2], (5, 32)),
            (&[3], (10, 32)),
        ]);
        assert_eq!(lenard(3).unwrap(), expect);
    }

    #[test]
    fn recursion_consistency_exact() {
        for n in 0..=7 {
            let lhs = apply_dx(&lenard(n + 1).unwrap());
            let rhs = apply_recursion_operator(&lenard(n).unwrap());
            assert_eq!(lhs, rhs, "recursion consistency failed at n = {n}");
        }
    }

    #[test]
    fn weight_homogeneity_through_eight() {
        for n in 0..=8 {
            let l = lenard(n).unwrap();
            assert!(
                l.is_homogeneous_of_weight(2 * n as u32),
                "lenard({n}) not of weight {}",
                2 * n
            );
        }
    }

    #[test]
    fn eval_lenard_one_at_six() {
        let l = lenard(1).unwrap();
        let v = eval_diffpoly(&l, &[Float::with_val(128, 6)]).unwrap();
        assert!((v.to_f64() - 3.0).abs() < 1e-30);
    }

    #[test]
    fn eval_lenard_two_sample() {
        let l = lenard(2).unwrap();
        let samples = [
            Float::with_val(128, 1),
            Float::with_val(128, 0),
            Float::with_val(128, 5),
        ];
        let v = eval_diffpoly(&l, &samples).unwrap();
        assert!((v.to_f64() - 1.0).abs() < 1e-30);
    }

    #[test]
    fn eval_at_zero_samples_vanishes() {
        for n in 1..=8 {
            let l = lenard(n).unwrap();
            let order = l.max_order().unwrap_or(0);
            let samples = vec![Float::with_val(128, 0); order + 1];
            let v = eval_diffpoly(&l, &samples).unwrap();
            assert!(v.is_zero(), "lenard({n}) at 0 gave {v}");
        }
    }

    #[test]
    fn missing_derivative_reported() {
        let l = lenard(2).unwrap();
        match eval_diffpoly(&l, &[Float::with_val(128, 1)]) {
            Err(Error::MissingDerivative { needed, got }) => {
                assert_eq!(needed, 3);
                assert_eq!(got, 1);
            }
            other => panic!("expected MissingDerivative, got {other:?}"),
        }
    }

    #[test]
    fn scaling_property_alpha_two() {
        // under u_{(k)} -> alpha^{2+k} u_{(k)}, L_n scales by alpha^{2n}
        let alpha = 2.0f64;
        for n in 1..=4usize {
            let l = lenard(n).unwrap();
            let order = l.max_order().unwrap_or(0);
            let base: Vec<Float> = (0..=order)
                .map(|k| Float::with_val(128, 0.7 + 0.1 * k as f64))
                .collect();
            let scaled: Vec<Float> = base
                .iter()
                .enumerate()
                .map(|(k, v)| Float::with_val(128, v * Float::with_val(128, alpha.powi(k as i32 + 2))))
                .collect();
            let v0 = eval_diffpoly(&l, &base).unwrap();
            let v1 = eval_diffpoly(&l, &scaled).unwrap();
            let expect = Float::with_val(128, &v0 * &Float::with_val(128, alpha.powi(2 * n as i32)));
            let rel = (Float::with_val(128, &v1 - &expect)).abs().to_f64() / v1.to_f64().abs();
            assert!(rel < 1e-30, "scaling off by {rel:e} at n = {n}");
        }
    }

    #[test]
    fn monomial_basis_size_and_weights() {
        // weight 4: u^2 and u_xx
        let basis = monomials_of_weight(4);
        assert_eq!(basis.len(), 2);
        for m in &basis {
            assert_eq!(m.weight(), 4);
        }
        // weight 5: u u_x and u_xxx
        assert_eq!(monomials_of_weight(5).len(), 2);
        // weight 1: empty
        assert!(monomials_of_weight(1).is_empty());
    }
}
