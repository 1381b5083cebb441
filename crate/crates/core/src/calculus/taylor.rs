use super::{adiff_test, higher_derivative_fn, CalcError, DiffOptions};
use crate::algebra::{Algebra, Element};
use crate::expr::ExprFn;

/// Taylor polynomial `sum_{m<=k} f^(m)(p) * h^m / m!`.
pub fn taylor_eval(
    alg: &Algebra<f64>,
    f: &ExprFn,
    p: &Element<f64>,
    h: &Element<f64>,
    k: usize,
) -> Result<Element<f64>, CalcError> {
    let report = adiff_test(alg, f, p, &DiffOptions::symbolic())?;
    if !report.is_adiff {
        return Err(CalcError::NotADifferentiable { residual: report.residual });
    }
    let mut acc = alg.zero();
    let mut hpow = alg.one();
    let mut fact = 1.0;
    for m in 0..=k {
        if m > 0 {
            hpow = alg.mul(&hpow, h)?;
            fact *= m as f64;
        }
        let d = higher_derivative_fn(alg, f, m).eval_at(alg, p)?;
        acc = acc.add(&alg.mul(&d, &hpow)?.scale(1.0 / fact))?;
    }
    Ok(acc)
}
