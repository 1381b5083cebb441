//! Differentiability over an algebra: Jacobians, the regular-representation
//! membership test, derivatives of all orders, conjugate variables and
//! Wirtinger-type operators, and Taylor polynomials.
//!
//! A map `f: A -> A` is differentiable at `p` when its Jacobian equals
//! `M(lambda)` for some `lambda`, which is then `f'(p)`. Membership is tested
//! by least squares against the matrices `M(v_1), ..., M(v_n)`.

mod taylor;
mod wirtinger;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError};
use crate::expr::{AFunction, ExprError, ExprFn};
use crate::linalg;

pub use taylor::taylor_eval;
pub use wirtinger::{
    conjugate_coords, conjugate_fn, frame_partials, reconstruct, wirtinger_apply, wirtinger_from_jacobian,
    ConjugateFrame, Wirtinger,
};

/// Default bound on the scaled Frobenius residual.
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalcError {
    #[error("function is not differentiable over the algebra here (residual {residual:e})")]
    NotADifferentiable { residual: f64 },
    #[error("frame basis is not usable: {0}")]
    NonInvertibleBasis(String),
    #[error("finite-difference derivatives are available up to order 3, not {0}")]
    OrderTooHigh(usize),
    #[error("conjugate index {index} outside 2..={dim}")]
    BadIndex { index: usize, dim: usize },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum JacobianMode {
    FiniteDifference,
    Symbolic,
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DiffOptions {
    pub tol: f64,
    /// Finite-difference step; `None` picks [`default_step`].
    pub step: Option<f64>,
    pub mode: JacobianMode,
}

impl Default for DiffOptions {
    fn default() -> Self {
        DiffOptions { tol: DEFAULT_TOL, step: None, mode: JacobianMode::FiniteDifference }
    }
}

impl DiffOptions {
    pub fn symbolic() -> Self {
        DiffOptions { mode: JacobianMode::Symbolic, ..Default::default() }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffReport {
    #[serde(serialize_with = "ser_elem")]
    pub point: Element,
    #[serde(serialize_with = "ser_mat")]
    pub jacobian: DMatrix<f64>,
    pub residual: f64,
    pub is_adiff: bool,
    #[serde(serialize_with = "ser_opt_elem")]
    pub derivative: Option<Element>,
}

type Element = crate::algebra::Element<f64>;

fn ser_elem<S: serde::Serializer>(e: &Element, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(e.coords(), s)
}

fn ser_opt_elem<S: serde::Serializer>(e: &Option<Element>, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&e.as_ref().map(|e| e.coords().to_vec()), s)
}

fn ser_mat<S: serde::Serializer>(m: &DMatrix<f64>, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
    serde::Serialize::serialize(&rows, s)
}

/// `eps^(1/3) * max(1, |p|)`.
pub fn default_step(p: &[f64]) -> f64 {
    let norm = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    f64::EPSILON.cbrt() * norm.max(1.0)
}

/// Central-difference Jacobian; column `i` is `(f(p + h e_i) - f(p - h e_i)) / 2h`.
pub fn jacobian_fd<F: AFunction + ?Sized>(f: &F, p: &[f64], h: Option<f64>) -> Result<DMatrix<f64>, ExprError> {
    let n = p.len();
    let h = h.unwrap_or_else(|| default_step(p));
    let mut jac = DMatrix::zeros(f.dim(), n);
    let mut x = p.to_vec();
    for i in 0..n {
        x[i] = p[i] + h;
        let fp = f.eval(&x)?;
        x[i] = p[i] - h;
        let fm = f.eval(&x)?;
        x[i] = p[i];
        for k in 0..fp.len() {
            jac[(k, i)] = (fp[k] - fm[k]) / (2.0 * h);
        }
    }
    Ok(jac)
}

/// Projection of `jac` onto the regular representation.
///
/// Returns `(lambda, residual)` with
/// `residual = |J - M(lambda)|_F / max(1, |J|_F)`.
pub fn project_jacobian(alg: &Algebra<f64>, jac: &DMatrix<f64>) -> (Vec<f64>, f64) {
    let n = alg.dim();
    let mut design = DMatrix::zeros(n * n, n);
    for i in 0..n {
        let m = alg.regrep_coords(alg.basis(i).coords());
        for (r, v) in m.iter().enumerate() {
            design[(r, i)] = *v;
        }
    }
    let target = DVector::from_column_slice(jac.as_slice());
    let lambda = linalg::least_squares(&design, &target);
    let proj = alg.regrep_coords(lambda.as_slice());
    let residual = (jac - proj).norm() / jac.norm().max(1.0);
    (lambda.iter().copied().collect(), residual)
}

/// Membership test for an already computed Jacobian.
pub fn adiff_test_jacobian(alg: &Algebra<f64>, p: &Element, jac: DMatrix<f64>, tol: f64) -> Result<DiffReport, CalcError> {
    let (lambda, residual) = project_jacobian(alg, &jac);
    let is_adiff = residual <= tol;
    let derivative = if is_adiff { Some(alg.element(lambda)?) } else { None };
    Ok(DiffReport { point: p.clone(), jacobian: jac, residual, is_adiff, derivative })
}

fn jacobian_of(f: &ExprFn, p: &Element, opts: &DiffOptions) -> Result<DMatrix<f64>, ExprError> {
    match opts.mode {
        JacobianMode::Symbolic => f.jacobian_at(p.coords()),
        JacobianMode::FiniteDifference => jacobian_fd(f, p.coords(), opts.step),
    }
}

fn same_algebra(alg: &Algebra<f64>, f: &ExprFn, p: &Element) -> Result<(), CalcError> {
    if f.algebra_id() != alg.id() || p.algebra_id() != alg.id() {
        return Err(AlgebraError::AlgebraMismatch.into());
    }
    Ok(())
}

pub fn adiff_test(alg: &Algebra<f64>, f: &ExprFn, p: &Element, opts: &DiffOptions) -> Result<DiffReport, CalcError> {
    same_algebra(alg, f, p)?;
    let jac = jacobian_of(f, p, opts)?;
    adiff_test_jacobian(alg, p, jac, opts.tol)
}

/// Finite-difference test for an opaque function.
pub fn adiff_test_fn<F: AFunction + ?Sized>(
    alg: &Algebra<f64>,
    f: &F,
    p: &Element,
    opts: &DiffOptions,
) -> Result<DiffReport, CalcError> {
    let jac = jacobian_fd(f, p.coords(), opts.step)?;
    adiff_test_jacobian(alg, p, jac, opts.tol)
}

/// Residual of the equations `df/dx_j = f'(p) * v_j`, where `f'(p)` is the
/// derivative along the unity. With the unity first this is
/// `df/dx_j = (df/dx_1) * v_j`.
pub fn cr_residual(alg: &Algebra<f64>, jac: &DMatrix<f64>) -> f64 {
    let n = alg.dim();
    let one = DVector::from_column_slice(alg.one().coords());
    let lambda: Vec<f64> = (jac * one).iter().copied().collect();
    let mut err = 0.0;
    for j in 0..n {
        let want = alg.mul_coords(&lambda, alg.basis(j).coords());
        for k in 0..n {
            err += (jac[(k, j)] - want[k]).powi(2);
        }
    }
    err.sqrt() / jac.norm().max(1.0)
}

pub fn derivative(alg: &Algebra<f64>, f: &ExprFn, p: &Element, opts: &DiffOptions) -> Result<Element, CalcError> {
    let report = adiff_test(alg, f, p, opts)?;
    report.derivative.ok_or(CalcError::NotADifferentiable { residual: report.residual })
}

/// `f^(k)` as an expression: `k` derivatives along the unity.
pub fn higher_derivative_fn(alg: &Algebra<f64>, f: &ExprFn, k: usize) -> ExprFn {
    let one = alg.one();
    (0..k).fold(f.clone(), |g, _| g.directional(one.coords()))
}

/// `f^(k)(p)`, after checking first-order differentiability at `p`.
pub fn higher_derivative(alg: &Algebra<f64>, f: &ExprFn, p: &Element, k: usize, tol: f64) -> Result<Element, CalcError> {
    let report = adiff_test(alg, f, p, &DiffOptions::symbolic().with_tol(tol))?;
    if !report.is_adiff {
        return Err(CalcError::NotADifferentiable { residual: report.residual });
    }
    Ok(higher_derivative_fn(alg, f, k).eval_at(alg, p)?)
}

/// Finite-difference `f^(k)(p)` along the unity for opaque `f`, `k <= 3`.
pub fn higher_derivative_fd<F: AFunction + ?Sized>(
    alg: &Algebra<f64>,
    f: &F,
    p: &Element,
    k: usize,
    h: Option<f64>,
) -> Result<Element, CalcError> {
    let one = alg.one();
    let shift = |s: f64| -> Result<Vec<f64>, ExprError> {
        let x: Vec<f64> = p.coords().iter().zip(one.coords()).map(|(a, u)| a + s * u).collect();
        f.eval(&x)
    };
    let scale = p.norm().max(1.0);
    let coords: Vec<f64> = match k {
        0 => shift(0.0)?,
        1 => {
            let h = h.unwrap_or(f64::EPSILON.cbrt() * scale);
            let (a, b) = (shift(h)?, shift(-h)?);
            a.iter().zip(&b).map(|(a, b)| (a - b) / (2.0 * h)).collect()
        }
        2 => {
            let h = h.unwrap_or(f64::EPSILON.powf(0.25) * scale);
            let (a, m, b) = (shift(h)?, shift(0.0)?, shift(-h)?);
            (0..a.len()).map(|i| (a[i] - 2.0 * m[i] + b[i]) / (h * h)).collect()
        }
        3 => {
            let h = h.unwrap_or(f64::EPSILON.powf(0.2) * scale);
            let (a2, a1, b1, b2) = (shift(2.0 * h)?, shift(h)?, shift(-h)?, shift(-2.0 * h)?);
            (0..a1.len()).map(|i| (a2[i] - 2.0 * a1[i] + 2.0 * b1[i] - b2[i]) / (2.0 * h * h * h)).collect()
        }
        _ => return Err(CalcError::OrderTooHigh(k)),
    };
    Ok(alg.element(coords)?)
}

/// Named functions: `zeta`, `zetaN` for the `N`-th power and `zbarJ` for the
/// `J`-th conjugate variable in the automatically chosen frame.
pub fn builtin(alg: &Algebra<f64>, name: &str) -> Option<Result<ExprFn, CalcError>> {
    let lower = name.trim().to_ascii_lowercase();
    if lower == "zeta" {
        return Some(Ok(ExprFn::identity(alg)));
    }
    if let Some(k) = lower.strip_prefix("zeta") {
        let k: usize = k.parse().ok()?;
        let mut coeffs = vec![alg.zero(); k + 1];
        coeffs[k] = alg.one();
        return Some(crate::expr::poly_fn(alg, &coeffs).map_err(CalcError::from));
    }
    if let Some(j) = lower.strip_prefix("zbar") {
        let j: usize = j.parse().ok()?;
        return Some(ConjugateFrame::auto(alg).and_then(|fr| conjugate_fn(alg, &fr, j)));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;

    #[test]
    fn zeta_squared_jacobian_is_regrep_of_2p() {
        let h = fixtures::hyperbolic::<f64>();
        let f = builtin(&h, "zeta2").unwrap().unwrap();
        let p = h.element(vec![0.7, -1.3]).unwrap();
        let jac = jacobian_fd(&f, p.coords(), None).unwrap();
        let want = h.regrep(&p.scale(2.0)).unwrap();
        assert!((jac - want).amax() < 1e-9);
    }

    #[test]
    fn conjugate_jacobian_in_complex() {
        let c = fixtures::complex::<f64>();
        let f = builtin(&c, "zbar2").unwrap().unwrap();
        let jac = jacobian_fd(&f, &[0.4, 0.1], None).unwrap();
        assert!((jac - DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])).amax() < 1e-10);
        let r = adiff_test(&c, &f, &c.element(vec![0.4, 0.1]).unwrap(), &DiffOptions::default()).unwrap();
        assert!(!r.is_adiff && r.residual > 0.1 && r.derivative.is_none());
    }

    #[test]
    fn constant_has_zero_derivative() {
        let q = fixtures::quaternions::<f64>();
        let c = q.element(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let f = ExprFn::constant(&q, &c).unwrap();
        let d = derivative(&q, &f, &q.one(), &DiffOptions::default()).unwrap();
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn cubic_higher_derivatives() {
        let h = fixtures::trihyperbolic::<f64>();
        let f = builtin(&h, "zeta3").unwrap().unwrap();
        let p = h.element(vec![0.5, -0.2, 1.1]).unwrap();
        let d2 = higher_derivative(&h, &f, &p, 2, DEFAULT_TOL).unwrap();
        assert!(d2.dist(&p.scale(6.0)) < 1e-12);
        assert!(higher_derivative(&h, &f, &p, 4, DEFAULT_TOL).unwrap().norm() < 1e-12);
        let fd = higher_derivative_fd(&h, &f, &p, 2, None).unwrap();
        assert!(fd.dist(&d2) < 1e-4);
        let fd3 = higher_derivative_fd(&h, &f, &p, 3, None).unwrap();
        assert!(fd3.dist(&h.one().scale(6.0)) < 1e-3);
    }

    #[test]
    fn higher_derivative_refuses_conjugate() {
        let c = fixtures::complex::<f64>();
        let f = builtin(&c, "zbar2").unwrap().unwrap();
        let err = higher_derivative(&c, &f, &c.one(), 2, DEFAULT_TOL).unwrap_err();
        assert!(matches!(err, CalcError::NotADifferentiable { .. }));
    }

    #[test]
    fn cr_route_in_non_first_unity_basis() {
        let m = fixtures::mat2::<f64>();
        let f = builtin(&m, "zeta2").unwrap().unwrap();
        let p = m.element(vec![1.0, 2.0, -0.5, 0.3]).unwrap();
        let jac = f.jacobian_at(p.coords()).unwrap();
        assert!(cr_residual(&m, &jac) > 0.1);
        let g = builtin(&m, "zeta").unwrap().unwrap();
        assert!(cr_residual(&m, &g.jacobian_at(p.coords()).unwrap()) < 1e-14);
    }
}
