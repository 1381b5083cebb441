//! Partial differential equations implied by an algebra's multiplication.
//!
//! [`gen_cr`] expands `df/dx_j = (df/dx_1) * v_j` into scalar equations on
//! the component partials. [`gen_laplace_k`] finds every symmetric relation
//! `sum B_{i1..ik} v_i1 * ... * v_ik = 0`; each one is an order-`k`
//! equation satisfied by every component of a differentiable function.

use std::collections::HashMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::expr::{Expr, ExprError, ExprFn};
use crate::linalg;
use crate::scalar::{Real, Scalar};

/// Largest number of derivative multi-indices a generated system may use.
pub const MAX_TERMS: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EqError {
    #[error("the unity must be the first basis vector")]
    UnityNotFirst,
    #[error("order-k relations are only generated for commutative algebras")]
    NonCommutativeUnsupported,
    #[error("dimension {n} at order {k} needs {terms} multi-indices (limit {MAX_TERMS})")]
    CombinatorialLimit { n: usize, k: usize, terms: usize },
    #[error("order must be at least 2, got {0}")]
    InvalidOrder(usize),
    #[error("function has {found} components, system expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Expr(#[from] ExprError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SystemKind {
    CauchyRiemann,
    /// Order of the generated equations.
    Laplace(usize),
}

/// `coeff * d^|derivative| u_component / dx_derivative`. A `None` component
/// stands for an arbitrary component `Phi` of the function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Term<T> {
    pub coeff: T,
    /// Sorted variable indices, one per differentiation.
    pub derivative: Vec<usize>,
    pub component: Option<usize>,
}

/// `sum of terms = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Equation<T> {
    pub terms: Vec<Term<T>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquationSystem<T> {
    pub kind: SystemKind,
    pub dim: usize,
    pub equations: Vec<Equation<T>>,
    /// Multi-indices labelling the columns of [`EquationSystem::coefficient_matrix`].
    pub columns: Vec<Vec<usize>>,
    /// Rank of the product map whose kernel gave the equations.
    pub rank: usize,
}

fn check_order(n: usize, k: usize) -> Result<Vec<Vec<usize>>, EqError> {
    if k < 2 {
        return Err(EqError::InvalidOrder(k));
    }
    let mut terms: usize = 1;
    for i in 0..k {
        terms = terms.saturating_mul(n + i) / (i + 1);
    }
    if terms > MAX_TERMS {
        return Err(EqError::CombinatorialLimit { n, k, terms });
    }
    Ok(multisets(n, k))
}

/// Non-decreasing index tuples of length `k` over `0..n`, lexicographic.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Generalized Cauchy-Riemann system: `n(n-1)` scalar equations
/// `du_k/dx_j - sum_i C[i][j][k] du_i/dx_1 = 0` for `j >= 2`.
pub fn gen_cr<T: Scalar>(alg: &Algebra<T>) -> Result<EquationSystem<T>, EqError> {
    if !alg.unity_is_first() {
        return Err(EqError::UnityNotFirst);
    }
    let n = alg.dim();
    let mut equations = Vec::with_capacity(n * (n - 1));
    for j in 1..n {
        for k in 0..n {
            let mut terms = vec![Term { coeff: T::one(), derivative: vec![j], component: Some(k) }];
            for i in 0..n {
                let c = alg.c(i, j, k).clone();
                if !c.is_zero() {
                    terms.push(Term { coeff: -c, derivative: vec![0], component: Some(i) });
                }
            }
            equations.push(Equation { terms });
        }
    }
    let columns = (0..n).map(|j| vec![j]).collect();
    Ok(EquationSystem { kind: SystemKind::CauchyRiemann, dim: n, equations, columns, rank: n * (n - 1) })
}

/// Columns are the coordinates of `v_i1 * ... * v_ik` per multi-index.
fn product_matrix<T: Scalar>(alg: &Algebra<T>, idx: &[Vec<usize>]) -> DMatrix<T> {
    let n = alg.dim();
    let mut m = DMatrix::zeros(n, idx.len());
    for (col, tuple) in idx.iter().enumerate() {
        let mut acc = alg.basis(tuple[0]).into_coords();
        for &i in &tuple[1..] {
            acc = alg.mul_coords(&acc, alg.basis(i).coords());
        }
        for (r, v) in acc.into_iter().enumerate() {
            m[(r, col)] = v;
        }
    }
    m
}

/// Reduced row echelon basis of the span of the rows, each row rescaled
/// so its largest-magnitude entry is `+1` (first one on ties).
fn canonical_rows<T: Scalar>(rows: DMatrix<T>, tol: f64) -> Vec<Vec<T>> {
    let mut w = rows;
    let pivots = linalg::rref(&mut w, tol);
    (0..pivots.len())
        .map(|r| {
            let row: Vec<T> = w.row(r).iter().cloned().collect();
            let top = row.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
            // ties within rounding go to the first index
            let best = row
                .iter()
                .find(|v| v.to_f64().abs() >= top * (1.0 - 1e-9))
                .cloned()
                .unwrap_or_else(T::one);
            row.into_iter()
                .map(|v| {
                    let s = v / best.clone();
                    if T::EXACT {
                        return s;
                    }
                    let f = s.to_f64();
                    if f.abs() <= tol {
                        T::zero()
                    } else if (f - f.round()).abs() <= 1e-10 {
                        T::from_f64_lossy(f.round())
                    } else {
                        s
                    }
                })
                .collect()
        })
        .collect()
}

fn assemble<T: Scalar>(n: usize, k: usize, idx: Vec<Vec<usize>>, rows: Vec<Vec<T>>, rank: usize) -> EquationSystem<T> {
    let equations = rows
        .into_iter()
        .map(|row| Equation {
            terms: row
                .into_iter()
                .zip(&idx)
                .filter(|(c, _)| !c.is_zero())
                .map(|(coeff, d)| Term { coeff, derivative: d.clone(), component: None })
                .collect(),
        })
        .collect();
    EquationSystem { kind: SystemKind::Laplace(k), dim: n, equations, columns: idx, rank }
}

/// Order-`k` equations from the kernel of the symmetric product map,
/// computed by SVD with cutoff `1e-10 * sigma_max`.
pub fn gen_laplace_k<T: Real>(alg: &Algebra<T>, k: usize) -> Result<EquationSystem<T>, EqError> {
    if !alg.is_commutative() {
        return Err(EqError::NonCommutativeUnsupported);
    }
    let n = alg.dim();
    let idx = check_order(n, k)?;
    let m = product_matrix(alg, &idx);
    let ns = linalg::nullspace(&m, linalg::SINGULAR_RTOL);
    let rank = idx.len() - ns.ncols();
    let rows = canonical_rows(ns.transpose(), 1e-12);
    Ok(assemble(n, k, idx, rows, rank))
}

pub fn gen_laplace<T: Real>(alg: &Algebra<T>) -> Result<EquationSystem<T>, EqError> {
    gen_laplace_k(alg, 2)
}

/// Same system by exact row reduction; for rational algebras this is exact.
pub fn gen_laplace_k_exact<T: Scalar>(alg: &Algebra<T>, k: usize) -> Result<EquationSystem<T>, EqError> {
    if !alg.is_commutative() {
        return Err(EqError::NonCommutativeUnsupported);
    }
    let n = alg.dim();
    let idx = check_order(n, k)?;
    let m = product_matrix(alg, &idx);
    let ns = linalg::nullspace_exact(&m, 1e-12);
    let rank = idx.len() - ns.ncols();
    let rows = canonical_rows(ns.transpose(), 1e-12);
    Ok(assemble(n, k, idx, rows, rank))
}

impl<T: Scalar> EquationSystem<T> {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// One row per equation over [`EquationSystem::columns`]. Only
    /// meaningful for Laplace systems, where every term has no component.
    pub fn coefficient_matrix(&self) -> DMatrix<T> {
        let pos: HashMap<&Vec<usize>, usize> = self.columns.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut m: DMatrix<T> = DMatrix::zeros(self.equations.len(), self.columns.len());
        for (r, eq) in self.equations.iter().enumerate() {
            for t in &eq.terms {
                if let Some(&c) = pos.get(&t.derivative) {
                    m[(r, c)] = m[(r, c)].clone() + t.coeff.clone();
                }
            }
        }
        m
    }

    pub fn render(&self, style: Style, names: &Names) -> Vec<String> {
        self.equations.iter().map(|e| render_eq(e, style, names)).collect()
    }
}

/// Largest absolute equation residual of `f` over `grid`.
///
/// Laplace equations are applied to every component of `f`.
pub fn check_residual<T: Scalar>(sys: &EquationSystem<T>, f: &ExprFn, grid: &[Vec<f64>]) -> Result<f64, EqError> {
    if f.len() != sys.dim {
        return Err(EqError::DimensionMismatch { expected: sys.dim, found: f.len() });
    }
    let mut cache: HashMap<(usize, Vec<usize>), Expr> = HashMap::new();
    let mut deriv = |comp: usize, d: &[usize]| -> Expr {
        cache
            .entry((comp, d.to_vec()))
            .or_insert_with(|| d.iter().fold(f.components()[comp].clone(), |e, &i| e.diff(i)))
            .clone()
    };
    let mut instances: Vec<Vec<(f64, Expr)>> = Vec::new();
    for eq in &sys.equations {
        let comps: Vec<Option<usize>> = match eq.terms.first().and_then(|t| t.component) {
            Some(_) => vec![None],
            None => (0..sys.dim).map(Some).collect(),
        };
        for phi in comps {
            instances.push(
                eq.terms
                    .iter()
                    .map(|t| (t.coeff.to_f64(), deriv(t.component.or(phi).unwrap_or(0), &t.derivative)))
                    .collect(),
            );
        }
    }
    let mut worst = 0.0f64;
    for p in grid {
        for inst in &instances {
            let mut r = 0.0;
            for (c, e) in inst {
                r += c * e.eval(p)?;
            }
            worst = worst.max(r.abs());
        }
    }
    Ok(worst)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// Variable and component names used when printing equations.
#[derive(Clone, Debug)]
pub struct Names {
    pub vars: Vec<String>,
    pub comps: Vec<String>,
}

impl Names {
    /// `x, y, z` and `u, v, w` up to dimension three, indexed names beyond.
    pub fn default_for(n: usize) -> Names {
        if n <= 3 {
            Names {
                vars: ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect(),
                comps: ["u", "v", "w"][..n].iter().map(|s| s.to_string()).collect(),
            }
        } else {
            Names {
                vars: (1..=n).map(|i| format!("x{i}")).collect(),
                comps: (1..=n).map(|i| format!("u{i}")).collect(),
            }
        }
    }

    pub fn with_vars(mut self, vars: Vec<String>) -> Names {
        self.vars = vars;
        self
    }
}

fn fmt_coeff<T: Scalar>(c: &T) -> String {
    if T::EXACT {
        c.to_string()
    } else {
        let v = c.to_f64();
        let r = (v * 1e12).round() / 1e12;
        format!("{r}")
    }
}

fn render_eq<T: Scalar>(eq: &Equation<T>, style: Style, names: &Names) -> String {
    let mut out = String::new();
    for (i, t) in eq.terms.iter().enumerate() {
        let neg = t.coeff < T::zero();
        let mag = t.coeff.magnitude();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if !mag.is_one() {
            out.push_str(&fmt_coeff(&mag));
            out.push(' ');
        }
        let base = match t.component {
            Some(k) => names.comps[k].clone(),
            None => match style {
                Style::Text => "Φ".to_string(),
                Style::Latex => "\\Phi".to_string(),
            },
        };
        let sub: String = t.derivative.iter().map(|&d| names.vars[d].as_str()).collect();
        match style {
            Style::Text => out.push_str(&format!("{base}_{sub}")),
            Style::Latex => out.push_str(&format!("{base}_{{{sub}}}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" = 0");
    out
}

impl<T: Scalar> fmt::Display for EquationSystem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.render(Style::Text, &Names::default_for(self.dim)) {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}
