//! Algebra-valued functions of an algebra variable.

use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::{Expr, ExprError, VarSet};
use crate::algebra::def::Literal;
use crate::algebra::{Algebra, AlgebraId, Element};
use crate::scalar::{Real, Scalar};

/// Anything that maps coordinate vectors to coordinate vectors.
pub trait AFunction: Sync {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[f64]) -> Result<Vec<f64>, ExprError>;
}

/// Wraps a closure as an [`AFunction`].
pub struct FromClosure<F> {
    dim: usize,
    f: F,
}

impl<F> FromClosure<F>
where
    F: Fn(&[f64]) -> Result<Vec<f64>, ExprError> + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        FromClosure { dim, f }
    }
}

impl<F> AFunction for FromClosure<F>
where
    F: Fn(&[f64]) -> Result<Vec<f64>, ExprError> + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64]) -> Result<Vec<f64>, ExprError> {
        (self.f)(x)
    }
}

/// A function `A -> A` given by one expression per output coordinate,
/// each in the variables `x1..xn`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprFn {
    alg: AlgebraId,
    comps: Vec<Expr>,
}

impl ExprFn {
    pub fn new<T: Scalar>(alg: &Algebra<T>, comps: Vec<Expr>) -> Result<Self, ExprError> {
        let n = alg.dim();
        if comps.len() != n {
            return Err(crate::algebra::AlgebraError::DimensionMismatch {
                what: "function components",
                expected: n,
                found: comps.len(),
            }
            .into());
        }
        if let Some(bad) = comps.iter().find(|c| c.arity() > n) {
            return Err(ExprError::UnknownVariable { name: format!("x{}", bad.arity()), position: 0 });
        }
        Ok(ExprFn { alg: alg.id(), comps })
    }

    pub fn parse<T: Scalar>(alg: &Algebra<T>, comps: &[&str]) -> Result<Self, ExprError> {
        let vars = VarSet::Indexed(alg.dim());
        let parsed = comps.iter().map(|s| Expr::parse(s, &vars)).collect::<Result<Vec<_>, _>>()?;
        Self::new(alg, parsed)
    }

    /// Components separated by `;`.
    pub fn parse_joined<T: Scalar>(alg: &Algebra<T>, src: &str) -> Result<Self, ExprError> {
        let parts: Vec<&str> = src.split(';').map(str::trim).collect();
        Self::parse(alg, &parts)
    }

    /// The identity function `zeta`.
    pub fn identity<T: Scalar>(alg: &Algebra<T>) -> Self {
        ExprFn { alg: alg.id(), comps: (0..alg.dim()).map(Expr::Var).collect() }
    }

    pub fn constant<T: Scalar>(alg: &Algebra<T>, c: &Element<T>) -> Result<Self, ExprError> {
        if c.algebra_id() != alg.id() {
            return Err(crate::algebra::AlgebraError::AlgebraMismatch.into());
        }
        Ok(ExprFn { alg: alg.id(), comps: c.coords().iter().map(|x| Expr::Num(x.to_f64())).collect() })
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.alg
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    fn check<T: Scalar>(&self, alg: &Algebra<T>) -> Result<(), ExprError> {
        if alg.id() == self.alg {
            Ok(())
        } else {
            Err(crate::algebra::AlgebraError::AlgebraMismatch.into())
        }
    }

    pub fn eval_t<T: Real>(&self, x: &[T]) -> Result<Vec<T>, ExprError> {
        if x.len() != self.comps.len() {
            return Err(ExprError::PointTooShort { needed: self.comps.len(), got: x.len() });
        }
        self.comps.iter().map(|c| c.eval(x)).collect()
    }

    pub fn eval_at<T: Real>(&self, alg: &Algebra<T>, p: &Element<T>) -> Result<Element<T>, ExprError> {
        self.check(alg)?;
        if p.algebra_id() != alg.id() {
            return Err(crate::algebra::AlgebraError::AlgebraMismatch.into());
        }
        Ok(alg.element(self.eval_t(p.coords())?)?)
    }

    /// Partial derivative in coordinate direction `j`.
    pub fn partial(&self, j: usize) -> ExprFn {
        ExprFn { alg: self.alg, comps: self.comps.iter().map(|c| c.diff(j)).collect() }
    }

    /// Directional derivative `sum_j d_j * df/dx_j`.
    pub fn directional(&self, d: &[f64]) -> ExprFn {
        let n = self.comps.len();
        let comps = (0..n)
            .map(|k| {
                Expr::sum(
                    d.iter()
                        .enumerate()
                        .filter(|(_, &dj)| dj != 0.0)
                        .map(|(j, &dj)| Expr::mul(Expr::Num(dj), self.comps[k].diff(j))),
                )
            })
            .collect();
        ExprFn { alg: self.alg, comps }
    }

    /// Symbolic Jacobian entries `J[k][j] = d f_k / d x_j`.
    pub fn jacobian_exprs(&self) -> Vec<Vec<Expr>> {
        let n = self.comps.len();
        self.comps.iter().map(|c| (0..n).map(|j| c.diff(j)).collect()).collect()
    }

    pub fn jacobian_at(&self, x: &[f64]) -> Result<DMatrix<f64>, ExprError> {
        let exprs = self.jacobian_exprs();
        let n = self.comps.len();
        let mut m = DMatrix::zeros(n, n);
        for k in 0..n {
            for j in 0..n {
                m[(k, j)] = exprs[k][j].eval(x)?;
            }
        }
        Ok(m)
    }

    /// Pointwise algebra product `self * other`.
    pub fn star<T: Scalar>(&self, alg: &Algebra<T>, other: &ExprFn) -> Result<ExprFn, ExprError> {
        self.check(alg)?;
        other.check(alg)?;
        let n = alg.dim();
        let comps = (0..n)
            .map(|k| {
                let mut terms = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let c = alg.c(i, j, k).to_f64();
                        if c == 0.0 || self.comps[i].is_zero() || other.comps[j].is_zero() {
                            continue;
                        }
                        terms.push(Expr::mul(Expr::Num(c), Expr::mul(self.comps[i].clone(), other.comps[j].clone())));
                    }
                }
                Expr::sum(terms)
            })
            .collect();
        Ok(ExprFn { alg: self.alg, comps })
    }

    /// `c * self` for a constant element `c`.
    pub fn left_mul<T: Scalar>(&self, alg: &Algebra<T>, c: &Element<T>) -> Result<ExprFn, ExprError> {
        ExprFn::constant(alg, c)?.star(alg, self)
    }

    /// `self * c` for a constant element `c`.
    pub fn right_mul<T: Scalar>(&self, alg: &Algebra<T>, c: &Element<T>) -> Result<ExprFn, ExprError> {
        self.star(alg, &ExprFn::constant(alg, c)?)
    }

    pub fn add(&self, other: &ExprFn) -> Result<ExprFn, ExprError> {
        self.zip(other, Expr::add)
    }

    pub fn sub(&self, other: &ExprFn) -> Result<ExprFn, ExprError> {
        self.zip(other, Expr::sub)
    }

    pub fn scale(&self, s: f64) -> ExprFn {
        ExprFn { alg: self.alg, comps: self.comps.iter().map(|c| Expr::mul(Expr::Num(s), c.clone())).collect() }
    }

    fn zip(&self, other: &ExprFn, f: impl Fn(Expr, Expr) -> Expr) -> Result<ExprFn, ExprError> {
        if self.alg != other.alg {
            return Err(crate::algebra::AlgebraError::AlgebraMismatch.into());
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(ExprFn { alg: self.alg, comps })
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &ExprFn) -> Result<ExprFn, ExprError> {
        if self.alg != inner.alg {
            return Err(crate::algebra::AlgebraError::AlgebraMismatch.into());
        }
        Ok(ExprFn { alg: self.alg, comps: self.comps.iter().map(|c| c.substitute(&inner.comps)).collect() })
    }

    /// `y -> out * self(inp * y)` moved onto `target`, with `inp` mapping
    /// target coordinates to source coordinates and `out` the reverse.
    pub fn conjugate_by<T: Scalar>(
        &self,
        target: &Algebra<T>,
        out: &DMatrix<f64>,
        inp: &DMatrix<f64>,
    ) -> Result<ExprFn, ExprError> {
        let n = self.comps.len();
        let m = target.dim();
        if out.shape() != (m, n) || inp.shape() != (n, m) {
            return Err(crate::algebra::AlgebraError::DimensionMismatch {
                what: "change of coordinates",
                expected: n * m,
                found: out.len().min(inp.len()),
            }
            .into());
        }
        let lin = |mat: &DMatrix<f64>, row: usize, args: &[Expr]| -> Expr {
            Expr::sum(
                (0..mat.ncols())
                    .filter(|&c| mat[(row, c)] != 0.0)
                    .map(|c| Expr::mul(Expr::Num(mat[(row, c)]), args[c].clone())),
            )
        };
        let ys: Vec<Expr> = (0..m).map(Expr::Var).collect();
        let xs: Vec<Expr> = (0..n).map(|r| lin(inp, r, &ys)).collect();
        let inner: Vec<Expr> = self.comps.iter().map(|c| c.substitute(&xs)).collect();
        let comps = (0..m).map(|r| lin(out, r, &inner)).collect();
        ExprFn::new(target, comps)
    }

    /// Rebinds the components to another algebra of the same dimension.
    pub fn retag<T: Scalar>(&self, alg: &Algebra<T>) -> Result<ExprFn, ExprError> {
        ExprFn::new(alg, self.comps.clone())
    }

    pub fn display<'a>(&'a self, vars: &'a VarSet) -> FnDisplay<'a> {
        FnDisplay { f: self, vars }
    }
}

impl AFunction for ExprFn {
    fn dim(&self) -> usize {
        self.comps.len()
    }

    fn eval(&self, x: &[f64]) -> Result<Vec<f64>, ExprError> {
        self.eval_t(x)
    }
}

pub struct FnDisplay<'a> {
    f: &'a ExprFn,
    vars: &'a VarSet,
}

impl fmt::Display for FnDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.f.comps.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", c.display(self.vars))?;
        }
        Ok(())
    }
}

impl fmt::Display for ExprFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = VarSet::Indexed(self.comps.len());
        write!(f, "{}", self.display(&vars))
    }
}

/// `sum_k coeffs[k] * zeta^k`.
pub fn poly_fn<T: Scalar>(alg: &Algebra<T>, coeffs: &[Element<T>]) -> Result<ExprFn, ExprError> {
    let zeta = ExprFn::identity(alg);
    let mut power = ExprFn::constant(alg, &alg.one())?;
    let mut acc = ExprFn::constant(alg, &alg.zero())?;
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            power = power.star(alg, &zeta)?;
        }
        if !c.is_zero() {
            acc = acc.add(&power.left_mul(alg, c)?)?;
        }
    }
    Ok(acc)
}

/// Function file: either expression components or polynomial coefficients.
///
/// ```toml
/// algebra = "hyperbolic"
/// components = ["x1^2 + x2^2", "2*x1*x2"]
/// ```
///
/// or `poly = [[0, 0], [0, 0], [1, 0]]` for `zeta^2`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FnDef {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<Vec<Literal>>>,
}

impl FnDef {
    pub fn from_toml(src: &str) -> Result<FnDef, toml::de::Error> {
        toml::from_str(src)
    }

    pub fn build<T: Scalar>(&self, alg: &Algebra<T>) -> Result<ExprFn, String> {
        match (&self.components, &self.poly) {
            (Some(c), None) => {
                let refs: Vec<&str> = c.iter().map(String::as_str).collect();
                ExprFn::parse(alg, &refs).map_err(|e| e.to_string())
            }
            (None, Some(p)) => {
                let coeffs = p
                    .iter()
                    .map(|c| {
                        let v = c.iter().map(|l| l.to_scalar::<T>()).collect::<Result<Vec<_>, _>>();
                        v.map_err(|e| e.to_string()).and_then(|v| alg.element(v).map_err(|e| e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                poly_fn(alg, &coeffs).map_err(|e| e.to_string())
            }
            _ => Err("function file needs exactly one of `components` or `poly`".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures;

    #[test]
    fn zeta_squared_in_complex() {
        let c = fixtures::complex::<f64>();
        let z = ExprFn::identity(&c);
        let z2 = z.star(&c, &z).unwrap();
        assert_eq!(z2.eval(&[1.0, 2.0]).unwrap(), vec![-3.0, 4.0]);
    }

    #[test]
    fn poly_matches_pointwise_powers() {
        let h = fixtures::hyperbolic::<f64>();
        let c0 = h.element(vec![1.0, -1.0]).unwrap();
        let c3 = h.element(vec![2.0, 0.5]).unwrap();
        let f = poly_fn(&h, &[c0.clone(), h.zero(), h.zero(), c3.clone()]).unwrap();
        let p = h.element(vec![0.3, -1.1]).unwrap();
        let expect = c0.add(&h.mul(&c3, &h.pow(&p, 3).unwrap()).unwrap()).unwrap();
        let got = f.eval_at(&h, &p).unwrap();
        assert!(got.dist(&expect) < 1e-12);
    }

    #[test]
    fn closures_are_functions() {
        let f = FromClosure::new(2, |x: &[f64]| Ok(vec![x[0] * 2.0, x[1]]));
        assert_eq!(AFunction::eval(&f, &[1.0, 3.0]).unwrap(), vec![2.0, 3.0]);
        assert_eq!(f.dim(), 2);
    }

    #[test]
    fn joined_components() {
        let h = fixtures::hyperbolic::<f64>();
        let f = ExprFn::parse_joined(&h, "x1^2 + x2^2; 2*x1*x2").unwrap();
        assert_eq!(f.to_string(), "x1^2 + x2^2; 2*x1*x2");
        assert!(ExprFn::parse_joined(&h, "x1").is_err());
    }

    #[test]
    fn fn_file() {
        let h = fixtures::hyperbolic::<f64>();
        let def: FnDef = toml::from_str("poly = [[0, 0], [0, 0], [1, 0]]").unwrap();
        let f = def.build(&h).unwrap();
        assert_eq!(f.eval(&[1.0, 2.0]).unwrap(), vec![5.0, 4.0]);
    }
}
