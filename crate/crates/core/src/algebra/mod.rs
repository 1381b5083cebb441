//! Finite-dimensional associative unital algebras given by structure
//! constants, their elements, and the regular representation.
//!
//! Basis products are stored as `C[i][j][k]` with
//! `v_i * v_j = sum_k C[i][j][k] v_k`. Everything structural is generic over
//! [`Scalar`]; classification, inversion and norms need [`Real`].

pub mod def;
pub mod fixtures;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::linalg;
use crate::scalar::{Real, Scalar};

/// Relative tolerance for the associativity and unity checks on floats.
pub const AXIOM_RTOL: f64 = 1e-12;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Identity tag shared by an algebra and every element it creates.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraId(u64);

impl AlgebraId {
    fn fresh() -> Self {
        AlgebraId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Zero,
    Unit,
    ZeroDivisor,
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::Zero => "zero",
            ElementKind::Unit => "unit",
            ElementKind::ZeroDivisor => "zero divisor",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("algebra must have dimension at least 1")]
    Empty,
    #[error("{what}: expected {expected} entries, found {found}")]
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    #[error(
        "associativity fails for basis triple ({i}, {j}, {l}) in component {m} (residual {residual:e})"
    )]
    AssociativityViolation { i: usize, j: usize, l: usize, m: usize, residual: f64 },
    #[error("unity is not neutral for basis vector {basis}")]
    UnityViolation { basis: usize },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("element is a {kind}, not a unit")]
    NotAUnit { kind: ElementKind, witness: Option<Vec<f64>> },
    #[error("no invertible replacement found for basis vector {index}")]
    SearchFailed { index: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("{0}")]
    InvalidPermutation(String),
}

/// An element of a specific algebra, stored as coordinates in its basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<T> {
    alg: AlgebraId,
    coords: Vec<T>,
}

impl<T: Scalar> Element<T> {
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.alg
    }

    fn same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.alg == other.alg {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|a| a * s.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|a| -a)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Same coordinates tagged with another algebra of equal dimension.
    pub fn retag(&self, alg: &Algebra<T>) -> Result<Self, AlgebraError> {
        alg.element(self.coords.clone())
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let coords =
            self.coords.iter().zip(&other.coords).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Element { alg: self.alg, coords }
    }

    fn map(&self, f: impl Fn(T) -> T) -> Self {
        Element { alg: self.alg, coords: self.coords.iter().cloned().map(f).collect() }
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.to_f64()).collect()
    }
}

impl<T: Real> Element<T> {
    /// Euclidean norm of the coordinate vector.
    pub fn norm(&self) -> T {
        self.coords.iter().fold(T::zero(), |acc, &c| acc + c * c).sqrt()
    }

    pub fn dist(&self, other: &Self) -> T {
        self.coords.iter().zip(&other.coords).fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b)).sqrt()
    }
}

/// Serializes as the coordinate list, converted to `f64`.
impl<T: Scalar> serde::Serialize for Element<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.to_f64_vec())
    }
}

impl<T: Scalar> fmt::Display for Element<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let v = c.to_f64();
            if !T::EXACT && v != 0.0 && (v.abs() < 1e-4 || v.abs() >= 1e15) {
                write!(f, "{v:e}")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug)]
pub struct Classification<T> {
    pub kind: ElementKind,
    pub inverse: Option<Element<T>>,
    /// Nonzero `b` with `x * b = 0` when `x` is a zero divisor.
    pub witness: Option<Element<T>>,
}

/// A validated algebra.
#[derive(Clone, Debug)]
pub struct Algebra<T> {
    id: AlgebraId,
    name: String,
    labels: Vec<String>,
    n: usize,
    c: Vec<T>,
    unity: Vec<T>,
    commutative: bool,
}

impl<T: Scalar> Algebra<T> {
    /// Builds and validates an algebra from its multiplication table.
    ///
    /// `table[i][j]` holds the coordinates of `v_i * v_j`. Float tables are
    /// checked to a relative tolerance of [`AXIOM_RTOL`], exact ones exactly.
    pub fn new(
        name: impl Into<String>,
        labels: Option<Vec<String>>,
        table: Vec<Vec<Vec<T>>>,
        unity: Vec<T>,
    ) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut c = Vec::with_capacity(n * n * n);
        for row in &table {
            check_len("table row", n, row.len())?;
            for entry in row {
                check_len("table entry", n, entry.len())?;
                c.extend(entry.iter().cloned());
            }
        }
        check_len("unity", n, unity.len())?;
        let labels = match labels {
            Some(l) => {
                check_len("labels", n, l.len())?;
                l
            }
            None => (1..=n).map(|i| format!("e{i}")).collect(),
        };
        let mut alg = Algebra { id: AlgebraId::fresh(), name: name.into(), labels, n, c, unity, commutative: false };
        alg.validate()?;
        alg.commutative = alg.compute_commutative();
        Ok(alg)
    }

    /// Builds the table from a bilinear product on coordinate vectors.
    pub fn from_product(
        name: impl Into<String>,
        labels: Option<Vec<String>>,
        n: usize,
        product: impl Fn(&[T], &[T]) -> Vec<T>,
        unity: Vec<T>,
    ) -> Result<Self, AlgebraError> {
        let e = |i: usize| -> Vec<T> { (0..n).map(|k| if k == i { T::one() } else { T::zero() }).collect() };
        let table = (0..n).map(|i| (0..n).map(|j| product(&e(i), &e(j))).collect()).collect();
        Self::new(name, labels, table, unity)
    }

    fn tol(&self) -> f64 {
        let cmax = self.structure_bound().to_f64().max(1.0);
        AXIOM_RTOL * cmax * cmax * self.n as f64
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let n = self.n;
        let tol = self.tol();
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        let mut lhs = T::zero();
                        let mut rhs = T::zero();
                        for k in 0..n {
                            lhs = lhs + self.c(i, j, k).clone() * self.c(k, l, m).clone();
                            rhs = rhs + self.c(j, l, k).clone() * self.c(i, k, m).clone();
                        }
                        let r = lhs - rhs;
                        if !r.is_negligible(tol) {
                            return Err(AlgebraError::AssociativityViolation {
                                i,
                                j,
                                l,
                                m,
                                residual: r.to_f64().abs(),
                            });
                        }
                    }
                }
            }
        }
        let utol = AXIOM_RTOL * self.structure_bound().to_f64().max(1.0) * n as f64;
        for j in 0..n {
            for k in 0..n {
                let mut left = T::zero();
                let mut right = T::zero();
                for i in 0..n {
                    left = left + self.unity[i].clone() * self.c(i, j, k).clone();
                    right = right + self.unity[i].clone() * self.c(j, i, k).clone();
                }
                let target = if j == k { T::one() } else { T::zero() };
                if !(left - target.clone()).is_negligible(utol) || !(right - target).is_negligible(utol) {
                    return Err(AlgebraError::UnityViolation { basis: j });
                }
            }
        }
        Ok(())
    }

    fn compute_commutative(&self) -> bool {
        let tol = self.tol();
        let n = self.n;
        (0..n).all(|i| {
            (i + 1..n).all(|j| (0..n).all(|k| (self.c(i, j, k).clone() - self.c(j, i, k).clone()).is_negligible(tol)))
        })
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> &T {
        &self.c[(i * self.n + j) * self.n + k]
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// True when the unity is the first basis vector.
    pub fn unity_is_first(&self) -> bool {
        self.unity.iter().enumerate().all(|(i, u)| if i == 0 { u.is_one() } else { u.is_zero() })
    }

    /// Table entry `v_i * v_j` as coordinates.
    pub fn basis_product(&self, i: usize, j: usize) -> Vec<T> {
        (0..self.n).map(|k| self.c(i, j, k).clone()).collect()
    }

    pub fn table(&self) -> Vec<Vec<Vec<T>>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.basis_product(i, j)).collect()).collect()
    }

    pub fn element(&self, coords: Vec<T>) -> Result<Element<T>, AlgebraError> {
        check_len("element", self.n, coords.len())?;
        Ok(Element { alg: self.id, coords })
    }

    pub fn zero(&self) -> Element<T> {
        Element { alg: self.id, coords: vec![T::zero(); self.n] }
    }

    pub fn one(&self) -> Element<T> {
        Element { alg: self.id, coords: self.unity.clone() }
    }

    /// `s` times the unity.
    pub fn scalar(&self, s: T) -> Element<T> {
        self.one().scale(s)
    }

    pub fn basis(&self, i: usize) -> Element<T> {
        let mut coords = vec![T::zero(); self.n];
        coords[i] = T::one();
        Element { alg: self.id, coords }
    }

    fn owns(&self, x: &Element<T>) -> Result<(), AlgebraError> {
        if x.alg == self.id {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    /// Product on raw coordinate slices of length `dim`.
    pub fn mul_coords(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.n;
        let mut out = vec![T::zero(); n];
        for (i, xi) in x.iter().enumerate().take(n) {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate().take(n) {
                if yj.is_zero() {
                    continue;
                }
                let xy = xi.clone() * yj.clone();
                let base = (i * n + j) * n;
                for (k, o) in out.iter_mut().enumerate() {
                    let ck = &self.c[base + k];
                    if !ck.is_zero() {
                        *o = o.clone() + xy.clone() * ck.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &Element<T>, y: &Element<T>) -> Result<Element<T>, AlgebraError> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(Element { alg: self.id, coords: self.mul_coords(&x.coords, &y.coords) })
    }

    pub fn pow(&self, x: &Element<T>, k: u32) -> Result<Element<T>, AlgebraError> {
        self.owns(x)?;
        let mut acc = self.unity.clone();
        for _ in 0..k {
            acc = self.mul_coords(&acc, &x.coords);
        }
        Ok(Element { alg: self.id, coords: acc })
    }

    /// Left regular representation: column `j` of `M(x)` is `x * v_j`.
    pub fn regrep(&self, x: &Element<T>) -> Result<DMatrix<T>, AlgebraError> {
        self.owns(x)?;
        Ok(self.regrep_coords(&x.coords))
    }

    pub fn regrep_coords(&self, x: &[T]) -> DMatrix<T> {
        let n = self.n;
        DMatrix::from_fn(n, n, |k, j| {
            (0..n).fold(T::zero(), |acc, i| acc + x[i].clone() * self.c(i, j, k).clone())
        })
    }

    /// Inverse of [`Algebra::regrep`] on its image: `#(A) = A * unity`.
    pub fn number_map(&self, a: &DMatrix<T>) -> Result<Element<T>, AlgebraError> {
        if a.nrows() != self.n || a.ncols() != self.n {
            return Err(AlgebraError::DimensionMismatch {
                what: "matrix",
                expected: self.n * self.n,
                found: a.nrows() * a.ncols(),
            });
        }
        let coords = (0..self.n)
            .map(|r| (0..self.n).fold(T::zero(), |acc, c| acc + a[(r, c)].clone() * self.unity[c].clone()))
            .collect();
        Ok(Element { alg: self.id, coords })
    }

    /// Largest absolute structure constant.
    pub fn structure_bound(&self) -> T {
        self.c.iter().fold(T::zero(), |m, x| {
            let a = x.magnitude();
            if a > m {
                a
            } else {
                m
            }
        })
    }

    /// Constant `K` with `|x * y| <= K |x| |y|` in the coordinate norm.
    pub fn submult_bound(&self) -> f64 {
        let n = self.n as f64;
        self.structure_bound().to_f64() * (n * n - n + 1.0) * n.sqrt()
    }

    pub fn norm_sq(&self, x: &Element<T>) -> T {
        x.coords.iter().fold(T::zero(), |a, c| a + c.clone() * c.clone())
    }

    /// Exact or tolerance-based classification by row reduction.
    ///
    /// Float inputs treat pivots at most `tol` as zero; rational inputs
    /// ignore `tol`.
    pub fn classify_exact(&self, x: &Element<T>, tol: f64) -> Result<Classification<T>, AlgebraError> {
        self.owns(x)?;
        if x.is_zero() {
            return Ok(Classification { kind: ElementKind::Zero, inverse: None, witness: None });
        }
        let m = self.regrep_coords(&x.coords);
        let n = self.n;
        let ns = linalg::nullspace_exact(&m, tol);
        if ns.ncols() > 0 {
            let w = ns.column(0).iter().cloned().collect();
            return Ok(Classification {
                kind: ElementKind::ZeroDivisor,
                inverse: None,
                witness: Some(Element { alg: self.id, coords: w }),
            });
        }
        let mut aug = DMatrix::zeros(n, n + 1);
        aug.view_mut((0, 0), (n, n)).copy_from(&m);
        for r in 0..n {
            aug[(r, n)] = self.unity[r].clone();
        }
        linalg::rref(&mut aug, tol);
        let inv = (0..n).map(|r| aug[(r, n)].clone()).collect();
        Ok(Classification { kind: ElementKind::Unit, inverse: Some(Element { alg: self.id, coords: inv }), witness: None })
    }

    /// The same algebra with its basis reordered: new `v_a` is old `v_perm[a]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Algebra<T>, AlgebraError> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(AlgebraError::InvalidPermutation(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        let mut inv = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let old = self.basis_product(perm[a], perm[b]);
                        (0..n).map(|c| old[perm[c]].clone()).collect()
                    })
                    .collect()
            })
            .collect();
        let unity = (0..n).map(|c| self.unity[perm[c]].clone()).collect();
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        Algebra::new(format!("{}[permuted]", self.name), Some(labels), table, unity)
    }

    /// Converts the structure constants to another scalar type.
    pub fn convert<U: Scalar>(&self) -> Result<Algebra<U>, AlgebraError> {
        let conv = |x: &T| U::from_f64_lossy(x.to_f64());
        let table = self.table().iter().map(|r| r.iter().map(|e| e.iter().map(conv).collect()).collect()).collect();
        Algebra::new(self.name.clone(), Some(self.labels.clone()), table, self.unity.iter().map(conv).collect())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl<T: Real> Algebra<T> {
    /// Classification by the singular values of `M(x)`.
    ///
    /// `x` is a unit when the smallest singular value exceeds
    /// `1e-10 * max(1, sigma_max)`. A zero divisor's witness is the right
    /// singular vector of the smallest singular value.
    pub fn classify(&self, x: &Element<T>) -> Result<Classification<T>, AlgebraError> {
        self.owns(x)?;
        if x.is_zero() {
            return Ok(Classification { kind: ElementKind::Zero, inverse: None, witness: None });
        }
        let m = self.regrep_coords(&x.coords);
        let svd = m.clone().svd(false, true);
        let (imin, smin) = svd
            .singular_values
            .iter()
            .copied()
            .enumerate()
            .fold((0, T::max_value().unwrap_or_else(T::one)), |best, (i, s)| if s < best.1 { (i, s) } else { best });
        let smax = svd.singular_values.iter().copied().fold(T::zero(), |a, b| a.max(b));
        if smin <= T::lit(linalg::SINGULAR_RTOL) * smax.max(T::one()) {
            let v_t = svd.v_t.expect("requested V");
            let w = v_t.row(imin).iter().copied().collect();
            return Ok(Classification {
                kind: ElementKind::ZeroDivisor,
                inverse: None,
                witness: Some(Element { alg: self.id, coords: w }),
            });
        }
        let u = DVector::from_vec(self.unity.clone());
        let lu = m.clone().lu();
        let singular = || AlgebraError::NotAUnit { kind: ElementKind::ZeroDivisor, witness: None };
        let mut inv = lu.solve(&u).ok_or_else(singular)?;
        // iterative refinement keeps x * x^-1 close to 1 for badly conditioned units
        for _ in 0..2 {
            let r = &u - &m * &inv;
            inv += lu.solve(&r).ok_or_else(singular)?;
        }
        Ok(Classification {
            kind: ElementKind::Unit,
            inverse: Some(Element { alg: self.id, coords: inv.iter().copied().collect() }),
            witness: None,
        })
    }

    pub fn is_unit(&self, x: &Element<T>) -> bool {
        matches!(self.classify(x), Ok(c) if c.kind == ElementKind::Unit)
    }

    pub fn inverse(&self, x: &Element<T>) -> Result<Element<T>, AlgebraError> {
        let c = self.classify(x)?;
        match c.inverse {
            Some(inv) => Ok(inv),
            None => Err(AlgebraError::NotAUnit { kind: c.kind, witness: c.witness.map(|w| w.to_f64_vec()) }),
        }
    }

    /// Right division `x * y^-1`.
    pub fn div_right(&self, x: &Element<T>, y: &Element<T>) -> Result<Element<T>, AlgebraError> {
        let yi = self.inverse(y)?;
        self.mul(x, &yi)
    }

    pub fn norm(&self, x: &Element<T>) -> T {
        x.norm()
    }

    /// A basis of units starting with the unity.
    ///
    /// Standard basis vectors are added greedily when they raise the rank;
    /// a non-unit `w` is replaced by `w + c * unity` for the first `c` in
    /// `1, -1, 1/2, -1/2, 2, -2, ...` that gives a unit.
    pub fn find_invertible_basis(&self) -> Result<Vec<Element<T>>, AlgebraError> {
        let n = self.n;
        let mut basis = vec![self.one()];
        let shifts = unity_shifts::<T>();
        for i in 0..n {
            if basis.len() == n {
                break;
            }
            let cand = self.basis(i);
            let mut cols: Vec<DVector<T>> = basis.iter().map(|b| DVector::from_vec(b.coords.clone())).collect();
            cols.push(DVector::from_vec(cand.coords.clone()));
            if linalg::rank(&DMatrix::from_columns(&cols), linalg::SINGULAR_RTOL) < cols.len() {
                continue;
            }
            if self.is_unit(&cand) {
                basis.push(cand);
                continue;
            }
            let one = self.one();
            let found = shifts
                .iter()
                .map(|&s| cand.add(&one.scale(s)).expect("same algebra"))
                .find(|w| self.is_unit(w))
                .ok_or(AlgebraError::SearchFailed { index: i })?;
            basis.push(found);
        }
        if basis.len() < n {
            return Err(AlgebraError::SearchFailed { index: n - 1 });
        }
        Ok(basis)
    }

    /// The same algebra in a new basis whose vectors are the columns of `p`.
    pub fn rebased(&self, p: &DMatrix<T>) -> Result<Algebra<T>, AlgebraError> {
        let n = self.n;
        if p.shape() != (n, n) {
            return Err(AlgebraError::DimensionMismatch { what: "basis matrix", expected: n * n, found: p.len() });
        }
        let pinv = p.clone().try_inverse().ok_or(AlgebraError::DependentBasis)?;
        let cols: Vec<Vec<T>> = (0..n).map(|a| p.column(a).iter().copied().collect()).collect();
        let to_new = |v: Vec<T>| -> Vec<T> { (&pinv * DVector::from_vec(v)).iter().copied().collect() };
        let table = (0..n)
            .map(|a| (0..n).map(|b| to_new(self.mul_coords(&cols[a], &cols[b]))).collect())
            .collect();
        let unity = to_new(self.unity.clone());
        let labels = (1..=n).map(|i| format!("w{i}")).collect();
        Algebra::new(format!("{}[rebased]", self.name), Some(labels), table, unity)
    }
}

fn unity_shifts<T: Real>() -> Vec<T> {
    let mut out = Vec::new();
    let mut mag = 1.0f64;
    for k in 0..32i32 {
        // 1, 1/2, 2, 1/4, 4, ...
        if k > 0 {
            mag = if k % 2 == 1 { 0.5f64.powi((k + 1) / 2) } else { 2f64.powi(k / 2) };
        }
        out.push(T::lit(mag));
        out.push(T::lit(-mag));
    }
    out
}

fn check_len(what: &'static str, expected: usize, found: usize) -> Result<(), AlgebraError> {
    if expected == found {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch { what, expected, found })
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures;
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn complex_multiplication() {
        let c = fixtures::complex::<f64>();
        let x = c.element(vec![1.0, 2.0]).unwrap();
        let y = c.element(vec![3.0, -1.0]).unwrap();
        assert_eq!(c.mul(&x, &y).unwrap().coords(), &[5.0, 5.0]);
    }

    #[test]
    fn regrep_is_left_multiplication() {
        let q = fixtures::quaternions::<f64>();
        let x = q.element(vec![1.0, -2.0, 0.5, 3.0]).unwrap();
        let m = q.regrep(&x).unwrap();
        for j in 0..4 {
            let col: Vec<f64> = m.column(j).iter().copied().collect();
            assert_eq!(col, q.mul(&x, &q.basis(j)).unwrap().into_coords());
        }
        assert_eq!(q.number_map(&m).unwrap(), x);
    }

    #[test]
    fn broken_table_reports_violation() {
        // basis 1, a, b with a*a = b, a*b = a and everything else zero
        let e = |i: usize| (0..3).map(|k| if k == i { 1.0 } else { 0.0 }).collect::<Vec<f64>>();
        let z = vec![0.0; 3];
        let table = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), e(1)],
            vec![e(2), z.clone(), z],
        ];
        let err = Algebra::new("broken", None, table, e(0)).unwrap_err();
        assert!(matches!(err, AlgebraError::AssociativityViolation { .. }));
    }

    #[test]
    fn wrong_unity_is_rejected() {
        let h = fixtures::hyperbolic::<f64>();
        let err = Algebra::new("h", None, h.table(), vec![0.0, 1.0]).unwrap_err();
        assert_eq!(err, AlgebraError::UnityViolation { basis: 0 });
    }

    #[test]
    fn hyperbolic_bound_is_three_root_two() {
        let h = fixtures::hyperbolic::<f64>();
        assert_eq!(h.submult_bound(), 3.0 * 2f64.sqrt());
    }

    #[test]
    fn classify_zero_divisor_in_hyperbolic() {
        let h = fixtures::hyperbolic::<f64>();
        let x = h.element(vec![1.0, 1.0]).unwrap();
        let c = h.classify(&x).unwrap();
        assert_eq!(c.kind, ElementKind::ZeroDivisor);
        let w = c.witness.unwrap();
        assert!(h.mul(&x, &w).unwrap().norm() < 1e-12);
        assert!(w.norm() > 0.5);
    }

    #[test]
    fn exact_inverse_in_rationals() {
        let h = fixtures::hyperbolic::<Rational64>();
        let x = h.element(vec![Rational64::from_int(2), Rational64::from_int(1)]).unwrap();
        let c = h.classify_exact(&x, 0.0).unwrap();
        let inv = c.inverse.unwrap();
        assert_eq!(h.mul(&x, &inv).unwrap(), h.one());
        assert_eq!(inv.coords(), &[Rational64::new(2, 3), Rational64::new(-1, 3)]);
    }

    #[test]
    fn mismatch_is_rejected() {
        let a = fixtures::complex::<f64>();
        let b = fixtures::hyperbolic::<f64>();
        assert_eq!(a.mul(&a.one(), &b.one()).unwrap_err(), AlgebraError::AlgebraMismatch);
        assert_eq!(a.one().add(&b.one()).unwrap_err(), AlgebraError::AlgebraMismatch);
    }

    #[test]
    fn invertible_basis_for_products() {
        let rr = fixtures::rxr::<f64>();
        let basis = rr.find_invertible_basis().unwrap();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0], rr.one());
        assert!(basis.iter().all(|b| rr.is_unit(b)));
    }

    #[test]
    fn rebased_hyperbolic_is_rxr() {
        let h = fixtures::hyperbolic::<f64>();
        let p = DMatrix::from_row_slice(2, 2, &[0.5, 0.5, 0.5, -0.5]);
        let r = h.rebased(&p).unwrap();
        assert_eq!(r.basis_product(0, 0), vec![1.0, 0.0]);
        assert_eq!(r.basis_product(0, 1), vec![0.0, 0.0]);
        assert_eq!(r.basis_product(1, 1), vec![0.0, 1.0]);
    }

    #[test]
    fn permutation_keeps_axioms() {
        let q = fixtures::quaternions::<Rational64>();
        let p = q.permuted(&[2, 0, 3, 1]).unwrap();
        assert_eq!(p.dim(), 4);
        assert!(!p.is_commutative());
        assert!(q.permuted(&[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn f32_algebra() {
        let c = fixtures::complex::<f32>();
        let x = c.element(vec![0.0, 1.0]).unwrap();
        assert_eq!(c.mul(&x, &x).unwrap().coords(), &[-1.0, 0.0]);
        let inv = c.inverse(&c.element(vec![3.0, 4.0]).unwrap()).unwrap();
        assert!((inv.coords()[0] - 0.12).abs() < 1e-6);
    }
}
