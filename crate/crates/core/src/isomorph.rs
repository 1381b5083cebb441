//! Linear maps between algebras, isomorphism checks and transport of
//! functions along isomorphisms.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::def::{DefError, Literal};
use crate::algebra::{fixtures, Algebra, AlgebraError, Element, ElementKind};
use crate::eqgen::{self, EqError, EquationSystem};
use crate::expr::{AFunction, Expr, ExprError, ExprFn, VarSet};
use crate::linalg;
use crate::scalar::Scalar;

/// Tolerance for the float isomorphism checks.
pub const ISO_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum IsoError {
    #[error("map is {rows}x{cols} but the algebras have dimensions {target} and {source_dim}")]
    DimensionMismatch { rows: usize, cols: usize, source_dim: usize, target: usize },
    #[error("map is not a verified isomorphism")]
    NotAnIsomorphism,
    #[error("wave speed must be positive")]
    BadSpeed,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Eq(#[from] EqError),
    #[error(transparent)]
    Def(#[from] DefError),
}

/// Outcome of checking the three isomorphism conditions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    pub invertible: bool,
    pub unity_preserved: bool,
    pub multiplicative: bool,
    /// Largest `|Psi(v_i * v_j) - Psi(v_i) * Psi(v_j)|` entry seen.
    pub max_product_residual: f64,
    /// First basis pair `(i, j)` where multiplicativity fails.
    pub failing_pair: Option<(usize, usize)>,
}

impl IsoReport {
    pub fn is_isomorphism(&self) -> bool {
        self.invertible && self.unity_preserved && self.multiplicative
    }
}

/// A real-linear map whose matrix columns are the images of the source basis.
#[derive(Clone, Debug)]
pub struct LinMap<T> {
    source: Algebra<T>,
    target: Algebra<T>,
    matrix: DMatrix<T>,
    verified: bool,
}

impl<T: Scalar> LinMap<T> {
    pub fn new(source: Algebra<T>, target: Algebra<T>, matrix: DMatrix<T>) -> Result<Self, IsoError> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(IsoError::DimensionMismatch {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                source_dim: source.dim(),
                target: target.dim(),
            });
        }
        Ok(LinMap { source, target, matrix, verified: false })
    }

    pub fn source(&self) -> &Algebra<T> {
        &self.source
    }

    pub fn target(&self) -> &Algebra<T> {
        &self.target
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    fn apply_coords(&self, x: &[T]) -> Vec<T> {
        (0..self.matrix.nrows())
            .map(|r| (0..x.len()).fold(T::zero(), |acc, c| acc + self.matrix[(r, c)].clone() * x[c].clone()))
            .collect()
    }

    pub fn apply(&self, x: &Element<T>) -> Result<Element<T>, IsoError> {
        if x.algebra_id() != self.source.id() {
            return Err(AlgebraError::AlgebraMismatch.into());
        }
        Ok(self.target.element(self.apply_coords(x.coords()))?)
    }

    /// Checks invertibility, unity preservation and multiplicativity on all
    /// basis pairs. Float maps are compared to [`ISO_TOL`].
    pub fn check(&self) -> Result<IsoReport, IsoError> {
        let n = self.source.dim();
        if self.target.dim() != n {
            return Err(IsoError::DimensionMismatch {
                rows: self.matrix.nrows(),
                cols: self.matrix.ncols(),
                source_dim: n,
                target: self.target.dim(),
            });
        }
        let invertible = linalg::rank_exact(&self.matrix, ISO_TOL) == n;
        let image_one = self.apply_coords(self.source.one().coords());
        let unity_preserved = image_one
            .iter()
            .zip(self.target.one().coords())
            .all(|(a, b)| (a.clone() - b.clone()).is_negligible(ISO_TOL));
        let mut worst = 0.0f64;
        let mut failing_pair = None;
        let images: Vec<Vec<T>> = (0..n).map(|i| self.matrix.column(i).iter().cloned().collect()).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_coords(&self.source.basis_product(i, j));
                let rhs = self.target.mul_coords(&images[i], &images[j]);
                for (a, b) in lhs.iter().zip(&rhs) {
                    let d = a.clone() - b.clone();
                    worst = worst.max(d.to_f64().abs());
                    if failing_pair.is_none() && !d.is_negligible(ISO_TOL) {
                        failing_pair = Some((i, j));
                    }
                }
            }
        }
        Ok(IsoReport { invertible, unity_preserved, multiplicative: failing_pair.is_none(), max_product_residual: worst, failing_pair })
    }

    /// Runs [`LinMap::check`] and records the outcome on the map.
    pub fn verify(mut self) -> Result<(Self, IsoReport), IsoError> {
        let report = self.check()?;
        self.verified = report.is_isomorphism();
        Ok((self, report))
    }

    /// The inverse map; requires a verified isomorphism.
    pub fn inverse(&self) -> Result<LinMap<T>, IsoError> {
        if !self.verified {
            return Err(IsoError::NotAnIsomorphism);
        }
        let n = self.matrix.nrows();
        let mut aug = DMatrix::zeros(n, 2 * n);
        aug.view_mut((0, 0), (n, n)).copy_from(&self.matrix);
        for i in 0..n {
            aug[(i, n + i)] = T::one();
        }
        linalg::rref(&mut aug, ISO_TOL * 1e-3);
        let inv = aug.view((0, n), (n, n)).into_owned();
        Ok(LinMap { source: self.target.clone(), target: self.source.clone(), matrix: inv, verified: true })
    }

    fn matrices_f64(&self) -> Result<(DMatrix<f64>, DMatrix<f64>), IsoError> {
        let inv = self.inverse()?;
        Ok((self.matrix.map(|x| x.to_f64()), inv.matrix.map(|x| x.to_f64())))
    }

    /// `g = Psi o f o Psi^-1` as an expression function on the target.
    pub fn transfer(&self, f: &ExprFn) -> Result<ExprFn, IsoError> {
        if f.algebra_id() != self.source.id() {
            return Err(AlgebraError::AlgebraMismatch.into());
        }
        let (fwd, back) = self.matrices_f64()?;
        Ok(f.conjugate_by(&self.target, &fwd, &back)?)
    }

    /// Transfer of an opaque function.
    pub fn transfer_black_box<'a, F: AFunction>(&self, f: &'a F) -> Result<Transferred<'a, F>, IsoError> {
        let (fwd, back) = self.matrices_f64()?;
        Ok(Transferred { f, fwd, back })
    }
}

/// Agreement of element kinds under a map on random samples.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KindTransfer {
    pub samples: usize,
    pub units: usize,
    pub zero_divisors: usize,
    pub mismatches: usize,
    /// Largest `|Psi(1/x) - 1/Psi(x)|` over unit samples.
    pub max_inverse_error: f64,
}

impl KindTransfer {
    pub fn holds(&self) -> bool {
        self.mismatches == 0 && self.max_inverse_error <= 1e-9
    }
}

impl LinMap<f64> {
    /// Classifies `samples` random elements and their images. Every random
    /// `x` whose regular representation has a real eigenvalue `l` also
    /// contributes the non-unit `x - l`.
    pub fn kind_transfer(&self, samples: usize, seed: u64) -> Result<KindTransfer, IsoError> {
        if !self.verified {
            return Err(IsoError::NotAnIsomorphism);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let src = &self.source;
        let mut out = KindTransfer { samples: 0, units: 0, zero_divisors: 0, mismatches: 0, max_inverse_error: 0.0 };
        for _ in 0..samples {
            let x = src.element((0..src.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect())?;
            let mut cases = vec![x.clone()];
            let eig = src.regrep(&x)?.complex_eigenvalues();
            if let Some(l) = eig.iter().find(|z| z.im.abs() <= 1e-12) {
                cases.push(x.sub(&src.scalar(l.re))?);
            }
            for x in cases {
                let a = src.classify(&x)?;
                let b = self.target.classify(&self.apply(&x)?)?;
                out.samples += 1;
                if a.kind != b.kind {
                    out.mismatches += 1;
                    continue;
                }
                match a.kind {
                    ElementKind::Unit => {
                        out.units += 1;
                        let (ia, ib) = (a.inverse.expect("units carry inverses"), b.inverse.expect("units carry inverses"));
                        out.max_inverse_error = out.max_inverse_error.max(self.apply(&ia)?.dist(&ib));
                    }
                    ElementKind::ZeroDivisor => out.zero_divisors += 1,
                    ElementKind::Zero => {}
                }
            }
        }
        Ok(out)
    }
}

/// `Psi o f o Psi^-1` for an opaque `f`.
pub struct Transferred<'a, F> {
    f: &'a F,
    fwd: DMatrix<f64>,
    back: DMatrix<f64>,
}

impl<F: AFunction> AFunction for Transferred<'_, F> {
    fn dim(&self) -> usize {
        self.fwd.nrows()
    }

    fn eval(&self, y: &[f64]) -> Result<Vec<f64>, ExprError> {
        let x = &self.back * nalgebra::DVector::from_column_slice(y);
        let fx = self.f.eval(x.as_slice())?;
        Ok((&self.fwd * nalgebra::DVector::from_vec(fx)).iter().copied().collect())
    }
}

/// `Psi: R x R -> H`, `Psi(a, b) = a (1 + j)/2 + b (1 - j)/2`.
pub fn rxr_to_hyperbolic<T: Scalar>() -> LinMap<T> {
    let half = T::from_ratio(1, 2);
    let m = DMatrix::from_row_slice(2, 2, &[half.clone(), half.clone(), half.clone(), -half]);
    let (map, report) = LinMap::new(fixtures::rxr(), fixtures::hyperbolic(), m)
        .and_then(LinMap::verify)
        .expect("dimensions match");
    debug_assert!(report.is_isomorphism());
    map
}

/// `Phi: W_c -> R x R`, `Phi(x + k t) = (x + c t, x - c t)`.
pub fn wave_isomorphism<T: Scalar>(c: T) -> Result<LinMap<T>, IsoError> {
    if c <= T::zero() {
        return Err(IsoError::BadSpeed);
    }
    let w = fixtures::wave(c.clone())?;
    let m = DMatrix::from_row_slice(2, 2, &[T::one(), c.clone(), T::one(), -c]);
    let (map, report) = LinMap::new(w, fixtures::rxr(), m)?.verify()?;
    debug_assert!(report.is_isomorphism());
    Ok(map)
}

/// Isomorphism file.
///
/// ```toml
/// source = "RxR"
/// target = "hyperbolic"
/// matrix = [["1/2", "1/2"], ["1/2", "-1/2"]]
/// ```
///
/// `matrix` lists rows; column `j` is the image of source basis vector `j`.
/// `source` and `target` are fixture names or paths to algebra files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoDef {
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<Literal>>,
}

impl IsoDef {
    pub fn from_toml(src: &str) -> Result<Self, DefError> {
        Ok(toml::from_str(src)?)
    }

    pub fn build<T: Scalar>(&self, source: Algebra<T>, target: Algebra<T>) -> Result<LinMap<T>, IsoError> {
        let rows = self.matrix.len();
        let cols = self.matrix.first().map_or(0, Vec::len);
        if self.matrix.iter().any(|r| r.len() != cols) {
            return Err(DefError::Invalid("matrix rows have different lengths".into()).into());
        }
        let mut m = DMatrix::zeros(rows, cols);
        for (r, row) in self.matrix.iter().enumerate() {
            for (c, lit) in row.iter().enumerate() {
                m[(r, c)] = lit.to_scalar()?;
            }
        }
        LinMap::new(source, target, m)
    }
}

/// The wave-equation pipeline: `W_c`, its isomorphism with `R x R`, and the
/// transferred componentwise function `(F1(a), F2(b))`.
pub struct Dalembert {
    pub c: f64,
    pub algebra: Algebra<f64>,
    pub map: LinMap<f64>,
    /// `u + k v` on `W_c` in the variables `x1 = x`, `x2 = t`.
    pub solution: ExprFn,
    pub laplace: EquationSystem<f64>,
}

impl Dalembert {
    /// Builds the pipeline for profiles `f1`, `f2` written in the variable `s`.
    pub fn new(c: f64, f1: &str, f2: &str) -> Result<Self, IsoError> {
        let map = wave_isomorphism(c)?;
        let s = VarSet::Named(vec!["s".into()]);
        let f1 = Expr::parse(f1, &s)?;
        let f2 = Expr::parse(f2, &s)?;
        let rr = map.target().clone();
        let split = ExprFn::new(&rr, vec![f1.substitute(&[Expr::var(0)]), f2.substitute(&[Expr::var(1)])])?;
        let back = map.inverse()?;
        let solution = back.transfer(&split)?;
        let algebra = map.source().clone();
        let laplace = eqgen::gen_laplace(&algebra)?;
        Ok(Dalembert { c, algebra, map, solution, laplace })
    }

    /// Largest `|c^2 u_xx - u_tt|` over both components on the grid.
    pub fn wave_residual(&self, grid: &[[f64; 2]]) -> Result<f64, IsoError> {
        let c2 = self.c * self.c;
        let mut worst = 0.0f64;
        for comp in self.solution.components() {
            let uxx = comp.diff(0).diff(0);
            let utt = comp.diff(1).diff(1);
            for p in grid {
                let r = c2 * uxx.eval(p)? - utt.eval(p)?;
                worst = worst.max(r.abs());
            }
        }
        Ok(worst)
    }

    /// Residual of the generated second-order equations on the grid.
    pub fn laplace_residual(&self, grid: &[[f64; 2]]) -> Result<f64, IsoError> {
        let pts: Vec<Vec<f64>> = grid.iter().map(|p| p.to_vec()).collect();
        Ok(eqgen::check_residual(&self.laplace, &self.solution, &pts)?)
    }
}

/// Uniform `m x m` grid on `[lo, hi]^2`.
pub fn square_grid(lo: f64, hi: f64, m: usize) -> Vec<[f64; 2]> {
    let step = if m > 1 { (hi - lo) / (m - 1) as f64 } else { 0.0 };
    (0..m).flat_map(|i| (0..m).map(move |j| [lo + step * i as f64, lo + step * j as f64])).collect()
}
