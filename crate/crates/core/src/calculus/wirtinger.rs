//! Conjugate variables and the associated first-order operators.
//!
//! A frame is a basis `w_1 = 1, w_2, ..., w_n` of units. With frame
//! coordinates `zeta = sum x_j w_j`, the conjugates are
//! `zetabar_j = zeta - 2 x_j w_j` and
//!
//! ```text
//! d/dzeta     = 1/2 ((3 - n) d/dx_1 + sum_{j>=2} (1/w_j) d/dx_j)
//! d/dzetabar_k = 1/2 (d/dx_1 - (1/w_k) d/dx_k)
//! ```

use nalgebra::{DMatrix, DVector};

use super::CalcError;
use crate::algebra::{Algebra, AlgebraId, Element};
use crate::expr::{Expr, ExprFn};
use crate::linalg;

type E = Element<f64>;

/// Tolerance for frame validation.
const FRAME_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct ConjugateFrame {
    alg: AlgebraId,
    basis: Vec<E>,
    inverses: Vec<E>,
    /// Maps standard coordinates to frame coordinates.
    to_frame: DMatrix<f64>,
}

impl ConjugateFrame {
    pub fn new(alg: &Algebra<f64>, basis: Vec<E>) -> Result<Self, CalcError> {
        let n = alg.dim();
        if basis.len() != n {
            return Err(CalcError::NonInvertibleBasis(format!("expected {n} vectors, got {}", basis.len())));
        }
        if basis.iter().any(|b| b.algebra_id() != alg.id()) {
            return Err(crate::algebra::AlgebraError::AlgebraMismatch.into());
        }
        if basis[0].dist(&alg.one()) > FRAME_TOL {
            return Err(CalcError::NonInvertibleBasis("first vector must be the unity".into()));
        }
        let cols: Vec<DVector<f64>> = basis.iter().map(|b| DVector::from_column_slice(b.coords())).collect();
        let p = DMatrix::from_columns(&cols);
        if linalg::rank(&p, linalg::SINGULAR_RTOL) < n {
            return Err(CalcError::NonInvertibleBasis("vectors are linearly dependent".into()));
        }
        let to_frame = p.try_inverse().ok_or_else(|| CalcError::NonInvertibleBasis("singular frame".into()))?;
        let mut inverses = Vec::with_capacity(n);
        for (j, b) in basis.iter().enumerate() {
            let inv = alg
                .inverse(b)
                .map_err(|_| CalcError::NonInvertibleBasis(format!("vector {} is not a unit", j + 1)))?;
            if alg.mul(b, &inv)?.dist(&alg.one()) > FRAME_TOL {
                return Err(CalcError::NonInvertibleBasis(format!("vector {} is badly conditioned", j + 1)));
            }
            inverses.push(inv);
        }
        Ok(ConjugateFrame { alg: alg.id(), basis, inverses, to_frame })
    }

    /// The standard basis, when it starts with the unity and consists of units.
    pub fn standard(alg: &Algebra<f64>) -> Result<Self, CalcError> {
        Self::new(alg, (0..alg.dim()).map(|i| alg.basis(i)).collect())
    }

    /// Frame from [`Algebra::find_invertible_basis`].
    pub fn auto(alg: &Algebra<f64>) -> Result<Self, CalcError> {
        let basis = alg.find_invertible_basis().map_err(|e| CalcError::NonInvertibleBasis(e.to_string()))?;
        Self::new(alg, basis)
    }

    pub fn basis(&self) -> &[E] {
        &self.basis
    }

    /// `1/w_1, ..., 1/w_n`.
    pub fn inverses(&self) -> &[E] {
        &self.inverses
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Frame coordinates of a standard coordinate vector.
    pub fn coords(&self, x: &[f64]) -> Vec<f64> {
        (&self.to_frame * DVector::from_column_slice(x)).iter().copied().collect()
    }

    fn check(&self, alg: &Algebra<f64>) -> Result<(), CalcError> {
        if alg.id() == self.alg {
            Ok(())
        } else {
            Err(crate::algebra::AlgebraError::AlgebraMismatch.into())
        }
    }

    fn index(&self, j: usize) -> Result<usize, CalcError> {
        let n = self.dim();
        if (2..=n).contains(&j) {
            Ok(j - 1)
        } else {
            Err(CalcError::BadIndex { index: j, dim: n })
        }
    }
}

/// `zetabar_2, ..., zetabar_n`.
pub fn conjugate_coords(alg: &Algebra<f64>, frame: &ConjugateFrame, zeta: &E) -> Result<Vec<E>, CalcError> {
    frame.check(alg)?;
    let x = frame.coords(zeta.coords());
    (1..frame.dim()).map(|j| Ok(zeta.sub(&frame.basis[j].scale(2.0 * x[j]))?)).collect()
}

/// Recovers `x_1 * 1, ..., x_n * 1` from `zeta` and its conjugates:
/// `x_1 = 1/2 ((3 - n) zeta + sum zetabar_j)` and
/// `x_j = (1/(2 w_j)) * (zeta - zetabar_j)`.
pub fn reconstruct(alg: &Algebra<f64>, frame: &ConjugateFrame, zeta: &E, conj: &[E]) -> Result<Vec<E>, CalcError> {
    frame.check(alg)?;
    let n = frame.dim();
    let mut first = zeta.scale(3.0 - n as f64);
    for c in conj {
        first = first.add(c)?;
    }
    let mut out = vec![first.scale(0.5)];
    for j in 1..n {
        let diff = zeta.sub(&conj[j - 1])?;
        out.push(alg.mul(&frame.inverses[j].scale(0.5), &diff)?);
    }
    Ok(out)
}

/// `zetabar_j` as an expression function of the standard coordinates.
pub fn conjugate_fn(alg: &Algebra<f64>, frame: &ConjugateFrame, j: usize) -> Result<ExprFn, CalcError> {
    frame.check(alg)?;
    let idx = frame.index(j)?;
    let n = frame.dim();
    // x_j = row j of the inverse frame matrix applied to (x1..xn)
    let xj = Expr::sum(
        (0..n)
            .filter(|&c| frame.to_frame[(idx, c)] != 0.0)
            .map(|c| Expr::mul(Expr::num(frame.to_frame[(idx, c)]), Expr::var(c))),
    );
    let w = frame.basis[idx].coords();
    let comps = (0..n)
        .map(|k| {
            if w[k] == 0.0 {
                Expr::var(k)
            } else {
                Expr::sub(Expr::var(k), Expr::mul(Expr::num(2.0 * w[k]), xj.clone()))
            }
        })
        .collect();
    Ok(ExprFn::new(alg, comps)?)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Wirtinger {
    Zeta,
    /// Conjugate index `j` in `2..=n`.
    ZetaBar(usize),
}

/// Derivatives of `f` along the frame vectors: `J w_1, ..., J w_n`.
pub fn frame_partials(alg: &Algebra<f64>, frame: &ConjugateFrame, jac: &DMatrix<f64>) -> Result<Vec<E>, CalcError> {
    frame.check(alg)?;
    frame
        .basis
        .iter()
        .map(|w| Ok(alg.element((jac * DVector::from_column_slice(w.coords())).iter().copied().collect())?))
        .collect()
}

pub fn wirtinger_from_jacobian(
    alg: &Algebra<f64>,
    frame: &ConjugateFrame,
    jac: &DMatrix<f64>,
    which: Wirtinger,
) -> Result<E, CalcError> {
    let d = frame_partials(alg, frame, jac)?;
    let n = frame.dim();
    match which {
        Wirtinger::Zeta => {
            let mut acc = d[0].scale(3.0 - n as f64);
            for (inv, dj) in frame.inverses.iter().zip(&d).skip(1) {
                acc = acc.add(&alg.mul(inv, dj)?)?;
            }
            Ok(acc.scale(0.5))
        }
        Wirtinger::ZetaBar(k) => {
            let k = frame.index(k)?;
            let t = alg.mul(&frame.inverses[k], &d[k])?;
            Ok(d[0].sub(&t)?.scale(0.5))
        }
    }
}

/// Applies a Wirtinger operator to `f` at `p` using symbolic partials.
pub fn wirtinger_apply(
    alg: &Algebra<f64>,
    frame: &ConjugateFrame,
    f: &ExprFn,
    which: Wirtinger,
    p: &E,
) -> Result<E, CalcError> {
    if f.algebra_id() != alg.id() || p.algebra_id() != alg.id() {
        return Err(crate::algebra::AlgebraError::AlgebraMismatch.into());
    }
    let jac = f.jacobian_at(p.coords())?;
    wirtinger_from_jacobian(alg, frame, &jac, which)
}
