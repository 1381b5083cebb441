//! Dense linear algebra helpers: SVD nullspaces, least squares and an
//! exact row-reduction route for rational matrices.

use nalgebra::{DMatrix, DVector};

use crate::scalar::{Real, Scalar};

/// Relative cutoff below which a singular value counts as zero.
pub const SINGULAR_RTOL: f64 = 1e-10;

/// Singular values of `a`, sorted descending.
pub fn singular_values<T: Real>(a: &DMatrix<T>) -> Vec<T> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut s: Vec<T> = a.clone().svd(false, false).singular_values.iter().copied().collect();
    s.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    s
}

fn cutoff<T: Real>(sigma_max: T, rtol: f64) -> T {
    T::lit(rtol) * sigma_max.max(T::one())
}

/// Numerical rank with cutoff `rtol * max(1, sigma_max)`.
pub fn rank<T: Real>(a: &DMatrix<T>, rtol: f64) -> usize {
    let s = singular_values(a);
    let Some(&top) = s.first() else { return 0 };
    let cut = cutoff(top, rtol);
    s.iter().filter(|&&x| x > cut).count()
}

/// Orthonormal basis of the right nullspace of `a`, one vector per column.
///
/// Wide matrices are padded with zero rows so the SVD returns a full V.
pub fn nullspace<T: Real>(a: &DMatrix<T>, rtol: f64) -> DMatrix<T> {
    let (m, n) = a.shape();
    if n == 0 {
        return DMatrix::zeros(0, 0);
    }
    let padded = if m < n {
        let mut p = DMatrix::zeros(n, n);
        p.view_mut((0, 0), (m, n)).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let top = svd.singular_values.iter().copied().fold(T::zero(), |a, b| a.max(b));
    let cut = cutoff(top, rtol);
    let cols: Vec<DVector<T>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cut)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn least_squares<T: Real>(a: &DMatrix<T>, b: &DVector<T>) -> DVector<T> {
    let svd = a.clone().svd(true, true);
    let top = svd.singular_values.iter().copied().fold(T::zero(), |a, b| a.max(b));
    let eps = cutoff(top, SINGULAR_RTOL);
    svd.solve(b, eps).expect("U and V were computed")
}

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Entries with magnitude at most `tol` are treated as zero (exact
/// scalars ignore it). Partial pivoting keeps the float route stable.
pub fn rref<T: Scalar>(a: &mut DMatrix<T>, tol: f64) -> Vec<usize> {
    let (m, n) = a.shape();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let mut best = None;
        let mut best_mag = T::zero();
        for r in row..m {
            let v = a[(r, col)].clone();
            if v.is_negligible(tol) {
                continue;
            }
            let mag = v.magnitude();
            if best.is_none() || mag > best_mag {
                best = Some(r);
                best_mag = mag;
            }
        }
        let Some(p) = best else {
            for r in row..m {
                a[(r, col)] = T::zero();
            }
            continue;
        };
        a.swap_rows(row, p);
        let inv = T::one() / a[(row, col)].clone();
        for c in 0..n {
            a[(row, c)] = a[(row, c)].clone() * inv.clone();
        }
        for r in 0..m {
            if r == row {
                continue;
            }
            let f = a[(r, col)].clone();
            if f.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = a[(r, c)].clone() - f.clone() * a[(row, c)].clone();
                a[(r, c)] = if v.is_negligible(tol) { T::zero() } else { v };
            }
            a[(r, col)] = T::zero();
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Rank by row reduction.
pub fn rank_exact<T: Scalar>(a: &DMatrix<T>, tol: f64) -> usize {
    let mut w = a.clone();
    rref(&mut w, tol).len()
}

/// Nullspace basis from the row-reduced form, one vector per column.
/// Each vector has a single free variable set to one.
pub fn nullspace_exact<T: Scalar>(a: &DMatrix<T>, tol: f64) -> DMatrix<T> {
    let n = a.ncols();
    let mut w = a.clone();
    let pivots = rref(&mut w, tol);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = DMatrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = T::one();
        for (r, &p) in pivots.iter().enumerate() {
            out[(p, k)] = -w[(r, f)].clone();
        }
    }
    out
}

/// Largest principal-angle sine between the column spans of `a` and `b`.
/// Zero means the spans coincide; mismatched dimensions give one.
pub fn subspace_distance<T: Real>(a: &DMatrix<T>, b: &DMatrix<T>) -> T {
    if a.ncols() != b.ncols() || a.nrows() != b.nrows() {
        return T::one();
    }
    if a.ncols() == 0 {
        return T::zero();
    }
    let qa = a.clone().qr().q();
    let qb = b.clone().qr().q();
    let resid = &qb - &qa * (qa.transpose() * &qb);
    let sv = singular_values(&resid);
    sv.first().copied().unwrap_or_else(T::zero)
}
