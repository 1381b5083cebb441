//! Bundled algebras.

use super::{Algebra, AlgebraError};
use crate::scalar::Scalar;

fn e<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    (0..n).map(|k| if k == i { T::one() } else { T::zero() }).collect()
}

fn labels(ls: &[&str]) -> Option<Vec<String>> {
    Some(ls.iter().map(|s| s.to_string()).collect())
}

fn must<T>(r: Result<Algebra<T>, AlgebraError>) -> Algebra<T> {
    r.expect("bundled fixture satisfies the algebra axioms")
}

/// Algebra whose basis is `1, g, ..., g^(n-1)` with `g^n = sum_k a[k] g^k`.
pub fn cyclic<T: Scalar>(name: &str, rel: &[T], labels: Option<Vec<String>>) -> Result<Algebra<T>, AlgebraError> {
    let n = rel.len();
    if n == 0 {
        return Err(AlgebraError::Empty);
    }
    // coordinates of g^m for m = 0..2n-2
    let mut powers: Vec<Vec<T>> = (0..n).map(|m| e(n, m)).collect();
    for m in n..(2 * n - 1) {
        let mut acc = vec![T::zero(); n];
        for (k, a) in rel.iter().enumerate() {
            for (o, p) in acc.iter_mut().zip(&powers[m - n + k]) {
                *o = o.clone() + a.clone() * p.clone();
            }
        }
        powers.push(acc);
    }
    let table = (0..n).map(|i| (0..n).map(|j| powers[i + j].clone()).collect()).collect();
    Algebra::new(name, labels, table, e(n, 0))
}

pub fn reals<T: Scalar>() -> Algebra<T> {
    must(cyclic("R", &[T::one()], labels(&["1"])))
}

pub fn complex<T: Scalar>() -> Algebra<T> {
    must(cyclic("C", &[-T::one(), T::zero()], labels(&["1", "i"])))
}

pub fn hyperbolic<T: Scalar>() -> Algebra<T> {
    must(cyclic("H", &[T::one(), T::zero()], labels(&["1", "j"])))
}

pub fn dual<T: Scalar>() -> Algebra<T> {
    must(cyclic("dual", &[T::zero(), T::zero()], labels(&["1", "e"])))
}

/// Truncated polynomials `R[e]/(e^n)`.
pub fn dual_n<T: Scalar>(n: usize) -> Result<Algebra<T>, AlgebraError> {
    let ls = (0..n).map(|k| if k == 0 { "1".into() } else { format!("e{k}") }).collect();
    cyclic(&format!("dual{n}"), &vec![T::zero(); n], Some(ls))
}

/// Group algebra of the cyclic group of order `n`: `g^n = 1`.
pub fn hyperbolic_n<T: Scalar>(n: usize) -> Result<Algebra<T>, AlgebraError> {
    let mut rel = vec![T::zero(); n];
    if let Some(r) = rel.first_mut() {
        *r = T::one();
    }
    let ls = (0..n)
        .map(|k| match k {
            0 => "1".into(),
            1 => "j".into(),
            _ => format!("j{k}"),
        })
        .collect();
    cyclic(&format!("hyp{n}"), &rel, Some(ls))
}

pub fn trihyperbolic<T: Scalar>() -> Algebra<T> {
    must(hyperbolic_n(3))
}

/// Componentwise product of two algebras.
pub fn direct_product<T: Scalar>(a: &Algebra<T>, b: &Algebra<T>) -> Result<Algebra<T>, AlgebraError> {
    let (n, m) = (a.dim(), b.dim());
    let d = n + m;
    let table = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut out = vec![T::zero(); d];
                    if i < n && j < n {
                        out[..n].clone_from_slice(&a.basis_product(i, j));
                    } else if i >= n && j >= n {
                        out[n..].clone_from_slice(&b.basis_product(i - n, j - n));
                    }
                    out
                })
                .collect()
        })
        .collect();
    let mut unity = a.one().into_coords();
    unity.extend(b.one().into_coords());
    let ls = a.labels().iter().map(|l| format!("({l},0)")).chain(b.labels().iter().map(|l| format!("(0,{l})"))).collect();
    Algebra::new(format!("{}x{}", a.name(), b.name()), Some(ls), table, unity)
}

pub fn rxr<T: Scalar>() -> Algebra<T> {
    must(direct_product(&reals(), &reals())).with_name("RxR")
}

pub fn rxrxr<T: Scalar>() -> Algebra<T> {
    must(direct_product(&rxr(), &reals())).with_name("RxRxR")
}

pub fn cxc<T: Scalar>() -> Algebra<T> {
    must(direct_product(&complex(), &complex())).with_name("CxC")
}

pub fn quaternions<T: Scalar>() -> Algebra<T> {
    let q = |x: &[T], y: &[T]| -> Vec<T> {
        let (a, b, c, d) = (x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone());
        let (w, p, r, s) = (y[0].clone(), y[1].clone(), y[2].clone(), y[3].clone());
        vec![
            a.clone() * w.clone() - b.clone() * p.clone() - c.clone() * r.clone() - d.clone() * s.clone(),
            a.clone() * p.clone() + b.clone() * w.clone() + c.clone() * s.clone() - d.clone() * r.clone(),
            a.clone() * r.clone() - b.clone() * s.clone() + c.clone() * w.clone() + d.clone() * p.clone(),
            a * s + b * r - c * p + d * w,
        ]
    };
    must(Algebra::from_product("quaternions", labels(&["1", "i", "j", "k"]), 4, q, e(4, 0)))
}

/// Real 2x2 matrices with coordinates `(a, b, c, d)` for `[[a, b], [c, d]]`.
pub fn mat2<T: Scalar>() -> Algebra<T> {
    let m = |x: &[T], y: &[T]| -> Vec<T> {
        let (a, b, c, d) = (&x[0], &x[1], &x[2], &x[3]);
        let (w, p, r, s) = (&y[0], &y[1], &y[2], &y[3]);
        vec![
            a.clone() * w.clone() + b.clone() * r.clone(),
            a.clone() * p.clone() + b.clone() * s.clone(),
            c.clone() * w.clone() + d.clone() * r.clone(),
            c.clone() * p.clone() + d.clone() * s.clone(),
        ]
    };
    let unity = vec![T::one(), T::zero(), T::zero(), T::one()];
    must(Algebra::from_product("mat2", labels(&["E11", "E12", "E21", "E22"]), 4, m, unity))
}

/// Upper triangular 3x3 matrices, diagonal first:
/// `(a,b,c,d,e,f) * (x,y,z,u,v,w) = (ax, by, cz, au+dy, bv+ez, aw+dv+fz)`.
pub fn uppertri6<T: Scalar>() -> Algebra<T> {
    let m = |p: &[T], q: &[T]| -> Vec<T> {
        let [a, b, c, d, e, f] = [0, 1, 2, 3, 4, 5].map(|i| p[i].clone());
        let [x, y, z, u, v, w] = [0, 1, 2, 3, 4, 5].map(|i| q[i].clone());
        vec![
            a.clone() * x,
            b.clone() * y.clone(),
            c * z.clone(),
            a.clone() * u + d.clone() * y,
            b * v.clone() + e * z.clone(),
            a * w + d * v + f * z,
        ]
    };
    let unity = vec![T::one(), T::one(), T::one(), T::zero(), T::zero(), T::zero()];
    let ls = labels(&["e11", "e22", "e33", "e12", "e23", "e13"]);
    must(Algebra::from_product("uppertri6", ls, 6, m, unity))
}

/// Basis `1, k` with `k^2 = c^2`.
pub fn wave<T: Scalar>(c: T) -> Result<Algebra<T>, AlgebraError> {
    let c2 = c.clone() * c.clone();
    cyclic(&format!("wave{c}"), &[c2, T::zero()], labels(&["1", "k"]))
}

/// Looks up a fixture by case-insensitive name.
///
/// Accepts `reals`/`R`, `complex`/`C`, `hyperbolic`/`H`, `dual`, `dualN`,
/// `trihyperbolic`/`hyp3`, `tetrahyperbolic`/`hyp4`, `hypN`, `RxR`, `RxRxR`,
/// `CxC`, `quaternions`, `mat2`, `uppertri6` and `waveC` (for instance
/// `wave2` or `wave0.5`).
pub fn by_name<T: Scalar>(name: &str) -> Option<Algebra<T>> {
    let lower = name.trim().to_ascii_lowercase();
    let alg = match lower.as_str() {
        "r" | "reals" => reals(),
        "c" | "complex" => complex(),
        "h" | "hyperbolic" => hyperbolic(),
        "dual" => dual(),
        "trihyperbolic" | "hyp3" => trihyperbolic(),
        "tetrahyperbolic" | "hyp4" => hyperbolic_n(4).ok()?,
        "rxr" => rxr(),
        "rxrxr" => rxrxr(),
        "cxc" => cxc(),
        "quaternions" | "q" => quaternions(),
        "mat2" => mat2(),
        "uppertri6" => uppertri6(),
        "wave" => wave(T::one()).ok()?,
        _ => {
            if let Some(k) = lower.strip_prefix("dual") {
                dual_n(k.parse().ok().filter(|&k| k >= 1)?).ok()?
            } else if let Some(k) = lower.strip_prefix("hyp") {
                hyperbolic_n(k.parse().ok().filter(|&k| k >= 1)?).ok()?
            } else {
                let c = lower.strip_prefix("wave")?;
                let c = super::def::Literal::parse_str(c).ok()?.to_scalar::<T>().ok()?;
                if c.is_zero() {
                    return None;
                }
                wave(c).ok()?
            }
        }
    };
    Some(alg)
}

/// Names listed by the command-line help.
pub const NAMES: &[&str] = &[
    "reals", "complex", "hyperbolic", "dual", "dualN", "trihyperbolic", "hypN", "RxR", "RxRxR", "CxC", "quaternions",
    "mat2", "uppertri6", "waveC",
];
