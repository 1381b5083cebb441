//! Deleted difference quotients `(f(p + h) - f(p)) / h` with `h` restricted
//! to units, and a numerical probe of their limit as `h -> 0`.
//!
//! Division is on the right. The probe only runs on commutative algebras,
//! where the order does not matter.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, ElementKind};
use crate::expr::{ExprError, ExprFn};

type E = Element<f64>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum D2Error {
    #[error("the difference-quotient probe needs a commutative algebra; {0} is not")]
    NonCommutative(String),
    #[error("no unit directions found")]
    NoDirections,
    #[error("invalid probe options: {0}")]
    BadOptions(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `(f(p + h) - f(p)) * h^-1`; fails with `NotAUnit` unless `h` is a unit.
pub fn deleted_quotient(alg: &Algebra<f64>, f: &ExprFn, p: &E, h: &E) -> Result<E, D2Error> {
    if f.algebra_id() != alg.id() {
        return Err(AlgebraError::AlgebraMismatch.into());
    }
    let num = f.eval_at(alg, &p.add(h)?)?.sub(&f.eval_at(alg, p)?)?;
    Ok(alg.div_right(&num, h)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct D2Options {
    pub directions: usize,
    /// Strictly decreasing positive radii.
    pub radii: Vec<f64>,
    pub tol: f64,
    /// Seed for the random directions added after the axis and diagonal ones.
    pub seed: u64,
}

impl Default for D2Options {
    fn default() -> Self {
        D2Options { directions: 16, radii: (2..=16).map(|m| 0.5f64.powi(m)).collect(), tol: 1e-6, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Converges { limit: E },
    Diverges { reason: String },
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct D2Probe {
    pub point: E,
    pub directions: Vec<E>,
    pub radii: Vec<f64>,
    /// `quotients[d][m]` uses the offset `radii[m] * directions[d]`.
    pub quotients: Vec<Vec<E>>,
    /// Richardson values `2 q[m+1] - q[m]`.
    pub extrapolated: Vec<Vec<E>>,
    pub verdict: Verdict,
}

fn normalized(v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / n).collect()
}

/// Unit-norm directions that are units of the algebra: axes, then
/// diagonals `e_i +- e_j`, then seeded random vectors.
pub fn unit_directions(alg: &Algebra<f64>, count: usize, seed: u64) -> Result<Vec<E>, D2Error> {
    let n = alg.dim();
    let mut candidates = Vec::new();
    for i in 0..n {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        candidates.push(v);
    }
    for i in 0..n {
        for j in i + 1..n {
            for s in [1.0, -1.0] {
                let mut v = vec![0.0; n];
                v[i] = 1.0;
                v[j] = s;
                candidates.push(normalized(v));
            }
        }
    }
    let mut out = Vec::with_capacity(count);
    for v in candidates {
        if out.len() == count {
            return Ok(out);
        }
        let e = alg.element(v)?;
        if alg.classify(&e)?.kind == ElementKind::Unit {
            out.push(e);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tries = 0;
    while out.len() < count && tries < 100 * count {
        tries += 1;
        let e = alg.element(normalized((0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()))?;
        if alg.classify(&e)?.kind == ElementKind::Unit {
            out.push(e);
        }
    }
    if out.is_empty() {
        return Err(D2Error::NoDirections);
    }
    Ok(out)
}

fn max_pairwise(xs: &[&E]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            worst = worst.max(xs[i].dist(xs[j]));
        }
    }
    worst
}

/// Samples deleted quotients over directions and radii and classifies their
/// behaviour as `h -> 0`.
pub fn d2_probe(alg: &Algebra<f64>, f: &ExprFn, p: &E, opts: &D2Options) -> Result<D2Probe, D2Error> {
    if !alg.is_commutative() {
        return Err(D2Error::NonCommutative(alg.name().to_string()));
    }
    if opts.radii.len() < 4 {
        return Err(D2Error::BadOptions("at least four radii are needed".into()));
    }
    let decreasing = opts.radii.windows(2).all(|w| w[1] < w[0]);
    if !decreasing || !opts.radii.iter().all(|r| *r > 0.0) {
        return Err(D2Error::BadOptions("radii must be positive and strictly decreasing".into()));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(D2Error::BadOptions("tolerance must be positive".into()));
    }
    let directions = unit_directions(alg, opts.directions.max(1), opts.seed)?;
    let mut quotients = Vec::with_capacity(directions.len());
    for d in &directions {
        let row = opts
            .radii
            .iter()
            .map(|&r| {
                let h = d.scale(r);
                if alg.classify(&h)?.kind != ElementKind::Unit {
                    return Err(AlgebraError::NotAUnit { kind: ElementKind::ZeroDivisor, witness: None }.into());
                }
                deleted_quotient(alg, f, p, &h)
            })
            .collect::<Result<Vec<_>, D2Error>>()?;
        quotients.push(row);
    }
    let extrapolated: Vec<Vec<E>> = quotients
        .iter()
        .map(|row| row.windows(2).map(|w| w[1].scale(2.0).sub(&w[0])).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let verdict = judge(&quotients, &extrapolated, opts.tol);
    Ok(D2Probe { point: p.clone(), directions, radii: opts.radii.clone(), quotients, extrapolated, verdict })
}

fn judge(quotients: &[Vec<E>], extrapolated: &[Vec<E>], tol: f64) -> Verdict {
    for (d, row) in quotients.iter().enumerate() {
        let mags: Vec<f64> = row[row.len() - 4..].iter().map(E::norm).collect();
        if mags.windows(2).all(|w| w[1] >= 2.0 * w[0] && w[1] > 0.0) {
            return Verdict::Diverges { reason: format!("quotients along direction {} blow up", d + 1) };
        }
    }
    let last = extrapolated[0].len() - 1;
    let finals: Vec<&E> = extrapolated.iter().map(|row| &row[last]).collect();
    let scale = finals.iter().map(|e| e.norm()).fold(1.0, f64::max);
    let spread = max_pairwise(&finals);
    if spread > 100.0 * tol * scale {
        return Verdict::Diverges { reason: format!("limits depend on the direction (spread {spread:.3e})") };
    }
    let settled = extrapolated.iter().all(|row| row[last].dist(&row[last - 1]) <= tol * scale);
    if spread <= tol * scale && settled {
        let mut limit = finals[0].scale(0.0);
        for e in &finals {
            limit = limit.add(e).expect("same algebra");
        }
        return Verdict::Converges { limit: limit.scale(1.0 / finals.len() as f64) };
    }
    Verdict::Inconclusive
}
