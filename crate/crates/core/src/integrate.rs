//! Curve integrals `int_C f(zeta) * dzeta` of algebra-valued functions.
//!
//! Parametric curves are integrated as `int f(zeta(t)) * zeta'(t) dt` with
//! the velocity differentiated symbolically; polylines segment by segment
//! with the exact linear parametrization. Quadrature is adaptive Simpson on
//! all coordinates at once.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, AlgebraId, Element};
use crate::calculus::{self, CalcError, DiffOptions, DiffReport};
use crate::expr::{Expr, ExprError, ExprFn, FromClosure, VarSet};

type E = Element<f64>;

/// Endpoint gap allowed for a closed curve.
pub const CLOSED_TOL: f64 = 1e-12;
/// Slack added to the quadrature error when deciding that a loop integral vanishes.
pub const VANISH_TOL: f64 = 1e-8;
/// Residual tolerance for the fundamental-theorem probe.
pub const FTC_TOL: f64 = 1e-5;

const M_SAMPLES: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntegrateError {
    #[error("quadrature did not converge: estimate {estimate:?}, error bound {error_bound:e}")]
    QuadratureNonConvergence { estimate: Vec<f64>, error_bound: f64 },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve is not closed (endpoint gap {gap:e})")]
    NotClosed { gap: f64 },
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Calc(#[from] CalcError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveKind {
    /// Coordinates as expressions in the single variable `t`.
    Parametric { coords: Vec<Expr>, velocity: Vec<Expr>, t0: f64, t1: f64 },
    Polyline { vertices: Vec<Vec<f64>> },
}

#[derive(Clone, Debug)]
pub struct Curve {
    alg: AlgebraId,
    kind: CurveKind,
    closed: bool,
}

fn gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

fn lerp(p: &[f64], q: &[f64], s: f64) -> Vec<f64> {
    p.iter().zip(q).map(|(a, b)| a + s * (b - a)).collect()
}

impl Curve {
    /// `closed = None` infers closedness from the endpoints.
    pub fn parametric(
        alg: &Algebra<f64>,
        coords: Vec<Expr>,
        t0: f64,
        t1: f64,
        closed: Option<bool>,
    ) -> Result<Curve, IntegrateError> {
        if coords.len() != alg.dim() {
            return Err(IntegrateError::InvalidCurve(format!(
                "expected {} coordinate expressions, got {}",
                alg.dim(),
                coords.len()
            )));
        }
        if coords.iter().any(|c| c.arity() > 1) {
            return Err(IntegrateError::InvalidCurve("coordinates may only use the parameter t".into()));
        }
        if !t0.is_finite() || !t1.is_finite() || t0 == t1 {
            return Err(IntegrateError::InvalidCurve(format!("bad parameter range [{t0}, {t1}]")));
        }
        let velocity = coords.iter().map(|c| c.diff(0).simplify()).collect();
        let curve = Curve { alg: alg.id(), kind: CurveKind::Parametric { coords, velocity, t0, t1 }, closed: false };
        curve.close(closed)
    }

    /// Parses coordinate expressions in `t`.
    pub fn parse_parametric(
        alg: &Algebra<f64>,
        coords: &[&str],
        t0: f64,
        t1: f64,
        closed: Option<bool>,
    ) -> Result<Curve, IntegrateError> {
        let vars = VarSet::Named(vec!["t".into()]);
        let coords = coords.iter().map(|s| Expr::parse(s, &vars)).collect::<Result<_, _>>()?;
        Self::parametric(alg, coords, t0, t1, closed)
    }

    pub fn polyline(alg: &Algebra<f64>, vertices: &[E], closed: Option<bool>) -> Result<Curve, IntegrateError> {
        if vertices.len() < 2 {
            return Err(IntegrateError::InvalidCurve("a polyline needs at least two vertices".into()));
        }
        if vertices.iter().any(|v| v.algebra_id() != alg.id()) {
            return Err(AlgebraError::AlgebraMismatch.into());
        }
        let vertices = vertices.iter().map(|v| v.coords().to_vec()).collect();
        Curve { alg: alg.id(), kind: CurveKind::Polyline { vertices }, closed: false }.close(closed)
    }

    pub fn segment(alg: &Algebra<f64>, p: &E, q: &E) -> Result<Curve, IntegrateError> {
        Self::polyline(alg, &[p.clone(), q.clone()], Some(false))
    }

    /// `cos t + sin t v_2` for `t` in `[0, 2 pi]`.
    pub fn unit_circle(alg: &Algebra<f64>) -> Result<Curve, IntegrateError> {
        if alg.dim() < 2 {
            return Err(IntegrateError::InvalidCurve("the unit circle needs dimension at least 2".into()));
        }
        let t = Expr::var(0);
        let mut coords = vec![Expr::call(crate::expr::Func::Cos, t.clone()), Expr::call(crate::expr::Func::Sin, t)];
        coords.resize(alg.dim(), Expr::num(0.0));
        Self::parametric(alg, coords, 0.0, std::f64::consts::TAU, Some(true))
    }

    fn close(mut self, closed: Option<bool>) -> Result<Curve, IntegrateError> {
        let g = gap(&self.start()?, &self.end()?);
        self.closed = match closed {
            Some(true) if g > CLOSED_TOL => return Err(IntegrateError::NotClosed { gap: g }),
            Some(c) => c,
            None => g <= CLOSED_TOL,
        };
        Ok(self)
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn algebra_id(&self) -> AlgebraId {
        self.alg
    }

    /// Parameter range shared by both kinds; polylines use `[0, segments]`.
    pub fn range(&self) -> (f64, f64) {
        match &self.kind {
            CurveKind::Parametric { t0, t1, .. } => (*t0, *t1),
            CurveKind::Polyline { vertices } => (0.0, (vertices.len() - 1) as f64),
        }
    }

    pub fn point(&self, u: f64) -> Result<Vec<f64>, ExprError> {
        match &self.kind {
            CurveKind::Parametric { coords, .. } => coords.iter().map(|c| c.eval(&[u])).collect(),
            CurveKind::Polyline { vertices } => {
                let k = (u.floor().max(0.0) as usize).min(vertices.len() - 2);
                Ok(lerp(&vertices[k], &vertices[k + 1], u - k as f64))
            }
        }
    }

    pub fn velocity(&self, u: f64) -> Result<Vec<f64>, ExprError> {
        match &self.kind {
            CurveKind::Parametric { velocity, .. } => velocity.iter().map(|c| c.eval(&[u])).collect(),
            CurveKind::Polyline { vertices } => {
                let k = (u.floor().max(0.0) as usize).min(vertices.len() - 2);
                Ok(vertices[k + 1].iter().zip(&vertices[k]).map(|(b, a)| b - a).collect())
            }
        }
    }

    pub fn start(&self) -> Result<Vec<f64>, ExprError> {
        self.point(self.range().0)
    }

    pub fn end(&self) -> Result<Vec<f64>, ExprError> {
        self.point(self.range().1)
    }

    /// The same trace traversed backwards.
    pub fn reversed(&self) -> Curve {
        let kind = match &self.kind {
            CurveKind::Parametric { coords, t0, t1, .. } => {
                let back = [Expr::sub(Expr::num(t0 + t1), Expr::var(0))];
                let coords: Vec<Expr> = coords.iter().map(|c| c.substitute(&back).simplify()).collect();
                let velocity = coords.iter().map(|c| c.diff(0).simplify()).collect();
                CurveKind::Parametric { coords, velocity, t0: *t0, t1: *t1 }
            }
            CurveKind::Polyline { vertices } => {
                CurveKind::Polyline { vertices: vertices.iter().rev().cloned().collect() }
            }
        };
        Curve { alg: self.alg, kind, closed: self.closed }
    }

    /// Splits at the fraction `frac` in `(0, 1)` of the parameter range.
    pub fn split(&self, frac: f64) -> Result<(Curve, Curve), IntegrateError> {
        if !(frac > 0.0 && frac < 1.0) {
            return Err(IntegrateError::InvalidCurve(format!("split fraction {frac} outside (0, 1)")));
        }
        let (lo, hi) = self.range();
        let u = lo + frac * (hi - lo);
        let (a, b) = match &self.kind {
            CurveKind::Parametric { coords, velocity, t0, t1 } => (
                CurveKind::Parametric { coords: coords.clone(), velocity: velocity.clone(), t0: *t0, t1: u },
                CurveKind::Parametric { coords: coords.clone(), velocity: velocity.clone(), t0: u, t1: *t1 },
            ),
            CurveKind::Polyline { vertices } => {
                let x = self.point(u)?;
                let k = (u.floor() as usize).min(vertices.len() - 2);
                let mut first = vertices[..=k].to_vec();
                first.push(x.clone());
                let mut second = vec![x];
                second.extend_from_slice(&vertices[k + 1..]);
                (CurveKind::Polyline { vertices: first }, CurveKind::Polyline { vertices: second })
            }
        };
        Ok((Curve { alg: self.alg, kind: a, closed: false }, Curve { alg: self.alg, kind: b, closed: false }))
    }
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct QuadOptions {
    /// Absolute tolerance for the whole integral.
    pub tol: f64,
    pub max_depth: u32,
    /// Initial panels per interval.
    pub panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { tol: 1e-10, max_depth: 20, panels: 16 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Integral {
    pub value: E,
    /// Accumulated Richardson error estimate.
    pub error: f64,
}

struct Simpson<'a, G> {
    g: &'a G,
    max_depth: u32,
    acc: Vec<f64>,
    err: f64,
    failed: bool,
}

fn simpson(a: f64, b: f64, fa: &[f64], fm: &[f64], fb: &[f64]) -> Vec<f64> {
    let w = (b - a) / 6.0;
    (0..fa.len()).map(|k| w * (fa[k] + 4.0 * fm[k] + fb[k])).collect()
}

impl<G: Fn(f64) -> Result<Vec<f64>, ExprError>> Simpson<'_, G> {
    #[allow(clippy::too_many_arguments)]
    fn step(
        &mut self,
        a: f64,
        fa: &[f64],
        m: f64,
        fm: &[f64],
        b: f64,
        fb: &[f64],
        whole: &[f64],
        tol: f64,
        depth: u32,
    ) -> Result<(), ExprError> {
        let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
        let (flm, frm) = ((self.g)(lm)?, (self.g)(rm)?);
        let left = simpson(a, m, fa, &flm, fm);
        let right = simpson(m, b, fm, &frm, fb);
        let mut delta = 0.0f64;
        let mut size = 0.0f64;
        for k in 0..whole.len() {
            delta = delta.max((left[k] + right[k] - whole[k]).abs());
            size = size.max(left[k].abs() + right[k].abs());
        }
        let floor = 64.0 * f64::EPSILON * size;
        if delta <= 15.0 * tol.max(floor) || depth >= self.max_depth {
            if delta > 15.0 * tol.max(floor) {
                self.failed = true;
            }
            for k in 0..whole.len() {
                self.acc[k] += left[k] + right[k] + (left[k] + right[k] - whole[k]) / 15.0;
            }
            self.err += delta / 15.0 + floor;
            return Ok(());
        }
        self.step(a, fa, lm, &flm, m, fm, &left, tol / 2.0, depth + 1)?;
        self.step(m, fm, rm, &frm, b, fb, &right, tol / 2.0, depth + 1)
    }
}

/// Adaptive Simpson quadrature of a vector-valued integrand on `[a, b]`.
/// Returns the estimate and its error bound.
pub fn adaptive_simpson<G>(g: &G, a: f64, b: f64, dim: usize, opts: &QuadOptions) -> Result<(Vec<f64>, f64), IntegrateError>
where
    G: Fn(f64) -> Result<Vec<f64>, ExprError>,
{
    let mut s = Simpson { g, max_depth: opts.max_depth, acc: vec![0.0; dim], err: 0.0, failed: false };
    let panels = opts.panels.max(1);
    let h = (b - a) / panels as f64;
    let tol = opts.tol / panels as f64;
    let mut x0 = a;
    let mut f0 = g(a)?;
    for i in 1..=panels {
        let x1 = if i == panels { b } else { a + i as f64 * h };
        let xm = (x0 + x1) / 2.0;
        let (fm, f1) = (g(xm)?, g(x1)?);
        let whole = simpson(x0, x1, &f0, &fm, &f1);
        s.step(x0, &f0, xm, &fm, x1, &f1, &whole, tol, 0)?;
        x0 = x1;
        f0 = f1;
    }
    if s.failed {
        return Err(IntegrateError::QuadratureNonConvergence { estimate: s.acc, error_bound: s.err });
    }
    Ok((s.acc, s.err))
}

fn check_ids(alg: &Algebra<f64>, f: &ExprFn, c: &Curve) -> Result<(), IntegrateError> {
    if f.algebra_id() != alg.id() || c.alg != alg.id() {
        return Err(AlgebraError::AlgebraMismatch.into());
    }
    Ok(())
}

pub fn integrate_curve(alg: &Algebra<f64>, f: &ExprFn, c: &Curve, opts: &QuadOptions) -> Result<Integral, IntegrateError> {
    check_ids(alg, f, c)?;
    let n = alg.dim();
    let (value, error) = match &c.kind {
        CurveKind::Parametric { t0, t1, .. } => {
            let g = |t: f64| -> Result<Vec<f64>, ExprError> {
                let z = c.point(t)?;
                Ok(alg.mul_coords(&f.eval_t(&z)?, &c.velocity(t)?))
            };
            adaptive_simpson(&g, *t0, *t1, n, opts)?
        }
        CurveKind::Polyline { vertices } => {
            let segs = vertices.len() - 1;
            let seg_opts = QuadOptions { tol: opts.tol / segs as f64, ..*opts };
            let mut total = vec![0.0; n];
            let mut err = 0.0;
            for w in vertices.windows(2) {
                let d: Vec<f64> = w[1].iter().zip(&w[0]).map(|(b, a)| b - a).collect();
                let g = |s: f64| -> Result<Vec<f64>, ExprError> {
                    Ok(alg.mul_coords(&f.eval_t(&lerp(&w[0], &w[1], s))?, &d))
                };
                let (v, e) = adaptive_simpson(&g, 0.0, 1.0, n, &seg_opts)?;
                total.iter_mut().zip(&v).for_each(|(t, v)| *t += v);
                err += e;
            }
            (total, err)
        }
    };
    Ok(Integral { value: alg.element(value)?, error })
}

/// Riemann sum over `m` pieces (per segment for polylines), sampling `f` at
/// parameter midpoints.
pub fn riemann_sum(alg: &Algebra<f64>, f: &ExprFn, c: &Curve, m: usize) -> Result<E, IntegrateError> {
    check_ids(alg, f, c)?;
    let m = m.max(1);
    let (lo, hi) = c.range();
    let pieces = match &c.kind {
        CurveKind::Parametric { .. } => m,
        CurveKind::Polyline { vertices } => m * (vertices.len() - 1),
    };
    let h = (hi - lo) / pieces as f64;
    let mut acc = vec![0.0; alg.dim()];
    let mut prev = c.point(lo)?;
    for k in 1..=pieces {
        let next = c.point(lo + k as f64 * h)?;
        let mid = c.point(lo + (k as f64 - 0.5) * h)?;
        let dz: Vec<f64> = next.iter().zip(&prev).map(|(a, b)| a - b).collect();
        let term = alg.mul_coords(&f.eval_t(&mid)?, &dz);
        acc.iter_mut().zip(&term).for_each(|(a, t)| *a += t);
        prev = next;
    }
    Ok(alg.element(acc)?)
}

/// Arclength: exact for polylines, by quadrature for parametric curves.
pub fn arclength(c: &Curve, opts: &QuadOptions) -> Result<f64, IntegrateError> {
    match &c.kind {
        CurveKind::Polyline { vertices } => Ok(vertices.windows(2).map(|w| gap(&w[0], &w[1])).sum()),
        CurveKind::Parametric { t0, t1, .. } => {
            let g = |t: f64| -> Result<Vec<f64>, ExprError> {
                Ok(vec![c.velocity(t)?.iter().map(|v| v * v).sum::<f64>().sqrt()])
            };
            let (v, _) = adaptive_simpson(&g, *t0, *t1, 1, opts)?;
            Ok(v[0].abs())
        }
    }
}

/// `max |f|` on the curve: uniform samples, then zooming around the best one.
pub fn sup_norm(alg: &Algebra<f64>, f: &ExprFn, c: &Curve) -> Result<f64, IntegrateError> {
    check_ids(alg, f, c)?;
    let norm_at = |u: f64| -> Result<f64, ExprError> {
        Ok(f.eval_t(&c.point(u)?)?.iter().map(|x| x * x).sum::<f64>().sqrt())
    };
    let (lo, hi) = c.range();
    let mut step = (hi - lo) / M_SAMPLES as f64;
    let mut best = (lo, norm_at(lo)?);
    for i in 1..=M_SAMPLES {
        let u = lo + i as f64 * step;
        let v = norm_at(u)?;
        if v > best.1 {
            best = (u, v);
        }
    }
    for _ in 0..4 {
        let centre = best.0;
        for i in -16..=16 {
            let u = centre + i as f64 * step / 16.0;
            if (u - lo) * (u - hi) > 0.0 {
                continue;
            }
            let v = norm_at(u)?;
            if v > best.1 {
                best = (u, v);
            }
        }
        step /= 16.0;
    }
    Ok(best.1)
}

#[derive(Clone, Debug, Serialize)]
pub struct MlReport {
    pub integral: Integral,
    /// `|int_C f * dzeta|`.
    pub lhs: f64,
    pub m: f64,
    pub l: f64,
    pub k: f64,
    pub holds: bool,
}

/// Checks `|int_C f * dzeta| <= K M L`.
pub fn ml_bound_check(alg: &Algebra<f64>, f: &ExprFn, c: &Curve, opts: &QuadOptions) -> Result<MlReport, IntegrateError> {
    let integral = integrate_curve(alg, f, c, opts)?;
    let m = sup_norm(alg, f, c)?;
    let l = arclength(c, opts)?;
    let k = alg.submult_bound();
    let lhs = integral.value.norm();
    let holds = lhs <= k * m * l + integral.error;
    Ok(MlReport { integral, lhs, m, l, k, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct LoopReport {
    pub integral: Integral,
    pub norm: f64,
    pub vanishes: bool,
}

pub fn loop_integral(alg: &Algebra<f64>, f: &ExprFn, c: &Curve, opts: &QuadOptions) -> Result<LoopReport, IntegrateError> {
    if !c.closed {
        return Err(IntegrateError::NotClosed { gap: gap(&c.start()?, &c.end()?) });
    }
    let integral = integrate_curve(alg, f, c, opts)?;
    let norm = integral.value.norm();
    let vanishes = norm <= integral.error + VANISH_TOL;
    Ok(LoopReport { integral, norm, vanishes })
}

/// Three polyline routes from `p` to `q`: straight, through a displaced
/// midpoint, and a staircase changing one coordinate at a time.
pub fn routes(alg: &Algebra<f64>, p: &E, q: &E) -> Result<[Curve; 3], IntegrateError> {
    let (pc, qc) = (p.coords(), q.coords());
    let d: Vec<f64> = qc.iter().zip(pc).map(|(b, a)| b - a).collect();
    let len = d.iter().map(|x| x * x).sum::<f64>().sqrt();
    let axis = (0..d.len())
        .min_by(|&i, &j| d[i].abs().total_cmp(&d[j].abs()))
        .expect("algebras are non-empty");
    let mut mid = lerp(pc, qc, 0.5);
    mid[axis] += 0.5 * len.max(f64::MIN_POSITIVE);
    let straight = Curve::segment(alg, p, q)?;
    let bent = Curve::polyline(alg, &[p.clone(), alg.element(mid)?, q.clone()], Some(false))?;
    let mut stairs = vec![p.clone()];
    let mut cur = pc.to_vec();
    for k in 0..d.len() {
        if d[k] != 0.0 {
            cur[k] = qc[k];
            stairs.push(alg.element(cur.clone())?);
        }
    }
    if stairs.len() < 2 {
        stairs.push(q.clone());
    }
    let stairs = Curve::polyline(alg, &stairs, Some(false))?;
    Ok([straight, bent, stairs])
}

/// Largest distance between the integrals along the three [`routes`].
pub fn path_discrepancy(alg: &Algebra<f64>, f: &ExprFn, p: &E, q: &E, opts: &QuadOptions) -> Result<f64, IntegrateError> {
    let vals = routes(alg, p, q)?
        .iter()
        .map(|c| integrate_curve(alg, f, c, opts).map(|i| i.value))
        .collect::<Result<Vec<_>, _>>()?;
    let mut worst = 0.0f64;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            worst = worst.max(vals[i].dist(&vals[j]));
        }
    }
    Ok(worst)
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct ProbeOptions {
    pub pairs: usize,
    /// Endpoints are drawn uniformly from the cube `[-radius, radius]^n`.
    pub radius: f64,
    pub seed: u64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions { pairs: 8, radius: 1.0, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PathReport {
    pub pairs: usize,
    pub max_discrepancy: f64,
    pub worst: Option<(E, E)>,
}

/// Path-independence check on random endpoint pairs.
pub fn antiderivative_probe(
    alg: &Algebra<f64>,
    f: &ExprFn,
    probe: &ProbeOptions,
    opts: &QuadOptions,
) -> Result<PathReport, IntegrateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(probe.seed);
    let r = probe.radius;
    let mut draw = || alg.element((0..alg.dim()).map(|_| rng.gen_range(-r..=r)).collect());
    let mut report = PathReport { pairs: probe.pairs, max_discrepancy: 0.0, worst: None };
    for _ in 0..probe.pairs {
        let (p, q) = (draw()?, draw()?);
        let d = path_discrepancy(alg, f, &p, &q, opts)?;
        if report.worst.is_none() || d > report.max_discrepancy {
            report.max_discrepancy = d;
            report.worst = Some((p, q));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct FtcReport {
    /// Differentiability test of `zeta -> int_[base, zeta] f`.
    pub diff: DiffReport,
    pub expected: E,
    /// `|F'(point) - f(point)|`, infinite when `F` is not differentiable.
    pub error: f64,
}

/// Builds `F(zeta) = int f * deta` along the segment from `base` to `zeta`
/// and tests that `F' = f` at `point` by finite differences of step `h`.
pub fn ftc_probe(
    alg: &Algebra<f64>,
    f: &ExprFn,
    base: &E,
    point: &E,
    h: f64,
    opts: &QuadOptions,
) -> Result<FtcReport, IntegrateError> {
    let prim = FromClosure::new(alg.dim(), |x: &[f64]| -> Result<Vec<f64>, ExprError> {
        let z = alg.element(x.to_vec())?;
        let seg = Curve::segment(alg, base, &z).map_err(|e| ExprError::Domain(e.to_string()))?;
        let i = integrate_curve(alg, f, &seg, opts).map_err(|e| ExprError::Domain(e.to_string()))?;
        Ok(i.value.into_coords())
    });
    let diff_opts = DiffOptions { tol: FTC_TOL, step: Some(h), ..DiffOptions::default() };
    let diff = calculus::adiff_test_fn(alg, &prim, point, &diff_opts)?;
    let expected = f.eval_at(alg, point)?;
    let error = diff.derivative.as_ref().map_or(f64::INFINITY, |d| d.dist(&expected));
    Ok(FtcReport { diff, expected, error })
}

/// A number or a constant expression such as `"2*pi"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Num(f64),
    Expr(String),
}

impl Coord {
    pub fn value(&self) -> Result<f64, ExprError> {
        match self {
            Coord::Num(x) => Ok(*x),
            Coord::Expr(s) => Expr::parse(s, &VarSet::Named(Vec::new()))?.eval(&[]),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametricDef {
    pub components: Vec<String>,
    pub t: [Coord; 2],
}

/// Curve file contents. Exactly one of `parametric` and `polyline` is set.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CurveDef {
    pub algebra: Option<String>,
    pub closed: Option<bool>,
    pub parametric: Option<ParametricDef>,
    pub polyline: Option<Vec<Vec<Coord>>>,
}

impl CurveDef {
    pub fn from_toml(src: &str) -> Result<CurveDef, String> {
        toml::from_str(src).map_err(|e| e.to_string())
    }

    pub fn build(&self, alg: &Algebra<f64>) -> Result<Curve, String> {
        match (&self.parametric, &self.polyline) {
            (Some(p), None) => {
                let comps: Vec<&str> = p.components.iter().map(String::as_str).collect();
                let t0 = p.t[0].value().map_err(|e| format!("t[0]: {e}"))?;
                let t1 = p.t[1].value().map_err(|e| format!("t[1]: {e}"))?;
                Curve::parse_parametric(alg, &comps, t0, t1, self.closed).map_err(|e| e.to_string())
            }
            (None, Some(vs)) => {
                let vertices = vs
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        let coords = v.iter().map(Coord::value).collect::<Result<Vec<_>, _>>();
                        let coords = coords.map_err(|e| format!("vertex {}: {e}", i + 1))?;
                        alg.element(coords).map_err(|e| format!("vertex {}: {e}", i + 1))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Curve::polyline(alg, &vertices, self.closed).map_err(|e| e.to_string())
            }
            _ => Err("a curve needs exactly one of `parametric` or `polyline`".into()),
        }
    }
}
