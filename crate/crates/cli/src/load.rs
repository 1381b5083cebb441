//! Resolving command-line inputs: algebras, functions, points, curves, grids.

use std::fs;
use std::path::Path;

use acalc::algebra::fixtures;
use acalc::calculus;
use acalc::expr::{Expr, ExprFn, FnDef, VarSet};
use acalc::integrate::{Curve, CurveDef};
use acalc::isomorph::{self, IsoDef, LinMap};
use acalc::{Algebra, Element, Scalar};
use anyhow::{anyhow, bail, Context, Result};

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

/// A fixture name or the path of an algebra file.
pub fn algebra<T: Scalar>(spec: &str) -> Result<acalc::algebra::Algebra<T>> {
    if let Some(a) = fixtures::by_name(spec) {
        return Ok(a);
    }
    if Path::new(spec).is_file() {
        let src = read(spec)?;
        return acalc::algebra::Algebra::from_toml(&src).map_err(|e| anyhow!("{spec}: {e}"));
    }
    bail!("unknown algebra `{spec}`: not a fixture name ({}) or a readable file", fixtures::NAMES.join(", "))
}

/// `--algebra` if given, otherwise the `algebra` key of a function file.
pub fn algebra_for(explicit: Option<&str>, fn_spec: Option<&str>) -> Result<Algebra> {
    if let Some(a) = explicit {
        return algebra(a);
    }
    if let Some(f) = fn_spec.filter(|f| Path::new(f).is_file()) {
        let def = FnDef::from_toml(&read(f)?).map_err(|e| anyhow!("{f}: {e}"))?;
        if let Some(a) = def.algebra {
            return algebra(&a);
        }
    }
    bail!("no algebra given; pass --algebra")
}

/// A builtin (`zeta`, `zetaN`, `zbarJ`), a function file, or inline
/// components separated by `;`.
pub fn function(alg: &Algebra, spec: &str) -> Result<ExprFn> {
    if let Some(f) = calculus::builtin(alg, spec) {
        return f.map_err(|e| anyhow!("--fn {spec}: {e}"));
    }
    if Path::new(spec).is_file() {
        let def = FnDef::from_toml(&read(spec)?).map_err(|e| anyhow!("{spec}: {e}"))?;
        return def.build(alg).map_err(|e| anyhow!("{spec}: {e}"));
    }
    let vars = VarSet::Indexed(alg.dim());
    let comps = spec
        .split(';')
        .enumerate()
        .map(|(i, s)| Expr::parse(s.trim(), &vars).map_err(|e| anyhow!("--fn component {}: {e}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    ExprFn::new(alg, comps).map_err(|e| anyhow!("--fn: {e}"))
}

/// A real number or constant expression such as `1/3` or `2*pi`.
pub fn number(s: &str) -> Result<f64> {
    let e = Expr::parse(s.trim(), &VarSet::Named(Vec::new())).map_err(|e| anyhow!("bad number `{s}`: {e}"))?;
    e.eval(&[]).map_err(|e| anyhow!("bad number `{s}`: {e}"))
}

pub fn coords(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(number).collect()
}

pub fn point(alg: &Algebra, s: &str) -> Result<Element> {
    let c = coords(s)?;
    alg.element(c).map_err(|e| anyhow!("point `{s}`: {e}"))
}

/// `circle`, `polyline:x,y;x,y;...` or a curve file.
pub fn curve(alg: &Algebra, spec: &str) -> Result<Curve> {
    if spec == "circle" {
        return Curve::unit_circle(alg).map_err(|e| anyhow!("{e}"));
    }
    if let Some(rest) = spec.strip_prefix("polyline:") {
        let vs = rest.split(';').map(|v| point(alg, v)).collect::<Result<Vec<_>>>()?;
        return Curve::polyline(alg, &vs, None).map_err(|e| anyhow!("{e}"));
    }
    let def = CurveDef::from_toml(&read(spec)?).map_err(|e| anyhow!("{spec}: {e}"))?;
    def.build(alg).map_err(|e| anyhow!("{spec}: {e}"))
}

/// `lo:hi:m` for every coordinate, or one such range per coordinate
/// separated by commas. Returns the Cartesian product.
pub fn grid(spec: &str, dim: usize) -> Result<Vec<Vec<f64>>> {
    let ranges = spec
        .split(',')
        .map(|r| {
            let parts: Vec<&str> = r.split(':').collect();
            if parts.len() != 3 {
                bail!("grid range `{r}` is not lo:hi:m");
            }
            let m: usize = parts[2].trim().parse().with_context(|| format!("grid resolution `{}`", parts[2]))?;
            if m < 1 {
                bail!("grid resolution must be at least 1");
            }
            Ok((number(parts[0])?, number(parts[1])?, m))
        })
        .collect::<Result<Vec<_>>>()?;
    let ranges = match ranges.len() {
        1 => vec![ranges[0]; dim],
        k if k == dim => ranges,
        k => bail!("grid has {k} ranges for {dim} coordinates"),
    };
    let mut pts = vec![Vec::with_capacity(dim)];
    for (lo, hi, m) in ranges {
        let step = if m > 1 { (hi - lo) / (m - 1) as f64 } else { 0.0 };
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (0..m).map(move |i| {
                    let mut q = p.clone();
                    q.push(lo + step * i as f64);
                    q
                })
            })
            .collect();
    }
    Ok(pts)
}

/// `rxr-hyperbolic`, `waveC` (the map from the wave algebra to `RxR`) or
/// an isomorphism file.
pub fn iso(spec: &str) -> Result<LinMap<f64>> {
    if spec.eq_ignore_ascii_case("rxr-hyperbolic") {
        return Ok(isomorph::rxr_to_hyperbolic());
    }
    if let Some(c) = spec.strip_prefix("wave").filter(|_| !Path::new(spec).is_file()) {
        let c = if c.is_empty() { 1.0 } else { number(c)? };
        return isomorph::wave_isomorphism(c).map_err(|e| anyhow!("{spec}: {e}"));
    }
    let def = IsoDef::from_toml(&read(spec)?).map_err(|e| anyhow!("{spec}: {e}"))?;
    let map = def.build(algebra(&def.source)?, algebra(&def.target)?).map_err(|e| anyhow!("{spec}: {e}"))?;
    Ok(map)
}
