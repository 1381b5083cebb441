//! `acalc`: command-line front end.
//!
//! Exit status is 0 when the requested check passes, 1 when it runs but the
//! verdict is negative, and 2 on bad input.

mod load;
mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use acalc::calculus::{self, CalcError, ConjugateFrame, DiffOptions, JacobianMode, Wirtinger};
use acalc::diffquot::{self, D2Options, Verdict};
use acalc::eqgen::{self, Names, Style};
use acalc::integrate::{self, ProbeOptions, QuadOptions};
use acalc::isomorph::Dalembert;
use acalc::{Algebra, Element, Rational64};
use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde_json::json;

use output::{yes_no, Format, Report};

const FN_HELP: &str = "\
Functions (--fn) are one of:
  zeta, zetaN, zbarJ     identity, N-th power, J-th conjugate variable
  a file                 components = [\"x1^2 + x2^2\", \"2*x1*x2\"]  or  poly = [[0, 0], [0, 0], [1, 0]]
                         optionally with algebra = \"hyperbolic\"
  inline components      \"x1^2 + x2^2; 2*x1*x2\"
Expressions use x1..xn, + - * / ^ (integer powers), sin cos exp log sqrt and pi.";

const ALG_HELP: &str = "\
Algebras (--algebra) are fixture names (reals, complex, hyperbolic, dual, dualN, trihyperbolic,
hypN, RxR, RxRxR, CxC, quaternions, mat2, uppertri6, waveC) or algebra files:
  name = \"hyperbolic\"
  dim = 2
  unity = [1, 0]                       # coordinates of the unity
  table = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]   # table[i][j] = v_i * v_j
or, for one generator g with basis 1, g, ..., g^(n-1):
  relations = { cyclic = [1, 0] }      # g^n = sum a_k g^k
Numbers may be integers, decimals or strings such as \"1/3\".";

const CURVE_HELP: &str = "\
Curves (--curve) are `circle` (cos t + sin t v2), `polyline:x,y;x,y;...`, or files:
  [parametric]
  components = [\"cos(t)\", \"sin(t)\"]
  t = [0, \"2*pi\"]
or
  polyline = [[0, 0], [1, 0], [1, 1], [0, 0]]
with an optional `closed = true|false` (inferred from the endpoints when absent).";

const ISO_HELP: &str = "\
Maps are `rxr-hyperbolic`, `waveC` (wave algebra with speed C onto RxR) or files:
  source = \"RxR\"
  target = \"hyperbolic\"
  matrix = [[\"1/2\", \"1/2\"], [\"1/2\", \"-1/2\"]]   # column j is the image of source basis vector j";

#[derive(Parser)]
#[command(name = "acalc", version, about = "Calculus over finite-dimensional real associative unital algebras")]
#[command(after_help = "Exit status: 0 check passed, 1 check failed, 2 input error.")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Output format; latex is available for gen-cr and gen-laplace.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for random samples and directions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for grid and multi-point evaluation.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Overrides the check tolerance of the subcommand.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write the report to a file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AlgArg {
    /// Fixture name or algebra file.
    #[arg(long, short)]
    algebra: Option<String>,
}

#[derive(Args)]
struct FnPoint {
    #[command(flatten)]
    alg: AlgArg,
    /// Builtin name, function file or inline components.
    #[arg(long = "fn", short = 'f')]
    func: String,
    /// Comma-separated coordinates.
    #[arg(long, short, allow_hyphen_values = true)]
    point: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Load an algebra and check associativity and the unity.
    #[command(after_help = ALG_HELP)]
    ValidateAlgebra {
        /// Fixture name or algebra file.
        algebra: String,
    },
    /// Classify an element as zero, unit or zero divisor.
    #[command(after_help = ALG_HELP)]
    Classify {
        #[command(flatten)]
        alg: AlgArg,
        #[arg(long, short, allow_hyphen_values = true)]
        point: String,
    },
    /// Find a basis of units starting with the unity.
    #[command(after_help = ALG_HELP)]
    InvertibleBasis {
        #[command(flatten)]
        alg: AlgArg,
        /// Also print the structure table in the new basis.
        #[arg(long)]
        rebase: bool,
    },
    /// Test differentiability over the algebra at a point (default tolerance 1e-6).
    #[command(after_help = FN_HELP)]
    CheckAdiff {
        #[command(flatten)]
        at: FnPoint,
        /// Use central differences instead of the symbolic Jacobian.
        #[arg(long)]
        fd: bool,
        /// Finite-difference step for --fd.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Derivative of order k, the k-fold derivative along the unity.
    #[command(after_help = FN_HELP)]
    Derivative {
        #[command(flatten)]
        at: FnPoint,
        #[arg(long, short = 'k', default_value_t = 1)]
        order: usize,
    },
    /// Wirtinger-type derivatives with respect to zeta and its conjugates.
    #[command(after_help = FN_HELP)]
    Wirtinger {
        #[command(flatten)]
        at: FnPoint,
        /// `auto`, `standard`, or basis vectors `a,b;c,d;...` starting with the unity.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        frame: String,
    },
    /// Generalized Cauchy-Riemann equations (needs the unity as first basis vector).
    #[command(after_help = ALG_HELP)]
    GenCr {
        #[command(flatten)]
        alg: AlgArg,
        /// Comma-separated variable names for printing.
        #[arg(long)]
        vars: Option<String>,
    },
    /// Generalized Laplace equations of order k for a commutative algebra.
    #[command(after_help = ALG_HELP)]
    GenLaplace {
        #[command(flatten)]
        alg: AlgArg,
        #[arg(long, short = 'k', default_value_t = 2)]
        order: usize,
        /// Rational arithmetic instead of floating point.
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        vars: Option<String>,
        /// Function whose components are checked against the equations.
        #[arg(long)]
        check: Option<String>,
        /// Grid `lo:hi:m` (per coordinate, comma-separated) for --check.
        #[arg(long, default_value = "-1:1:5", allow_hyphen_values = true)]
        grid: String,
    },
    /// Taylor polynomial of order k at a point evaluated at an offset.
    #[command(after_help = FN_HELP)]
    Taylor {
        #[command(flatten)]
        at: FnPoint,
        #[arg(long, allow_hyphen_values = true)]
        offset: String,
        #[arg(long, short = 'k', default_value_t = 2)]
        order: usize,
    },
    /// Curve integral with error bound and ML estimate; exit 1 if the ML bound fails.
    #[command(after_help = CURVE_HELP)]
    Integrate {
        #[command(flatten)]
        alg: AlgArg,
        #[arg(long = "fn", short = 'f')]
        func: String,
        #[arg(long, short)]
        curve: String,
        /// Also report a Riemann sum with this many pieces.
        #[arg(long)]
        riemann: Option<usize>,
        /// Path-independence probe on this many random endpoint pairs.
        #[arg(long)]
        probe: Option<usize>,
        /// Check that the primitive from the curve start differentiates back to f here.
        #[arg(long, allow_hyphen_values = true)]
        ftc: Option<String>,
    },
    /// Deleted difference quotient probe; repeat --point for several points.
    #[command(after_help = FN_HELP)]
    D2Probe {
        #[command(flatten)]
        alg: AlgArg,
        #[arg(long = "fn", short = 'f')]
        func: String,
        #[arg(long, short, required = true, allow_hyphen_values = true)]
        point: Vec<String>,
        #[arg(long, default_value_t = 16)]
        directions: usize,
        /// Print every quotient.
        #[arg(long)]
        table: bool,
    },
    /// Check that a linear map is an algebra isomorphism.
    #[command(after_help = ISO_HELP)]
    VerifyIso {
        map: String,
        /// Also compare element kinds on this many random samples.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Transport a function along an isomorphism.
    #[command(after_help = ISO_HELP)]
    Transfer {
        map: String,
        /// Function on the source algebra.
        #[arg(long = "fn", short = 'f')]
        func: String,
        /// Evaluate the result at this target point.
        #[arg(long, short, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Wave-equation solution through the wave algebra (default tolerance 1e-6).
    DemoDalembert {
        /// Wave speed.
        #[arg(long, short, default_value = "1")]
        c: String,
        /// First profile in the variable s.
        #[arg(long, default_value = "sin(s)")]
        f1: String,
        #[arg(long, default_value = "s^2")]
        f2: String,
        /// Grid over (x, t).
        #[arg(long, default_value = "0:1:20", allow_hyphen_values = true)]
        grid: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let Some(out) = report.render(cli.global.format) else {
                eprintln!("error: latex output is only available for gen-cr and gen-laplace");
                return ExitCode::from(2);
            };
            if let Some(path) = &cli.global.output {
                if let Err(e) = fs::write(path, out) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{out}");
            }
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if t.is_nan() || t <= 0.0 {
            bail!("--tol must be positive");
        }
    }
    if let Some(j) = g.jobs {
        if j == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    match &cli.cmd {
        Cmd::ValidateAlgebra { algebra } => validate(algebra),
        Cmd::Classify { alg, point } => classify(&alg_of(alg, None)?, point),
        Cmd::InvertibleBasis { alg, rebase } => invertible_basis(&alg_of(alg, None)?, *rebase),
        Cmd::CheckAdiff { at, fd, step } => {
            let a = alg_of(&at.alg, Some(&at.func))?;
            let mode = if *fd { JacobianMode::FiniteDifference } else { JacobianMode::Symbolic };
            let opts = DiffOptions { tol: g.tol.unwrap_or(calculus::DEFAULT_TOL), step: *step, mode };
            check_adiff(&a, &at.func, &at.point, &opts)
        }
        Cmd::Derivative { at, order } => {
            let a = alg_of(&at.alg, Some(&at.func))?;
            derivative(&a, &at.func, &at.point, *order, g.tol.unwrap_or(calculus::DEFAULT_TOL))
        }
        Cmd::Wirtinger { at, frame } => wirtinger(&alg_of(&at.alg, Some(&at.func))?, &at.func, &at.point, frame),
        Cmd::GenCr { alg, vars } => gen_cr(alg, vars.as_deref()),
        Cmd::GenLaplace { alg, order, exact, vars, check, grid } => {
            gen_laplace(alg, *order, *exact, vars.as_deref(), check.as_deref(), grid, g.tol.unwrap_or(1e-8))
        }
        Cmd::Taylor { at, offset, order } => taylor(&alg_of(&at.alg, Some(&at.func))?, &at.func, &at.point, offset, *order),
        Cmd::Integrate { alg, func, curve, riemann, probe, ftc } => {
            let a = alg_of(alg, Some(func))?;
            integrate(&a, func, curve, *riemann, *probe, ftc.as_deref(), g)
        }
        Cmd::D2Probe { alg, func, point, directions, table } => {
            let opts = D2Options { directions: *directions, tol: g.tol.unwrap_or(1e-6), seed: g.seed, ..D2Options::default() };
            d2_probe(&alg_of(alg, Some(func))?, func, point, &opts, *table)
        }
        Cmd::VerifyIso { map, samples } => verify_iso(map, *samples, g.seed),
        Cmd::Transfer { map, func, point } => transfer(map, func, point.as_deref()),
        Cmd::DemoDalembert { c, f1, f2, grid } => dalembert(c, f1, f2, grid, g.tol.unwrap_or(1e-6)),
    }
}

fn alg_of(a: &AlgArg, func: Option<&str>) -> Result<Algebra> {
    load::algebra_for(a.algebra.as_deref(), func)
}

fn validate(spec: &str) -> Result<Report> {
    let a = load::algebra::<f64>(spec)?;
    let mut r = Report::new(
        true,
        json!({
            "name": a.name(), "dim": a.dim(), "labels": a.labels(), "unity": a.one(),
            "commutative": a.is_commutative(), "submultiplicative_bound": a.submult_bound(),
        }),
    );
    r.line("algebra", a.name())
        .line("dimension", a.dim())
        .line("basis", a.labels().join(", "))
        .line("unity", a.one())
        .line("commutative", yes_no(a.is_commutative()))
        .line("submultiplicative bound", a.submult_bound())
        .raw("associative with unity: yes");
    Ok(r)
}

fn classify(a: &Algebra, point: &str) -> Result<Report> {
    let x = load::point(a, point)?;
    let c = a.classify(&x)?;
    let mut r = Report::new(true, json!({ "point": x, "kind": c.kind.to_string(), "inverse": c.inverse, "witness": c.witness }));
    r.line("point", &x).line("kind", c.kind);
    if let Some(inv) = &c.inverse {
        r.line("inverse", inv);
    }
    if let Some(w) = &c.witness {
        r.line("annihilates", w);
    }
    Ok(r)
}

fn invertible_basis(a: &Algebra, rebase: bool) -> Result<Report> {
    let basis = match a.find_invertible_basis() {
        Ok(b) => b,
        Err(e) => {
            let mut r = Report::new(false, json!({ "algebra": a.name(), "error": e.to_string() }));
            r.line("algebra", a.name()).line("invertible basis", format!("not found ({e})"));
            return Ok(r);
        }
    };
    let mut r = Report::new(true, json!({ "algebra": a.name(), "basis": basis }));
    r.line("algebra", a.name());
    for (i, b) in basis.iter().enumerate() {
        r.line(&format!("w{}", i + 1), b);
    }
    if rebase {
        let cols: Vec<DVector<f64>> = basis.iter().map(|b| DVector::from_column_slice(b.coords())).collect();
        let rb = a.rebased(&DMatrix::from_columns(&cols))?;
        let toml = rb.to_def().to_toml();
        r.raw("").raw(toml.trim_end());
        r.json["rebased"] = json!(toml);
    }
    Ok(r)
}

fn check_adiff(a: &Algebra, func: &str, point: &str, opts: &DiffOptions) -> Result<Report> {
    let f = load::function(a, func)?;
    let p = load::point(a, point)?;
    let rep = calculus::adiff_test(a, &f, &p, opts)?;
    let mut r = Report::new(rep.is_adiff, serde_json::to_value(&rep)?);
    r.line("algebra", a.name())
        .line("point", &p)
        .line("residual", format!("{:.3e}", rep.residual))
        .line("differentiable", yes_no(rep.is_adiff));
    if let Some(d) = &rep.derivative {
        r.line("derivative", d);
    }
    Ok(r)
}

fn derivative(a: &Algebra, func: &str, point: &str, k: usize, tol: f64) -> Result<Report> {
    let f = load::function(a, func)?;
    let p = load::point(a, point)?;
    match calculus::higher_derivative(a, &f, &p, k, tol) {
        Ok(d) => {
            let mut r = Report::new(true, json!({ "point": p, "order": k, "derivative": d }));
            r.line("point", &p).line(&format!("derivative of order {k}"), &d);
            Ok(r)
        }
        Err(CalcError::NotADifferentiable { residual }) => {
            let mut r = Report::new(false, json!({ "point": p, "order": k, "residual": residual }));
            r.line("point", &p).line("differentiable", "no").line("residual", format!("{residual:.3e}"));
            Ok(r)
        }
        Err(e) => Err(e.into()),
    }
}

fn frame_of(a: &Algebra, spec: &str) -> Result<ConjugateFrame, CalcError> {
    match spec {
        "auto" => ConjugateFrame::auto(a),
        "standard" => ConjugateFrame::standard(a),
        vs => {
            let basis = vs
                .split(';')
                .map(|v| load::point(a, v).map_err(|e| CalcError::NonInvertibleBasis(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            ConjugateFrame::new(a, basis)
        }
    }
}

fn wirtinger(a: &Algebra, func: &str, point: &str, frame: &str) -> Result<Report> {
    let f = load::function(a, func)?;
    let p = load::point(a, point)?;
    let fr = match frame_of(a, frame) {
        Ok(fr) => fr,
        Err(e @ CalcError::NonInvertibleBasis(_)) => {
            let mut r = Report::new(false, json!({ "error": e.to_string() }));
            r.line("frame", e);
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    let dz = calculus::wirtinger_apply(a, &fr, &f, Wirtinger::Zeta, &p)?;
    let mut r = Report::new(true, json!({}));
    r.line("frame", fr.basis().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" "))
        .line("point", &p)
        .line("d/dzeta", &dz);
    let mut bars = Vec::new();
    for j in 2..=a.dim() {
        let d = calculus::wirtinger_apply(a, &fr, &f, Wirtinger::ZetaBar(j), &p)?;
        r.line(&format!("d/dzetabar{j}"), &d);
        bars.push(d);
    }
    r.json = json!({ "frame": fr.basis(), "point": p, "d_zeta": dz, "d_zetabar": bars });
    Ok(r)
}

fn names(n: usize, vars: Option<&str>) -> Result<Names> {
    let names = Names::default_for(n);
    match vars {
        None => Ok(names),
        Some(v) => {
            let vs: Vec<String> = v.split(',').map(|s| s.trim().to_string()).collect();
            if vs.len() != n {
                bail!("--vars lists {} names for {n} coordinates", vs.len());
            }
            Ok(names.with_vars(vs))
        }
    }
}

fn equations_report<T: acalc::Scalar>(sys: &eqgen::EquationSystem<T>, names: &Names, alg: &str) -> Report {
    let text = sys.render(Style::Text, names);
    let latex = sys.render(Style::Latex, names);
    let mut r = Report::new(true, json!({ "algebra": alg, "equations": text, "latex": latex, "rank": sys.rank }));
    r.line("algebra", alg).line("equations", text.len());
    for e in &text {
        r.raw(format!("  {e}"));
    }
    r.latex = Some(latex.join(" \\\\\n") + "\n");
    r
}

fn gen_cr(alg: &AlgArg, vars: Option<&str>) -> Result<Report> {
    let a = alg_of(alg, None)?;
    let sys = eqgen::gen_cr(&a)?;
    Ok(equations_report(&sys, &names(a.dim(), vars)?, a.name()))
}

fn gen_laplace(
    alg: &AlgArg,
    order: usize,
    exact: bool,
    vars: Option<&str>,
    check: Option<&str>,
    grid: &str,
    tol: f64,
) -> Result<Report> {
    let a = alg_of(alg, check)?;
    let names = names(a.dim(), vars)?;
    let (mut r, sys) = if exact {
        let spec = alg.algebra.clone().unwrap_or_else(|| a.name().to_string());
        let q = load::algebra::<Rational64>(&spec)?;
        let sys = eqgen::gen_laplace_k_exact(&q, order)?;
        (equations_report(&sys, &names, q.name()), None)
    } else {
        let sys = eqgen::gen_laplace_k(&a, order)?;
        (equations_report(&sys, &names, a.name()), Some(sys))
    };
    if let Some(func) = check {
        let f = load::function(&a, func)?;
        let pts = load::grid(grid, a.dim())?;
        let sys = match sys {
            Some(s) => s,
            None => eqgen::gen_laplace_k(&a, order)?,
        };
        let residual = pts
            .par_chunks(64)
            .map(|chunk| eqgen::check_residual(&sys, &f, chunk))
            .collect::<Result<Vec<f64>, _>>()?
            .into_iter()
            .fold(0.0, f64::max);
        let ok = residual <= tol;
        r.pass = ok;
        r.line("grid points", pts.len())
            .line("max residual", format!("{residual:.3e}"))
            .line("satisfied", yes_no(ok));
        r.json["residual"] = json!(residual);
        r.json["satisfied"] = json!(r.pass);
    }
    Ok(r)
}

fn taylor(a: &Algebra, func: &str, point: &str, offset: &str, k: usize) -> Result<Report> {
    let f = load::function(a, func)?;
    let p = load::point(a, point)?;
    let h = load::point(a, offset)?;
    let t = match calculus::taylor_eval(a, &f, &p, &h, k) {
        Ok(t) => t,
        Err(CalcError::NotADifferentiable { residual }) => {
            let mut r = Report::new(false, json!({ "residual": residual }));
            r.line("differentiable", "no").line("residual", format!("{residual:.3e}"));
            return Ok(r);
        }
        Err(e) => return Err(e.into()),
    };
    let exact = f.eval_at(a, &p.add(&h)?)?;
    let rem = t.dist(&exact);
    let mut r = Report::new(true, json!({ "order": k, "taylor": t, "value": exact, "remainder": rem }));
    r.line(&format!("taylor polynomial of order {k}"), &t)
        .line("f(p + h)", &exact)
        .line("remainder", format!("{rem:.3e}"));
    Ok(r)
}

fn integrate(
    a: &Algebra,
    func: &str,
    curve: &str,
    riemann: Option<usize>,
    probe: Option<usize>,
    ftc: Option<&str>,
    g: &Global,
) -> Result<Report> {
    let f = load::function(a, func)?;
    let c = load::curve(a, curve)?;
    let opts = QuadOptions { tol: g.tol.unwrap_or(QuadOptions::default().tol), ..QuadOptions::default() };
    let ml = integrate::ml_bound_check(a, &f, &c, &opts)?;
    let mut r = Report::new(ml.holds, json!({ "integral": ml.integral, "ml": ml }));
    r.line("integral", &ml.integral.value)
        .line("error bound", format!("{:.3e}", ml.integral.error))
        .line("ML check", format!("{:.6} <= K M L = {:.6} * {:.6} * {:.6}: {}", ml.lhs, ml.k, ml.m, ml.l, yes_no(ml.holds)));
    if c.is_closed() {
        let vanishes = ml.lhs <= ml.integral.error + integrate::VANISH_TOL;
        r.line("closed loop integral vanishes", yes_no(vanishes));
        r.json["vanishes"] = json!(vanishes);
    }
    if let Some(m) = riemann {
        let s = integrate::riemann_sum(a, &f, &c, m)?;
        r.line(&format!("riemann sum ({m} pieces)"), &s);
        r.json["riemann"] = json!(s);
    }
    if let Some(pairs) = probe {
        let p = integrate::antiderivative_probe(a, &f, &ProbeOptions { pairs, seed: g.seed, ..ProbeOptions::default() }, &opts)?;
        r.line("path discrepancy", format!("{:.3e} over {pairs} pairs", p.max_discrepancy));
        r.json["probe"] = json!(p);
    }
    if let Some(pt) = ftc {
        let x = load::point(a, pt)?;
        let base = a.element(c.start()?)?;
        let rep = integrate::ftc_probe(a, &f, &base, &x, 1e-3, &opts)?;
        r.line("primitive derivative error", format!("{:.3e}", rep.error));
        r.json["ftc"] = json!(rep);
    }
    Ok(r)
}

fn d2_probe(a: &Algebra, func: &str, points: &[String], opts: &D2Options, table: bool) -> Result<Report> {
    let f = load::function(a, func)?;
    let pts = points.iter().map(|p| load::point(a, p)).collect::<Result<Vec<_>>>()?;
    let probes = pts
        .par_iter()
        .map(|p| {
            let probe = diffquot::d2_probe(a, &f, p, opts)?;
            let d1 = calculus::adiff_test(a, &f, p, &DiffOptions::default())?;
            Ok((probe, d1))
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = probes.iter().all(|(p, _)| matches!(p.verdict, Verdict::Converges { .. }));
    let mut r = Report::new(pass, json!(probes.iter().map(|(p, d)| json!({ "probe": p, "d1": d })).collect::<Vec<_>>()));
    for (p, d1) in &probes {
        r.line("point", &p.point);
        match &p.verdict {
            Verdict::Converges { limit } => r.line("verdict", format!("converges to {limit}")),
            Verdict::Diverges { reason } => r.line("verdict", format!("diverges ({reason})")),
            Verdict::Inconclusive => r.line("verdict", "inconclusive"),
        };
        match &d1.derivative {
            Some(d) => r.line("jacobian derivative", d),
            None => r.line("jacobian derivative", format!("none (residual {:.3e})", d1.residual)),
        };
        if table {
            for (dir, row) in p.directions.iter().zip(&p.quotients) {
                for (rad, q) in p.radii.iter().zip(row) {
                    r.raw(format!("  {dir}  {rad:.3e}  {q}"));
                }
            }
        }
    }
    Ok(r)
}

fn verify_iso(spec: &str, samples: usize, seed: u64) -> Result<Report> {
    let (map, rep) = load::iso(spec)?.verify()?;
    let mut r = Report::new(rep.is_isomorphism(), json!({ "report": rep }));
    r.line("source", map.source().name())
        .line("target", map.target().name())
        .line("invertible", yes_no(rep.invertible))
        .line("unity preserved", yes_no(rep.unity_preserved))
        .line("multiplicative", yes_no(rep.multiplicative))
        .line("max product residual", format!("{:.3e}", rep.max_product_residual));
    if let Some((i, j)) = rep.failing_pair {
        r.line("first failing pair", format!("v{} * v{}", i + 1, j + 1));
    }
    if samples > 0 && map.is_verified() {
        let k = map.kind_transfer(samples, seed)?;
        r.pass &= k.holds();
        r.line(
            "kind transfer",
            format!("{} elements ({} units, {} zero divisors), {} mismatches", k.samples, k.units, k.zero_divisors, k.mismatches),
        )
        .line("max inverse error", format!("{:.3e}", k.max_inverse_error));
        r.json["kinds"] = json!(k);
    }
    Ok(r)
}

fn transfer(spec: &str, func: &str, point: Option<&str>) -> Result<Report> {
    let (map, rep) = load::iso(spec)?.verify()?;
    if !rep.is_isomorphism() {
        let mut r = Report::new(false, json!({ "report": rep }));
        r.line("isomorphism", "no");
        return Ok(r);
    }
    let f = load::function(map.source(), func)?;
    let g = map.transfer(&f)?;
    let vars = acalc::expr::VarSet::Indexed(map.target().dim());
    let comps: Vec<String> = g.components().iter().map(|c| c.display(&vars).to_string()).collect();
    let mut r = Report::new(true, json!({ "source": map.source().name(), "target": map.target().name(), "components": comps }));
    r.line("source", map.source().name()).line("target", map.target().name());
    for (i, c) in comps.iter().enumerate() {
        r.line(&format!("component {}", i + 1), c);
    }
    if let Some(p) = point {
        let y: Element = load::point(map.target(), p)?;
        let v = g.eval_at(map.target(), &y)?;
        r.line("value", &v);
        r.json["value"] = json!(v);
    }
    Ok(r)
}

fn dalembert(c: &str, f1: &str, f2: &str, grid: &str, tol: f64) -> Result<Report> {
    let c = load::number(c)?;
    let d = Dalembert::new(c, f1, f2).map_err(|e| anyhow!("{e}"))?;
    let pts: Vec<[f64; 2]> = load::grid(grid, 2)?.into_iter().map(|p| [p[0], p[1]]).collect();
    let chunks: Vec<(f64, f64)> = pts
        .par_chunks(64)
        .map(|ch| Ok((d.wave_residual(ch)?, d.laplace_residual(ch)?)))
        .collect::<Result<Vec<_>, acalc::isomorph::IsoError>>()?;
    let wave = chunks.iter().map(|c| c.0).fold(0.0, f64::max);
    let laplace = chunks.iter().map(|c| c.1).fold(0.0, f64::max);
    let vars = acalc::expr::VarSet::Named(vec!["x".into(), "t".into()]);
    let comps: Vec<String> = d.solution.components().iter().map(|e| e.display(&vars).to_string()).collect();
    let pass = wave <= tol;
    let mut r = Report::new(
        pass,
        json!({ "c": c, "u": comps[0], "v": comps[1], "grid_points": pts.len(), "wave_residual": wave, "laplace_residual": laplace }),
    );
    r.line("algebra", d.algebra.name())
        .line("u(x, t)", &comps[0])
        .line("v(x, t)", &comps[1])
        .line("grid points", pts.len())
        .line("max |c^2 u_xx - u_tt|", format!("{wave:.3e}"))
        .line("generated equation residual", format!("{laplace:.3e}"))
        .line("wave equation satisfied", yes_no(pass));
    Ok(r)
}
