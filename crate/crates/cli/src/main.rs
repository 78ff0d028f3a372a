//! `conecert` — batch front end. Every command writes one JSON report
//! (stdout or `--out`) embedding the effective configuration.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 counterexample or
//! failed identity, 3 partial / tolerance not met.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use conecert::cone::{certify_nonharmonic, cone_sample, operator_matrix, CertifyOptions, OperatorKind};
use conecert::config::Config;
use conecert::harmonic::fischer_decompose;
use conecert::poly::{json, BiPoly, ExactComplex};
use conecert::tsm::experiments::{
    default_z_samples, lemma42_check, noninjectivity_demo, z1_zero_points, DEFAULT_RADII,
};
use conecert::tsm::{laguerre_phi, twisted_mean, GaussPoly};
use conecert::verify;
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "conecert", version, about = "Exact non-harmonic cone certificates and twisted spherical means")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON configuration file (missing fields take defaults).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    abs_tol: Option<f64>,
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    #[arg(long, global = true)]
    quad_degree: Option<usize>,
    #[arg(long, global = true)]
    compare_degree: Option<usize>,
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Repeat for more diagnostics on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Polynomial operations.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Operator matrices.
    #[command(subcommand)]
    Op(OpCmd),
    /// Cone certificates and samples.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Twisted spherical means.
    #[command(subcommand)]
    Tsm(TsmCmd),
    /// Acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug)]
enum PolyCmd {
    /// Fischer decomposition P = Σ |z|^{2j} P_j.
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OpName {
    A,
    B,
    Laplacian,
    MultH,
    DeltaMultH,
    EigenShift,
}

#[derive(Subcommand, Debug)]
enum OpCmd {
    /// Exact matrix of an operator on P_{p,q}.
    Matrix {
        #[arg(long, value_enum)]
        op: OpName,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
}

#[derive(Subcommand, Debug)]
enum ConeCmd {
    /// Certify that Δ(H^s Q) = 0 forces Q = 0 up to (pmax, qmax).
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pmax: u32,
        #[arg(long)]
        qmax: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Sample points of H^{-1}(0).
    Sample {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
enum TsmCmd {
    /// Twisted spherical mean f×μ_r(z), or f×ν_r(z) with --weight.
    Mean {
        /// laguerre:k=K,nu=NU | poly:<file> | gausspoly:<file>
        #[arg(long)]
        f: String,
        #[arg(long)]
        weight: Option<PathBuf>,
        /// Comma-separated x1,y1,x2,y2,...
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        r: f64,
    },
    /// Separability and radial profile of φ_k × ν_r for a harmonic density.
    CheckLemma42 {
        #[arg(long)]
        weight: PathBuf,
        #[arg(long)]
        k: u32,
        /// Comma-separated radii.
        #[arg(long)]
        radii: Option<String>,
    },
    /// Weighted means on the zero set {z1 = 0} or on cone points.
    DemoNoninjectivity {
        #[arg(long)]
        weight: PathBuf,
        /// Comma-separated orders k.
        #[arg(long, default_value = "0,1,2,3")]
        ks: String,
        #[arg(long, value_enum, default_value_t = PointSet::Cone)]
        points: PointSet,
        /// Cone parameter for --points cone.
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 6)]
        count: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PointSet {
    Cone,
    Z1Zero,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Run all acceptance criteria.
    All,
}

/// Failure carrying its exit code.
struct Fail(u8, String);

impl From<conecert::Error> for Fail {
    fn from(e: conecert::Error) -> Self {
        Fail(1, e.to_string())
    }
}

type Res<T> = Result<T, Fail>;

fn usage(msg: impl Into<String>) -> Fail {
    Fail(1, msg.into())
}

fn read_text(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path, verbose: u8) -> Res<(BiPoly, Vec<String>)> {
    let parsed = json::from_json_str(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if verbose > 0 {
        for w in &parsed.warnings {
            eprintln!("warning: {}: {w}", path.display());
        }
    }
    Ok((parsed.value, parsed.warnings))
}

fn parse_exact(s: &str) -> Res<ExactComplex> {
    Ok(ExactComplex::parse_literal(s)?)
}

fn parse_floats(s: &str) -> Res<Vec<f64>> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| usage(format!("not a number: {t:?}"))))
        .collect()
}

fn parse_point(s: &str) -> Res<Vec<Complex64>> {
    let v = parse_floats(s)?;
    if v.is_empty() || v.len() % 2 != 0 {
        return Err(usage("--z needs an even number of coordinates x1,y1,x2,y2,..."));
    }
    Ok(v.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
}

fn effective_config(g: &Global) -> Res<Config> {
    let mut cfg = match &g.config {
        Some(p) => Config::from_json_str(&read_text(p)?).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => Config::default(),
    };
    if let Some(v) = g.abs_tol {
        cfg.abs_tol = v;
    }
    if let Some(v) = g.rel_tol {
        cfg.rel_tol = v;
    }
    if let Some(v) = g.quad_degree {
        cfg.quad_degree = v;
    }
    if let Some(v) = g.compare_degree {
        cfg.compare_degree = v;
    }
    if let Some(v) = g.max_dim {
        cfg.max_dim = v;
    }
    if let Some(p) = &g.out {
        cfg.output = Some(p.display().to_string());
    }
    if g.verbose > 0 {
        cfg.verbosity = g.verbose;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn to_value(v: &impl serde::Serialize) -> Value {
    serde_json::to_value(v).expect("report serialization")
}

/// Adds the configuration (and warnings) to a report object.
fn with_config(report: Value, cfg: &Config, warnings: &[String]) -> Value {
    let mut obj = match report {
        Value::Object(m) => m,
        other => {
            let mut m = serde_json::Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    if !warnings.is_empty() {
        obj.insert("warnings".into(), json!(warnings));
    }
    obj.insert("config".into(), to_value(cfg));
    Value::Object(obj)
}

fn execute(cmd: &Command, cfg: &Config, verbose: u8) -> Res<(Value, u8)> {
    match cmd {
        Command::Poly(PolyCmd::Decompose { input }) => {
            let (p, warnings) = read_poly(input, verbose)?;
            let d = fischer_decompose(&p)?;
            Ok((with_config(to_value(&d), cfg, &warnings), 0))
        }
        Command::Op(OpCmd::Matrix { op, n, p, q, a, s }) => {
            let need_a = || -> Res<ExactComplex> {
                parse_exact(a.as_deref().ok_or_else(|| usage("--a is required for this operator"))?)
            };
            let kind = match op {
                OpName::A => OperatorKind::A,
                OpName::B => OperatorKind::B,
                OpName::Laplacian => OperatorKind::Laplacian,
                OpName::MultH => OperatorKind::MultH { a: need_a()?, s: *s },
                OpName::DeltaMultH => OperatorKind::DeltaMultH { a: need_a()?, s: *s },
                OpName::EigenShift => OperatorKind::EigenShift { a: need_a()? },
            };
            let m = operator_matrix(*n, *p, *q, &kind)?;
            Ok((with_config(to_value(&m), cfg, &[]), 0))
        }
        Command::Cone(ConeCmd::Certify { a, n, pmax, qmax, s }) => {
            let a = parse_exact(a)?;
            let opts = CertifyOptions { max_dim: cfg.max_dim, ..Default::default() };
            let cert = certify_nonharmonic(&a, *n, *pmax, *qmax, *s, &opts)?;
            if verbose > 0 {
                eprintln!("{}", cert.verdict);
            }
            let code = cert.outcome.exit_code() as u8;
            Ok((with_config(to_value(&cert), cfg, &[]), code))
        }
        Command::Cone(ConeCmd::Sample { a, n, count }) => {
            let a = parse_exact(a)?.to_complex64();
            let s = cone_sample(a, *n, *count)?;
            Ok((with_config(to_value(&s), cfg, &[]), 0))
        }
        Command::Tsm(TsmCmd::Mean { f, weight, z, r }) => {
            let z = parse_point(z)?;
            let n = z.len();
            let mut warnings = Vec::new();
            let weight = match weight {
                Some(p) => {
                    let (w, ws) = read_poly(p, verbose)?;
                    warnings.extend(ws);
                    Some(w)
                }
                None => None,
            };
            let (g, gaussian) = parse_function(f, n, verbose, &mut warnings)?;
            if g.n() != n {
                return Err(usage(format!("--f lives on C^{} but --z has {n} coordinates", g.n())));
            }
            let ev = g.evaluator();
            let rep = if gaussian {
                twisted_mean(&|w: &[Complex64]| ev.eval(w), &z, *r, weight.as_ref(), cfg)?
            } else {
                twisted_mean(&|w: &[Complex64]| ev.eval_poly(w), &z, *r, weight.as_ref(), cfg)?
            };
            let code = if rep.err_est > cfg.abs_tol + cfg.rel_tol * rep.complex().norm() { 3 } else { 0 };
            Ok((with_config(to_value(&rep), cfg, &warnings), code))
        }
        Command::Tsm(TsmCmd::CheckLemma42 { weight, k, radii }) => {
            let (p, warnings) = read_poly(weight, verbose)?;
            let radii = match radii {
                Some(s) => parse_floats(s)?,
                None => DEFAULT_RADII.to_vec(),
            };
            let rep = lemma42_check(&p, *k, &default_z_samples(), &radii, cfg)?;
            let ok = if rep.zero_branch {
                rep.max_abs_mean < cfg.abs_tol
            } else {
                rep.separability_cv < cfg.rel_tol && rep.profile_residual < cfg.rel_tol
            };
            Ok((with_config(to_value(&rep), cfg, &warnings), if ok { 0 } else { 3 }))
        }
        Command::Tsm(TsmCmd::DemoNoninjectivity { weight, ks, points, a, count }) => {
            let (p, warnings) = read_poly(weight, verbose)?;
            let ks: Vec<u32> = ks
                .split(',')
                .map(|t| t.trim().parse().map_err(|_| usage(format!("not an order: {t:?}"))))
                .collect::<Res<_>>()?;
            let (pts, extra) = match points {
                PointSet::Z1Zero => (z1_zero_points(*count), json!({"points": "z1-zero"})),
                PointSet::Cone => {
                    let s = cone_sample(parse_exact(a)?.to_complex64(), p.n(), *count)?;
                    if s.points.is_empty() {
                        return Err(Fail(3, format!("empty cone sample: {}", s.reason.unwrap_or_default())));
                    }
                    (s.complex_points(), json!({"points": "cone", "cone": to_value(&s)}))
                }
            };
            let rep = noninjectivity_demo(&p, &ks, &DEFAULT_RADII, &pts, cfg)?;
            let mut v = to_value(&rep);
            if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
                m.extend(e);
            }
            Ok((with_config(v, cfg, &warnings), 0))
        }
        Command::Verify(VerifyCmd::All) => {
            let mut criteria = Vec::new();
            for id in 1..=12 {
                let r = verify::run_criterion(id, cfg).expect("criterion exists");
                eprintln!("{}", r.line());
                criteria.push(r);
            }
            let code = verify::exit_code(&criteria);
            let rep = verify::VerifyReport { all_passed: code == 0, exit_code: code, criteria };
            Ok((with_config(to_value(&rep), cfg, &[]), code as u8))
        }
    }
}

/// Returns the function and whether the Gaussian factor applies.
fn parse_function(spec: &str, n: usize, verbose: u8, warnings: &mut Vec<String>) -> Res<(GaussPoly, bool)> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| usage(format!("bad function spec {spec:?}")))?;
    match kind {
        "laguerre" => {
            let (mut k, mut nu) = (None, None);
            for kv in rest.split(',') {
                let (key, val) = kv.split_once('=').ok_or_else(|| usage(format!("bad parameter {kv:?}")))?;
                let val: u32 = val.trim().parse().map_err(|_| usage(format!("bad value in {kv:?}")))?;
                match key.trim() {
                    "k" => k = Some(val),
                    "nu" => nu = Some(val),
                    other => return Err(usage(format!("unknown laguerre parameter {other:?}"))),
                }
            }
            let k = k.ok_or_else(|| usage("laguerre spec needs k="))?;
            let nu = nu.unwrap_or(n as u32 - 1);
            Ok((laguerre_phi(k, nu, n), true))
        }
        "poly" | "gausspoly" => {
            let (p, ws) = read_poly(Path::new(rest), verbose)?;
            warnings.extend(ws);
            Ok((GaussPoly::new(p), kind == "gausspoly"))
        }
        other => Err(usage(format!("unknown function kind {other:?}"))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = effective_config(&cli.global).and_then(|cfg| {
        let (report, code) = execute(&cli.command, &cfg, cli.global.verbose)?;
        let mut text = serde_json::to_string_pretty(&report).expect("report serialization");
        text.push('\n');
        match &cli.global.out {
            Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?,
            None => print!("{text}"),
        }
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
