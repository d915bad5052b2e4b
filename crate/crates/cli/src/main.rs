//! Command-line front end: exponent tables, coefficients, certificate bundles and the
//! numerical checks.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use output::{emit, fail, Format, EXIT_DATA, EXIT_USAGE};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use triharmonic::certificate::SCHEMA_VERSION;
use triharmonic::certifier::{self, split_parameters, CertifyConfig, LEMMA_IDS};
use triharmonic::coefficients::{coefficient_set, singular_stability, Params};
use triharmonic::exact_algebra::{parse_rational, Rational, DEFAULT_PRECISION_CAP};
use triharmonic::exponents::{exponent_chain_report, ExponentChainReport};
use triharmonic::numerics::{
    fd_check, monotonicity_bound_check, pohozaev_residual, radial_ivp_solve, EnergyConfig, EnergyModel,
    FormulaVariant, HarmonicTestFunction, QuadError, RadialKind, RadialProfile,
};
use triharmonic::{Certificate, Status};

/// Environment variable capping the bits used by radical enclosures.
const PRECISION_ENV: &str = "TRIHARMONIC_PRECISION_CAP";

#[derive(Parser)]
#[command(name = "triharmonic", version, about = "Critical exponents and certified inequalities for the triharmonic Lane-Emden equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical exponents and their ordering, one row per dimension.
    Exponents {
        #[arg(long, conflicts_with = "n_range")]
        n: Option<i64>,
        /// Inclusive range `a:b`.
        #[arg(long)]
        n_range: Option<String>,
        /// Enclosure width (rational or decimal).
        #[arg(long, default_value = "1e-12")]
        width: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact coefficients at one `(n, p)` or `(n, k)`.
    Coeffs {
        #[arg(long)]
        n: i64,
        #[arg(long, required_unless_present = "k", conflicts_with = "k")]
        p: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certificate bundle; exit code 0/1/2 for verified/falsified/inconclusive.
    Certify {
        /// Run one claim only.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(LEMMA_IDS))]
        lemma: Option<String>,
        #[arg(long)]
        n_max: Option<i64>,
        #[arg(long, default_value = "1e-20")]
        width: String,
        /// Split parameter at n = 21.
        #[arg(long, default_value = "0.9342")]
        alpha: String,
        #[arg(long, env = PRECISION_ENV, default_value_t = DEFAULT_PRECISION_CAP)]
        precision_cap: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        tamper: Option<String>,
    },
    /// Finite-difference referee for the energy derivative and the lower bound of the
    /// adjusted energy.
    Monotonicity {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        p: String,
        #[arg(long, value_enum, default_value_t = ProfileArg::Gaussian)]
        profile: ProfileArg,
        /// Width, rate or power of the profile; bump support.
        #[arg(long)]
        shape: Option<f64>,
        #[arg(long, default_value_t = 0)]
        lmode: u32,
        /// `a:b:steps`, evenly spaced and inclusive.
        #[arg(long, default_value = "0.5:2:5")]
        lambda_range: String,
        /// Split parameter; by default 0 where `A1 + 12 >= 0`, else the certified one.
        #[arg(long)]
        alpha: Option<f64>,
        /// Relative residual allowed between formula and finite differences.
        #[arg(long, default_value_t = 1e-6)]
        fd_tol: f64,
        #[arg(long, default_value_t = 1e-13)]
        quad_tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radial solution from regular data at the origin; writes the profile as JSON.
    Radial {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        u0: f64,
        #[arg(long, default_value_t = 0.0)]
        v0: f64,
        #[arg(long, default_value_t = 0.0)]
        w0: f64,
        #[arg(long, default_value_t = 2.0)]
        rmax: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pohozaev balance of a stored radial profile at radius R.
    Pohozaev {
        #[arg(long)]
        profile_file: PathBuf,
        #[arg(long = "R")]
        radius: f64,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Gaussian,
    Bump,
    Exponential,
    /// `r^{-q}`; with the default shape, the homogeneous profile.
    Power,
}

fn rational_arg(name: &str, s: &str) -> Result<Rational, ExitCode> {
    parse_rational(s).map_err(|_| fail(EXIT_USAGE, &format!("--{name}: cannot parse '{s}'")))
}

fn parse_n_range(s: &str) -> Result<Vec<i64>, ExitCode> {
    let bad = || fail(EXIT_USAGE, &format!("--n-range: expected a:b, got '{s}'"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn parse_lambda_range(s: &str) -> Result<Vec<f64>, ExitCode> {
    let bad = || fail(EXIT_USAGE, &format!("--lambda-range: expected a:b:steps with 0 < a <= b, got '{s}'"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let steps: usize = parts[2].parse().map_err(|_| bad())?;
    if !(a > 0.0 && b >= a && steps >= 1) {
        return Err(bad());
    }
    if steps == 1 {
        return Ok(vec![a]);
    }
    Ok((0..steps).map(|i| a + (b - a) * i as f64 / (steps - 1) as f64).collect())
}

fn status_name(s: Status) -> String {
    serde_json::to_value(s).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

fn cmd_exponents(n: Option<i64>, n_range: Option<String>, width: &str, format: Format, out: Option<PathBuf>) -> ExitCode {
    let dims = match (n, n_range) {
        (Some(n), None) => vec![n],
        (None, Some(r)) => match parse_n_range(&r) {
            Ok(d) => d,
            Err(c) => return c,
        },
        _ => return fail(EXIT_USAGE, "give exactly one of --n or --n-range"),
    };
    let width = match rational_arg("width", width) {
        Ok(w) => w,
        Err(c) => return c,
    };
    let mut rows: Vec<ExponentChainReport> = Vec::new();
    for n in dims {
        match exponent_chain_report(n, &width) {
            Ok(r) => rows.push(r),
            Err(e) => return fail(EXIT_USAGE, &e.to_string()),
        }
    }
    let status = rows.iter().map(|r| Certificate::worst_status(&r.certificates)).fold(Status::Verified, Status::worst);
    let csv: Vec<Vec<String>> = rows.iter().map(|r| r.csv_record()).collect();
    let pretty: Vec<String> = rows
        .iter()
        .map(|r| {
            let e = &r.exponents;
            format!(
                "n = {:>4}  sobolev {}  pc {}  pm {}  pm1 {}  ordering {}",
                r.n,
                e.sobolev,
                e.pc,
                e.pm,
                e.pm1,
                status_name(Certificate::worst_status(&r.certificates))
            )
        })
        .collect();
    let doc = json!({ "schema_version": SCHEMA_VERSION, "rows": rows });
    emit(&doc, format, (ExponentChainReport::csv_header(), csv), &pretty, out.as_deref(), status.exit_code())
}

fn cmd_coeffs(n: i64, p: Option<String>, k: Option<String>, format: Format, out: Option<PathBuf>) -> ExitCode {
    let params = match (p, k) {
        (Some(p), None) => rational_arg("p", &p).map(|p| Params::new(n, p)),
        (None, Some(k)) => rational_arg("k", &k).map(|k| Params::from_k(n, k)),
        _ => return fail(EXIT_USAGE, "give exactly one of --p or --k"),
    };
    let params = match params {
        Ok(Ok(p)) => p,
        Ok(Err(e)) => return fail(EXIT_USAGE, &e.to_string()),
        Err(c) => return c,
    };
    let set = match coefficient_set(&params) {
        Ok(s) => s,
        Err(e) => return fail(EXIT_USAGE, &e.to_string()),
    };
    let stability = singular_stability(&params);
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "supercritical": params.supercritical(),
        "singular_stability": stability,
        "coefficients": set,
    });
    let fields = doc["coefficients"].as_object().cloned().unwrap_or_default();
    let header: Vec<&str> = fields.keys().map(|k| k.as_str()).collect();
    let row: Vec<String> = fields.values().map(|v| v.as_str().map_or(v.to_string(), String::from)).collect();
    let mut pretty: Vec<String> = fields.iter().map(|(k, v)| format!("{k:>14} = {}", v.as_str().unwrap_or_default())).collect();
    pretty.push(format!("supercritical: {}, singular solution: {:?}", params.supercritical(), stability));
    emit(&doc, format, (header.clone(), vec![row]), &pretty, out.as_deref(), 0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_certify(
    lemma: Option<String>,
    n_max: Option<i64>,
    width: &str,
    alpha: &str,
    precision_cap: u32,
    format: Format,
    out: Option<PathBuf>,
    tamper: Option<String>,
) -> ExitCode {
    let (width, alpha) = match (rational_arg("width", width), rational_arg("alpha", alpha)) {
        (Ok(w), Ok(a)) => (w, a),
        (Err(c), _) | (_, Err(c)) => return c,
    };
    let config = CertifyConfig {
        lemma,
        n_max,
        width,
        precision_cap,
        tamper_a2: tamper.is_some(),
        alpha,
        ..CertifyConfig::default()
    };
    let bundle = match certifier::run_all(&config) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_USAGE, &e.to_string()),
    };
    let header = vec!["claim_id", "status", "statement"];
    let rows: Vec<Vec<String>> = bundle
        .certificates
        .iter()
        .map(|c| vec![c.claim_id.clone(), status_name(c.status), c.statement.clone()])
        .collect();
    let pretty: Vec<String> = rows.iter().map(|r| format!("{:<24} {:<13} {}", r[0], r[1], r[2])).collect();
    let doc = serde_json::to_value(&bundle).unwrap_or(Value::Null);
    emit(&doc, format, (header, rows), &pretty, out.as_deref(), bundle.exit_code())
}

fn profile_kind(profile: ProfileArg, shape: Option<f64>, k: f64) -> RadialKind {
    match profile {
        ProfileArg::Gaussian => RadialKind::Gaussian { sigma: shape.unwrap_or(1.0) },
        ProfileArg::Exponential => RadialKind::Exponential { rate: shape.unwrap_or(1.0) },
        ProfileArg::Bump => RadialKind::Bump { coeffs: vec![1.0], support: shape.unwrap_or(1.5), order: 10 },
        ProfileArg::Power => RadialKind::Power { q: shape.unwrap_or(k) },
    }
}

/// The split parameter: explicit, zero where the plain rearrangement suffices, otherwise
/// the one certified at this dimension.
fn choose_alpha(n: i64, model: &EnergyModel, alpha: Option<f64>) -> f64 {
    if let Some(a) = alpha {
        return a;
    }
    if model.a1 + 12.0 >= 0.0 {
        return 0.0;
    }
    let cfg = CertifyConfig { n_max: Some(n), ..CertifyConfig::default() };
    split_parameters(&cfg)
        .into_iter()
        .find(|(m, _)| *m == n)
        .map_or(0.0, |(_, a)| triharmonic::exact_algebra::to_f64(&a))
}

#[allow(clippy::too_many_arguments)]
fn cmd_monotonicity(
    n: i64,
    p: &str,
    profile: ProfileArg,
    shape: Option<f64>,
    lmode: u32,
    lambda_range: &str,
    alpha: Option<f64>,
    fd_tol: f64,
    quad_tol: f64,
    format: Format,
    out: Option<PathBuf>,
) -> ExitCode {
    let params = match rational_arg("p", p).map(|p| Params::new(n, p)) {
        Ok(Ok(p)) => p,
        Ok(Err(e)) => return fail(EXIT_USAGE, &e.to_string()),
        Err(c) => return c,
    };
    let lambdas = match parse_lambda_range(lambda_range) {
        Ok(l) => l,
        Err(c) => return c,
    };
    if !params.supercritical() {
        eprintln!("warning: p is not supercritical at n = {n}; the lower bound is not expected to hold");
    }
    let model = EnergyModel::new(&params, lmode);
    let u = HarmonicTestFunction::new(profile_kind(profile, shape, params.k_f64()), lmode, n as u32);
    let cfg = EnergyConfig { rel_tol: quad_tol, ..EnergyConfig::default() };
    let steps = [1e-2, 1e-3, 1e-4];
    let mut reports = Vec::new();
    for &lambda in &lambdas {
        for v in FormulaVariant::ALL {
            match fd_check(&model, &u, lambda, v, &steps, 1e-3, &cfg) {
                Ok(r) => reports.push(r),
                Err(e @ QuadError::Divergent) => return fail(EXIT_DATA, &e.to_string()),
                Err(e) => return fail(EXIT_DATA, &e.to_string()),
            }
        }
    }
    let consistent: Vec<FormulaVariant> = FormulaVariant::ALL
        .into_iter()
        .filter(|v| reports.iter().filter(|r| r.variant == *v).all(|r| r.relative_residual < fd_tol))
        .collect();
    let alpha = choose_alpha(n, &model, alpha);
    let bound = match monotonicity_bound_check(&model, &u, alpha, &lambdas, &cfg) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_DATA, &e.to_string()),
    };
    let header = vec!["lambda", "variant", "E", "dE_formula", "dE_fd", "relative_residual", "order"];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                format!("{:e}", r.lambda),
                format!("{:?}", r.variant),
                format!("{:e}", r.e),
                format!("{:e}", r.de_formula - r.defect),
                format!("{:e}", r.de_fd),
                format!("{:e}", r.relative_residual),
                format!("{:.4}", r.convergence_order_estimate),
            ]
        })
        .collect();
    let mut pretty: Vec<String> = rows
        .iter()
        .map(|r| format!("λ = {:<10} {:<15} residual {:<24} order {}", r[0], r[1], r[5], r[6]))
        .collect();
    pretty.push(format!("consistent formulas: {consistent:?}"));
    pretty.push(format!(
        "adjusted energy: min dE^c/dλ = {:e}, ratio floor = {:?}, α = {}",
        bound.min_de_c, bound.ratio_floor, bound.weights.alpha
    ));
    let referee_ok = consistent.contains(&FormulaVariant::DeltaReading);
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "n": n,
        "p": params.p_f64(),
        "k": params.k_f64(),
        "profile": u,
        "fd_tolerance": fd_tol,
        "reports": reports,
        "consistent_formulas": consistent,
        "monotonicity_bound": bound,
    });
    emit(&doc, format, (header, rows), &pretty, out.as_deref(), if referee_ok { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_radial(n: f64, p: f64, u0: f64, v0: f64, w0: f64, rmax: f64, tol: f64, format: Format, out: Option<PathBuf>) -> ExitCode {
    let profile = match radial_ivp_solve(n, p, u0, v0, w0, rmax, tol) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_USAGE, &e.to_string()),
    };
    if let Some(r) = profile.blow_up {
        eprintln!("warning: blow-up near r = {r}; the profile is partial");
    }
    let header = vec!["r", "u", "du", "v", "dv", "w", "dw", "q"];
    let rows: Vec<Vec<String>> = profile
        .nodes
        .iter()
        .map(|nd| [nd.r, nd.u, nd.du, nd.v, nd.dv, nd.w, nd.dw, nd.q].iter().map(|x| format!("{x:e}")).collect())
        .collect();
    let end = profile.last();
    let pretty = vec![format!(
        "{} nodes to r = {}, u = {:e}, residual estimate {:e}, blow-up {:?}",
        profile.nodes.len(),
        end.r,
        end.u,
        profile.residual_estimate,
        profile.blow_up
    )];
    let code = if profile.residual_estimate > 10.0 * tol { 1 } else { 0 };
    let mut doc = serde_json::to_value(&profile).unwrap_or(Value::Null);
    doc["schema_version"] = json!(SCHEMA_VERSION);
    emit(&doc, format, (header, rows), &pretty, out.as_deref(), code)
}

fn cmd_pohozaev(file: &PathBuf, radius: f64, tol: f64, format: Format, out: Option<PathBuf>) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return fail(output::EXIT_IO, &format!("{}: {e}", file.display())),
    };
    let profile: RadialProfile = match serde_json::from_str(&text) {
        Ok(p) => p,
        Err(e) => return fail(EXIT_DATA, &format!("{}: not a radial profile: {e}", file.display())),
    };
    let rep = match pohozaev_residual(&profile, radius) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_DATA, &e.to_string()),
    };
    let header = vec!["R", "lhs", "rhs", "relative_residual", "relative_residual_printed"];
    let row = vec![
        format!("{:e}", rep.radius),
        format!("{:e}", rep.lhs),
        format!("{:e}", rep.rhs),
        format!("{:e}", rep.relative_residual),
        format!("{:e}", rep.relative_residual_printed),
    ];
    let pretty = vec![format!(
        "R = {}: lhs {:e}, rhs {:e}, relative residual {:e} (printed boundary form: {:e})",
        rep.radius, rep.lhs, rep.rhs, rep.relative_residual, rep.relative_residual_printed
    )];
    let code = if rep.relative_residual < tol { 0 } else { 1 };
    let doc = json!({ "schema_version": SCHEMA_VERSION, "tolerance": tol, "pohozaev": rep });
    emit(&doc, format, (header, vec![row]), &pretty, out.as_deref(), code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match cli.command {
        Command::Exponents { n, n_range, width, format, out } => cmd_exponents(n, n_range, &width, format, out),
        Command::Coeffs { n, p, k, format, out } => cmd_coeffs(n, p, k, format, out),
        Command::Certify { lemma, n_max, width, alpha, precision_cap, format, out, tamper } => {
            cmd_certify(lemma, n_max, &width, &alpha, precision_cap, format, out, tamper)
        }
        Command::Monotonicity { n, p, profile, shape, lmode, lambda_range, alpha, fd_tol, quad_tol, format, out } => {
            cmd_monotonicity(n, &p, profile, shape, lmode, &lambda_range, alpha, fd_tol, quad_tol, format, out)
        }
        Command::Radial { n, p, u0, v0, w0, rmax, tol, format, out } => cmd_radial(n, p, u0, v0, w0, rmax, tol, format, out),
        Command::Pohozaev { profile_file, radius, tol, format, out } => cmd_pohozaev(&profile_file, radius, tol, format, out),
    }
}
