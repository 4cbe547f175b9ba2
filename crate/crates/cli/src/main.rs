use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wound_core::additive::{image_member, AdditiveMap, Decision, Window};
use wound_core::cohomology::{delta_closed, delta_generic};
use wound_core::error::Error;
use wound_core::field::FqField;
use wound_core::groups::{make_group, GroupKind, GroupSpec};
use wound_core::local::LaurentLocal;
use wound_core::place::Place;
use wound_core::points::{brute_force_points, enumerate_points, pole_bounds};
use wound_core::ratfn::RatFn;
use wound_core::tamagawa::{counterexample_report, tamagawa_number, Assumption};
use wound_core::twist::{certificate_verify, twist_search, TwistCertificate};

#[derive(Parser)]
#[command(name = "wound", version, about = "Wound unipotent groups over F_q(T)")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u64,
    /// Parameter `a` in `F_q(T)`, e.g. "T*(T-1)"; `z` is the field generator.
    #[arg(long, default_value = "T*(T-1)")]
    a: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Tamagawa number of W (or the discrepancy report for a U-kind).
    Tamagawa {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "W")]
        kind: String,
        /// Assumptions to record, e.g. ShaW_trivial.
        #[arg(long = "assume")]
        assume: Vec<String>,
    },
    /// Rational points of V, W or W+.
    Points {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "W")]
        kind: String,
        /// Search by height instead of the Riemann-Roch enumeration.
        #[arg(long)]
        height: Option<usize>,
    },
    /// Connecting map delta_beta(c, d).
    Delta {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "U")]
        kind: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
        /// Also evaluate through the torsor algebra and compare.
        #[arg(long)]
        generic: bool,
    },
    /// Decides lambda in g(k_v^2) at a place.
    LocalImage {
        #[command(flatten)]
        field: FieldArgs,
        /// Map: W (g), Wplus (g+) or V (f).
        #[arg(long, default_value = "W")]
        kind: String,
        #[arg(long)]
        place: String,
        #[arg(long)]
        lambda: String,
        /// Window "low,high".
        #[arg(long)]
        window: Option<String>,
        /// Minimum expansion precision of lambda.
        #[arg(long, env = "WOUND_PREC", default_value_t = 64)]
        prec: i64,
    },
    /// Searches for beta with delta_beta nonzero at every place of S.
    TwistSearch {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "U")]
        kind: String,
        /// Comma-separated places, e.g. "T,T-1,inf".
        #[arg(long)]
        places: String,
        #[arg(long)]
        window: Option<String>,
        /// Write the certificate here as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-checks a twist certificate.
    Verify { file: PathBuf },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidField(_)
            | Error::Parse(_)
            | Error::ParameterInKp(_)
            | Error::ZetaMissing(_)
            | Error::InvalidPlace(_)
            | Error::WindowInvalid(..)
            | Error::OffCurve(_)
            | Error::FieldMismatch => Failure::Usage(e.to_string()),
            e => Failure::Compute(e),
        }
    }
}

struct Output {
    json: Value,
    text: String,
    ok: bool,
}

fn field_of(f: &FieldArgs) -> Result<Arc<FqField>, Failure> {
    let mut m = 0;
    let mut q = f.q;
    while q > 1 && q % f.p as u64 == 0 {
        q /= f.p as u64;
        m += 1;
    }
    if q != 1 || m == 0 {
        return Err(Failure::Usage(format!("q = {} is not a power of p = {}", f.q, f.p)));
    }
    Ok(FqField::new(f.p, m)?)
}

fn group(f: &FieldArgs, kind: &str) -> Result<GroupSpec, Failure> {
    let field = field_of(f)?;
    let a = RatFn::parse(&field, &f.a)?;
    Ok(make_group(GroupKind::parse(kind)?, &field, &a)?)
}

fn parse_window(s: &Option<String>) -> Result<Option<Window>, Failure> {
    let Some(s) = s else { return Ok(None) };
    let bad = || Failure::Usage(format!("window must be \"low,high\", got {s:?}"));
    let (l, h) = s.split_once(',').ok_or_else(bad)?;
    let l = l.trim().parse().map_err(|_| bad())?;
    let h = h.trim().parse().map_err(|_| bad())?;
    Ok(Some(Window::new(l, h)?))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn run(cmd: Cmd) -> Result<Output, Failure> {
    match cmd {
        Cmd::Tamagawa { field, kind, assume } => {
            let spec = group(&field, &kind)?;
            let assumptions = assume.iter().map(|s| Assumption::parse(s)).collect::<Result<Vec<_>, _>>()?;
            if spec.kind.is_extension() {
                let r = counterexample_report(&spec, &assumptions)?;
                let text = format!(
                    "group {}\ntau(W) = {}\nrelation: {}\nverdict: {}",
                    r.group, r.tau_w, r.relation, r.verdict
                );
                return Ok(Output { json: to_value(&r), text, ok: true });
            }
            let r = tamagawa_number(&spec, &assumptions)?;
            let mut text = format!("W: Y^{} = X + {} X^{}\n", r.p, r.b, r.p);
            for row in &r.n_table {
                text += &format!("  {:<12} deg {} ord(db) {:>4} floor {:>3}\n", row.place, row.degree, row.ord_db, row.floor);
            }
            for lp in &r.l_places {
                text += &format!("  l-place {:<12} m {:>3} residue {} ({})\n", lp.place, lp.m, lp.residue, lp.is_pminus1_power);
            }
            text += &format!("N = {}\nl = {}\n#W(k) = {}\ntau = {}", r.n, r.l, r.point_count, r.tau);
            Ok(Output { json: to_value(&r), text, ok: true })
        }
        Cmd::Points { field, kind, height } => {
            let spec = group(&field, &kind)?;
            let (pts, method, bound) = match height {
                Some(h) => (brute_force_points(&spec, h)?, format!("height search, H = {h}"), Value::Null),
                None => {
                    let pb = pole_bounds(&spec)?;
                    let b = json!({
                        "divisor": format!("{}", pb.divisor),
                        "perPlace": to_value(&pb.per_place),
                    });
                    (enumerate_points(&spec)?, "Riemann-Roch enumeration".to_string(), b)
                }
            };
            let texts: Vec<String> = pts.iter().map(|p| p.to_text()).collect();
            let text = format!("{} ({method}): {} points\n{}", spec.to_text(), texts.len(), texts.join("\n"));
            let js = json!({
                "group": spec.to_text(),
                "method": method,
                "count": texts.len(),
                "points": texts,
                "poleBound": bound,
            });
            Ok(Output { json: js, text, ok: true })
        }
        Cmd::Delta { field, kind, beta, c, d, generic } => {
            let spec = group(&field, &kind)?;
            let beta = RatFn::parse(&spec.field, &beta)?;
            let v = (RatFn::parse(&spec.field, &c)?, RatFn::parse(&spec.field, &d)?);
            let closed = delta_closed(&spec, &beta, &v)?;
            let mut js = json!({
                "group": spec.to_text(),
                "beta": beta.to_string(),
                "c": v.0.to_string(),
                "d": v.1.to_string(),
                "delta": closed.to_string(),
            });
            let mut text = closed.to_string();
            let mut ok = true;
            if generic {
                let g = delta_generic(&spec, &beta, &v)?;
                ok = g == closed;
                js["generic"] = json!(g.to_string());
                js["agree"] = json!(ok);
                text += &format!("\ngeneric: {g} ({})", if ok { "agrees" } else { "DIFFERS" });
            }
            Ok(Output { json: js, text, ok })
        }
        Cmd::LocalImage { field, kind, place, lambda, window, prec } => {
            let fld = field_of(&field)?;
            let a = RatFn::parse(&fld, &field.a)?;
            let map = match GroupKind::parse(&kind)? {
                GroupKind::W => AdditiveMap::g(&a),
                GroupKind::Wplus => AdditiveMap::g_plus(&a),
                GroupKind::V => AdditiveMap::f(&a),
                k => return Err(Failure::Usage(format!("no additive map for kind {k}"))),
            };
            let v = Place::parse(&fld, &place)?;
            let lam = RatFn::parse(&fld, &lambda)?;
            let ord = if lam.is_zero() { 0 } else { v.ord(&lam)? };
            let w = match parse_window(&window)? {
                Some(w) => w,
                None => Window::default_for(&map, &v, ord)?,
            };
            let loc = LaurentLocal::expand(&lam, &v, w.high.max(prec))?;
            let d = image_member(&map, &loc, Some(w))?;
            let mut js = json!({
                "map": kind,
                "place": v.to_text(),
                "lambda": lam.to_string(),
                "window": to_value(&w),
                "verdict": d.verdict(),
            });
            let mut text = format!("{} at {} in window [{}, {}): {}", lam, v, w.low, w.high, d.verdict());
            let ok = match &d {
                Decision::Member { x, y } => {
                    js["x"] = json!(x.to_text());
                    js["y"] = json!(y.to_text());
                    text += &format!("\nx = {}\ny = {}", x.to_text(), y.to_text());
                    true
                }
                Decision::NonMember(cert) => {
                    js["certificate"] = to_value(cert);
                    text += &format!("\nfunctional with {} entries", cert.functional.len());
                    true
                }
                Decision::Inconclusive { reason } => {
                    js["reason"] = json!(reason);
                    text += &format!("\n{reason}");
                    false
                }
            };
            Ok(Output { json: js, text, ok })
        }
        Cmd::TwistSearch { field, kind, places, window, out } => {
            let spec = group(&field, &kind)?;
            let places = places
                .split(',')
                .map(|s| Place::parse(&spec.field, s.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let cert = twist_search(&spec, &places, parse_window(&window)?)?;
            let js = to_value(&cert);
            if let Some(path) = out {
                let body = serde_json::to_string_pretty(&js).expect("serializes");
                fs::write(&path, body + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            let text = format!(
                "{}\nS = {{{}}}\nbeta = {}\n#V(k) = {}\nbound = {}",
                cert.group,
                cert.places.join(", "),
                cert.beta,
                cert.v_points,
                cert.bound
            );
            Ok(Output { json: js, text, ok: true })
        }
        Cmd::Verify { file } => {
            let body = fs::read_to_string(&file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let cert: TwistCertificate =
                serde_json::from_str(&body).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let r = certificate_verify(&cert);
            let mut text = format!("{} ({} checks)", if r.ok { "pass" } else { "FAIL" }, r.checks);
            for f in &r.failures {
                text += &format!("\n  {f}");
            }
            Ok(Output { json: to_value(&r), text, ok: r.ok })
        }
    }
}

fn error_code(e: &Failure) -> (String, String, u8) {
    match e {
        Failure::Usage(m) => ("UsageError".into(), m.clone(), 2),
        Failure::Compute(e) => {
            let dbg = format!("{e:?}");
            let name = dbg.split(['(', ' ']).next().unwrap_or("Error").to_string();
            (name, e.to_string(), 1)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            match cli.format {
                Format::Json => emit(&serde_json::to_string_pretty(&out.json).expect("serializes")),
                Format::Text => emit(&out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let (code, msg, status) = error_code(&e);
            match cli.format {
                Format::Json => {
                    let js = json!({ "error": { "code": code, "message": msg } });
                    emit(&serde_json::to_string_pretty(&js).expect("serializes"));
                }
                Format::Text => eprintln!("error ({code}): {msg}"),
            }
            ExitCode::from(status)
        }
    }
}
