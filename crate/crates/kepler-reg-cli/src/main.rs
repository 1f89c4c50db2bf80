//! `kepler-reg`: propagation, regularizing maps, anomaly solving,
//! verification suites and the zero-energy degeneration sweep.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kepler_reg::anomaly::{solve_elliptic_detailed, solve_hyperbolic_detailed, solve_parabolic_detailed};
use kepler_reg::geometry::{mink_inner, Vec3, Vec4};
use kepler_reg::kepler::{energies, first_integrals, PhaseState};
use kepler_reg::negative::{ls_forward, ls_integrals};
use kepler_reg::positive::{ls_plus_forward, ls_plus_integrals};
use kepler_reg::verify::integrator::{integrate_kepler_at, linspace};
use kepler_reg::verify::propagate::{anomaly_propagate, orbit_plane};
use kepler_reg::verify::suites::run_suite;
use kepler_reg::zero::{degeneration_sample, euclid_inverse, ls_degeneration_limit};

/// Energies with `|H|` at most this are mapped with the zero-energy map.
const ZERO_ENERGY_BAND: f64 = 1e-12;

#[derive(Parser)]
#[command(name = "kepler-reg", version, about = "Regularized Kepler problem toolkit")]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Regime {
    Elliptic,
    Hyperbolic,
    Parabolic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Rk,
    Anomaly,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the Kepler equation of a regime for its anomaly.
    SolveAnomaly {
        #[arg(long, value_enum)]
        regime: Regime,
        /// Eccentricity; not used for the parabolic regime.
        #[arg(long, allow_hyphen_values = true)]
        e: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        mean: f64,
    },
    /// Propagate a state and tabulate H, L and A.
    Propagate {
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        q: Vec3,
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        p: Vec3,
        #[arg(long)]
        t_final: f64,
        #[arg(long, default_value_t = 100)]
        n_out: usize,
        #[arg(long, value_enum, default_value = "rk")]
        method: Method,
        /// Integrator tolerance (method rk).
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Apply the regularizing map selected by the sign of H.
    Map {
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        q: Vec3,
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        p: Vec3,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Approach a zero-energy state from positive energy through φ+.
    DegenerationSweep {
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        q: Vec3,
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        p: Vec3,
        /// Comma-separated positive energies, decreasing.
        #[arg(long = "h", value_parser = parse_list, default_value = "1e-4,1e-6,1e-8", allow_hyphen_values = true)]
        h_values: ::std::vec::Vec<f64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let v: f64 = t.trim().parse().map_err(|_| format!("{t:?} is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("{t:?} is not finite"))
            }
        })
        .collect()
}

fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let v = parse_list(s)?;
    if v.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got {}", v.len()));
    }
    Ok(Vec3::new(v[0], v[1], v[2]))
}

enum Failure {
    Verification { report: String, summary: String },
    Usage(String),
}

impl From<kepler_reg::Error> for Failure {
    fn from(e: kepler_reg::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Shortest decimal text that parses back to the same `f64`.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn csv(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn json_rows(header: &[String], rows: &[Vec<String>]) -> String {
    let objects: Vec<Value> = rows
        .iter()
        .map(|row| {
            let fields = header.iter().zip(row).map(|(k, v)| {
                let value = v.parse::<f64>().map_or(Value::Null, |x| json!(x));
                (k.clone(), value)
            });
            Value::Object(fields.collect())
        })
        .collect();
    pretty(&Value::Array(objects))
}

fn table(format: Format, header: &[String], rows: &[Vec<String>]) -> String {
    match format {
        Format::Csv => csv(header, rows),
        Format::Json => json_rows(header, rows),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn names(prefix: &str, n: usize, from: usize) -> impl Iterator<Item = String> + '_ {
    (from..from + n).map(move |i| format!("{prefix}{i}"))
}

fn cmd_solve_anomaly(regime: Regime, e: Option<f64>, mean: f64) -> Result<String, Failure> {
    let need_e = || e.map_or_else(|| usage("--e is required for this regime"), Ok);
    let sol = match regime {
        Regime::Elliptic => solve_elliptic_detailed(mean, need_e()?)?,
        Regime::Hyperbolic => solve_hyperbolic_detailed(mean, need_e()?)?,
        Regime::Parabolic => solve_parabolic_detailed(mean)?,
    };
    Ok(pretty(&json!({
        "psi": sol.psi,
        "residual": sol.residual,
        "iterations": sol.iterations,
    })))
}

fn integral_row(t: f64, s: &PhaseState) -> Result<Vec<String>, Failure> {
    let fi = first_integrals(s)?;
    let mut row = vec![num(t)];
    row.extend(s.to_array().iter().map(|&x| num(x)));
    row.push(num(fi.h));
    row.extend(fi.l.iter().chain(fi.a.iter()).map(|&x| num(x)));
    Ok(row)
}

fn cmd_propagate(
    state: PhaseState,
    t_final: f64,
    n_out: usize,
    method: Method,
    tol: f64,
    format: Format,
) -> Result<String, Failure> {
    state.radius()?;
    if !t_final.is_finite() || t_final < 0.0 || (n_out > 1 && t_final == 0.0) {
        return usage(format!("t_final {t_final} must be positive"));
    }
    let times = linspace(0.0, t_final, n_out);
    let states = match method {
        Method::Rk if times.is_empty() => Vec::new(),
        Method::Rk => integrate_kepler_at(&state, &times, tol)?.states,
        Method::Anomaly => {
            let (el, plane) = orbit_plane(&state)?;
            times
                .iter()
                .map(|&t| anomaly_propagate(&el, &plane, t))
                .collect::<kepler_reg::Result<_>>()?
        }
    };
    let header: Vec<String> = ["t", "q1", "q2", "q3", "p1", "p2", "p3", "H", "L1", "L2", "L3", "A1", "A2", "A3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows = times
        .iter()
        .zip(&states)
        .map(|(&t, s)| integral_row(t, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(table(format, &header, &rows))
}

fn vec_json(v: &[f64]) -> Value {
    json!(v)
}

fn cmd_map(state: PhaseState) -> Result<String, Failure> {
    let h = energies(&state)?.h;
    let out = if h.abs() <= ZERO_ENERGY_BAND {
        let pt = euclid_inverse(&state)?;
        let (x2, y) = (pt.x.norm_squared(), pt.y.norm());
        json!({
            "regime": "zero",
            "H": h,
            "x": vec_json(pt.x.as_slice()),
            "y": vec_json(pt.y.as_slice()),
            "constraint_residuals": { "K0": energies(&state)?.k_zero },
            "transformed_integrals": {
                "L": vec_json(pt.x.cross(&pt.y).as_slice()),
                "A": vec_json(pt.y.as_slice()),
            },
            "H_reconstructed": 2.0 * (1.0 - 1.0 / y) / x2,
        })
    } else if h < 0.0 {
        let (x, y) = ls_forward(&state)?;
        let (l, a, hr) = ls_integrals(&x, &y);
        json!({
            "regime": "negative",
            "H": h,
            "x": vec_json(x.as_slice()),
            "y": vec_json(y.as_slice()),
            "constraint_residuals": { "|x|^2-1": x.norm_squared() - 1.0, "<x,y>": x.dot(&y) },
            "transformed_integrals": { "L": vec_json(l.as_slice()), "A": vec_json(a.as_slice()) },
            "H_reconstructed": hr,
        })
    } else {
        let (x, y) = ls_plus_forward(&state)?;
        let (l, a, hr) = ls_plus_integrals(&x, &y);
        json!({
            "regime": "positive",
            "H": h,
            "x": vec_json(x.as_slice()),
            "y": vec_json(y.as_slice()),
            "constraint_residuals": { "<x,x>-1": mink_inner(&x, &x) - 1.0, "<x,y>": mink_inner(&x, &y) },
            "transformed_integrals": { "L": vec_json(l.as_slice()), "A": vec_json(a.as_slice()) },
            "H_reconstructed": hr,
        })
    };
    Ok(pretty(&out))
}

fn cmd_verify(suite: &str, seed: u64, samples: usize, tol: f64) -> Result<String, Failure> {
    let report = run_suite(suite, seed, samples, tol)?;
    let mut text = report.to_json();
    text.push('\n');
    if report.pass {
        Ok(text)
    } else {
        let mut summary = String::new();
        for c in report.failures() {
            let _ = writeln!(summary, "check failed: {} (residual {:e}, tol {:e})", c.name, c.residual, c.tol);
        }
        Err(Failure::Verification { report: text, summary })
    }
}

fn vec4_fields(v: &Vec4) -> impl Iterator<Item = String> + '_ {
    v.iter().map(|&x| num(x))
}

fn cmd_degeneration_sweep(state: PhaseState, h_values: &[f64], format: Format) -> Result<String, Failure> {
    let limit = ls_degeneration_limit(&state)?;
    if h_values.iter().any(|&h| !(h > 0.0)) {
        return usage("energies must be positive");
    }
    if h_values.windows(2).any(|w| !(w[1] < w[0])) {
        return usage("energies must be decreasing");
    }
    let mut header = vec!["h".to_string()];
    header.extend(names("x", 4, 0).chain(names("y", 4, 0)));
    header.extend(names("X", 4, 0).chain(names("Y", 4, 0)));
    header.push("distance_to_limit".into());
    let scaled_fields = |x0: f64, xb: &Vec3, y0: f64, yb: &Vec3| {
        [x0, xb.x, xb.y, xb.z, y0, yb.x, yb.y, yb.z].map(num)
    };
    let mut rows = Vec::with_capacity(h_values.len() + 1);
    for &h in h_values {
        let s = degeneration_sample(&state, h)?;
        let mut row = vec![num(h)];
        row.extend(vec4_fields(&s.x).chain(vec4_fields(&s.y)));
        row.extend(scaled_fields(s.scaled.x0, &s.scaled.xbar, s.scaled.y0, &s.scaled.ybar));
        row.push(num(s.distance));
        rows.push(row);
    }
    if !rows.is_empty() {
        // The limit row: x tends to (1, 0, 0, 0) and y diverges like 1/√(2h).
        let mut row = vec![num(0.0)];
        row.extend([1.0, 0.0, 0.0, 0.0].map(num));
        row.extend(std::iter::repeat_n(String::new(), 4));
        row.extend(scaled_fields(limit.x0, &limit.xbar, limit.y0, &limit.ybar));
        row.push(num(0.0));
        rows.push(row);
    }
    Ok(table(format, &header, &rows))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::SolveAnomaly { regime, e, mean } => cmd_solve_anomaly(*regime, *e, *mean),
        Command::Propagate { q, p, t_final, n_out, method, tol, format } => {
            cmd_propagate(PhaseState::new(*q, *p), *t_final, *n_out, *method, *tol, *format)
        }
        Command::Map { q, p } => cmd_map(PhaseState::new(*q, *p)),
        Command::Verify { suite, seed, samples, tol } => cmd_verify(suite, *seed, *samples, *tol),
        Command::DegenerationSweep { q, p, h_values, format } => {
            cmd_degeneration_sweep(PhaseState::new(*q, *p), h_values, *format)
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => match emit(&cli, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification { report, summary }) => {
            if let Err(e) = emit(&cli, &report) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            eprint!("{summary}");
            ExitCode::from(1)
        }
    }
}
