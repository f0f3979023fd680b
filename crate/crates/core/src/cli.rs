//! `galmag` command-line front end: `solve`, `verify` and `frenet`.
//!
//! Data goes to the output stream, diagnostics to the error stream. Exit
//! codes: 0 success, 1 verification failed, 2 invalid input.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::frenet::{curvature, frenet_frame, torsion, C3Curve};
use crate::magnetic::{
    helix_decomposition, solve_magnetic, solve_n_magnetic, ClosedFormCurve, KillingField, MagneticIc, NMagneticIc,
};
use crate::oracle::DEFAULT_STEP;
use crate::verify::{linspace, verify_curve};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

pub const CSV_HEADER: &str = "s,x,y,z";
pub const FRENET_CSV_HEADER: &str = "s,T1,T2,T3,N1,N2,N3,B1,B2,B3,kappa,tau";

/// Default number of samples when `--range` carries no step.
const DEFAULT_SAMPLES: usize = 201;

#[derive(Debug, Parser)]
#[command(name = "galmag", version, about = "Magnetic trajectories of Killing fields in Galilean 3-space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the closed-form trajectory and emit samples.
    Solve(RunArgs),
    /// Check the closed form against RK4 integration of the raw equations.
    Verify(VerifyArgs),
    /// Emit the Frenet frame, curvature and torsion along the trajectory.
    Frenet(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Magnetic,
    Nmagnetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Killing field coefficients `v1,v2,v3`.
    #[arg(long = "v", value_name = "V1,V2,V3", allow_hyphen_values = true)]
    pub field: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub v1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub v3: Option<f64>,
    /// Initial conditions as `key=value` pairs: y0,Y0,z0,Z0 and, for N-magnetic curves, T0,U0.
    #[arg(long, value_name = "KEY=VALUE,...", allow_hyphen_values = true, default_value = "")]
    pub ic: String,
    /// Parameter interval `start:end[:step]`.
    #[arg(long, value_name = "START:END[:STEP]", allow_hyphen_values = true)]
    pub range: String,
    /// Number of equispaced samples; overrides the step in `--range`.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Tolerance on the closed-form vs RK4 deviation.
    #[arg(long, env = "GALMAG_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Tolerance on equation residuals and spreads; defaults to `--tol`.
    #[arg(long)]
    pub residual_tol: Option<f64>,
    /// RK4 step.
    #[arg(long, default_value_t = DEFAULT_STEP)]
    pub step: f64,
}

/// A machine-readable failure: `reason` is a stable kebab-case code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub reason: &'static str,
    pub detail: String,
}

impl Failure {
    fn new(reason: &'static str, detail: impl Into<String>) -> Self {
        Self { reason, detail: detail.into() }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}: {}", self.reason, self.detail)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let reason = match e {
            Error::ZeroCurvature { .. } => "zero-curvature",
            Error::IncompatibleIc { .. } => "incompatible-ic",
            Error::InvalidStep(_) | Error::InvalidConfig(_) => "invalid-range",
            Error::NonFiniteState { .. } => "non-finite-state",
            Error::WrongCase(_) => "wrong-case",
            Error::DomainMismatch { .. } => "domain-mismatch",
        };
        Failure::new(reason, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new("io-error", e.to_string())
    }
}

/// Validated form of [`RunArgs`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub mode: Mode,
    pub field: KillingField,
    pub ic: NMagneticIc,
    pub s_start: f64,
    pub s_end: f64,
    pub grid: Vec<f64>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

fn parse_real(text: &str, what: &str) -> Result<f64, Failure> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Failure::new("invalid-number", format!("{what}: cannot parse {text:?}")))?;
    if !v.is_finite() {
        return Err(Failure::new("invalid-number", format!("{what}: {text:?} is not finite")));
    }
    Ok(v)
}

pub fn parse_field(args: &RunArgs) -> Result<KillingField, Failure> {
    let mut field = KillingField::default();
    if let Some(text) = &args.field {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 3 {
            return Err(Failure::new("invalid-field", format!("expected v1,v2,v3, got {text:?}")));
        }
        field = KillingField::new(
            parse_real(parts[0], "v1")?,
            parse_real(parts[1], "v2")?,
            parse_real(parts[2], "v3")?,
        );
    }
    for (slot, value, name) in [(&mut field.v1, args.v1, "v1"), (&mut field.v2, args.v2, "v2"), (&mut field.v3, args.v3, "v3")] {
        if let Some(v) = value {
            if !v.is_finite() {
                return Err(Failure::new("invalid-number", format!("{name} is not finite")));
            }
            *slot = v;
        }
    }
    Ok(field)
}

/// Parses `key=value` pairs; absent keys are zero.
pub fn parse_ic(text: &str, mode: Mode) -> Result<NMagneticIc, Failure> {
    let mut ic = NMagneticIc::default();
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Failure::new("invalid-ic", format!("expected key=value, got {pair:?}")))?;
        let key = key.trim();
        let value = parse_real(value, key)?;
        let slot = match (key, mode) {
            ("y0", _) => &mut ic.y0,
            ("Y0", _) => &mut ic.dy0,
            ("z0", _) => &mut ic.z0,
            ("Z0", _) => &mut ic.dz0,
            ("T0", Mode::Nmagnetic) => &mut ic.ddy0,
            ("U0", Mode::Nmagnetic) => &mut ic.ddz0,
            ("T0" | "U0", Mode::Magnetic) => {
                return Err(Failure::new("invalid-ic", format!("{key} only applies to --mode nmagnetic")));
            }
            _ => return Err(Failure::new("invalid-ic", format!("unknown initial condition {key:?}"))),
        };
        *slot = value;
    }
    Ok(ic)
}

/// Sample grid for `start:end[:step]`, or `samples` equispaced points.
pub fn parse_range(text: &str, samples: Option<usize>) -> Result<(f64, f64, Vec<f64>), Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    if !(2..=3).contains(&parts.len()) {
        return Err(Failure::new("invalid-range", format!("expected start:end[:step], got {text:?}")));
    }
    let start = parse_real(parts[0], "range start")?;
    let end = parse_real(parts[1], "range end")?;
    if end <= start {
        return Err(Failure::new("invalid-range", format!("interval [{start}, {end}] is degenerate")));
    }
    let step = parts.get(2).map(|p| parse_real(p, "range step")).transpose()?;

    let grid = match (samples, step) {
        (Some(n), _) => {
            if n < 2 {
                return Err(Failure::new("invalid-range", "at least 2 samples are required"));
            }
            linspace(start, end, n)
        }
        (None, Some(h)) => {
            if h <= 0.0 {
                return Err(Failure::new("invalid-range", format!("step must be positive, got {h}")));
            }
            let count = (end - start) / h;
            if count > 1e7 {
                return Err(Failure::new("invalid-range", format!("{count:.0} samples requested")));
            }
            let whole = (count + 1e-9).floor() as usize;
            let mut g: Vec<f64> = (0..=whole).map(|k| start + k as f64 * h).collect();
            if end - g[whole] > 1e-9 * h {
                g.push(end);
            } else {
                g[whole] = end;
            }
            g
        }
        (None, None) => linspace(start, end, DEFAULT_SAMPLES),
    };
    Ok((start, end, grid))
}

impl RunSpec {
    pub fn from_args(args: &RunArgs) -> Result<Self, Failure> {
        let field = parse_field(args)?;
        let ic = parse_ic(&args.ic, args.mode)?;
        let (s_start, s_end, grid) = parse_range(&args.range, args.samples)?;
        Ok(Self { mode: args.mode, field, ic, s_start, s_end, grid, format: args.format, output: args.output.clone() })
    }

    pub fn solve(&self) -> Result<ClosedFormCurve, Failure> {
        let curve = match self.mode {
            Mode::Magnetic => {
                let ic = MagneticIc { y0: self.ic.y0, dy0: self.ic.dy0, z0: self.ic.z0, dz0: self.ic.dz0 };
                solve_magnetic(&self.field, &ic)
            }
            Mode::Nmagnetic => solve_n_magnetic(&self.field, &self.ic)?,
        };
        Ok(curve.restricted(self.s_start, self.s_end))
    }
}

/// Scientific notation with 17 significant digits, enough to round-trip any f64.
pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

fn open_output<'a>(path: &Option<PathBuf>, stdout: &'a mut dyn Write) -> io::Result<Box<dyn Write + 'a>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(stdout),
    })
}

fn diagnostics(curve: &ClosedFormCurve, s: f64, err: &mut dyn Write) -> io::Result<()> {
    writeln!(err, "case: {}", curve.case)?;
    writeln!(err, "kappa: {}", fmt_real(curvature(curve, s)))?;
    match torsion(curve, s) {
        Ok(t) => writeln!(err, "tau: {}", fmt_real(t))?,
        Err(_) => writeln!(err, "tau: undefined")?,
    }
    if let Ok(h) = helix_decomposition(curve) {
        writeln!(err, "helix.r: {}", fmt_real(h.r))?;
        let l = h.line;
        writeln!(
            err,
            "helix.line: a={} b={} c={} d={}",
            fmt_real(l.a),
            fmt_real(l.b),
            fmt_real(l.c),
            fmt_real(l.d)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SolveDocument {
    case: String,
    kappa: f64,
    tau: Option<f64>,
    helix: Option<serde_json::Value>,
    samples: Vec<[f64; 4]>,
}

fn cmd_solve(spec: &RunSpec, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let curve = spec.solve()?;
    diagnostics(&curve, spec.s_start, err)?;
    let points = spec.grid.iter().map(|&s| {
        let p = curve.eval(s, 0);
        [s, p.x1, p.x2, p.x3]
    });
    let mut w = open_output(&spec.output, out)?;
    match spec.format {
        Format::Csv => {
            writeln!(w, "{CSV_HEADER}")?;
            for row in points {
                let cells: Vec<String> = row.iter().map(|v| fmt_real(*v)).collect();
                writeln!(w, "{}", cells.join(","))?;
            }
        }
        Format::Json => {
            let doc = SolveDocument {
                case: curve.case.to_string(),
                kappa: curvature(&curve, spec.s_start),
                tau: torsion(&curve, spec.s_start).ok(),
                helix: helix_decomposition(&curve)
                    .ok()
                    .map(|h| json!({"r": h.r, "line": {"a": h.line.a, "b": h.line.b, "c": h.line.c, "d": h.line.d}})),
                samples: points.collect(),
            };
            serde_json::to_writer(&mut w, &doc).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let spec = RunSpec::from_args(&args.run)?;
    let residual_tol = args.residual_tol.unwrap_or(args.tol);
    for (name, v) in [("tol", args.tol), ("residual-tol", residual_tol)] {
        if v.is_nan() || v < 0.0 {
            return Err(Failure::new("invalid-tolerance", format!("{name} must be non-negative, got {v}")));
        }
    }
    let curve = spec.solve()?;
    let report = verify_curve(&curve, spec.s_start, spec.s_end, args.step)?;
    let pass = report.passes(args.tol, residual_tol);

    let mut w = open_output(&spec.output, out)?;
    match spec.format {
        Format::Json => {
            let mut doc = serde_json::to_value(&report).map_err(io::Error::from)?;
            doc["tol"] = json!(args.tol);
            doc["residual_tol"] = json!(residual_tol);
            doc["pass"] = json!(pass);
            serde_json::to_writer(&mut w, &doc).map_err(io::Error::from)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let opt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), fmt_real);
            writeln!(w, "case: {}", report.case)?;
            writeln!(w, "interval: [{}, {}]", fmt_real(report.s_start), fmt_real(report.s_end))?;
            writeln!(w, "oracle_step: {}", fmt_real(report.oracle_step))?;
            writeln!(w, "max_deviation: {}", fmt_real(report.max_deviation))?;
            writeln!(w, "max_state_deviation: {}", fmt_real(report.max_state_deviation))?;
            writeln!(w, "residual_max: {}", fmt_real(report.residual_max))?;
            writeln!(w, "curvature_spread: {}", fmt_real(report.curvature_spread))?;
            writeln!(w, "helix_distance_spread: {}", opt(report.helix_distance_spread))?;
            writeln!(w, "kappa: {}", fmt_real(report.kappa))?;
            writeln!(w, "tau: {}", opt(report.tau))?;
            writeln!(w, "r: {}", opt(report.helix.map(|h| h.r)))?;
            writeln!(w, "status: {}", if pass { "pass" } else { "fail" })?;
        }
    }
    w.flush()?;
    if !pass {
        writeln!(err, "error: tolerance-exceeded: tol={} residual-tol={}", args.tol, residual_tol)?;
        return Ok(EXIT_VERIFY_FAILED);
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct FrenetRow {
    s: f64,
    #[serde(rename = "T")]
    tangent: [f64; 3],
    #[serde(rename = "N")]
    normal: [f64; 3],
    #[serde(rename = "B")]
    binormal: [f64; 3],
    kappa: f64,
    tau: f64,
}

fn cmd_frenet(spec: &RunSpec, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let curve = spec.solve()?;
    diagnostics(&curve, spec.s_start, err)?;
    let rows = spec
        .grid
        .iter()
        .map(|&s| {
            frenet_frame(&curve, s).map(|f| FrenetRow {
                s,
                tangent: f.tangent.to_array(),
                normal: f.normal.to_array(),
                binormal: f.binormal.to_array(),
                kappa: f.kappa,
                tau: f.tau,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;

    let mut w = open_output(&spec.output, out)?;
    match spec.format {
        Format::Csv => {
            writeln!(w, "{FRENET_CSV_HEADER}")?;
            for r in &rows {
                let mut cells = vec![r.s];
                cells.extend(r.tangent);
                cells.extend(r.normal);
                cells.extend(r.binormal);
                cells.extend([r.kappa, r.tau]);
                let cells: Vec<String> = cells.into_iter().map(fmt_real).collect();
                writeln!(w, "{}", cells.join(","))?;
            }
        }
        Format::Json => {
            let doc = json!({"case": curve.case.to_string(), "samples": rows});
            serde_json::to_writer(&mut w, &doc).map_err(io::Error::from)?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cli.command {
        Command::Solve(args) => RunSpec::from_args(args).and_then(|spec| cmd_solve(&spec, out, err)),
        Command::Frenet(args) => RunSpec::from_args(args).and_then(|spec| cmd_frenet(&spec, out, err)),
        Command::Verify(args) => cmd_verify(args, out, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "{f}");
            EXIT_INVALID
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli, out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            let _ = writeln!(err, "{}", Failure::new("invalid-arguments", first));
            EXIT_INVALID
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["galmag"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn ic_parsing() {
        let ic = parse_ic("y0=1, Y0=5,z0=4,Z0=-3", Mode::Magnetic).unwrap();
        assert_eq!((ic.y0, ic.dy0, ic.z0, ic.dz0), (1.0, 5.0, 4.0, -3.0));
        assert_eq!(parse_ic("T0=1", Mode::Magnetic).unwrap_err().reason, "invalid-ic");
        assert_eq!(parse_ic("q=1", Mode::Nmagnetic).unwrap_err().reason, "invalid-ic");
        assert_eq!(parse_ic("y0=1,5", Mode::Nmagnetic).unwrap_err().reason, "invalid-ic");
        assert_eq!(parse_ic("y0=1,5", Mode::Nmagnetic).unwrap_err().reason, "invalid-ic");
        assert_eq!(parse_ic("y0=1e", Mode::Nmagnetic).unwrap_err().reason, "invalid-number");
        assert_eq!(parse_ic("", Mode::Nmagnetic).unwrap(), NMagneticIc::default());
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn range_parsing() {
        let (a, b, g) = parse_range("0:1:0.25", None).unwrap();
        assert_eq!((a, b), (0.0, 1.0));
        assert_eq!(g, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let (_, _, g) = parse_range("0:3.14159:0.01", None).unwrap();
        assert_eq!(g.len(), 316);
        assert_eq!(*g.last().unwrap(), 3.14159);
        let (_, _, g) = parse_range("-1:1", Some(3)).unwrap();
        assert_eq!(g, vec![-1.0, 0.0, 1.0]);
        assert_eq!(parse_range("1:1", None).unwrap_err().reason, "invalid-range");
        assert_eq!(parse_range("0:1", Some(1)).unwrap_err().reason, "invalid-range");
        assert_eq!(parse_range("0:1:-0.1", None).unwrap_err().reason, "invalid-range");
        assert_eq!(parse_range("0", None).unwrap_err().reason, "invalid-range");
    }

    #[test]
    fn field_flags_combine() {
        let (code, out, _) = run_capture(&["solve", "--mode", "magnetic", "--v", "-1,0,0", "--v3", "2", "--range", "0:1", "--samples", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 3);
    }

    #[test]
    fn bad_flags_exit_2_with_reason() {
        let (code, _, err) = run_capture(&["solve", "--mode", "bogus", "--range", "0:1"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.lines().last().unwrap().starts_with("error: invalid-arguments:"));
        let (code, _, err) = run_capture(&["solve", "--mode", "magnetic", "--v", "1,2", "--range", "0:1"]);
        assert_eq!(code, EXIT_INVALID);
        assert!(err.starts_with("error: invalid-field:"));
    }

    #[test]
    fn fmt_real_round_trips() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 123456.789, std::f64::consts::PI] {
            assert_eq!(fmt_real(v).parse::<f64>().unwrap(), v);
        }
    }
}
