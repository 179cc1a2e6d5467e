//! Command-line front end: `teleport`, `sweep`, `verify` and `basis`.
//!
//! Everything writes to caller-supplied streams so the commands can be driven
//! from tests. Output files are written only once a command has fully succeeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bases::{basis_element, basis_labels, ket_string};
use crate::angle::EntanglementAngle;
use crate::channel::{Scheme, SchemeConfig};
use crate::error::{Error, Result};
use crate::fidelity::{
    delta_f, grid_sweep, open_angle_grid, AverageMethod, FidelityReport, SweepGrid,
};
use crate::noise::{NoiseKind, NoiseSpec, Placement};
use crate::protocol::{teleport, InputState, TeleportRun};
use crate::verify::{linear_fit, table1_slope, Verifier};

pub const SCHEMA_VERSION: u32 = 1;
pub const CSV_HEADER: [&str; 9] = [
    "scheme",
    "theta",
    "phi",
    "noise",
    "p",
    "placement",
    "avg_fidelity_sim",
    "avg_fidelity_closed",
    "abs_dev",
];

#[derive(Debug, Parser)]
#[command(name = "ghz-teleport", version, about = "Teleport GHZ-like states through 3-EPR and 2-GHZ channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one teleportation and print every possible measurement outcome.
    Teleport(TeleportArgs),
    /// Average fidelity over a parameter grid, as CSV or JSON.
    Sweep(SweepArgs),
    /// Run the acceptance checks.
    Verify(VerifyArgs),
    /// Print an entangled measurement basis as CSV.
    Basis(BasisArgs),
}

#[derive(Debug, Args)]
pub struct TeleportArgs {
    #[arg(long, default_value = "ghz2")]
    pub scheme: Scheme,
    /// Channel angle, e.g. `45deg` or `0.7854` (radians).
    #[arg(long, default_value = "45deg", value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: f64,
    /// Measurement-basis angle.
    #[arg(long, default_value = "45deg", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long, default_value = "none")]
    pub noise: NoiseKind,
    #[arg(long, default_value_t = 0.0)]
    pub p: f64,
    /// `q2` .. `q9` or `uniform`.
    #[arg(long, default_value = "uniform")]
    pub placement: Placement,
    /// `theta0,phase` (angles with optional unit) or `equal`.
    #[arg(long, conflicts_with = "random_input", allow_hyphen_values = true)]
    pub input: Option<String>,
    /// Draw the input from the uniform measure; needs `--seed`.
    #[arg(long, requires = "seed")]
    pub random_input: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Emit the whole run as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "epr3,ghz2")]
    pub scheme: Vec<Scheme>,
    #[arg(long, value_delimiter = ',', default_value = "none")]
    pub noise: Vec<NoiseKind>,
    /// Noise probabilities.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub p: Vec<f64>,
    /// `min:max:count` noise probabilities, endpoints included.
    #[arg(long, value_parser = parse_range)]
    pub p_grid: Option<Range>,
    #[arg(long, default_value = "uniform")]
    pub placement: Placement,
    /// Points per angle axis, evenly spaced inside (0, pi/2).
    #[arg(long, default_value_t = 11)]
    pub grid: usize,
    /// `min:max:count` channel angles, endpoints included (units allowed).
    #[arg(long, value_parser = parse_angle_range)]
    pub theta_range: Option<Range>,
    /// `min:max:count` measurement angles.
    #[arg(long, value_parser = parse_angle_range)]
    pub phi_range: Option<Range>,
    /// `quad:N` or `mc:SAMPLES` (Monte Carlo needs `--seed`).
    #[arg(long, default_value = "quad:32")]
    pub method: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Rows hold `<F_GHZ> - <F_EPR>` under scheme `ghz2-epr3`.
    #[arg(long, conflicts_with = "table1")]
    pub delta_f: bool,
    /// Linear noise response at maximal entanglement, with fitted slopes.
    #[arg(long)]
    pub table1: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Criterion names or numbers to run (all when absent).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long, default_value_t = 2)]
    pub qubits: usize,
    #[arg(long, default_value = "45deg", value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi: f64,
}

/// Parses `45deg`, `45°`, `0.5rad` or a bare number of radians.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let (num, degrees) = if let Some(v) = s.strip_suffix("deg").or_else(|| s.strip_suffix('°')) {
        (v, true)
    } else {
        (s.strip_suffix("rad").unwrap_or(s), false)
    };
    let x: f64 = num.trim().parse().map_err(|_| format!("cannot read angle '{s}'"))?;
    if !x.is_finite() {
        return Err(format!("angle '{s}' is not finite"));
    }
    Ok(if degrees { x.to_radians() } else { x })
}

/// Inclusive evenly spaced values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.min + step * i as f64).collect()
    }
}

fn parse_range_with(s: &str, value: fn(&str) -> std::result::Result<f64, String>) -> std::result::Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected min:max:count, got '{s}'"));
    }
    let count: usize = parts[2].trim().parse().map_err(|_| format!("bad count in '{s}'"))?;
    if count == 0 {
        return Err("a range needs at least one point".into());
    }
    Ok(Range {
        min: value(parts[0])?,
        max: value(parts[1])?,
        count,
    })
}

fn parse_range(s: &str) -> std::result::Result<Range, String> {
    parse_range_with(s, |v| v.trim().parse().map_err(|_| format!("cannot read number '{v}'")))
}

fn parse_angle_range(s: &str) -> std::result::Result<Range, String> {
    parse_range_with(s, parse_angle)
}

fn parse_method(s: &str, seed: Option<u64>) -> Result<AverageMethod> {
    let bad = || Error::InvalidMethod(format!("'{s}' is not quad:N or mc:SAMPLES"));
    let (kind, n) = s.split_once(':').ok_or_else(bad)?;
    let n: usize = n.trim().parse().map_err(|_| bad())?;
    match kind {
        "quad" => Ok(AverageMethod::Quadrature(n)),
        "mc" => match seed {
            Some(seed) => Ok(AverageMethod::MonteCarlo { samples: n, seed }),
            None => Err(Error::InvalidMethod("Monte Carlo sweeps need --seed".into())),
        },
        _ => Err(bad()),
    }
}

fn parse_input(s: &str) -> Result<InputState> {
    if s.trim().eq_ignore_ascii_case("equal") {
        return Ok(InputState::equal());
    }
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidArgument(format!("input '{s}' is not theta0,phase or 'equal'")))?;
    let t = parse_angle(a).map_err(Error::InvalidArgument)?;
    let ph = parse_angle(b).map_err(Error::InvalidArgument)?;
    InputState::from_angles(t, ph)
}

/// `%.12g`-style formatting: twelve significant digits, trailing zeros dropped.
pub fn fmt_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{}{:02}", trim_zeros(mantissa.to_string()), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// One sweep row as written to CSV and JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub scheme: String,
    pub theta: f64,
    pub phi: f64,
    pub noise: NoiseKind,
    pub p: f64,
    pub placement: String,
    pub avg_fidelity_sim: f64,
    pub avg_fidelity_closed: Option<f64>,
    pub abs_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub std_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_placement: Option<Vec<(u8, f64)>>,
}

impl From<&FidelityReport> for SweepRow {
    fn from(r: &FidelityReport) -> Self {
        SweepRow {
            scheme: r.scheme.to_string(),
            theta: r.theta,
            phi: r.phi,
            noise: r.noise,
            p: r.p,
            placement: r.placement.label(),
            avg_fidelity_sim: r.avg_fidelity_sim,
            avg_fidelity_closed: r.avg_fidelity_closed,
            abs_dev: r.abs_deviation,
            std_error: r.std_error,
            per_placement: r.per_placement.clone(),
        }
    }
}

pub fn rows_csv(rows: &[SweepRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<f64>| v.map(fmt_sig).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.scheme.clone(),
            fmt_sig(r.theta),
            fmt_sig(r.phi),
            r.noise.to_string(),
            fmt_sig(r.p),
            r.placement.clone(),
            fmt_sig(r.avg_fidelity_sim),
            opt(r.avg_fidelity_closed),
            opt(r.abs_dev),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

/// CSV for plain average-fidelity reports.
pub fn sweep_csv(reports: &[FidelityReport]) -> Result<String> {
    rows_csv(&reports.iter().map(SweepRow::from).collect::<Vec<_>>())
}

#[derive(Debug, Serialize)]
struct SweepDocument<'a> {
    schema_version: u32,
    mode: &'static str,
    rows: &'a [SweepRow],
    #[serde(skip_serializing_if = "Option::is_none")]
    max_delta_f: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    slopes: Vec<SlopeFit>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SlopeFit {
    pub scheme: Scheme,
    pub noise: NoiseKind,
    pub slope: f64,
    pub intercept: f64,
    pub expected: f64,
}

fn sweep_axes(args: &SweepArgs) -> (Vec<f64>, Vec<f64>) {
    let axis = |r: Option<Range>| r.map(|r| r.values()).unwrap_or_else(|| open_angle_grid(args.grid));
    (axis(args.theta_range), axis(args.phi_range))
}

fn p_values(args: &SweepArgs) -> Vec<f64> {
    args.p_grid.map(|r| r.values()).unwrap_or_else(|| args.p.clone())
}

/// Runs a sweep and returns the rendered document plus a summary for the
/// terminal.
pub fn run_sweep(args: &SweepArgs) -> Result<(String, String)> {
    if args.grid == 0 && (args.theta_range.is_none() || args.phi_range.is_none()) {
        return Err(Error::InvalidGrid("--grid needs at least one point".into()));
    }
    let method = parse_method(&args.method, args.seed)?;
    let (thetas, phis) = sweep_axes(args);
    let mut summary = String::new();
    let mut max_delta = None;
    let mut slopes = Vec::new();
    let (mode, rows) = if args.table1 {
        let ps = args.p_grid.map(|r| r.values()).unwrap_or_else(|| Range { min: 0.0, max: 0.25, count: 6 }.values());
        let grid = SweepGrid {
            schemes: Scheme::ALL.to_vec(),
            kinds: NoiseKind::NOISY.to_vec(),
            ps: ps.clone(),
            thetas: vec![std::f64::consts::FRAC_PI_4],
            phis: vec![std::f64::consts::FRAC_PI_4],
            placement: Placement::UniformAverage,
            method,
        };
        let reports = grid_sweep(&grid)?;
        for chunk in reports.chunks(ps.len()) {
            let ys: Vec<f64> = chunk.iter().map(|r| r.avg_fidelity_sim).collect();
            let (slope, intercept) = if ps.len() > 1 { linear_fit(&ps, &ys) } else { (f64::NAN, ys[0]) };
            let (scheme, noise) = (chunk[0].scheme, chunk[0].noise);
            let expected = table1_slope(scheme, noise);
            summary.push_str(&format!(
                "{scheme} {noise}: slope {slope:.9} (expected {expected:.9}), intercept {intercept:.9}\n"
            ));
            slopes.push(SlopeFit {
                scheme,
                noise,
                slope,
                intercept,
                expected,
            });
        }
        ("table1", reports.iter().map(SweepRow::from).collect::<Vec<_>>())
    } else {
        let mut schemes = args.scheme.clone();
        if args.delta_f {
            schemes = Scheme::ALL.to_vec();
        }
        let grid = SweepGrid {
            schemes,
            kinds: args.noise.clone(),
            ps: p_values(args),
            thetas,
            phis,
            placement: args.placement,
            method,
        };
        let reports = grid_sweep(&grid)?;
        if args.delta_f {
            let (epr, ghz) = reports.split_at(reports.len() / 2);
            let rows: Vec<SweepRow> = epr
                .iter()
                .zip(ghz)
                .map(|(e, g)| {
                    let closed = delta_f(e.theta, e.phi, e.noise, e.p).ok();
                    let sim = g.avg_fidelity_sim - e.avg_fidelity_sim;
                    SweepRow {
                        scheme: "ghz2-epr3".into(),
                        theta: e.theta,
                        phi: e.phi,
                        noise: e.noise,
                        p: e.p,
                        placement: e.placement.label(),
                        avg_fidelity_sim: sim,
                        avg_fidelity_closed: closed,
                        abs_dev: closed.map(|c| (sim - c).abs()),
                        std_error: None,
                        per_placement: None,
                    }
                })
                .collect();
            let best = rows
                .iter()
                .max_by(|a, b| a.avg_fidelity_sim.total_cmp(&b.avg_fidelity_sim))
                .expect("nonempty grid");
            summary.push_str(&format!(
                "max delta_f = {:.6} at theta = {:.6}, phi = {:.6} ({} rows)\n",
                best.avg_fidelity_sim,
                best.theta,
                best.phi,
                rows.len()
            ));
            max_delta = Some(best.avg_fidelity_sim);
            ("delta-f", rows)
        } else {
            ("average", reports.iter().map(SweepRow::from).collect())
        }
    };
    let body = match args.format {
        Format::Csv => rows_csv(&rows)?,
        Format::Json => {
            let doc = SweepDocument {
                schema_version: SCHEMA_VERSION,
                mode,
                rows: &rows,
                max_delta_f: max_delta,
                slopes,
            };
            serde_json::to_string_pretty(&doc)? + "\n"
        }
    };
    Ok((body, summary))
}

#[derive(Debug, Serialize)]
struct TeleportDocument<'a> {
    schema_version: u32,
    theta: f64,
    phi: f64,
    noise: NoiseSpec,
    run: &'a TeleportRun,
}

pub fn run_teleport(args: &TeleportArgs) -> Result<String> {
    let cfg = SchemeConfig::new(args.scheme, args.theta, args.phi)?;
    let noise = if args.noise == NoiseKind::None {
        NoiseSpec::none()
    } else {
        NoiseSpec::new(args.noise, args.p, args.placement)?
    };
    let input = match (&args.input, args.random_input) {
        (Some(s), _) => parse_input(s)?,
        (None, true) => {
            let seed = args.seed.ok_or_else(|| Error::InvalidArgument("--random-input needs --seed".into()))?;
            InputState::random(&mut ChaCha8Rng::seed_from_u64(seed))
        }
        (None, false) => {
            return Err(Error::InvalidArgument("give --input THETA0,PHASE, --input equal or --random-input".into()))
        }
    };
    let run = teleport(&input, &cfg, &noise)?;
    if args.json {
        let doc = TeleportDocument {
            schema_version: SCHEMA_VERSION,
            theta: args.theta,
            phi: args.phi,
            noise,
            run: &run,
        };
        return Ok(serde_json::to_string_pretty(&doc)? + "\n");
    }
    let mut s = String::new();
    s.push_str(&format!(
        "scheme {}  theta {:.6}  phi {:.6}  noise {} p={} ({})\n",
        cfg.scheme,
        args.theta,
        args.phi,
        noise.kind,
        noise.p,
        noise.placement.label()
    ));
    let [c0, c1] = input.amplitudes();
    s.push_str(&format!(
        "input c0 = {:.6}{:+.6}i  c1 = {:.6}{:+.6}i\n",
        c0.re, c0.im, c1.re, c1.im
    ));
    s.push_str("outcome  bits    probability  fidelity\n");
    for o in run.possible_outcomes() {
        s.push_str(&format!(
            "{:>7}  {}  {:.6}     {:.6}\n",
            o.outcome.index(),
            o.outcome.bit_string(),
            o.probability,
            o.conditional_fidelity.unwrap_or(f64::NAN)
        ));
    }
    s.push_str(&format!("possible outcomes: {} of {}\n", run.possible_outcomes().count(), run.outcomes.len()));
    s.push_str(&format!("total fidelity: {:.6}\n", run.total_fidelity));
    Ok(s)
}

pub fn run_basis(args: &BasisArgs) -> Result<String> {
    if args.qubits < 2 {
        return Err(Error::TooFewQubits(args.qubits));
    }
    if args.qubits > 12 {
        return Err(Error::InvalidArgument("at most 12 qubits".into()));
    }
    let angle = EntanglementAngle::named("basis angle", args.phi)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["mu", "lambda", "state"])?;
    for label in basis_labels(args.qubits, angle)? {
        let lambda: String = label.lambda().iter().map(|b| char::from(b'0' + b)).collect();
        w.write_record([label.mu().to_string(), lambda, ket_string(&basis_element(&label))])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("utf-8"))
}

/// Runs the command line `args` (program name first). Returns the process exit code:
/// 0 on success, 1 when verification finds a failing criterion, 2 on errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn execute(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Teleport(a) => {
            out.write_all(run_teleport(a)?.as_bytes())?;
            Ok(0)
        }
        Command::Basis(a) => {
            out.write_all(run_basis(a)?.as_bytes())?;
            Ok(0)
        }
        Command::Sweep(a) => {
            let (body, summary) = run_sweep(a)?;
            match &a.output {
                Some(path) => {
                    std::fs::write(path, body)?;
                    out.write_all(summary.as_bytes())?;
                    writeln!(out, "wrote {}", path.display())?;
                }
                None => {
                    out.write_all(body.as_bytes())?;
                    err.write_all(summary.as_bytes())?;
                }
            }
            Ok(0)
        }
        Command::Verify(a) => {
            let report = Verifier::new().run(&a.only)?;
            if a.json {
                let doc = serde_json::json!({
                    "schema_version": SCHEMA_VERSION,
                    "all_passed": report.all_passed(),
                    "criteria": report.outcomes,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
            } else {
                out.write_all(report.render().as_bytes())?;
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let code = run(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn angles_and_units() {
        assert_abs_diff_eq!(parse_angle("45deg").unwrap(), std::f64::consts::FRAC_PI_4, epsilon = 1e-15);
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("0.5rad").unwrap(), 0.5);
        assert!(parse_angle("abc").is_err());
        assert!(parse_angle("1e999").is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(4.0 / 81.0), "0.0493827160494");
        assert_eq!(fmt_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_sig(-0.25), "-0.25");
        assert_eq!(fmt_sig(1.234e-9), "1.234e-09");
        assert_eq!(fmt_sig(std::f64::consts::PI * 1e13), "3.14159265359e+13");
        assert_eq!(fmt_sig(0.99999999999999), "1");
    }

    #[test]
    fn ranges() {
        let r = parse_range("0:0.25:6").unwrap();
        let v = r.values();
        assert_eq!(v.len(), 6);
        assert_abs_diff_eq!(v[1], 0.05, epsilon = 1e-15);
        assert_eq!(v[5], 0.25);
        assert!(parse_range("0:1").is_err());
        assert!(parse_range("0:1:0").is_err());
        let a = parse_angle_range("10deg:80deg:2").unwrap();
        assert_abs_diff_eq!(a.values()[1], 80f64.to_radians(), epsilon = 1e-15);
    }

    #[test]
    fn methods() {
        assert_eq!(parse_method("quad:16", None).unwrap(), AverageMethod::Quadrature(16));
        assert_eq!(
            parse_method("mc:100", Some(3)).unwrap(),
            AverageMethod::MonteCarlo { samples: 100, seed: 3 }
        );
        assert!(parse_method("mc:100", None).is_err());
        assert!(parse_method("simpson:3", None).is_err());
        assert_eq!(crate::fidelity::DEFAULT_QUADRATURE, 32);
    }

    #[test]
    fn inputs() {
        assert_eq!(parse_input("equal").unwrap(), InputState::equal());
        let i = parse_input("90deg,0").unwrap();
        assert_abs_diff_eq!(i.c1().norm(), 1.0, epsilon = 1e-15);
        assert!(parse_input("2,0").is_err());
        assert!(parse_input("0.3").is_err());
    }
}
