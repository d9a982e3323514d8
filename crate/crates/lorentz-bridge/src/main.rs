//! Command-line front end: kinematics calculators, plot-ready table
//! emitters and the verification harness.
//!
//! Exit codes are a stable contract: 0 success (or verification pass),
//! 1 verification failure, 2 usage error, 3 domain error. Data goes to
//! stdout, diagnostics to stderr.

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use lorentz_bridge::harness::{run_suites, BetaSampling, RunOptions, SamplingSpec, SuiteKey};
use lorentz_bridge::report::{format_sig, to_json};
use lorentz_bridge::{Axis, Boost, FourVector, WaveState};

const DEFAULT_SEED: u64 = 42;
const SEED_ENV_VAR: &str = "LORENTZ_BRIDGE_SEED";

#[derive(Parser)]
#[command(
    name = "lorentz-bridge",
    version,
    about = "Relativistic wave-particle kinematics calculators and verification suites",
    after_help = "Exit codes: 0 success/pass, 1 verification failure, 2 usage error, 3 domain error."
)]
struct Cli {
    /// Output format: json, csv or plain. Defaults to plain for the
    /// calculators and json for `verify`.
    #[arg(long, global = true)]
    format: Option<OutputFormat>,

    /// Significant digits for plain/CSV numbers (JSON always carries 17).
    #[arg(long, global = true)]
    precision: Option<usize>,

    /// Speed of light used to rescale velocity-dimensioned inputs and
    /// outputs; the default 1 keeps everything in natural units.
    /// `verify` always runs in natural units.
    #[arg(long = "c", global = true, value_name = "SPEED")]
    light_speed: Option<f64>,

    /// Key=value config file mirroring the long flags; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
    Plain,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "plain" => Ok(OutputFormat::Plain),
            other => Err(format!("unknown format `{other}`: expected json, csv or plain")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Apply an axis-aligned Lorentz boost to a four-vector.
    Boost {
        /// Four-vector as t,x,y,z.
        #[arg(long)]
        vector: Option<String>,
        /// Frame velocity (|beta| < 1; a velocity V if --c is given).
        #[arg(long)]
        beta: Option<f64>,
        /// Boost axis: x, y or z.
        #[arg(long)]
        axis: Option<Axis>,
    },
    /// Derived quantities of a plane wave: rest frequency, phase and group
    /// velocity, wavelength and the rest-wave frame velocity.
    Wave {
        /// Angular frequency (> 0).
        #[arg(long)]
        omega: Option<f64>,
        /// Wave vector as kx,ky,kz.
        #[arg(long)]
        k: Option<String>,
    },
    /// Doppler factors over a velocity range: CSV of (beta, factor).
    Doppler {
        /// Range start:stop:step, or a single velocity.
        #[arg(long = "beta-range")]
        beta_range: Option<String>,
    },
    /// Dispersion table omega(k) = sqrt(omega0^2 + k^2): CSV of
    /// (k, omega, v_p, v_g), sampled uniformly over (0, k-max].
    Dispersion {
        /// Rest frequency (>= 0; 0 gives the light cone omega = k).
        #[arg(long)]
        omega0: Option<f64>,
        /// Largest wave number in the table (> 0).
        #[arg(long = "k-max")]
        k_max: Option<f64>,
        /// Number of rows (>= 2).
        #[arg(long)]
        points: Option<u64>,
    },
    /// Run verification suites and emit the JSON report.
    Verify {
        /// all, theorem-a, theorem-b, lemma, ashby-miller, einstein,
        /// proportionality or kinematics.
        #[arg(long)]
        suite: Option<String>,
        /// Sampling seed; defaults to $LORENTZ_BRIDGE_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        /// Samples per suite.
        #[arg(long)]
        samples: Option<u64>,
        /// Largest sampled |beta|, in [0, 1).
        #[arg(long = "beta-max")]
        beta_max: Option<f64>,
        /// The invariant proportionality constant C.
        #[arg(long = "C")]
        invariant_c: Option<f64>,
        /// Relative tolerance for every suite.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Doppler-scaling exponent; anything but 1 is a negative control
        /// that must fail.
        #[arg(long)]
        exponent: Option<f64>,
        /// Momentum perturbation injected into pair constructions; nonzero
        /// values are negative controls that must fail.
        #[arg(long)]
        perturb: Option<f64>,
        /// Zero threshold for the four-case classification.
        #[arg(long = "zero-tol")]
        zero_tol: Option<f64>,
        /// Sample uniformly in rapidity instead of beta.
        #[arg(long = "rapidity-uniform")]
        rapidity_uniform: bool,
        /// Stress profile: beta_max = 1 - 1e-6.
        #[arg(long)]
        stress: bool,
    },
}

/// A CLI failure with its exit code: 2 usage, 3 domain.
struct CliError {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: 2, message: message.into() }
}

fn domain(message: impl Into<String>) -> CliError {
    CliError { code: 3, message: message.into() }
}

/// Key=value pairs loaded from --config; `#` starts a comment.
struct ConfigFile(HashMap<String, String>);

impl ConfigFile {
    fn load(path: Option<&PathBuf>) -> Result<Self, CliError> {
        let mut map = HashMap::new();
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("--config {}: {e}", path.display())))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    usage(format!(
                        "--config {}: line {} is not key=value",
                        path.display(),
                        lineno + 1
                    ))
                })?;
                map.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(Self(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| usage(format!("config key `{key}` = `{raw}`: {e}"))),
        }
    }
}

/// Flag wins over config; the caller supplies the default or requires it.
fn resolve<T: FromStr>(
    flag: Option<T>,
    config: &ConfigFile,
    key: &str,
) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => config.get(key),
    }
}

fn require<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("missing required flag --{flag}")))
}

fn parse_finite(raw: f64, flag: &str) -> Result<f64, CliError> {
    if raw.is_finite() {
        Ok(raw)
    } else {
        Err(usage(format!("--{flag}: `{raw}` is not a finite number")))
    }
}

fn parse_components<const N: usize>(raw: &str, flag: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != N {
        return Err(usage(format!(
            "--{flag}: expected {N} comma-separated numbers, got `{raw}`"
        )));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(&parts) {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|e| usage(format!("--{flag}: `{part}`: {e}")))?;
        if !v.is_finite() {
            return Err(usage(format!("--{flag}: `{part}` is not finite")));
        }
        *slot = v;
    }
    Ok(out)
}

/// `start:stop:step` or a single value.
fn parse_range(raw: &str, flag: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = raw.split(':').collect();
    match parts.len() {
        1 => {
            let [v] = parse_components::<1>(raw, flag)?;
            Ok(vec![v])
        }
        3 => {
            let [start] = parse_components::<1>(parts[0], flag)?;
            let [stop] = parse_components::<1>(parts[1], flag)?;
            let [step] = parse_components::<1>(parts[2], flag)?;
            if step <= 0.0 {
                return Err(usage(format!("--{flag}: step must be positive")));
            }
            if stop < start {
                return Err(usage(format!("--{flag}: stop lies below start")));
            }
            let mut values = Vec::new();
            let n = ((stop - start) / step + 1e-9).floor() as u64;
            for i in 0..=n {
                values.push(start + step * i as f64);
            }
            Ok(values)
        }
        _ => Err(usage(format!(
            "--{flag}: expected a single value or start:stop:step, got `{raw}`"
        ))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // clap prints its own message and uses exit code 2 for usage
        // errors, 0 for --help/--version
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let config = ConfigFile::load(cli.config.as_ref())?;
    let format = resolve(cli.format, &config, "format")?;
    let precision = resolve(cli.precision, &config, "precision")?.unwrap_or(6);
    let light_speed = resolve(cli.light_speed, &config, "c")?.unwrap_or(1.0);
    if !(light_speed.is_finite() && light_speed > 0.0) {
        return Err(usage(format!("--c: {light_speed} must be a positive number")));
    }

    match cli.command {
        Command::Boost { vector, beta, axis } => {
            let format = format.unwrap_or(OutputFormat::Plain);
            let raw = require(resolve(vector, &config, "vector")?, "vector")?;
            let components = parse_components::<4>(&raw, "vector")?;
            let beta_in = require(resolve(beta, &config, "beta")?, "beta")?;
            let beta = parse_finite(beta_in, "beta")? / light_speed;
            let axis = resolve(axis, &config, "axis")?.unwrap_or(Axis::X);
            cmd_boost(components, beta, axis, format, precision)
        }
        Command::Wave { omega, k } => {
            let format = format.unwrap_or(OutputFormat::Plain);
            let omega = require(resolve(omega, &config, "omega")?, "omega")?;
            let omega = parse_finite(omega, "omega")?;
            let raw_k = require(resolve(k, &config, "k")?, "k")?;
            let k = parse_components::<3>(&raw_k, "k")?;
            cmd_wave(omega, k, light_speed, format, precision)
        }
        Command::Doppler { beta_range } => {
            let format = format.unwrap_or(OutputFormat::Plain);
            let raw = require(resolve(beta_range, &config, "beta-range")?, "beta-range")?;
            let betas = parse_range(&raw, "beta-range")?;
            cmd_doppler(&betas, light_speed, format, precision)
        }
        Command::Dispersion { omega0, k_max, points } => {
            let format = format.unwrap_or(OutputFormat::Plain);
            let omega0 = require(resolve(omega0, &config, "omega0")?, "omega0")?;
            let k_max = require(resolve(k_max, &config, "k-max")?, "k-max")?;
            let points = require(resolve(points, &config, "points")?, "points")?;
            cmd_dispersion(omega0, k_max, points, light_speed, format, precision)
        }
        Command::Verify {
            suite,
            seed,
            samples,
            beta_max,
            invariant_c,
            tolerance,
            exponent,
            perturb,
            zero_tol,
            rapidity_uniform,
            stress,
        } => {
            let format = format.unwrap_or(OutputFormat::Json);
            let suite = resolve(suite, &config, "suite")?.unwrap_or_else(|| "all".to_string());
            let seed = match resolve(seed, &config, "seed")? {
                Some(s) => s,
                None => seed_from_env()?,
            };
            let samples = resolve(samples, &config, "samples")?.unwrap_or(1000);
            let stress = stress || config.get::<bool>("stress")?.unwrap_or(false);
            let rapidity_uniform =
                rapidity_uniform || config.get::<bool>("rapidity-uniform")?.unwrap_or(false);
            let mut spec = if stress {
                SamplingSpec::stress(seed, samples)
            } else {
                SamplingSpec::new(seed, samples)
            };
            if let Some(bm) = resolve(beta_max, &config, "beta-max")? {
                spec.beta_max = bm;
            }
            if rapidity_uniform {
                spec.beta_sampling = BetaSampling::UniformRapidity;
            }
            let opts = RunOptions {
                invariant_c: resolve(invariant_c, &config, "C")?.unwrap_or(1.0),
                tolerance: resolve(tolerance, &config, "tolerance")?.unwrap_or(1e-12),
                exponent: resolve(exponent, &config, "exponent")?.unwrap_or(1.0),
                perturbation: resolve(perturb, &config, "perturb")?.unwrap_or(0.0),
                zero_tol: resolve(zero_tol, &config, "zero-tol")?
                    .unwrap_or(lorentz_bridge::kinematics::ZERO_TOLERANCE_DEFAULT),
                suites: parse_suites(&suite)?,
            };
            cmd_verify(&spec, &opts, format, precision)
        }
    }
}

fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(raw) => raw
            .parse()
            .map_err(|e| usage(format!("${SEED_ENV_VAR} = `{raw}`: {e}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn parse_suites(raw: &str) -> Result<Option<Vec<SuiteKey>>, CliError> {
    if raw == "all" {
        return Ok(None);
    }
    let keys = raw
        .split(',')
        .map(|s| SuiteKey::from_str(s.trim()).map_err(|e| usage(format!("--suite: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(keys))
}

fn cmd_boost(
    components: [f64; 4],
    beta: f64,
    axis: Axis,
    format: OutputFormat,
    precision: usize,
) -> Result<ExitCode, CliError> {
    let [t, x, y, z] = components;
    let v = FourVector::try_new(t, x, y, z)
        .map_err(|e| usage(format!("--vector: {e}")))?;
    let boost = Boost::along(axis, beta).map_err(|e| domain(format!("--beta: {e}")))?;
    let out = boost.apply(&v);
    match format {
        OutputFormat::Json => {
            let obj = BTreeMap::from([
                ("t", out.t()),
                ("x", out.x()),
                ("y", out.y()),
                ("z", out.z()),
            ]);
            print!("{}", to_json(&obj));
        }
        OutputFormat::Csv => {
            println!("t,x,y,z");
            println!("{}", join_row(&[out.t(), out.x(), out.y(), out.z()], precision));
        }
        OutputFormat::Plain => {
            println!("{}", join_row(&[out.t(), out.x(), out.y(), out.z()], precision));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_wave(
    omega: f64,
    k: [f64; 3],
    c: f64,
    format: OutputFormat,
    precision: usize,
) -> Result<ExitCode, CliError> {
    // With --c the wave four-vector is (omega/c, k); velocity-dimensioned
    // outputs scale back by c, frequencies by c as well.
    let wave = WaveState::new(omega / c, k).map_err(|e| domain(format!("--omega/--k: {e}")))?;
    let mut rows: Vec<(&str, f64)> = Vec::new();
    let omega0 = wave
        .rest_frequency()
        .map_err(|e| domain(e.to_string()))?;
    rows.push(("omega0", omega0 * c));
    if wave.k_mag() > 0.0 {
        let vp = wave.phase_velocity().map_err(|e| domain(e.to_string()))?;
        rows.push(("phase_velocity", vp * c));
        rows.push(("wavelength", wave.wavelength().map_err(|e| domain(e.to_string()))?));
    }
    rows.push(("group_velocity", wave.group_velocity() * c));
    if let Ok(rest_velocity) = wave.rest_wave_velocity() {
        rows.push(("rest_velocity_x", rest_velocity[0] * c));
        rows.push(("rest_velocity_y", rest_velocity[1] * c));
        rows.push(("rest_velocity_z", rest_velocity[2] * c));
    }
    match format {
        OutputFormat::Json => {
            let obj: BTreeMap<&str, f64> = rows.into_iter().collect();
            print!("{}", to_json(&obj));
        }
        OutputFormat::Csv => {
            println!("quantity,value");
            for (name, value) in rows {
                println!("{name},{}", format_sig(value, precision));
            }
        }
        OutputFormat::Plain => {
            for (name, value) in rows {
                println!("{name} {}", format_sig(value, precision));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_doppler(
    betas: &[f64],
    c: f64,
    format: OutputFormat,
    precision: usize,
) -> Result<ExitCode, CliError> {
    let mut rows = Vec::new();
    for &raw in betas {
        let beta = raw / c;
        let factor = lorentz_bridge::doppler_factor(beta)
            .map_err(|e| domain(format!("--beta-range: {e}")))?;
        rows.push(vec![beta, factor]);
    }
    emit_table(&["beta", "factor"], &rows, format, precision);
    Ok(ExitCode::SUCCESS)
}

fn cmd_dispersion(
    omega0: f64,
    k_max: f64,
    points: u64,
    c: f64,
    format: OutputFormat,
    precision: usize,
) -> Result<ExitCode, CliError> {
    if !omega0.is_finite() || omega0 < 0.0 {
        return Err(domain(format!("--omega0: {omega0} must be >= 0")));
    }
    if !k_max.is_finite() || k_max <= 0.0 {
        return Err(domain(format!("--k-max: {k_max} must be > 0")));
    }
    if points < 2 {
        return Err(domain(format!("--points: {points} must be >= 2")));
    }
    let mut rows = Vec::new();
    for i in 1..=points {
        let k = k_max * i as f64 / points as f64;
        // hypot keeps the light cone exact: omega0 = 0 gives omega = c k.
        let omega = omega0.hypot(c * k);
        let v_p = omega / k;
        let v_g = c * c * k / omega;
        rows.push(vec![k, omega, v_p, v_g]);
    }
    emit_table(&["k", "omega", "v_p", "v_g"], &rows, format, precision);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    spec: &SamplingSpec,
    opts: &RunOptions,
    format: OutputFormat,
    precision: usize,
) -> Result<ExitCode, CliError> {
    let report = run_suites(spec, opts).map_err(|e| domain(e.to_string()))?;
    match format {
        OutputFormat::Json => print!("{}", report.to_json()),
        OutputFormat::Csv => {
            println!("suite,samples,max_abs_residual,max_rel_residual,tolerance,pass");
            for v in &report.verdicts {
                println!(
                    "{},{},{},{},{},{}",
                    v.suite_name,
                    v.samples,
                    format_sig(v.max_abs_residual, precision),
                    format_sig(v.max_rel_residual, precision),
                    format_sig(v.tolerance, precision),
                    v.pass
                );
            }
        }
        OutputFormat::Plain => {
            for v in &report.verdicts {
                println!(
                    "{} {} (samples {}, max rel residual {}, tolerance {})",
                    if v.pass { "PASS" } else { "FAIL" },
                    v.suite_name,
                    v.samples,
                    format_sig(v.max_rel_residual, precision),
                    format_sig(v.tolerance, precision),
                );
            }
            println!("overall: {}", if report.overall_pass { "PASS" } else { "FAIL" });
        }
    }
    if report.overall_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn join_row(values: &[f64], precision: usize) -> String {
    values
        .iter()
        .map(|&v| format_sig(v, precision))
        .collect::<Vec<_>>()
        .join(",")
}

fn emit_table(header: &[&str], rows: &[Vec<f64>], format: OutputFormat, precision: usize) {
    match format {
        OutputFormat::Json => {
            let objects: Vec<BTreeMap<&str, f64>> = rows
                .iter()
                .map(|row| header.iter().copied().zip(row.iter().copied()).collect())
                .collect();
            print!("{}", to_json(&objects));
        }
        OutputFormat::Csv | OutputFormat::Plain => {
            println!("{}", header.join(","));
            for row in rows {
                println!("{}", join_row(row, precision));
            }
        }
    }
}
