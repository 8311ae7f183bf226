//! Command-line front end.
//!
//! Every subcommand reads a [`ScenarioConfig`] (defaults, then `--config`,
//! then inline flags) and writes JSON or CSV to `out`. Exit codes: 0 on
//! success, 1 for invalid input, 2 for numerical failures, 3 when
//! `algebra-check` finds a residual above tolerance. Failures write a
//! single-line JSON record to `err`.

pub mod config;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use config::{Basis, Options, ScenarioConfig, StateConfig, TimeGrid};

use crate::dynamics::{evolve, product_hamiltonian};
use crate::entanglement::{
    cross_theory_singlet_entropy, eigen_amplitudes, entropy, reduced_density, schmidt,
    two_ptqubit_entanglement, Side, Theory,
};
use crate::error::Error;
use crate::linalg::{eig_hermitian, CMatrix, CVector};
use crate::metric::{tensor_space, MetricSpace};
use crate::ptqubit::{PTParams, PTQubitSystem};
use crate::rate::{h_max, trajectory_with_capability, HMaxConfig};

/// Residual tolerance for `algebra-check`.
pub const ALGEBRA_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "cpt-entangle",
    version,
    about = "Entanglement of PT-symmetric qubit pairs under Dirac and CPT inner products",
    allow_negative_numbers = true
)]
struct Cli {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Scenario JSON file, or `-` for stdin.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<String>,
    /// Print the resolved scenario as JSON and exit.
    #[arg(long, global = true)]
    dump_config: bool,
    /// Set r on both systems.
    #[arg(long, global = true, allow_negative_numbers = true)]
    r: Option<f64>,
    /// Set s on both systems.
    #[arg(long, global = true, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Set t on both systems.
    #[arg(long, global = true, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Set theta (radians) on both systems.
    #[arg(long, global = true, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Parameters of the first system.
    #[arg(
        long,
        global = true,
        value_name = "R,S,T,THETA",
        allow_hyphen_values = true
    )]
    sys1: Option<String>,
    /// Parameters of the second system.
    #[arg(
        long,
        global = true,
        value_name = "R,S,T,THETA",
        allow_hyphen_values = true
    )]
    sys2: Option<String>,
    /// Inner product used for partial traces and norms.
    #[arg(long, global = true, value_parser = parse_theory)]
    theory: Option<Theory>,
    /// Offset into the optimizer's start sequence.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    time_start: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    time_stop: Option<f64>,
    #[arg(long, global = true)]
    time_steps: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energies, alpha and metric eigenvalues of the first system.
    Spectrum,
    /// Residuals of the conjugation algebra for both systems.
    AlgebraCheck,
    /// Entanglement of the scenario state.
    Entropy,
    /// Dirac singlet traced with the CPT inner product over an alpha grid.
    SingletSweep {
        #[arg(long, default_value_t = 0.5)]
        alpha_max: f64,
        #[arg(long, default_value_t = 6)]
        steps: usize,
    },
    /// Amplitudes and entanglement along exp(-iHt).
    Evolve {
        /// Evolve under the full H1⊗H2 rather than its nonlocal part.
        #[arg(long)]
        full_hamiltonian: bool,
    },
    /// Schmidt weight, entanglement, rate and bound along exp(-iHt).
    Rate {
        #[arg(long)]
        full_hamiltonian: bool,
    },
    /// Entangling capability of the coupled Hamiltonian.
    Hmax {
        #[arg(long)]
        full_hamiltonian: bool,
    },
}

fn parse_theory(s: &str) -> Result<Theory, String> {
    match s {
        "dirac" => Ok(Theory::Dirac),
        "cpt" => Ok(Theory::Cpt),
        other => Err(format!("unknown theory {other:?} (expected dirac or cpt)")),
    }
}

fn parse_params(text: &str) -> Result<PTParams, Error> {
    let values: Vec<f64> = text
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::InvalidParams(format!("{text:?}: {e}")))?;
    match values[..] {
        [r, s, t, theta] => Ok(PTParams::new(r, s, t, theta)),
        _ => Err(Error::InvalidParams(format!(
            "{text:?}: expected R,S,T,THETA"
        ))),
    }
}

/// Failure carried up to [`run`] along with its exit code.
struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_numerical() { 2 } else { 1 },
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            kind: "Io".into(),
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the CLI with process stdin available for `--config -`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_stdin(args, &mut std::io::stdin(), out, err)
}

pub fn run_with_stdin<I, T>(
    args: I,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let record = json!({"error": "Usage", "message": e.to_string()});
            let _ = writeln!(err, "{record}");
            return 1;
        }
    };
    match execute(cli, stdin, out) {
        Ok(code) => code,
        Err(f) => {
            let record = json!({"error": f.kind, "message": f.message});
            let _ = writeln!(err, "{record}");
            f.code
        }
    }
}

fn resolve(args: &ScenarioArgs, stdin: &mut dyn Read) -> CliResult<ScenarioConfig> {
    let mut cfg = match args.config.as_deref() {
        None => ScenarioConfig::default(),
        Some(path) => {
            let mut text = String::new();
            if path == "-" {
                stdin.read_to_string(&mut text)?;
            } else {
                text = std::fs::read_to_string(path)?;
            }
            ScenarioConfig::from_json(&text)?
        }
    };
    for sys in [&mut cfg.system1, &mut cfg.system2] {
        if let Some(v) = args.r {
            sys.r = v;
        }
        if let Some(v) = args.s {
            sys.s = v;
        }
        if let Some(v) = args.t {
            sys.t = v;
        }
        if let Some(v) = args.theta {
            sys.theta = v;
        }
    }
    if let Some(text) = &args.sys1 {
        cfg.system1 = parse_params(text)?;
    }
    if let Some(text) = &args.sys2 {
        cfg.system2 = parse_params(text)?;
    }
    if let Some(theory) = args.theory {
        cfg.options.theory = theory;
    }
    if let Some(seed) = args.seed {
        cfg.options.seed = seed;
    }
    if let Some(v) = args.time_start {
        cfg.times.start = v;
    }
    if let Some(v) = args.time_stop {
        cfg.times.stop = v;
    }
    if let Some(v) = args.time_steps {
        cfg.times.steps = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn execute(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = resolve(&cli.scenario, stdin)?;
    if cli.scenario.dump_config {
        writeln!(out, "{}", cfg.to_json())?;
        return Ok(0);
    }
    match cli.command {
        Command::Spectrum => spectrum(&cfg, out),
        Command::AlgebraCheck => algebra_check(&cfg, out),
        Command::Entropy => entropy_report(&cfg, out),
        Command::SingletSweep { alpha_max, steps } => singlet_sweep(alpha_max, steps, out),
        Command::Evolve { full_hamiltonian } => evolve_csv(&cfg, full_hamiltonian, out),
        Command::Rate { full_hamiltonian } => rate_csv(&cfg, full_hamiltonian, out),
        Command::Hmax { full_hamiltonian } => hmax_report(&cfg, full_hamiltonian, out),
    }
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    writeln!(out, "{text}")?;
    Ok(())
}

/// 17 significant digits; non-finite values spelled out.
fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        // Adding +0.0 turns -0.0 into 0.0 and leaves every other value alone.
        format!("{:.16e}", x + 0.0)
    }
}

fn write_csv_row(out: &mut dyn Write, values: &[f64]) -> CliResult<()> {
    let line: Vec<String> = values.iter().map(|&v| fmt_num(v)).collect();
    writeln!(out, "{}", line.join(","))?;
    Ok(())
}

fn spectrum(cfg: &ScenarioConfig, out: &mut dyn Write) -> CliResult<i32> {
    let params = cfg.system1;
    let (lo, hi) = params.spectrum()?;
    let mut report = json!({
        "params": params,
        "energies": [lo, hi],
        "alpha": null,
        "sin_alpha": null,
        "metric_eigenvalues": null,
    });
    match PTQubitSystem::build(params) {
        Ok(sys) => {
            let eig = eig_hermitian(sys.space().metric())?;
            report["alpha"] = json!(sys.alpha());
            report["sin_alpha"] = json!(sys.alpha().sin());
            report["metric_eigenvalues"] = json!(eig.eigenvalues);
        }
        Err(Error::UnsupportedAsymmetric { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    write_json(out, &report)?;
    Ok(0)
}

fn algebra_check(cfg: &ScenarioConfig, out: &mut dyn Write) -> CliResult<i32> {
    let (sys1, sys2) = cfg.systems()?;
    let (r1, r2) = (sys1.verify_algebra(), sys2.verify_algebra());
    let max = r1.max().max(r2.max());
    let pass = max <= ALGEBRA_TOLERANCE;
    write_json(
        out,
        &json!({
            "system1": r1,
            "system2": r2,
            "max_residual": max,
            "tolerance": ALGEBRA_TOLERANCE,
            "pass": pass,
        }),
    )?;
    Ok(if pass { 0 } else { 3 })
}

fn theory_spaces(
    cfg: &ScenarioConfig,
    sys1: &PTQubitSystem,
    sys2: &PTQubitSystem,
) -> (MetricSpace, MetricSpace) {
    match cfg.options.theory {
        Theory::Cpt => (sys1.space().clone(), sys2.space().clone()),
        Theory::Dirac => (MetricSpace::identity(2), MetricSpace::identity(2)),
    }
}

fn entropy_report(cfg: &ScenarioConfig, out: &mut dyn Write) -> CliResult<i32> {
    let (sys1, sys2) = cfg.systems()?;
    let (s1, s2) = theory_spaces(cfg, &sys1, &sys2);
    let psi = tensor_space(&s1, &s2).normalize(&cfg.initial_state(&sys1, &sys2)?)?;

    let sf = schmidt(&psi, &s1, &s2)?;
    let rho = reduced_density(&psi, &s1, &s2, Side::First, cfg.options.theory)?;
    // Closed form in the theory's own orthonormal product basis.
    let quad = match cfg.options.theory {
        Theory::Cpt => eigen_amplitudes(&sys1, &sys2, &psi)?,
        Theory::Dirac => [psi[0], psi[1], psi[2], psi[3]],
    };
    let closed = two_ptqubit_entanglement(quad[0], quad[1], quad[2], quad[3])?;
    let pipeline = sf.entropy();
    write_json(
        out,
        &json!({
            "theory": cfg.options.theory,
            "closed_form": closed,
            "pipeline": pipeline,
            "difference": closed - pipeline,
            "computational_frame": entropy(&rho)?,
            "schmidt_weights": sf.weights(),
        }),
    )?;
    Ok(0)
}

fn singlet_sweep(alpha_max: f64, steps: usize, out: &mut dyn Write) -> CliResult<i32> {
    if steps == 0 || !alpha_max.is_finite() {
        return Err(Error::InvalidParams(
            "singlet-sweep needs steps >= 1 and a finite alpha-max".into(),
        )
        .into());
    }
    let mut rows = Vec::with_capacity(steps);
    for k in 0..steps {
        let alpha = if steps == 1 {
            alpha_max
        } else {
            alpha_max * k as f64 / (steps - 1) as f64
        };
        rows.push(cross_theory_singlet_entropy(alpha)?);
    }
    writeln!(out, "alpha,E_closed_form,E_oracle,delta")?;
    for row in rows {
        let closed = row.closed_form_value.unwrap_or(f64::NAN);
        write_csv_row(
            out,
            &[
                row.alpha,
                closed,
                row.oracle_value,
                closed - row.oracle_value,
            ],
        )?;
    }
    Ok(0)
}

fn generator(
    cfg: &ScenarioConfig,
    full: bool,
) -> CliResult<(PTQubitSystem, PTQubitSystem, CMatrix)> {
    let (sys1, sys2) = cfg.systems()?;
    let ph = product_hamiltonian(&sys1, &sys2)?;
    let h = if full {
        ph.matrix.clone()
    } else {
        ph.nonlocal_part.clone()
    };
    Ok((sys1, sys2, h))
}

fn evolve_csv(cfg: &ScenarioConfig, full: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (sys1, sys2, h) = generator(cfg, full)?;
    let (s1, s2) = theory_spaces(cfg, &sys1, &sys2);
    let psi0 = cfg.initial_state(&sys1, &sys2)?;
    let result = evolve(&h, &psi0, &cfg.times.samples(), &s1, &s2)?;
    writeln!(out, "t,re_00,im_00,re_01,im_01,re_10,im_10,re_11,im_11,E")?;
    for ((t, state), e) in result
        .times
        .iter()
        .zip(&result.states)
        .zip(&result.entropies)
    {
        let mut row = vec![*t];
        row.extend(state.iter().flat_map(|z| [z.re, z.im]));
        row.push(*e);
        write_csv_row(out, &row)?;
    }
    Ok(0)
}

fn optimizer_config(cfg: &ScenarioConfig) -> HMaxConfig {
    HMaxConfig {
        seed: cfg.options.seed,
        ..HMaxConfig::default()
    }
}

fn rate_csv(cfg: &ScenarioConfig, full: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (sys1, sys2, h) = generator(cfg, full)?;
    let (s1, s2) = theory_spaces(cfg, &sys1, &sys2);
    let psi0 = cfg.initial_state(&sys1, &sys2)?;
    let capability = h_max(&h, &s1, &s2, &optimizer_config(cfg))?.value;
    let samples =
        trajectory_with_capability(&h, &psi0, &s1, &s2, &cfg.times.samples(), capability)?;
    writeln!(out, "t,lambda,E,gamma,bound,lambda_closed_form")?;
    for s in samples {
        write_csv_row(
            out,
            &[
                s.t,
                s.lambda,
                s.entropy,
                s.gamma,
                s.bound,
                s.lambda_closed_form,
            ],
        )?;
    }
    Ok(0)
}

fn vector_json(v: &CVector) -> serde_json::Value {
    json!(v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

fn hmax_report(cfg: &ScenarioConfig, full: bool, out: &mut dyn Write) -> CliResult<i32> {
    let (sys1, sys2, h) = generator(cfg, full)?;
    let (s1, s2) = theory_spaces(cfg, &sys1, &sys2);
    let settings = optimizer_config(cfg);
    let r = h_max(&h, &s1, &s2, &settings)?;
    write_json(
        out,
        &json!({
            "value": r.value,
            "a1": vector_json(&r.a1),
            "b1": vector_json(&r.b1),
            "theory": cfg.options.theory,
            "full_hamiltonian": full,
            "diagnostics": {
                "evaluations": r.evaluations,
                "starts": r.starts,
                "converged_starts": r.converged_starts,
                "multistart_value": r.multistart_value,
                "grid_value": r.grid_value,
                "grid_refined_value": r.grid_refined_value,
                "cross_check_gap": r.cross_check_gap,
                "seed": settings.seed,
                "grid_points": settings.grid_points,
                "tolerance": settings.tolerance,
            },
        }),
    )?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cpt-entangle").chain(args.iter().copied());
        let code = run_with_stdin(argv, &mut stdin.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt_num(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_num(f64::NAN), "NaN");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
        assert_eq!(fmt_num(-0.0), "0.0000000000000000e0");
    }

    #[test]
    fn sys_flags_parse() {
        let (code, out, _) = run_str(&["--sys1", "-0.5,1,1,0.2", "spectrum", "--dump-config"], "");
        assert_eq!(code, 0);
        let cfg = ScenarioConfig::from_json(&out).unwrap();
        assert_eq!(cfg.system1, PTParams::new(-0.5, 1.0, 1.0, 0.2));
    }

    #[test]
    fn config_from_stdin() {
        let mut cfg = ScenarioConfig::default();
        cfg.options.seed = 11;
        let (code, out, _) = run_str(
            &["entropy", "--config", "-", "--dump-config"],
            &cfg.to_json(),
        );
        assert_eq!(code, 0);
        assert_eq!(ScenarioConfig::from_json(&out).unwrap(), cfg);
    }

    #[test]
    fn broken_phase_is_numerical_failure() {
        let (code, _, err) = run_str(&["spectrum", "--r", "2", "--theta", "1.2"], "");
        assert_eq!(code, 2);
        assert!(err.contains("BrokenPTPhase"));
    }

    #[test]
    fn bad_amplitude_count_is_validation_failure() {
        let json = r#"{"state": {"basis": "computational", "amplitudes": [[1, 0]]}}"#;
        let (code, _, err) = run_str(&["entropy", "--config", "-"], json);
        assert_eq!(code, 1);
        let record: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(record["error"], "InvalidParams");
    }
}
