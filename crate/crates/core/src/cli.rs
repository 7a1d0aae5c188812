//! The `dkp` command line.
//!
//! Exit codes: 0 on success, 2 on usage and physics-domain errors, 1 on
//! numerical failures and I/O errors. Every error is reported on stderr as a
//! single JSON line `{code, message, context}`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{build_representation, projector_ok, verify_algebra, verify_conjugation, Spin};
use crate::current::{compare_currents, wavefunction_samples, ChannelWeights};
use crate::error::DkpError;
use crate::oracle::{energy_grid, scan_mismatch, solve_level, OracleOptions};
use crate::special::{kummer_m, laguerre, QuadratureRule};
use crate::spectrum::{energy_level, spectrum, CouplingConfig};
use crate::verify::{verify_all, verify_suite, Suite};
use crate::wavefunction::{parity_report, symmetric_grid, Eigenfunction, DEFAULT_GRID_EXTENT, DEFAULT_GRID_SAMPLES};

/// Relative `--output` paths are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "DKP_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "dkp", version, about = "Bound states of DKP bosons in an inversely linear vector background")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form energy levels
    Spectrum(SpectrumArgs),
    /// Φ, Φ' and the current on a symmetric grid
    Wavefunction(GridArgs),
    /// Matrix-path and closed-form currents side by side
    Current(GridArgs),
    /// Shooting-method energies compared with the closed form
    Oracle(OracleArgs),
    /// Run invariant suites
    Verify(VerifyArgs),
    /// Export representation matrices
    Dump {
        #[command(subcommand)]
        what: DumpWhat,
    },
    /// Connection-condition table
    Check {
        #[command(subcommand)]
        what: CheckWhat,
    },
    #[command(hide = true)]
    Debug {
        #[command(subcommand)]
        what: DebugWhat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Physics {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true, global = true)]
    m: f64,
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true, global = true)]
    g1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, global = true)]
    g2: f64,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1), global = true)]
    spin: u8,
    /// Reserved; nothing in this tool is stochastic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
    #[arg(long, default_value_t = 5)]
    n_max: usize,
    /// Report "no bound states" as an empty result instead of an error.
    #[arg(long)]
    allow_empty: bool,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
    #[arg(long, default_value_t = 0)]
    n: usize,
    #[arg(long)]
    samples: Option<usize>,
    /// Half-width of the grid; defaults to 40/λ.
    #[arg(long)]
    x_max: Option<f64>,
    /// σ = + channel amplitude (spin 1).
    #[arg(long, allow_negative_numbers = true)]
    c_plus: Option<f64>,
    /// σ = − channel amplitude (spin 1).
    #[arg(long, allow_negative_numbers = true)]
    c_minus: Option<f64>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[command(flatten)]
    physics: Physics,
    #[command(flatten)]
    out: Output,
    #[arg(long, default_value_t = 5, global = true)]
    n_max: usize,
    #[arg(long, default_value_t = 1e-11, global = true)]
    ode_tol: f64,
    #[arg(long, default_value_t = 1e-10, global = true)]
    energy_tol: f64,
    #[command(subcommand)]
    action: Option<OracleAction>,
}

#[derive(Debug, Subcommand)]
enum OracleAction {
    /// Mismatch on an energy grid (points at cell midpoints of [e_min, e_max])
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        e_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        e_max: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        points: usize,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// algebra, spectrum, parity, orthogonality, oracle, current or all
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    action: Option<VerifyAction>,
}

#[derive(Debug, Subcommand)]
enum VerifyAction {
    /// Algebra report for one representation
    Algebra {
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        spin: u8,
    },
}

#[derive(Debug, Subcommand)]
enum DumpWhat {
    /// β⁰..β³ as a JSON array of row-major matrices
    Betas {
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
        spin: u8,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CheckWhat {
    /// Odd and even extension residuals of the connection condition
    Parity {
        #[command(flatten)]
        physics: Physics,
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        delta: f64,
        #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-3,1e-4,1e-5")]
        epsilons: Vec<f64>,
    },
}

#[derive(Debug, Subcommand)]
enum DebugWhat {
    Laguerre {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
    Kummer {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        z: f64,
    },
}

struct Failure {
    exit: i32,
    code: String,
    message: String,
    context: Value,
}

impl Failure {
    fn physics(err: DkpError, context: Value) -> Self {
        Failure {
            exit: if err.is_domain() { 2 } else { 1 },
            code: err.code().into(),
            message: err.to_string(),
            context,
        }
    }

    fn io(err: std::io::Error, path: &Path) -> Self {
        Failure {
            exit: 1,
            code: "io".into(),
            message: err.to_string(),
            context: json!({ "path": path.display().to_string() }),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parse `args` (program name first) and run; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            let rendered = e.render().to_string();
            let message = rendered.lines().next().unwrap_or("").trim_start_matches("error: ");
            let failure = Failure {
                exit: 2,
                code: "usage".into(),
                message: message.to_string(),
                context: json!({ "kind": format!("{:?}", e.kind()) }),
            };
            return report(failure, err);
        }
    };
    match dispatch(cli.command) {
        Ok((body, path)) => match emit(&body, path.as_deref(), out) {
            Ok(()) => 0,
            Err(f) => report(f, err),
        },
        Err(f) => report(f, err),
    }
}

fn report(f: Failure, err: &mut dyn Write) -> i32 {
    let line = json!({ "code": f.code, "message": f.message, "context": f.context });
    let _ = writeln!(err, "{line}");
    f.exit
}

fn resolve_output(path: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(body: &str, path: Option<&Path>, out: &mut dyn Write) -> CliResult<()> {
    match path {
        None => out
            .write_all(body.as_bytes())
            .map_err(|e| Failure::io(e, Path::new("<stdout>"))),
        Some(p) => {
            let target = resolve_output(p);
            if let Some(parent) = target.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| Failure::io(e, parent))?;
            }
            std::fs::write(&target, body).map_err(|e| Failure::io(e, &target))
        }
    }
}

/// Seventeen significant digits.
pub fn fmt_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    // writing into a Vec cannot fail
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn json_body(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn spin_of(label: u8) -> Spin {
    Spin::from_label(label).unwrap_or(Spin::Spin0)
}

fn physics_echo(p: &Physics) -> Value {
    json!({ "m": p.m, "g1": p.g1, "g2": p.g2, "spin": p.spin })
}

fn config(p: &Physics, context: &Value) -> CliResult<CouplingConfig> {
    CouplingConfig::new(p.m, p.g1, p.g2, spin_of(p.spin)).map_err(|e| Failure::physics(e, context.clone()))
}

fn dispatch(command: Command) -> CliResult<(String, Option<PathBuf>)> {
    match command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Wavefunction(a) => cmd_grid(a, false),
        Command::Current(a) => cmd_grid(a, true),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Dump {
            what: DumpWhat::Betas { spin, output },
        } => {
            let rep = build_representation(spin_of(spin));
            let mats: Vec<Vec<Vec<i64>>> = rep.beta.iter().map(|b| b.rows()).collect();
            Ok((json_body(&mats), output))
        }
        Command::Check {
            what:
                CheckWhat::Parity {
                    physics,
                    out,
                    n,
                    delta,
                    epsilons,
                },
        } => cmd_parity(physics, out, n, delta, epsilons),
        Command::Debug { what } => cmd_debug(what),
    }
}

fn cmd_spectrum(a: SpectrumArgs) -> CliResult<(String, Option<PathBuf>)> {
    let mut params = physics_echo(&a.physics);
    params["n_max"] = json!(a.n_max);
    let ctx = json!({ "subcommand": "spectrum", "params": params });
    let cfg = config(&a.physics, &ctx)?;
    let header = ["n", "energy", "s", "gamma", "lambda", "binding_energy"];
    let levels = match spectrum(&cfg, a.n_max) {
        Ok(levels) => levels,
        Err(DkpError::NoBoundStates) if a.allow_empty => {
            let body = match a.out.format {
                Format::Csv => csv_table(&header, Vec::<Vec<String>>::new()),
                Format::Json => json_body(&json!({
                    "params": params,
                    "outcome": DkpError::NoBoundStates.code(),
                    "message": DkpError::NoBoundStates.to_string(),
                    "states": [],
                })),
            };
            return Ok((body, a.out.output));
        }
        Err(e) => return Err(Failure::physics(e, ctx)),
    };
    let body = match a.out.format {
        Format::Csv => csv_table(
            &header,
            levels.iter().map(|b| {
                vec![
                    b.n.to_string(),
                    fmt_real(b.energy),
                    fmt_real(b.s),
                    fmt_real(b.gamma),
                    fmt_real(b.lambda),
                    fmt_real(b.binding_energy(cfg.m)),
                ]
            }),
        ),
        Format::Json => {
            let states: Vec<Value> = levels
                .iter()
                .map(|b| {
                    json!({
                        "n": b.n,
                        "energy": b.energy,
                        "s": b.s,
                        "gamma": b.gamma,
                        "lambda": b.lambda,
                        "binding_energy": b.binding_energy(cfg.m),
                    })
                })
                .collect();
            json_body(&json!({ "params": params, "outcome": "bound_states", "states": states }))
        }
    };
    Ok((body, a.out.output))
}

fn weights(a: &GridArgs, ctx: &Value) -> CliResult<ChannelWeights> {
    match (a.c_plus, a.c_minus) {
        (None, None) => Ok(ChannelWeights::default()),
        (p, q) => {
            let p = p.unwrap_or(0.0);
            let q = q.unwrap_or(0.0);
            ChannelWeights::from_pair(Complex64::new(p, 0.0), Complex64::new(q, 0.0))
                .map_err(|e| Failure::physics(e, ctx.clone()))
        }
    }
}

fn cmd_grid(a: GridArgs, current_table: bool) -> CliResult<(String, Option<PathBuf>)> {
    let name = if current_table { "current" } else { "wavefunction" };
    let default_samples = if current_table { 101 } else { DEFAULT_GRID_SAMPLES };
    let samples = a.samples.unwrap_or(default_samples);
    let mut params = physics_echo(&a.physics);
    params["n"] = json!(a.n);
    params["samples"] = json!(samples);
    let ctx = json!({ "subcommand": name, "params": params });
    let cfg = config(&a.physics, &ctx)?;
    let w = weights(&a, &ctx)?;
    let rule = QuadratureRule::default();
    let ef = Eigenfunction::normalized(&cfg, a.n, &rule).map_err(|e| Failure::physics(e, ctx.clone()))?;
    let x_max = a.x_max.unwrap_or(DEFAULT_GRID_EXTENT / ef.state.lambda);
    if !(x_max > 0.0 && x_max.is_finite()) || samples == 0 {
        return Err(Failure::physics(
            DkpError::InvalidParameter {
                name: "grid",
                reason: format!("x_max = {x_max}, samples = {samples}"),
            },
            ctx,
        ));
    }
    params["x_max"] = json!(x_max);
    params["energy"] = json!(ef.state.energy);
    params["norm_const"] = json!(ef.norm_const);
    params["channel_weights"] = json!([w.plus[0].re, w.minus.re]);

    let body = if current_table {
        let rows = compare_currents(&ef, &w, &symmetric_grid(x_max, samples));
        match a.out.format {
            Format::Csv => csv_table(
                &["x", "j0_matrix", "j0_closed", "j1_matrix", "j1_closed"],
                rows.iter().map(|r| {
                    vec![
                        fmt_real(r.x),
                        fmt_real(r.j0_matrix),
                        fmt_real(r.j0_closed),
                        fmt_real(r.j1_matrix),
                        fmt_real(r.j1_closed),
                    ]
                }),
            ),
            Format::Json => json_body(&json!({ "params": params, "rows": rows })),
        }
    } else {
        let rows = wavefunction_samples(&ef, &w, x_max, samples);
        match a.out.format {
            Format::Csv => csv_table(
                &["x", "phi", "dphi", "j0", "j1"],
                rows.iter().map(|r| {
                    vec![
                        fmt_real(r.x),
                        fmt_real(r.phi),
                        fmt_real(r.dphi),
                        fmt_real(r.j0),
                        fmt_real(r.j1),
                    ]
                }),
            ),
            Format::Json => json_body(&json!({ "params": params, "samples": rows })),
        }
    };
    Ok((body, a.out.output))
}

fn cmd_oracle(a: OracleArgs) -> CliResult<(String, Option<PathBuf>)> {
    let opts = OracleOptions {
        ode_tol: a.ode_tol,
        energy_tol: a.energy_tol,
        ..OracleOptions::default()
    };
    let mut params = physics_echo(&a.physics);
    params["ode_tol"] = json!(a.ode_tol);
    params["energy_tol"] = json!(a.energy_tol);
    params["x_min_factor"] = json!(opts.x_min_factor);
    params["x_max_factor"] = json!(opts.x_max_factor);

    if let Some(OracleAction::Scan { e_min, e_max, points }) = a.action {
        let e_min = e_min.unwrap_or(-a.physics.m);
        let e_max = e_max.unwrap_or(a.physics.m);
        params["e_min"] = json!(e_min);
        params["e_max"] = json!(e_max);
        params["points"] = json!(points);
        let ctx = json!({ "subcommand": "oracle scan", "params": params });
        let cfg = config(&a.physics, &ctx)?;
        cfg.bound_state_gate().map_err(|e| Failure::physics(e, ctx.clone()))?;
        if !(e_min < e_max) || points == 0 {
            return Err(Failure::physics(
                DkpError::InvalidParameter {
                    name: "scan",
                    reason: format!("need e_min < e_max and points > 0 (got {e_min}, {e_max}, {points})"),
                },
                ctx,
            ));
        }
        let pts = scan_mismatch(&cfg, &energy_grid(e_min, e_max, points), &opts);
        let body = match a.out.format {
            Format::Csv => csv_table(
                &["energy", "mismatch", "node_count", "error"],
                pts.iter().map(|p| {
                    vec![
                        fmt_real(p.energy),
                        fmt_real(p.mismatch),
                        p.node_count.map(|c| c.to_string()).unwrap_or_default(),
                        p.error.clone().unwrap_or_default(),
                    ]
                }),
            ),
            Format::Json => json_body(&json!({ "params": params, "points": pts })),
        };
        return Ok((body, a.out.output));
    }

    params["n_max"] = json!(a.n_max);
    let ctx = json!({ "subcommand": "oracle", "params": params });
    let cfg = config(&a.physics, &ctx)?;
    let mut rows = Vec::with_capacity(a.n_max + 1);
    for n in 0..=a.n_max {
        let exact = energy_level(&cfg, n).map_err(|e| Failure::physics(e, ctx.clone()))?;
        let r = solve_level(&cfg, n, &opts).map_err(|e| Failure::physics(e, ctx.clone()))?;
        rows.push((exact.energy, r));
    }
    let body = match a.out.format {
        Format::Csv => csv_table(
            &["n", "E_analytic", "E_oracle", "abs_diff", "node_count", "iterations"],
            rows.iter().map(|(e, r)| {
                vec![
                    r.n.to_string(),
                    fmt_real(*e),
                    fmt_real(r.energy),
                    fmt_real((r.energy - e).abs()),
                    r.node_count.to_string(),
                    r.iterations.to_string(),
                ]
            }),
        ),
        Format::Json => {
            let levels: Vec<Value> = rows
                .iter()
                .map(|(e, r)| {
                    json!({
                        "n": r.n,
                        "E_analytic": e,
                        "E_oracle": r.energy,
                        "abs_diff": (r.energy - e).abs(),
                        "node_count": r.node_count,
                        "iterations": r.iterations,
                        "mismatch": r.mismatch,
                        "bracket": [r.bracket.0, r.bracket.1],
                    })
                })
                .collect();
            json_body(&json!({ "params": params, "levels": levels }))
        }
    };
    Ok((body, a.out.output))
}

fn cmd_verify(a: VerifyArgs) -> CliResult<(String, Option<PathBuf>)> {
    if let Some(VerifyAction::Algebra { spin }) = a.action {
        let rep = build_representation(spin_of(spin));
        let alg = verify_algebra(&rep);
        let conj = verify_conjugation(&rep);
        let body = json_body(&json!({
            "spin": spin,
            "max_residual": alg.max_residual,
            "triples_checked": alg.triples_checked,
            "projector_ok": projector_ok(&rep),
            "conjugation_ok": conj.anticommute_beta && conj.anticommute_commutator,
        }));
        return Ok((body, a.output));
    }
    let body = if a.suite == "all" {
        json_body(&verify_all())
    } else {
        let suite: Suite = a
            .suite
            .parse()
            .map_err(|e| Failure::physics(e, json!({ "subcommand": "verify", "suite": a.suite })))?;
        let report = verify_suite(suite);
        json_body(&json!({ "pass": report.pass, "suites": [report] }))
    };
    Ok((body, a.output))
}

fn cmd_parity(
    physics: Physics,
    out: Output,
    n: usize,
    delta: f64,
    epsilons: Vec<f64>,
) -> CliResult<(String, Option<PathBuf>)> {
    let mut params = physics_echo(&physics);
    params["n"] = json!(n);
    params["delta"] = json!(delta);
    params["epsilons"] = json!(epsilons);
    let ctx = json!({ "subcommand": "check parity", "params": params });
    let cfg = config(&physics, &ctx)?;
    let rule = QuadratureRule::default();
    let report = Eigenfunction::normalized(&cfg, n, &rule)
        .and_then(|ef| parity_report(&ef, delta, &epsilons, &rule))
        .map_err(|e| Failure::physics(e, ctx.clone()))?;
    let body = match out.format {
        Format::Csv => csv_table(
            &["delta", "epsilon", "r_odd", "r_even", "fitted_slope", "expected_slope"],
            report.rows.iter().map(|r| {
                vec![
                    fmt_real(r.delta),
                    fmt_real(r.epsilon),
                    fmt_real(r.r_odd),
                    fmt_real(r.r_even),
                    fmt_real(report.fitted_slope),
                    fmt_real(report.expected_slope),
                ]
            }),
        ),
        Format::Json => json_body(&json!({ "params": params, "report": report })),
    };
    Ok((body, out.output))
}

fn cmd_debug(what: DebugWhat) -> CliResult<(String, Option<PathBuf>)> {
    let (value, ctx) = match what {
        DebugWhat::Laguerre { n, a, z } => (laguerre(n, a, z), json!({ "function": "laguerre", "n": n, "a": a, "z": z })),
        DebugWhat::Kummer { a, b, z } => (kummer_m(a, b, z), json!({ "function": "kummer", "a": a, "b": b, "z": z })),
    };
    let v = value.map_err(|e| Failure::physics(e, ctx))?;
    Ok((format!("{}\n", fmt_real(v)), None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("dkp").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn real_format_has_seventeen_digits() {
        assert_eq!(fmt_real(0.948683298050513_8), "9.4868329805051377e-1");
        assert_eq!(fmt_real(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn spectrum_csv_header() {
        let (code, out, _) = run_args(&["spectrum", "--g1", "0.3", "--n-max", "1"]);
        assert_eq!(code, 0);
        let mut lines = out.lines();
        assert_eq!(lines.next(), Some("n,energy,s,gamma,lambda,binding_energy"));
        assert!(lines.next().unwrap().starts_with("0,9.4868329805051"));
        assert_eq!(out.lines().count(), 3);
    }

    #[test]
    fn negative_coupling_parses() {
        let (code, out, _) = run_args(&["spectrum", "--g1", "-0.3", "--n-max", "0"]);
        assert_eq!(code, 0);
        assert!(out.lines().nth(1).unwrap().starts_with("0,-9.4868"));
    }

    #[test]
    fn critical_coupling_is_a_domain_error() {
        let (code, out, err) = run_args(&["spectrum", "--g1", "0.4", "--g2", "0.4"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["code"], "critical_coupling");
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, _, err) = run_args(&["spectrum", "--bogus"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["code"], "usage");
    }

    #[test]
    fn debug_laguerre() {
        let (code, out, _) = run_args(&["debug", "laguerre", "--n", "1", "--a", "0.5", "--z", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "-5.0000000000000000e-1");
    }
}
