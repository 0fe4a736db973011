use std::fs;
use std::path::{Path, PathBuf};

use poa_core::asymptotics::{
    exp_poa_near_breakpoint, extremes_from_periods, period_extrema, poa, poa_sweep, pwl_constants,
    pwl_poa_at_special_demand, step_breakpoints, step_limsup, SweepOptions,
};
use poa_core::costs::{cost_from_json, AlphaSeq};
use poa_core::equilibrium::wardrop;
use poa_core::instances::{self, recognize, Family};
use poa_core::optimum::{opt_bruteforce, opt_with, OptChoice};
use poa_core::rv::{canonical_suite, checks_for, RvProbe};
use poa_core::{rel_diff, Game};
use serde_json::{json, Value};
use thiserror::Error;

use crate::table;
use crate::{Command, Format, GameSource, Repro};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] poa_core::Error),
    #[error("verification failed")]
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Core(e) if e.is_numeric() => 3,
            CliError::Core(_) => 2,
            CliError::Failed => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("malformed JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(format!("malformed CSV: {e}"))
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "POA_OUT_DIR";

fn load_game(src: &GameSource) -> Result<Game> {
    match (&src.network, &src.instance) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: malformed JSON: {e}", path.display())))?;
            Ok(Game::from_json(&v)?)
        }
        (None, Some(name)) => Ok(instances::named(name)?),
        _ => Err(CliError::Usage("give exactly one of --network or --instance".into())),
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Output text and whether every verification it reports passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn done(text: String) -> Result<Outcome> {
    Ok(Outcome { text, ok: true })
}

pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Solve { game, demand, log_domain } => {
            check_positive("--demand", demand)?;
            let g = load_game(&game)?;
            if log_domain && !matches!(recognize(&g).map(|r| r.family), Some(Family::Exp { .. })) {
                return Err(CliError::Usage("--log-domain needs an exponential instance".into()));
            }
            let s = wardrop(&g, demand)?;
            done(pretty(&json!({
                "flows": s.flow.path_flows,
                "lambda": s.lambda,
                "weq": s.cost,
                "residual": s.residual,
                "method": s.method,
            }))?)
        }
        Command::Opt { game, demand, method, resolution } => {
            if !(demand >= 0.0 && demand.is_finite()) {
                return Err(CliError::Usage(format!("--demand must be finite and >= 0, got {demand}")));
            }
            let choice: OptChoice = method.parse().map_err(|e: poa_core::Error| CliError::Usage(e.to_string()))?;
            let g = load_game(&game)?;
            let s = if choice == OptChoice::Brute {
                opt_bruteforce(&g, demand, resolution)?
            } else {
                opt_with(&g, demand, choice)?
            };
            done(pretty(&s)?)
        }
        Command::Poa { game, demand } => {
            check_positive("--demand", demand)?;
            done(pretty(&poa(&load_game(&game)?, demand)?)?)
        }
        Command::Sweep { game, from, to, per_decade, period_base, out, format } => {
            check_positive("--from", from)?;
            check_positive("--to", to)?;
            if from >= to {
                return Err(CliError::Usage(format!("--from ({from}) must be below --to ({to})")));
            }
            if per_decade == 0 {
                return Err(CliError::Usage("--per-decade must be at least 1".into()));
            }
            let g = load_game(&game)?;
            sweep(&g, from, to, per_decade, period_base, out, format)
        }
        Command::Extremes { curve, period_base, periods } => {
            let samples = table::read_curve(&curve)?;
            if let Some(a) = period_base {
                check_positive("--period-base", a)?;
            }
            let ext = extremes_from_periods(&period_extrema(&samples, period_base), periods)?;
            done(pretty(&ext)?)
        }
        Command::Repro { which } => repro(which),
        Command::Rv { cost, tol } => {
            check_positive("--tol", tol)?;
            let probe = RvProbe { tol, ..RvProbe::default() };
            match cost {
                None => {
                    let r = canonical_suite(&probe)?;
                    Ok(Outcome { text: pretty(&r)?, ok: r.pass })
                }
                Some(spec) => {
                    let text = match spec.strip_prefix('@') {
                        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?,
                        None => spec,
                    };
                    let c = cost_from_json(&serde_json::from_str::<Value>(&text)?)?;
                    let checks = checks_for(&c, &probe)?;
                    let ok = checks.iter().all(|c| c.pass);
                    Ok(Outcome { text: pretty(&json!({ "checks": checks, "pass": ok }))?, ok })
                }
            }
        }
    }
}

fn resolve_out(out: Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match (out, dir) {
        (Some(p), Some(d)) if p.is_relative() => Some(d.join(p)),
        (Some(p), _) => Some(p),
        (None, Some(d)) => Some(d.join(default_name)),
        (None, None) => None,
    }
}

fn sweep(
    g: &Game,
    from: f64,
    to: f64,
    per_decade: usize,
    period_base: Option<f64>,
    out: Option<PathBuf>,
    format: Format,
) -> Result<Outcome> {
    let (hints, inferred) = match recognize(g).map(|r| r.family) {
        Some(Family::Step { a }) => (step_breakpoints(a, from, to), Some(a)),
        Some(Family::PwlSquare { a }) => (breakpoints(g, from, to), Some(a)),
        _ => (breakpoints(g, from, to), None),
    };
    let opts = SweepOptions { per_decade, hints, period_base: period_base.or(inferred) };
    let curve = poa_sweep(g, from, to, &opts)?;
    let text = match format {
        Format::Csv => table::curve_csv(&curve.samples)?,
        Format::Json => pretty(&curve)?,
    };
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    match resolve_out(out, &format!("sweep.{ext}")) {
        Some(path) => {
            write_file(&path, &text)?;
            done(pretty(&json!({
                "out": path.display().to_string(),
                "samples": curve.samples.len(),
                "failures": curve.failures,
            }))?)
        }
        None => done(text.trim_end().to_string()),
    }
}

fn breakpoints(g: &Game, lo: f64, hi: f64) -> Vec<f64> {
    g.costs.iter().flat_map(|c| c.breakpoints(lo, hi)).collect()
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn assertion(name: &str, pass: bool, detail: Value) -> Value {
    json!({ "name": name, "pass": pass, "detail": detail })
}

fn finish(mut report: Value, assertions: Vec<Value>) -> Result<Outcome> {
    let ok = assertions.iter().all(|a| a["pass"] == json!(true));
    report["assertions"] = Value::Array(assertions);
    report["pass"] = json!(ok);
    Ok(Outcome { text: pretty(&report)?, ok })
}

fn parse_alpha(spec: &str) -> Result<AlphaSeq> {
    let alpha = if spec == "factorial" {
        AlphaSeq::Factorial
    } else if let Some(b) = spec.strip_prefix("super:") {
        AlphaSeq::SuperGeometric { base: b.parse().map_err(|_| CliError::Usage(format!("bad base {b:?}")))? }
    } else {
        let terms = spec
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("bad alpha term {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        AlphaSeq::Explicit(terms)
    };
    alpha.validate()?;
    Ok(alpha)
}

fn repro(which: Repro) -> Result<Outcome> {
    match which {
        Repro::Thm5 { a, per_decade } => {
            let g = instances::step(a)?;
            let (lo, hi) = (2.0 * a, 2.0 * a.powi(5));
            let opts = SweepOptions { per_decade, hints: step_breakpoints(a, lo, hi), period_base: Some(a) };
            let curve = poa_sweep(&g, lo, hi, &opts)?;
            let ext = extremes_from_periods(&curve.periods, 4)?;
            let target = step_limsup(a);
            let mut checks = Vec::new();
            for p in &curve.periods {
                checks.push(assertion(
                    &format!("period {} max", p.k),
                    (p.max - target).abs() <= 1e-3 * target && p.max <= target + 1e-12,
                    json!({ "max": p.max, "target": target, "argmax": p.argmax }),
                ));
                checks.push(assertion(
                    &format!("period {} min", p.k),
                    (p.min - 1.0).abs() <= 1e-9,
                    json!({ "min": p.min }),
                ));
            }
            checks.push(assertion("no failed samples", curve.failures == 0, json!(curve.failures)));
            finish(
                json!({ "a": a, "target_limsup": target, "liminf": ext.liminf, "limsup": ext.limsup,
                        "stability": ext.stability, "periods": curve.periods }),
                checks,
            )
        }
        Repro::Thm6 { a } => {
            let c = pwl_constants(a)?;
            let numeric = (1..=5).map(|k| pwl_poa_at_special_demand(a, k)).collect::<poa_core::Result<Vec<_>>>()?;
            let g = instances::pwl(a)?;
            let m1 = numeric[0].0;
            let brute_opt = opt_bruteforce(&g, m1, 4001)?.cost.to_f64();
            let brute = wardrop(&g, m1)?.cost.to_f64() / brute_opt;
            let spread = numeric.iter().map(|n| rel_diff(n.1, numeric[0].1)).fold(0.0, f64::max);
            let mut checks = vec![
                assertion("closed form matches solvers", rel_diff(numeric[0].1, c.poa) <= 1e-9, json!(numeric[0].1)),
                assertion("identical across k = 1..5", spread <= 1e-9, json!(spread)),
                assertion("brute-force oracle", (brute - numeric[0].1).abs() <= 1e-4, json!(brute)),
            ];
            if a == 2.0 {
                checks.push(assertion("within [1.0055, 1.0063]", (1.0055..=1.0063).contains(&c.poa), json!(c.poa)));
            }
            finish(json!({ "constants": c, "numeric": numeric }), checks)
        }
        Repro::Thm7 { alpha, k } => {
            let alpha = parse_alpha(&alpha)?;
            let r = exp_poa_near_breakpoint(&alpha, k)?;
            let checks = vec![
                assertion("log-domain solver within 1% of closed form", r.rel_diff <= 1e-2, json!(r.rel_diff)),
                assertion("optimum in the expected candidate set", r.flag.is_none(), json!(r.flag)),
            ];
            finish(serde_json::to_value(&r)?, checks)
        }
        Repro::Rv => {
            let r = canonical_suite(&RvProbe::default())?;
            let failed: Vec<String> =
                r.checks.iter().filter(|c| !c.pass).map(|c| format!("{} {}", c.name, c.function)).collect();
            let summary: Vec<Value> = r
                .checks
                .iter()
                .map(|c| json!({ "name": c.name, "function": c.function, "expected": c.expected, "measured": c.measured, "pass": c.pass }))
                .collect();
            let checks = vec![
                assertion("all closure checks pass", failed.is_empty(), json!(failed)),
                assertion("detector rejects exp(x)/x", r.non_rv_detector.pass, json!(r.non_rv_detector.measured)),
            ];
            finish(json!({ "checks": summary }), checks)
        }
    }
}
