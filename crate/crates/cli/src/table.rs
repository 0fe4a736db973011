use std::path::Path;

use poa_core::asymptotics::PoaSample;
use poa_core::{LogValue, Magnitude};

use crate::commands::CliError;

/// Round-trip exact formatting: 17 significant digits.
fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        String::new()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn cell(v: &Option<Magnitude>, log: bool) -> String {
    match v {
        None => String::new(),
        Some(m) if log => num(m.ln()),
        Some(m) => num(m.to_f64()),
    }
}

/// Sweep samples as CSV. Columns are `M,weq,opt,poa,method,flag`, with
/// `log_weq,log_opt` in place of the cost columns when any sample is
/// carried in the log domain.
pub fn curve_csv(samples: &[PoaSample]) -> Result<String, CliError> {
    let log = samples
        .iter()
        .any(|s| s.weq.as_ref().is_some_and(Magnitude::is_log) || s.opt.as_ref().is_some_and(Magnitude::is_log));
    let mut w = csv::Writer::from_writer(Vec::new());
    let (wh, oh) = if log { ("log_weq", "log_opt") } else { ("weq", "opt") };
    w.write_record(["M", wh, oh, "poa", "method", "flag"])?;
    for s in samples {
        w.write_record([
            num(s.m),
            cell(&s.weq, log),
            cell(&s.opt, log),
            num(s.poa),
            s.method.clone(),
            s.flag.clone().unwrap_or_default(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
}

fn parse_num(field: &str, line: u64) -> Result<f64, CliError> {
    if field.is_empty() {
        return Ok(f64::NAN);
    }
    field.trim().parse().map_err(|_| CliError::Input(format!("line {line}: bad number {field:?}")))
}

/// Reads a sweep CSV back. Only the `M` and `poa` columns are required.
pub fn read_curve(path: &Path) -> Result<Vec<PoaSample>, CliError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let headers = r.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let (Some(im), Some(ip)) = (col("M"), col("poa")) else {
        return Err(CliError::Input(format!("{}: needs M and poa columns", path.display())));
    };
    let (log, iw, io) = match (col("weq"), col("opt"), col("log_weq"), col("log_opt")) {
        (w, o, None, None) => (false, w, o),
        (_, _, w, o) => (true, w, o),
    };
    let cost = |rec: &csv::StringRecord, i: Option<usize>, line: u64| -> Result<Option<Magnitude>, CliError> {
        let Some(f) = i.and_then(|i| rec.get(i)).filter(|f| !f.is_empty()) else {
            return Ok(None);
        };
        let v = parse_num(f, line)?;
        Ok(Some(if log { Magnitude::Log(LogValue::from_ln(v)) } else { Magnitude::Real(v) }))
    };
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| rec.get(i).unwrap_or("");
        let m = parse_num(field(im), line)?;
        if m.is_nan() || m <= 0.0 {
            return Err(CliError::Input(format!("line {line}: M must be positive")));
        }
        out.push(PoaSample {
            m,
            weq: cost(&rec, iw, line)?,
            opt: cost(&rec, io, line)?,
            poa: parse_num(field(ip), line)?,
            method: col("method").map(|i| field(i).to_string()).unwrap_or_default(),
            flag: col("flag").map(|i| field(i).to_string()).filter(|s| !s.is_empty()),
        });
    }
    Ok(out)
}
