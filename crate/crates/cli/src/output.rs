//! Report assembly and CSV/JSON emission.
//!
//! A report document is a header (tool version, command echo, UTC
//! timestamp) plus a payload. The payload is deterministic for fixed
//! arguments and tool version; the header carries the only varying field
//! (the timestamp), so golden-file and determinism tests compare payloads.
//!
//! CSV: UTF-8, comma separated, `\n` line endings, `#`-prefixed header
//! lines, then one block per section (rows, outcomes, summary), each with
//! its own header row, separated by blank lines. Floating values use 17
//! significant digits so parsing them back is lossless.
//!
//! JSON: one document, `header` and `payload` objects; keys match the CSV
//! column names. Naturals at or above 2^53 are emitted as strings, all
//! other numbers natively.

use pnt_core::gaps::GapRecord;
use pnt_core::report::{BoundReport, CheckOutcome};
use pnt_core::verify::RatioSample;
use serde_json::{json, Map, Value};

pub struct ReportHeader {
    pub tool_version: String,
    pub command_echo: String,
    pub generated_at: String,
}

impl ReportHeader {
    pub fn now(command_echo: String) -> Self {
        ReportHeader {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command_echo,
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

/// Payload of a verify run. `rows` carries the command-specific records;
/// `outcomes` the per-check rows worth emitting (all checks for sampled
/// plans, violations and boundary contacts otherwise).
pub enum Rows {
    Ratio(Vec<RatioSample>),
    Gap(Vec<GapRecord>),
    None,
}

pub struct ReportDocument {
    pub header: ReportHeader,
    pub rows: Rows,
    pub outcomes: Vec<CheckOutcome>,
    pub report: BoundReport,
    /// Summary column names for the extrema pair, e.g. `min_pi_ratio`.
    pub stat_names: (&'static str, &'static str),
}

/// 17 significant digits: round-trip safe for any f64.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn summary_columns(doc: &ReportDocument) -> Vec<(&'static str, Value)> {
    let r = &doc.report;
    let (min_name, max_name) = doc.stat_names;
    let mut cols = vec![
        ("lo", nat(r.lo)),
        ("hi", nat(r.hi)),
        ("samples_checked", nat(r.samples_checked)),
        ("violations", nat(r.violations.len() as u64)),
        ("boundary_contacts", nat(r.boundary_contacts.len() as u64)),
    ];
    if let Some(e) = r.extrema {
        cols.push((min_name, float(e.min)));
        cols.push(("argmin_x", nat(e.argmin_x)));
        cols.push((max_name, float(e.max)));
        cols.push(("argmax_x", nat(e.argmax_x)));
    }
    cols
}

fn summary_csv(doc: &ReportDocument) -> String {
    let cols = summary_columns(doc);
    let header: Vec<&str> = cols.iter().map(|(k, _)| *k).collect();
    let row: Vec<String> = cols.iter().map(|(_, v)| value_to_csv(v)).collect();
    format!("{}\n{}\n", header.join(","), row.join(","))
}

fn value_to_csv(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => fmt_f64(n.as_f64().unwrap()),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        _ => String::new(),
    }
}

/// Natural as JSON: native number below 2^53, string at or above.
fn nat(v: u64) -> Value {
    if v < (1u64 << 53) {
        json!(v)
    } else {
        json!(v.to_string())
    }
}

/// Float as JSON, carried as the exact 17-digit rendering so CSV and JSON
/// parse back to identical values.
fn float(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn outcome_csv(o: &CheckOutcome) -> String {
    format!(
        "{},{},{},{}\n",
        o.x,
        o.check.name(),
        fmt_f64(o.margin),
        o.class.name()
    )
}

fn outcome_json(o: &CheckOutcome) -> Value {
    json!({
        "x": nat(o.x),
        "check": o.check.name(),
        "margin": float(o.margin),
        "class": o.class.name(),
    })
}

fn ratio_csv(s: &RatioSample) -> String {
    format!(
        "{},{},{},{},{}\n",
        s.x,
        s.pi,
        fmt_f64(s.pi_ratio),
        fmt_f64(s.theta_ratio),
        fmt_f64(s.psi_ratio)
    )
}

fn ratio_json(s: &RatioSample) -> Value {
    json!({
        "x": nat(s.x),
        "pi": nat(s.pi),
        "pi_ratio": float(s.pi_ratio),
        "theta_ratio": float(s.theta_ratio),
        "psi_ratio": float(s.psi_ratio),
    })
}

fn gap_csv(g: &GapRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{}\n",
        g.x,
        g.f,
        fmt_f64(g.main_term),
        g.lower,
        g.upper,
        g.lower_margin,
        g.upper_margin,
        g.floor_sensitive
    )
}

fn gap_json(g: &GapRecord) -> Value {
    json!({
        "x": nat(g.x),
        "f": nat(g.f),
        "main_term": float(g.main_term),
        "lower": g.lower,
        "upper": g.upper,
        "lower_margin": g.lower_margin,
        "upper_margin": g.upper_margin,
        "floor_sensitive": g.floor_sensitive,
    })
}

pub fn emit_csv(doc: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!("# tool_version={}\n", doc.header.tool_version));
    out.push_str(&format!("# command={}\n", doc.header.command_echo));
    out.push_str(&format!("# generated_at={}\n", doc.header.generated_at));
    match &doc.rows {
        Rows::Ratio(samples) => {
            out.push_str("x,pi,pi_ratio,theta_ratio,psi_ratio\n");
            for s in samples {
                out.push_str(&ratio_csv(s));
            }
            out.push('\n');
        }
        Rows::Gap(records) => {
            out.push_str("x,f,main_term,lower,upper,lower_margin,upper_margin,floor_sensitive\n");
            for g in records {
                out.push_str(&gap_csv(g));
            }
            out.push('\n');
        }
        Rows::None => {}
    }
    out.push_str("x,check,margin,class\n");
    for o in &doc.outcomes {
        out.push_str(&outcome_csv(o));
    }
    out.push('\n');
    out.push_str(&summary_csv(doc));
    out
}

pub fn emit_json(doc: &ReportDocument) -> Value {
    let mut payload = Map::new();
    match &doc.rows {
        Rows::Ratio(samples) => {
            payload.insert(
                "samples".into(),
                Value::Array(samples.iter().map(ratio_json).collect()),
            );
        }
        Rows::Gap(records) => {
            payload.insert(
                "records".into(),
                Value::Array(records.iter().map(gap_json).collect()),
            );
        }
        Rows::None => {}
    }
    payload.insert(
        "outcomes".into(),
        Value::Array(doc.outcomes.iter().map(outcome_json).collect()),
    );
    let mut summary = Map::new();
    for (k, v) in summary_columns(doc) {
        summary.insert(k.to_string(), v);
    }
    payload.insert("summary".into(), Value::Object(summary));

    json!({
        "header": {
            "tool_version": doc.header.tool_version,
            "command_echo": doc.header.command_echo,
            "generated_at": doc.header.generated_at,
        },
        "payload": Value::Object(payload),
    })
}

/// Violations and boundary contacts of a report, merged in (x, check)
/// order, for commands whose sampled-plan run did not already provide the
/// full outcome list.
pub fn interesting_outcomes(report: &BoundReport) -> Vec<CheckOutcome> {
    let mut all: Vec<CheckOutcome> = report
        .violations
        .iter()
        .chain(report.boundary_contacts.iter())
        .copied()
        .collect();
    all.sort_by_key(|o| (o.x, o.check));
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for v in [
            1.2550587129324797,
            std::f64::consts::LN_2,
            -3.515735586004311e-5,
            0.0,
            6.02e23,
        ] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn naturals_above_2_53_become_strings() {
        assert_eq!(nat(12), json!(12));
        assert_eq!(nat(1 << 53), json!("9007199254740992"));
    }
}
