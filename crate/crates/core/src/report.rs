//! Deterministic JSON reports.

use std::time::Duration;

use serde_json::{json, Value};

use crate::action::System;
use crate::analysis::Analysis;
use crate::verdict::{Bounds, Verdict};

pub const TOOL: &str = "ssu";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

const SCOPE: &str = "minimal, effective and simple are sufficient conditions: Holds certifies the \
                     property, Fails only means the criterion does not apply";

fn header(sys: &System, bounds: &Bounds) -> Value {
    json!({
        "tool": { "name": TOOL, "version": VERSION },
        "instance": { "name": sys.name(), "digest": sys.digest() },
        "bounds": bounds,
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn with_timing(v: Value, timing: Option<Duration>) -> Value {
    match timing {
        Some(t) => merge(v, json!({ "timing_ms": t.as_millis() as u64 })),
        None => v,
    }
}

pub fn validation_report(
    sys: &System,
    bounds: &Bounds,
    verdict: &Verdict,
    timing: Option<Duration>,
) -> Value {
    let v = merge(header(sys, bounds), json!({ "validation": verdict }));
    with_timing(v, timing)
}

pub fn analysis_report(
    sys: &System,
    bounds: &Bounds,
    analysis: &Analysis,
    timing: Option<Duration>,
) -> Value {
    let v = merge(
        header(sys, bounds),
        json!({ "analysis": analysis, "scope": SCOPE }),
    );
    with_timing(v, timing)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

/// Short human-readable summary.
pub fn render_text(sys: &System, analysis: &Analysis) -> String {
    use crate::analysis::Simplicity;
    let mut out = format!(
        "instance {} ({})\n",
        sys.name(),
        &sys.digest()[..12.min(sys.digest().len())]
    );
    let line = |name: &str, v: &Verdict| format!("{name:<16}{}\n", v.status);
    out += &line("validation", &analysis.validation);
    out += &format!("{:<16}{} found\n", "g-cycles", analysis.g_cycles.total);
    out += &line("entrances", &analysis.entrances);
    out += &line("cofinal", &analysis.cofinal);
    out += &line("star condition", &analysis.condition_star);
    out += &line("paths moved", &analysis.paths_moved);
    out += &line("minimal", &analysis.minimal);
    out += &line("effective", &analysis.effective);
    match &analysis.simple {
        Simplicity::NotApplicable { reason } => {
            out += &format!("{:<16}not applicable ({reason})\n", "simple")
        }
        Simplicity::Checked { verdict } => out += &line("simple", verdict),
    }
    out
}
