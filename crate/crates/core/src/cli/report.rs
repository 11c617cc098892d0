//! Report rendering: one JSON object per line for machines, indented text for people.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::geom::pipeline::{Report, StepStatus};

/// All reports produced by one manifest, plus load failures.
#[derive(Debug, Clone)]
pub struct ManifestOutcome {
    pub manifest: String,
    pub reports: Vec<Report>,
    /// Set when the manifest could not be loaded; no reports are produced then.
    pub load_error: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl ManifestOutcome {
    pub fn verdict(&self) -> Verdict {
        if self.load_error.is_some() {
            return Verdict::Error;
        }
        let steps = self.reports.iter().flat_map(|r| &r.steps);
        let mut v = Verdict::Pass;
        for s in steps {
            v = v.max(match s.status {
                StepStatus::Pass | StepStatus::Skipped => Verdict::Pass,
                StepStatus::Fail => Verdict::Fail,
                StepStatus::Error => Verdict::Error,
            });
        }
        v
    }
}

#[derive(Serialize)]
struct StepLine<'a> {
    manifest: &'a str,
    run: &'a str,
    step: &'a str,
    status: StepStatus,
    certificate: &'a Value,
    wall_ms: u64,
}

#[derive(Serialize)]
struct VerdictLine<'a> {
    manifest: &'a str,
    step: &'static str,
    status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

/// Line-delimited records: one per step, then one `verdict` line per manifest.
/// Keys are sorted, so two runs differ only in `wall_ms`.
pub fn machine_report(outcomes: &[ManifestOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        for r in &o.reports {
            for s in &r.steps {
                let line = StepLine {
                    manifest: &o.manifest,
                    run: &r.name,
                    step: &s.step,
                    status: s.status,
                    certificate: &s.certificate,
                    wall_ms: s.wall_ms,
                };
                push_sorted(&mut out, &line);
            }
        }
        let line = VerdictLine {
            manifest: &o.manifest,
            step: "verdict",
            status: o.verdict(),
            error: o.load_error.as_deref(),
        };
        push_sorted(&mut out, &line);
    }
    out
}

fn push_sorted(out: &mut String, line: &impl Serialize) {
    // round-tripping through Value sorts the keys
    let v = serde_json::to_value(line).expect("report records are plain data");
    out.push_str(&v.to_string());
    out.push('\n');
}

fn status_label(s: StepStatus) -> &'static str {
    match s {
        StepStatus::Pass => "PASS",
        StepStatus::Fail => "FAIL",
        StepStatus::Skipped => "SKIP",
        StepStatus::Error => "ERROR",
    }
}

fn short(v: &Value) -> Option<String> {
    match v {
        Value::Null => None,
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(v.to_string())
        }
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

pub fn human_report(outcomes: &[ManifestOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let _ = writeln!(out, "manifest {}", o.manifest);
        if let Some(e) = &o.load_error {
            let _ = writeln!(out, "  cannot load: {e}");
        }
        for r in &o.reports {
            let _ = writeln!(out, "  {}", r.name);
            for s in &r.steps {
                let _ = write!(out, "    {:<5} {} ({} ms)", status_label(s.status), s.step, s.wall_ms);
                if let Value::Object(map) = &s.certificate {
                    for (k, v) in map {
                        if let Some(text) = short(v) {
                            let _ = write!(out, " {k}={text}");
                        }
                    }
                }
                out.push('\n');
            }
        }
        let v = match o.verdict() {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        };
        let _ = writeln!(out, "  verdict: {v}");
    }
    out
}
