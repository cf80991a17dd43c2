//! Report documents and their canonical serialization.
//!
//! Canonical JSON has sorted object keys, two-space indentation and every
//! non-integer number written with 12 significant digits in exponent form.
//! Magnitudes below `1e-13` print as `0`. Equal inputs give equal bytes.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::parity::{Analysis, Satisfiability};
use crate::protocols::{CdrSummary, ConstraintResult, ScenarioReport};
use crate::verify::VerifyReport;

pub const SCHEMA_VERSION: &str = "1";

/// Values smaller than this in magnitude are treated as roundoff.
const ZERO_FLOOR: f64 = 1e-13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_passed(passed: bool) -> Self {
        if passed {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: String,
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

fn to_value<T: Serialize + ?Sized>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Consistency(format!("report serialization: {e}")))
}

impl ReportDocument {
    pub fn new<C, R>(
        command: impl Into<String>,
        config: &C,
        results: &R,
        passed: bool,
    ) -> Result<Self>
    where
        C: Serialize + ?Sized,
        R: Serialize + ?Sized,
    {
        Ok(ReportDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.into(),
            config: to_value(config)?,
            results: to_value(results)?,
            verdict: Verdict::from_passed(passed),
            timing: None,
        })
    }

    pub fn with_timing(mut self, elapsed_seconds: f64) -> Self {
        self.timing = Some(Timing { elapsed_seconds });
        self
    }

    pub fn to_canonical_json(&self) -> Result<String> {
        canonical_json(self)
    }
}

pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x.abs() < ZERO_FLOOR {
        return "0".to_string();
    }
    format!("{x:.11e}")
}

/// Serializes `value` canonically, followed by a newline.
pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut out = String::new();
    write_value(&mut out, &to_value(value)?, 0);
    out.push('\n');
    Ok(out)
}

fn indent(out: &mut String, level: usize) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(out: &mut String, v: &Value, level: usize) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN)));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                indent(out, level + 1);
                write_value(out, item, level + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            indent(out, level);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                indent(out, level + 1);
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*k], level + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            indent(out, level);
            out.push('}');
        }
    }
}

fn fixed(x: f64) -> String {
    if x.abs() < ZERO_FLOOR {
        return format!("{:.6}", 0.0);
    }
    format!("{x:.6}")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn constraint_rows(out: &mut String, title: &str, rows: &[ConstraintResult]) {
    if rows.is_empty() {
        return;
    }
    let _ = writeln!(out, "{title}");
    let _ = writeln!(
        out,
        "  {:<3} {:<10} {:<28} {:>8} {:>10} {:>7} {:>10}  stage",
        "#", "relation", "observables", "expected", "measured", "shots", "violations"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "  {:<3} {:<10} {:<28} {:>8} {:>10} {:>7} {:>10}  {} [{}]",
            r.constraint_id,
            r.relation,
            r.observables.join(" "),
            format!("{:+}", r.expected),
            fixed(r.measured_expectation),
            r.shots,
            r.shot_violations,
            r.stage,
            mark(r.certified)
        );
    }
}

pub fn scenario_text(r: &ScenarioReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "scenario {}", r.scenario);
    if let Some(m) = r.config.experiment_id {
        let _ = writeln!(out, "experiment {m}");
    }
    let _ = writeln!(
        out,
        "shots {}  seed {}  tolerance {:e}",
        r.config.shots, r.config.master_seed, r.config.tolerance
    );
    let _ = writeln!(out, "\nstages");
    for s in &r.stages {
        let _ = writeln!(
            out,
            "  {:>2}  {:<60} norm {}  amplitudes {}",
            s.ordinal,
            s.label,
            fixed(s.norm),
            s.nonzero_amplitudes.len()
        );
    }
    out.push('\n');
    constraint_rows(&mut out, "operator constraints", &r.constraints);
    constraint_rows(&mut out, "record constraints", &r.record_certifications);
    if let Some(t) = &r.commutation {
        let _ = writeln!(out, "commutation");
        for e in t.products.iter().chain(&t.complementary) {
            let _ = writeln!(
                out,
                "  [{}, {}]  commute {}  norm {}",
                e.first,
                e.second,
                e.commute,
                fixed(e.commutator_norm)
            );
        }
        let _ = writeln!(
            out,
            "  Alice interactions commute {}  Bob interactions commute {}  [{}]",
            t.alice_interactions_commute,
            t.bob_interactions_commute,
            mark(t.consistent)
        );
    }
    if let (Some(f), Some(ok)) = (r.restoration_fidelity, r.restoration_certified) {
        let _ = writeln!(
            out,
            "restoration fidelity of S(x)A: {} [{}]",
            fixed(f),
            mark(ok)
        );
    }
    for d in &r.disturbed {
        let statuses: Vec<String> = d
            .record_statuses
            .iter()
            .map(|(l, s)| format!("{l} {}", format!("{s:?}").to_lowercase()))
            .collect();
        let _ = writeln!(
            out,
            "disturbed {} at {}: {} (undisturbed {:+}); {} [{}]",
            d.relation,
            d.stage,
            fixed(d.expectation),
            d.undisturbed_value,
            statuses.join(", "),
            mark(d.shown)
        );
    }
    if !r.final_certificate.is_empty() {
        let _ = writeln!(out, "final-state eigenvalues");
        for e in &r.final_certificate {
            let _ = writeln!(
                out,
                "  {:<10} {:+}  {} [{}]",
                e.relation,
                e.expected,
                fixed(e.expectation),
                mark(e.certified)
            );
        }
    }
    for c in &r.cpl {
        let _ = writeln!(
            out,
            "record link pair {}: intact {} ({}/{})  disturbed {} ({}/{})  joint after Bob {} [{}]",
            c.pair,
            fixed(c.intact.agreement_probability),
            c.intact.agreements,
            c.intact.shots,
            fixed(c.disturbed.agreement_probability),
            c.disturbed.agreements,
            c.disturbed.shots,
            fixed(c.disturbed.joint_expectation),
            mark(c.demonstrated)
        );
    }
    if let Some(t) = &r.tally {
        let _ = writeln!(out, "tally");
        for g in &t.groups {
            let tuples: Vec<String> = g.tuples.iter().map(|(k, v)| format!("{k}:{v}")).collect();
            let expected = g
                .expected_product
                .map_or("-".to_string(), |e| format!("{e:+}"));
            let _ = writeln!(
                out,
                "  {:<28} expected {:>2}  +{} -{}  violations {}  {} [{}]",
                g.name,
                expected,
                g.product_plus,
                g.product_minus,
                g.violations,
                tuples.join(" "),
                mark(g.consistent)
            );
        }
    }
    let labels: Vec<String> = r
        .coexisting_records
        .iter()
        .map(ToString::to_string)
        .collect();
    let _ = writeln!(out, "coexisting records: {}", labels.join(" "));
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn cdr_summary_text(s: &CdrSummary) -> String {
    let mut out = String::new();
    for r in &s.experiments {
        out.push_str(&scenario_text(r));
        let _ = writeln!(out, "section {}", Verdict::from_passed(r.passed()).as_str());
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "largest set of coexisting records: {} (never six: {})",
        s.max_coexisting, s.never_six
    );
    out
}

pub fn analysis_text(a: &Analysis) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "variables: {}", a.universe.join(" "));
    for (i, c) in a.constraints.iter().enumerate() {
        let _ = writeln!(out, "  ({}) {c}", i + 1);
    }
    match &a.satisfiability {
        Satisfiability::Sat { witness, rank } => {
            let vals: Vec<String> = witness
                .values
                .iter()
                .map(|(v, x)| format!("{v}={x:+}"))
                .collect();
            let _ = writeln!(out, "SAT (rank {rank}); witness {}", vals.join(" "));
        }
        Satisfiability::Unsat { rank, .. } => {
            let nums: Vec<String> = a
                .certificate_numbers
                .iter()
                .flatten()
                .map(ToString::to_string)
                .collect();
            let _ = writeln!(
                out,
                "UNSAT (rank {rank}); certificate {{{}}}",
                nums.join(",")
            );
        }
    }
    if let Some(e) = &a.enumeration {
        let _ = writeln!(
            out,
            "enumeration: {} of {} assignments satisfy",
            e.count, e.total
        );
    }
    let p = &a.product_identity;
    let exps: Vec<String> = p
        .exponents
        .iter()
        .map(|(v, n)| format!("{v}^{n}"))
        .collect();
    let _ = writeln!(
        out,
        "product of all constraints: {} = {:+}",
        exps.join(" "),
        p.rhs_product
    );
    if p.contradiction {
        let _ = writeln!(
            out,
            "every variable appears squared while the product is -1: squares = -1, contradiction"
        );
    } else {
        let _ = writeln!(out, "residual: {}; no contradiction", p.residual.join(" "));
    }
    out
}

pub fn verify_text(v: &VerifyReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<5} {:<50} {:<40} result",
        "check", "claim", "anchor"
    );
    for row in &v.rows {
        let _ = writeln!(
            out,
            "{:<5} {:<50} {:<40} {}  {}",
            row.id,
            row.check,
            row.anchor,
            Verdict::from_passed(row.passed).as_str(),
            row.detail
        );
    }
    out
}
