//! The workflows behind the CLI subcommands. Each returns a report with a
//! human-readable text, a JSON value and a status that maps to an exit code.

use serde_json::{json, Value};

use crate::diffpoly::{residual_status, ResidualStatus};
use crate::error::{Error, Result};
use crate::frontend::{json as js, missing, transformed_dep_names, Document};
use crate::rational::{fmt_q, is_nonneg_integer, parse_q, q, Q};
use crate::series::{format_tpart, SupportSet};
use crate::transform::{
    apply_to_series, inverse_transform_series, support_equivariance_check, support_roundtrip_check,
    transform_series, transform_support, transform_system, TransformSpec,
};
use crate::transseries::log_check_report;
use crate::tropical::TropValue;
use crate::tropicalize::{combine_outcomes, derivative_closure, search_boolean_solutions, tropical_check_report, tropicalize};

/// Environment variable holding the default `--order` of `check`.
pub const DEFAULT_BOUND_VAR: &str = "TROPDIFF_DEFAULT_BOUND";
const FALLBACK_ORDER: i64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Indeterminate => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        }
    }

    fn from_outcome(o: &Result<bool>) -> Status {
        match o {
            Ok(true) => Status::Pass,
            Ok(false) => Status::Fail,
            Err(_) => Status::Indeterminate,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn new(status: Status, text: String, mut json: Value) -> Self {
        json["status"] = Value::String(status.as_str().into());
        Report { status, text, json }
    }
}

/// Exit code for an error that aborted a command.
pub fn error_exit_code(e: &Error) -> i32 {
    if e.is_precision() {
        3
    } else {
        2
    }
}

/// `TROPDIFF_DEFAULT_BOUND` if set, else 10.
pub fn default_order() -> Result<Q> {
    match std::env::var(DEFAULT_BOUND_VAR) {
        Ok(s) => parse_q(s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("{DEFAULT_BOUND_VAR}='{s}' is not a rational"))),
        Err(_) => Ok(q(FALLBACK_ORDER)),
    }
}

/// `F`, `d^2 F`, `d^(1,0) F`.
fn derivative_label(name: &str, alpha: &[u32]) -> String {
    if alpha.iter().all(|&a| a == 0) {
        name.to_string()
    } else if alpha.len() == 1 {
        format!("d^{} {name}", alpha[0])
    } else {
        let parts: Vec<String> = alpha.iter().map(u32::to_string).collect();
        format!("d^({}) {name}", parts.join(","))
    }
}

fn values_text(vals: &[TropValue]) -> String {
    vals.iter().rev().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn verdict(o: &Result<bool>) -> String {
    match o {
        Ok(true) => "vanishes".into(),
        Ok(false) => "does not vanish".into(),
        Err(e) => format!("indeterminate ({e})"),
    }
}

fn outcome_json(o: &Result<bool>) -> Value {
    match o {
        Ok(b) => json!(b),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

pub fn tropicalize_cmd(doc: &Document, deriv_bound: u32) -> Result<Report> {
    let g = doc.generator_set()?;
    let mut text = String::new();
    let mut entries = Vec::new();
    let mut status = Status::Pass;
    for (idx, alpha, f) in derivative_closure(&g, deriv_bound) {
        let label = derivative_label(&doc.generators[idx].0, &alpha);
        match tropicalize(&f, doc.valuation) {
            Ok(tf) => {
                text.push_str(&format!("{label}: {}\n", tf.format_with(&doc.indep, &doc.dep)));
                entries.push(json!({ "label": label, "trop": js::trop_poly(&tf, &doc.indep, &doc.dep) }));
            }
            Err(e) if e.is_precision() => {
                status = Status::Indeterminate;
                text.push_str(&format!("{label}: indeterminate ({e})\n"));
                entries.push(json!({ "label": label, "error": e.to_string() }));
            }
            Err(e) => return Err(e),
        }
    }
    let out = json!({ "command": "tropicalize", "deriv_bound": deriv_bound, "entries": entries });
    Ok(Report::new(status, text, out))
}

pub fn transform_cmd(doc: &Document, spec: &TransformSpec) -> Result<Report> {
    let g = doc.generator_set()?;
    let system = transform_system(spec, &g)?;
    let dep = transformed_dep_names(&doc.indep, doc.dep.len());
    let mut out = Document::new(doc.indep.clone(), dep, system.space().clone(), doc.field, doc.valuation);
    out.generators = doc
        .generators
        .iter()
        .map(|(n, _)| n.clone())
        .zip(system.generators().iter().cloned())
        .collect();
    let mut notes = Vec::new();
    for (name, phi) in &doc.series {
        match transform_series(spec, phi) {
            Ok(psi) => out.series.push((name.clone(), psi)),
            Err(e @ Error::OffGridResult(_)) => notes.push(format!("series {name} dropped: {e}")),
            Err(e) => return Err(e),
        }
    }
    for (name, v) in &doc.supports {
        let mapped = v.iter().map(|s| transform_support(spec, s)).collect::<Result<Vec<_>>>()?;
        let integral = mapped
            .iter()
            .all(|s| s.points().iter().all(|e| e.0.iter().all(is_nonneg_integer)));
        if integral {
            let rebased = mapped
                .into_iter()
                .map(|s| SupportSet::new(out.space.clone(), s.points().iter().cloned(), s.bound().cloned()))
                .collect::<Result<Vec<_>>>()?;
            out.supports.push((name.clone(), rebased));
        } else {
            notes.push(format!("support {name} dropped: not a power-series support after the transform"));
        }
    }
    out.fit_grid()?;
    let mut text = format!("# transformed by \"{spec}\"\n");
    for n in &notes {
        text.push_str(&format!("# {n}\n"));
    }
    text.push_str(&out.print());
    let j = json!({
        "command": "transform",
        "spec": spec.to_json(),
        "document": js::document(&out),
        "notes": notes,
    });
    Ok(Report::new(Status::Pass, text, j))
}

pub fn check_cmd(doc: &Document, candidate: &str, order: &Q) -> Result<Report> {
    let phi = doc.series_named(candidate).ok_or_else(|| missing("series", candidate))?;
    let g = doc.generator_set()?;
    let residuals = g.residuals(phi)?;
    let mut text = format!("candidate {candidate}, order {}\n", fmt_q(order));
    let mut entries = Vec::new();
    let (mut fail, mut short) = (false, false);
    for ((name, _), r) in doc.generators.iter().zip(&residuals) {
        let (kind, line) = match residual_status(r, order) {
            ResidualStatus::Zero => ("zero", format!("zero below order {}", fmt_q(order))),
            ResidualStatus::Nonzero(e) => {
                fail = true;
                let mono = format_tpart(&e, &doc.indep);
                ("nonzero", format!("nonzero, lowest term at {}", if mono.is_empty() { "1".into() } else { mono }))
            }
            ResidualStatus::Insufficient(n) => {
                short = true;
                ("insufficient", format!("residual only known below {}", fmt_q(&n)))
            }
        };
        text.push_str(&format!("{name}: {line}\n"));
        entries.push(json!({ "name": name, "result": kind, "residual": js::series(r, &doc.indep) }));
    }
    let status = if fail {
        Status::Fail
    } else if short {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    text.push_str(&format!("result: {}\n", status.as_str()));
    let j = json!({
        "command": "check",
        "candidate": candidate,
        "order": fmt_q(order),
        "generators": entries,
    });
    Ok(Report::new(status, text, j))
}

pub fn trop_check_cmd(doc: &Document, candidate: &str, deriv_bound: u32, logs: bool) -> Result<Report> {
    let g = doc.generator_set()?;
    let mut text = String::new();
    let mut entries = Vec::new();
    let outcomes: Vec<Result<bool>> = if logs {
        let b = doc.logsupport_named(candidate).ok_or_else(|| missing("logsupport", candidate))?;
        let items: Vec<String> = b.iter().map(|s| s.format_with(&doc.indep[0])).collect();
        text.push_str(&format!("candidate {candidate} = [{}], log mode\n", items.join(", ")));
        let report = log_check_report(&g, b, deriv_bound, doc.valuation)?;
        for e in &report {
            let label = derivative_label(&doc.generators[e.generator].0, &[e.order]);
            text.push_str(&format!("{label}: [{}] -> {}\n", values_text(&e.values), verdict(&e.outcome)));
            entries.push(json!({
                "label": label,
                "values": e.values.iter().rev().map(js::trop_value).collect::<Vec<_>>(),
                "vanishes": outcome_json(&e.outcome),
            }));
        }
        report.into_iter().map(|e| e.outcome).collect()
    } else {
        let b: Vec<SupportSet> = match (doc.support_named(candidate), doc.series_named(candidate)) {
            (Some(b), _) => b.clone(),
            (None, Some(phi)) => phi.iter().map(|s| s.support()).collect(),
            (None, None) => return Err(missing("support or series", candidate)),
        };
        let items: Vec<String> = b.iter().map(ToString::to_string).collect();
        text.push_str(&format!("candidate {candidate} = [{}]\n", items.join(", ")));
        let report = tropical_check_report(&g, &b, deriv_bound, doc.valuation);
        for e in &report {
            let label = derivative_label(&doc.generators[e.generator].0, &e.alpha);
            let tp = e
                .trop
                .as_ref()
                .map(|t| t.format_with(&doc.indep, &doc.dep))
                .unwrap_or_else(|| "?".into());
            text.push_str(&format!("{label}: {tp} at B: [{}] -> {}\n", values_text(&e.values), verdict(&e.outcome)));
            entries.push(json!({
                "label": label,
                "trop": e.trop.as_ref().map(|t| js::trop_poly(t, &doc.indep, &doc.dep)),
                "values": e.values.iter().rev().map(js::trop_value).collect::<Vec<_>>(),
                "vanishes": outcome_json(&e.outcome),
            }));
        }
        report.into_iter().map(|e| e.outcome).collect()
    };
    let combined = combine_outcomes(outcomes);
    if let Err(e) = &combined {
        if !e.is_precision() {
            return Err(e.clone());
        }
    }
    let status = Status::from_outcome(&combined);
    text.push_str(&format!(
        "result: {} (derivatives up to order {deriv_bound})\n",
        match status {
            Status::Pass => "tropical solution, not refuted",
            Status::Fail => "not a tropical solution",
            Status::Indeterminate => "indeterminate",
        }
    ));
    let j = json!({
        "command": "trop-check",
        "candidate": candidate,
        "deriv_bound": deriv_bound,
        "logs": logs,
        "entries": entries,
    });
    Ok(Report::new(status, text, j))
}

pub fn search_cmd(doc: &Document, window: u32, deriv_bound: u32) -> Result<Report> {
    let g = doc.generator_set()?;
    let found = search_boolean_solutions(&g, window, deriv_bound, doc.valuation)?;
    let mut text = format!("boolean supports in {{0..{window}}} surviving {deriv_bound} derivatives: {}\n", found.len());
    for s in &found {
        text.push_str(&format!("{s}\n"));
    }
    let j = json!({
        "command": "search",
        "window": window,
        "deriv_bound": deriv_bound,
        "supports": found.iter().map(js::support).collect::<Vec<_>>(),
    });
    Ok(Report::new(Status::Pass, text, j))
}

pub fn roundtrip_cmd(doc: &Document, spec: &TransformSpec) -> Result<Report> {
    let mut text = format!("spec \"{spec}\"\n");
    let mut entries = Vec::new();
    let mut ok_all = true;
    let label = |name: &str, i: usize, n: usize| if n == 1 { name.to_string() } else { format!("{name}[{}]", i + 1) };
    for (name, phi) in &doc.series {
        for (i, p) in phi.iter().enumerate() {
            let lbl = label(name, i, phi.len());
            let equi = support_equivariance_check(spec, std::slice::from_ref(p))?;
            let back = inverse_transform_series(spec, &apply_to_series(spec, p)?)?;
            let inv = &back == p;
            ok_all &= equi && inv;
            text.push_str(&format!(
                "series {lbl}: equivariance {}, inverse {}\n",
                if equi { "ok" } else { "FAILED" },
                if inv { "ok" } else { "FAILED" }
            ));
            entries.push(json!({ "kind": "series", "name": lbl, "equivariance": equi, "inverse": inv }));
        }
    }
    for (name, v) in &doc.supports {
        for (i, s) in v.iter().enumerate() {
            let lbl = label(name, i, v.len());
            let inv = support_roundtrip_check(spec, s)?;
            ok_all &= inv;
            text.push_str(&format!("support {lbl}: inverse {}\n", if inv { "ok" } else { "FAILED" }));
            entries.push(json!({ "kind": "support", "name": lbl, "inverse": inv }));
        }
    }
    if entries.is_empty() {
        text.push_str("no series or support candidates\n");
    }
    let status = if ok_all { Status::Pass } else { Status::Fail };
    let j = json!({ "command": "roundtrip", "spec": spec.to_json(), "checks": entries });
    Ok(Report::new(status, text, j))
}

pub fn fmt_cmd(doc: &Document) -> Result<Report> {
    let j = json!({ "command": "fmt", "document": js::document(doc) });
    Ok(Report::new(Status::Pass, doc.print(), j))
}
