//! JSON views of the library types. Rationals are `"p/q"` strings; object
//! keys are sorted, so output is byte-stable.

use serde_json::{json, Value};

use crate::diffpoly::DiffPolynomial;
use crate::frontend::Document;
use crate::rational::{fmt_q, Q};
use crate::scalar::{CoeffValuation, Scalar};
use crate::series::{Exponent, SupportSet, TruncatedSeries};
use crate::transseries::{BoolTransseries, LogMonomial};
use crate::tropical::TropValue;
use crate::tropicalize::TropDiffPolynomial;

pub fn rational(v: &Q) -> Value {
    Value::String(fmt_q(v))
}

pub fn opt_rational(v: Option<&Q>) -> Value {
    v.map_or(Value::Null, rational)
}

pub fn exponent(e: &Exponent) -> Value {
    Value::Array(e.0.iter().map(rational).collect())
}

pub fn scalar(c: &Scalar) -> Value {
    match c.radicand() {
        None => rational(c.rational_part()),
        Some(d) => json!({
            "rational": fmt_q(c.rational_part()),
            "sqrt_coefficient": fmt_q(c.irrational_part()),
            "radicand": d,
        }),
    }
}

pub fn trop_value(v: &TropValue) -> Value {
    match v.coords() {
        None => Value::String("inf".into()),
        Some(c) => Value::Array(c.iter().map(rational).collect()),
    }
}

pub fn valuation(v: CoeffValuation) -> Value {
    match v {
        CoeffValuation::Trivial => json!("trivial"),
        CoeffValuation::PAdic(p) => json!({ "padic": p }),
    }
}

/// Terms in increasing weight order.
pub fn series(s: &TruncatedSeries, names: &[String]) -> Value {
    let terms: Vec<Value> = s
        .ordered_terms()
        .into_iter()
        .map(|(e, c)| json!({ "exponent": exponent(e), "coefficient": scalar(c) }))
        .collect();
    json!({ "text": s.format_with(names), "terms": terms, "bound": opt_rational(s.bound()) })
}

/// Points as sorted exponent arrays.
pub fn support(s: &SupportSet) -> Value {
    let points: Vec<Value> = s.points().iter().map(exponent).collect();
    json!({ "points": points, "bound": opt_rational(s.bound()) })
}

fn log_monomial(m: &LogMonomial) -> Value {
    json!([m.a, m.b])
}

pub fn logsupport(b: &BoolTransseries) -> Value {
    let points: Vec<Value> = b.points().iter().map(log_monomial).collect();
    json!({ "points": points, "bound": b.bound().as_ref().map_or(Value::Null, log_monomial) })
}

pub fn poly(f: &DiffPolynomial, tnames: &[String], xnames: &[String]) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .rev()
        .map(|(m, c)| {
            json!({
                "monomial": if m.is_one() { "1".to_string() } else { m.format_with(tnames, xnames) },
                "coefficient": series(c, tnames),
            })
        })
        .collect();
    json!({ "text": f.format_with(tnames, xnames), "terms": terms })
}

pub fn trop_poly(f: &TropDiffPolynomial, tnames: &[String], xnames: &[String]) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .iter()
        .rev()
        .map(|(m, v)| {
            json!({
                "monomial": if m.is_one() { "1".to_string() } else { m.format_with(tnames, xnames) },
                "value": trop_value(v),
            })
        })
        .collect();
    json!({ "text": f.format_with(tnames, xnames), "terms": terms })
}

pub fn document(doc: &Document) -> Value {
    let t = &doc.indep;
    let named = |name: &str, v: Value| json!({ "name": name, "value": v });
    json!({
        "indep": doc.indep,
        "dep": doc.dep,
        "grid": doc.space.grid(),
        "weight": doc.space.weight().iter().map(rational).collect::<Vec<_>>(),
        "field": doc.field,
        "valuation": valuation(doc.valuation),
        "generators": doc.generators.iter().map(|(n, f)| named(n, poly(f, t, &doc.dep))).collect::<Vec<_>>(),
        "series": doc.series.iter().map(|(n, v)| named(n, Value::Array(v.iter().map(|s| series(s, t)).collect()))).collect::<Vec<_>>(),
        "supports": doc.supports.iter().map(|(n, v)| named(n, Value::Array(v.iter().map(support).collect()))).collect::<Vec<_>>(),
        "logsupports": doc.logsupports.iter().map(|(n, v)| named(n, Value::Array(v.iter().map(logsupport).collect()))).collect::<Vec<_>>(),
        "specs": doc.specs.iter().map(|(n, s)| named(n, s.to_json())).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
