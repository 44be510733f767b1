//! Deterministic report emission.  JSON is rendered by a small in-crate
//! printer so every float appears with 17 significant digits and reruns are
//! byte-identical; CSV always carries a header row.

use serde::Serialize;
use serde_json::Value;

use crate::bounds::BoundReport;
use crate::measure::Method;
use crate::sweepout::StepProfile;

/// 17 significant digits, enough to round-trip any f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "\"nan\"".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "\"inf\"" } else { "\"-inf\"" }.into();
    }
    format!("{x:.16e}")
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn render_into(v: &Value, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                out.push_str(&fmt_f64(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(s) => {
            out.push('"');
            out.push_str(&escape(s));
            out.push('"');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                render_into(item, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('"');
                out.push_str(&escape(k));
                out.push_str("\":");
                render_into(item, out);
            }
            out.push('}');
        }
    }
}

/// Render any serializable value as deterministic JSON (sorted keys via the
/// serde_json object map, 17-digit floats).
pub fn render_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report values serialize");
    let mut out = String::new();
    render_into(&v, &mut out);
    out.push('\n');
    out
}

/// The {op, inputs, value, error_bound, method} record for a single result.
pub fn op_record(op: &str, inputs: Value, value: f64, error_bound: f64, method: Method) -> Value {
    serde_json::json!({
        "op": op,
        "inputs": inputs,
        "value": value,
        "error_bound": error_bound,
        "method": method,
    })
}

/// One named section of a run.
#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub pass: bool,
    /// pass=false entries carrying a discrepancy note do not fail the run
    pub discrepancy_flagged: bool,
    pub body: Value,
}

/// The full deterministic run document (timings live in a separate file so
/// reruns stay byte-identical).
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub version: String,
    pub config: Value,
    pub sections: Vec<Section>,
    pub overall_pass: bool,
}

impl ReportDocument {
    pub fn new(config: Value) -> Self {
        Self {
            schema: 1,
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            sections: Vec::new(),
            overall_pass: true,
        }
    }

    pub fn push_section(&mut self, name: &str, pass: bool, discrepancy_flagged: bool, body: Value) {
        if !pass && !discrepancy_flagged {
            self.overall_pass = false;
        }
        self.sections.push(Section {
            name: name.to_string(),
            pass,
            discrepancy_flagged,
            body,
        });
    }

    pub fn push_bound_report(&mut self, rep: &BoundReport) {
        self.push_section(
            &rep.name.clone(),
            rep.pass,
            rep.discrepancy.is_some(),
            serde_json::to_value(rep).expect("bound report serializes"),
        );
    }
}

fn csv_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Per-slice rows for step profiles: one line per (profile, t).
pub fn profiles_csv(profiles: &[StepProfile]) -> String {
    let mut out = String::from("id,r,t,area,error_bound,method,bound,pass\n");
    for p in profiles {
        for (t, a) in p.t_grid.iter().zip(&p.areas) {
            let method = match a.method {
                Method::ClosedForm => "closed_form",
                Method::Quadrature => "quadrature",
                Method::Budget => "budget",
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                p.id,
                csv_f64(p.r),
                csv_f64(*t),
                csv_f64(a.value),
                csv_f64(a.error_bound),
                method,
                csv_f64(p.bound),
                p.pass
            ));
        }
    }
    out
}

/// Budget terms per profile: one line per (profile, term).
pub fn budgets_csv(profiles: &[StepProfile]) -> String {
    let mut out = String::from("id,r,term,value\n");
    for p in profiles {
        for (term, value) in &p.budget {
            out.push_str(&format!(
                "{},{},{},{}\n",
                p.id,
                csv_f64(p.r),
                term,
                csv_f64(*value)
            ));
        }
    }
    out
}

/// Bound verifier table.
pub fn bounds_csv(reports: &[BoundReport]) -> String {
    let mut out =
        String::from("name,computed_max,argmax,stated_bound,margin,slack,pass,discrepancy\n");
    for r in reports {
        let argmax = r
            .argmax
            .iter()
            .map(|x| csv_f64(*x))
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.name,
            csv_f64(r.computed_max),
            argmax,
            csv_f64(r.stated_bound),
            csv_f64(r.margin),
            csv_f64(r.slack),
            r.pass,
            r.discrepancy.as_deref().unwrap_or("").replace(',', ";")
        ));
    }
    out
}

/// (r, φ₁, φ₂, residuals) curve table for the stability solutions.
pub fn jacobi_curves_csv(rows: &[(f64, f64, f64, f64, f64)]) -> String {
    let mut out = String::from("r,phi1,phi2,residual_phi1,residual_phi2\n");
    for (r, p1, p2, e1, e2) in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_f64(*r),
            csv_f64(*p1),
            csv_f64(*p2),
            csv_f64(*e1),
            csv_f64(*e2)
        ));
    }
    out
}
