//! Command results: human text plus a deterministic JSON document with the
//! keys `command`, `status`, `result`, `witness` and `defects`.

use std::collections::BTreeMap;

use moyal_core::{Coeff, Matrix, Poly};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok | Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub result: Value,
    pub witness: Option<String>,
    /// Defect polynomials keyed by label, e.g. `jacobi mu^4`.
    pub defects: BTreeMap<String, String>,
    pub text: String,
}

impl Report {
    pub fn new(command: &str, status: Status, result: Value, text: impl Into<String>) -> Self {
        Report {
            command: command.to_string(),
            status,
            result,
            witness: None,
            defects: BTreeMap::new(),
            text: text.into(),
        }
    }

    pub fn with_witness(mut self, w: impl ToString) -> Self {
        self.witness = Some(w.to_string());
        self
    }

    pub fn to_json(&self) -> String {
        let doc = json!({
            "command": self.command,
            "status": self.status.as_str(),
            "result": self.result,
            "witness": self.witness,
            "defects": self.defects,
        });
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = self.text.clone();
        if let Some(w) = &self.witness {
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&format!("witness: {w}"));
        }
        for (k, v) in &self.defects {
            out.push_str(&format!("\ndefect {k}: {}", elide(v)));
        }
        out
    }
}

/// Long defect polynomials are shortened in text mode; `--json` keeps them whole.
fn elide(s: &str) -> String {
    const LIMIT: usize = 240;
    if s.len() <= LIMIT {
        return s.to_string();
    }
    let cut = s[..LIMIT].rfind(" + ").into_iter().chain(s[..LIMIT].rfind(" - ")).max().unwrap_or(LIMIT);
    format!("{} ... ({} more characters; use --json for all terms)", &s[..cut], s.len() - cut)
}

pub fn poly(p: &Poly) -> Value {
    Value::String(p.to_string())
}

pub fn coeff(c: &Coeff) -> Value {
    Value::String(c.to_string())
}

pub fn vector(v: &[Coeff]) -> Value {
    Value::Array(v.iter().map(coeff).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn vector_text(v: &[Coeff]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Group a defect polynomial by Laurent order in μ, or keep it whole when
/// some coefficient has a non-monomial denominator.
pub fn defects_by_mu_order(label: &str, p: &Poly, out: &mut BTreeMap<String, String>) {
    if p.is_zero() {
        return;
    }
    match p.mu_orders() {
        Some(orders) => {
            for (k, part) in orders {
                if !part.is_zero() {
                    out.insert(format!("{label} mu^{k}"), part.to_string());
                }
            }
        }
        None => {
            out.insert(label.to_string(), p.to_string());
        }
    }
}
