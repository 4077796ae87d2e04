use std::collections::BTreeMap;

use qsov::verify::{Case, SuiteReport};
use qsov::{Laurent1, Laurent2, Pair, Q};
use serde_json::{json, Map, Value};

/// `"n/d"`, or `"n"` for integers.
pub fn rat(x: &Q) -> Value {
    Value::String(x.to_string())
}

pub fn poly1(p: &Laurent1) -> Value {
    Value::Object(p.terms().map(|(e, c)| (e.to_string(), rat(c))).collect())
}

/// Monomial keys `"a,b"` for `x1^a x2^b`.
pub fn poly2(p: &Laurent2) -> Value {
    Value::Object(p.terms().map(|((a, b), c)| (format!("{a},{b}"), rat(c))).collect())
}

pub fn row(entries: &BTreeMap<Pair, Q>) -> Value {
    Value::Object(entries.iter().map(|(nu, c)| (format!("{},{}", nu.l1, nu.l2), rat(c))).collect())
}

fn case_json(c: &Case) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), c.id.clone().into());
    m.insert("paper_eq".into(), c.identity.clone().into());
    m.insert("status".into(), c.status.as_str().into());
    if let Some(r) = c.residual {
        m.insert("residual".into(), json!(r));
    }
    if let Some(w) = &c.witness {
        m.insert("witness".into(), w.clone().into());
    }
    Value::Object(m)
}

fn status(r: &SuiteReport) -> &'static str {
    if r.passed() {
        "pass"
    } else {
        "fail"
    }
}

pub fn suite_json(r: &SuiteReport, timing: bool) -> Value {
    let grid: Map<String, Value> = r.grid.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    json!({
        "suite": r.suite.name(),
        "grid": grid,
        "cases": r.cases.iter().map(case_json).collect::<Vec<_>>(),
        "status": status(r),
        "elapsed_ms": if timing { json!(r.elapsed_ms as u64) } else { Value::Null },
    })
}

pub fn suite_table(r: &SuiteReport, timing: bool) -> String {
    let width = r.cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in &r.cases {
        let res = c.residual.map(|x| format!("{x:.2e}")).unwrap_or_else(|| "exact".into());
        s.push_str(&format!("{:4}  {:width$}  {res}\n", c.status.as_str(), c.id));
        if let Some(w) = &c.witness {
            s.push_str(&format!("      {w}\n"));
        }
    }
    let failed = r.failures().count();
    s.push_str(&format!("{}: {} cases, {} failed, {}", r.suite.name(), r.cases.len(), failed, status(r)));
    if timing {
        s.push_str(&format!(", {} ms", r.elapsed_ms));
    }
    s.push('\n');
    s
}
