use serde_json::{json, Map, Value};

use schur_core::functor::DescentWitness;
use schur_core::verify::{Evidence, Verdict};
use schur_core::{ExactMatrix, Ring, SchurExpr};

pub fn evidence(e: &Evidence) -> Value {
    match e {
        Evidence::Bool(b) => Value::Bool(*b),
        Evidence::Int(i) => i64::try_from(*i).map(Value::from).unwrap_or_else(|_| Value::String(i.to_string())),
        Evidence::Text(s) => Value::String(s.clone()),
        Evidence::List(xs) => Value::Array(xs.iter().map(evidence).collect()),
        Evidence::Map(kv) => Value::Object(kv.iter().map(|(k, v)| (k.clone(), evidence(v))).collect()),
    }
}

pub fn verdict(v: &Verdict) -> Value {
    let params: Map<String, Value> = v.parameters.iter().map(|(k, x)| (k.clone(), Value::String(x.clone()))).collect();
    let ev: Map<String, Value> = v.evidence.iter().map(|(k, x)| (k.clone(), evidence(x))).collect();
    json!({
        "claim_id": v.claim_id,
        "parameters": params,
        "status": v.status.as_str(),
        "evidence": ev,
    })
}

pub fn matrix(m: &ExactMatrix) -> Value {
    let entries: Vec<Value> =
        (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|e| Value::String(e.to_string())).collect())).collect();
    let mut out = Map::new();
    out.insert("ring".into(), Value::String(m.ring().to_string()));
    out.insert("rows".into(), m.rows().into());
    out.insert("cols".into(), m.cols().into());
    out.insert("entries".into(), Value::Array(entries));
    if let Some(ls) = m.domain_labels() {
        out.insert("domain_labels".into(), ls.iter().map(|l| l.to_string()).collect());
    }
    if let Some(ls) = m.codomain_labels() {
        out.insert("codomain_labels".into(), ls.iter().map(|l| l.to_string()).collect());
    }
    Value::Object(out)
}

pub fn witness(w: &DescentWitness) -> Value {
    let kernel: Vec<Value> = w
        .kernel_vector
        .iter()
        .map(|(t, c)| json!({ "tuple": t.iter().map(|i| i + 1).collect::<Vec<_>>(), "coefficient": c }))
        .collect();
    let image: Vec<Value> =
        w.image.iter().map(|(l, c)| json!({ "label": l.to_string(), "coefficient": c.to_string() })).collect();
    json!({ "kernel_vector": kernel, "image": image })
}

pub fn ast(e: &SchurExpr) -> Value {
    match e {
        SchurExpr::Base => json!({ "op": "base" }),
        SchurExpr::Sym(r, c) => json!({ "op": "sym", "power": r, "child": ast(c) }),
        SchurExpr::Wedge(r, c) => json!({ "op": "wedge", "power": r, "child": ast(c) }),
        SchurExpr::Tensor(fs) => json!({ "op": "tensor", "factors": fs.iter().map(ast).collect::<Vec<_>>() }),
        SchurExpr::DirectSum(ss) => json!({ "op": "direct_sum", "summands": ss.iter().map(ast).collect::<Vec<_>>() }),
    }
}

/// Reads the matrix file format; `ring` overrides the file's ring when given.
pub fn read_matrix(text: &str, ring: Option<&Ring>) -> Result<ExactMatrix, String> {
    let v: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {}", e))?;
    let spec = v.get("ring").and_then(Value::as_str).ok_or("missing string field \"ring\"")?;
    let file_ring = Ring::parse_spec(spec).map_err(|e| e.to_string())?;
    let dim = |key: &str| {
        v.get(key).and_then(Value::as_u64).map(|x| x as usize).ok_or(format!("missing integer field \"{}\"", key))
    };
    let (rows, cols) = (dim("rows")?, dim("cols")?);
    let table = v.get("entries").and_then(Value::as_array).ok_or("missing array field \"entries\"")?;
    if table.len() != rows {
        return Err(format!("\"entries\" has {} rows, expected {}", table.len(), rows));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in table.iter().enumerate() {
        let row = row.as_array().ok_or(format!("row {} is not an array", i + 1))?;
        if row.len() != cols {
            return Err(format!("row {} has {} entries, expected {}", i + 1, row.len(), cols));
        }
        for (j, x) in row.iter().enumerate() {
            let text = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) if n.is_i64() => n.to_string(),
                _ => return Err(format!("entry ({}, {}) must be a scalar string", i + 1, j + 1)),
            };
            entries.push(file_ring.parse(&text).map_err(|e| format!("entry ({}, {}): {}", i + 1, j + 1, e))?);
        }
    }
    let m = ExactMatrix::new(&file_ring, rows, cols, entries).map_err(|e| e.to_string())?;
    match ring {
        Some(r) => m.change_ring(r).map_err(|e| e.to_string()),
        None => Ok(m),
    }
}

/// Indented `key: value` rendering for text output.
pub fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(kv) => {
            for (k, x) in kv {
                if is_scalar(x) || is_flat_list(x) {
                    out.push_str(&format!("{}{}: {}\n", pad, k, inline(x)));
                } else {
                    out.push_str(&format!("{}{}:\n", pad, k));
                    render_text(x, indent + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_scalar(x) || is_flat_list(x) {
                    out.push_str(&format!("{}- {}\n", pad, inline(x)));
                } else {
                    out.push_str(&format!("{}-\n", pad));
                    render_text(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", pad, inline(other))),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn is_flat_list(v: &Value) -> bool {
    matches!(v, Value::Array(xs) if xs.iter().all(is_scalar))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Aligned table of a labelled matrix.
pub fn render_matrix(m: &ExactMatrix) -> String {
    let head: Vec<String> = match m.domain_labels() {
        Some(ls) => ls.iter().map(|l| l.to_string()).collect(),
        None => (1..=m.cols()).map(|j| j.to_string()).collect(),
    };
    let side: Vec<String> = match m.codomain_labels() {
        Some(ls) => ls.iter().map(|l| l.to_string()).collect(),
        None => (1..=m.rows()).map(|i| i.to_string()).collect(),
    };
    let cells: Vec<Vec<String>> = (0..m.rows()).map(|i| m.row(i).iter().map(|e| e.to_string()).collect()).collect();
    let side_w = side.iter().map(|s| s.len()).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..m.cols()).map(|j| cells.iter().map(|r| r[j].len()).chain([head[j].len()]).max().unwrap_or(0)).collect();
    let mut out = format!("{:w$}", "", w = side_w);
    for (h, w) in head.iter().zip(&widths) {
        out.push_str(&format!("  {:>w$}", h, w = w));
    }
    out.push('\n');
    for (s, row) in side.iter().zip(&cells) {
        out.push_str(&format!("{:<w$}", s, w = side_w));
        for (c, w) in row.iter().zip(&widths) {
            out.push_str(&format!("  {:>w$}", c, w = w));
        }
        out.push('\n');
    }
    out
}
