//! Text renderings of tables and operators (LaTeX, JSON, CSV) and the parser
//! for compact term strings like `24p_{1,1,1,1}-144p_{2,1,1}+\frac{1}{2}p_4`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactring::{parse_rat, rat_to_string, Poly, Rat};
use crate::linalg::{LinOperator, Matrix};
use crate::partitions::{index_of, partitions_of, Partition};
use crate::product::ProductTable;
use crate::symfunc::{Basis, SymFunc};

/// Output format shared by the emitters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Latex,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Usage(format!(
                "unknown format '{other}' (expected latex, json or csv)"
            ))),
        }
    }
}

/// Partitions in display order: `(1ⁿ)` up to `(n)` for power sums, `(n)` down
/// to `(1ⁿ)` for Schur functions.
pub fn display_order(n: usize, basis: Basis) -> Vec<Partition> {
    let mut parts = partitions_of(n);
    if basis == Basis::P {
        parts.reverse();
    }
    parts
}

fn label(basis: Basis, p: &Partition) -> String {
    format!("{}_{{{}}}", basis.letter(), p.subscript())
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

pub fn table_latex(t: &ProductTable) -> String {
    let labels = t.labels();
    let mut out = format!("\\begin{{array}}{{|c||{}}}\n  \\hline\n", "c|".repeat(labels.len()));
    out.push_str("  \\odot");
    for l in &labels {
        out.push_str(&format!(" & {}", label(t.basis, l)));
    }
    out.push_str(" \\\\\n  \\hline\\hline\n");
    for r in &labels {
        out.push_str(&format!("  {}", label(t.basis, r)));
        for c in &labels {
            out.push_str(&format!(" & {}", t.get(r, c).term_string()));
        }
        out.push_str(" \\\\\n  \\hline\n");
    }
    out.push_str("\\end{array}\n");
    out
}

pub fn table_json(t: &ProductTable) -> Value {
    let labels = t.labels();
    let cells: Vec<Value> = labels
        .iter()
        .flat_map(|r| {
            labels.iter().map(move |c| {
                json!({
                    "row": r,
                    "col": c,
                    "value": t.get(r, c).to_json(),
                })
            })
        })
        .collect();
    json!({
        "n": t.n,
        "basis": t.basis,
        "A": t.a,
        "cells": cells,
    })
}

/// Inverse of [`table_json`].
pub fn table_from_json(v: &Value) -> Result<ProductTable> {
    let bad = |what: &str| Error::Usage(format!("bad table JSON: {what}"));
    let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
    let basis: Basis = serde_json::from_value(v["basis"].clone()).map_err(|_| bad("basis"))?;
    let a = v["A"].as_u64().ok_or_else(|| bad("A"))? as u32;
    let mut cells = std::collections::BTreeMap::new();
    for cell in v["cells"].as_array().ok_or_else(|| bad("cells"))? {
        let row: Partition = serde_json::from_value(cell["row"].clone()).map_err(|_| bad("row"))?;
        let col: Partition = serde_json::from_value(cell["col"].clone()).map_err(|_| bad("col"))?;
        let value = SymFunc::from_json(&cell["value"])?;
        cells.insert((row, col), value);
    }
    Ok(ProductTable { n, basis, a, cells })
}

pub fn table_csv(t: &ProductTable) -> String {
    let labels = t.labels();
    let mut out = String::from("odot");
    for l in &labels {
        out.push(',');
        out.push_str(&csv_quote(&label(t.basis, l)));
    }
    out.push('\n');
    for r in &labels {
        out.push_str(&csv_quote(&label(t.basis, r)));
        for c in &labels {
            out.push(',');
            out.push_str(&csv_quote(&t.get(r, c).term_string()));
        }
        out.push('\n');
    }
    out
}

pub fn render_table(t: &ProductTable, format: Format) -> String {
    match format {
        Format::Latex => table_latex(t),
        Format::Json => serde_json::to_string_pretty(&table_json(t)).expect("serializable") + "\n",
        Format::Csv => table_csv(t),
    }
}

/// Matrix rows and columns permuted into display order.
fn display_matrix<R: crate::exactring::Ring>(n: usize, basis: Basis, m: &Matrix<R>) -> (Vec<Partition>, Matrix<R>) {
    let order = display_order(n, basis);
    let canon = partitions_of(n);
    let idx: Vec<usize> = order.iter().map(|p| index_of(&canon, p)).collect();
    let d = order.len();
    (order, Matrix::from_fn(d, d, |i, j| m[(idx[i], idx[j])].clone()))
}

fn latex_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.to_string()
    } else {
        let sign = if r < &Rat::from_integer(0.into()) { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", r.numer().magnitude(), r.denom())
    }
}

/// Operator in display order; entry `(i, j)` is the coefficient of the `i`-th
/// basis element in the image of the `j`-th.
pub fn operator_json(name: &str, op: &LinOperator<Rat>) -> Value {
    let (order, m) = display_matrix(op.n, op.basis, &op.matrix);
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(rat_to_string).collect())
        .collect();
    json!({
        "name": name,
        "n": op.n,
        "basis": op.basis,
        "order": order,
        "matrix": rows,
    })
}

pub fn operator_latex(op: &LinOperator<Rat>) -> String {
    let (order, m) = display_matrix(op.n, op.basis, &op.matrix);
    let mut out = format!("\\begin{{array}}{{c|{}}}\n ", "c".repeat(order.len()));
    for p in &order {
        out.push_str(&format!(" & {}", label(op.basis, p)));
    }
    out.push_str(" \\\\\n  \\hline\n");
    for (i, p) in order.iter().enumerate() {
        out.push_str(&format!("  {}", label(op.basis, p)));
        for v in m.row(i) {
            out.push_str(&format!(" & {}", latex_rat(v)));
        }
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{array}\n");
    out
}

pub fn operator_csv(op: &LinOperator<Rat>) -> String {
    let (order, m) = display_matrix(op.n, op.basis, &op.matrix);
    let mut out = String::from("row\\col");
    for p in &order {
        out.push(',');
        out.push_str(&csv_quote(&label(op.basis, p)));
    }
    out.push('\n');
    for (i, p) in order.iter().enumerate() {
        out.push_str(&csv_quote(&label(op.basis, p)));
        for v in m.row(i) {
            out.push(',');
            out.push_str(&rat_to_string(v));
        }
        out.push('\n');
    }
    out
}

pub fn render_operator(name: &str, op: &LinOperator<Rat>, format: Format) -> String {
    match format {
        Format::Latex => operator_latex(op),
        Format::Json => serde_json::to_string_pretty(&operator_json(name, op)).expect("serializable") + "\n",
        Format::Csv => operator_csv(op),
    }
}

/// The specialized Kostka matrix, rows `λ` and columns `μ` in canonical order.
pub fn kostka_render(n: usize, a: u32, k: &Matrix<Poly>, format: Format) -> String {
    let parts = partitions_of(n);
    match format {
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..k.rows())
                .map(|i| k.row(i).iter().map(|p| p.to_string()).collect())
                .collect();
            let v = json!({"n": n, "A": a, "order": parts, "kostka": rows});
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Csv => {
            let mut out = String::from("lambda\\mu");
            for p in &parts {
                out.push(',');
                out.push_str(&csv_quote(&p.to_string()));
            }
            out.push('\n');
            for (i, p) in parts.iter().enumerate() {
                out.push_str(&csv_quote(&p.to_string()));
                for e in k.row(i) {
                    out.push(',');
                    out.push_str(&csv_quote(&e.to_string()));
                }
                out.push('\n');
            }
            out
        }
        Format::Latex => {
            let mut out = format!("\\begin{{array}}{{c|{}}}\n ", "c".repeat(parts.len()));
            for p in &parts {
                out.push_str(&format!(" & \\tilde H_{{{}}}", p.subscript()));
            }
            out.push_str(" \\\\\n  \\hline\n");
            for (i, p) in parts.iter().enumerate() {
                out.push_str(&format!("  s_{{{}}}", p.subscript()));
                for e in k.row(i) {
                    out.push_str(&format!(" & {}", e.to_string().replace('*', "")));
                }
                out.push_str(" \\\\\n");
            }
            out.push_str("\\end{array}\n");
            out
        }
    }
}

/// Parses a term string such as `-s_4+2s_{3,1}` or `\frac{1}{2}p_{2,1}` of weight `n`.
pub fn parse_terms(s: &str, n: usize) -> Result<SymFunc> {
    let bad = |why: &str| Error::Usage(format!("cannot parse '{s}': {why}"));
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text == "0" {
        return Ok(SymFunc::zero(n, Basis::P));
    }
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut basis: Option<Basis> = None;
    let mut terms = Vec::new();
    while i < bytes.len() {
        let mut sign = Rat::from_integer(1.into());
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let coeff = if text[i..].starts_with("\\frac{") {
            let rest = &text[i + 6..];
            let close = rest.find('}').ok_or_else(|| bad("unclosed numerator"))?;
            let num = &rest[..close];
            let rest2 = rest[close + 1..]
                .strip_prefix('{')
                .ok_or_else(|| bad("missing denominator"))?;
            let close2 = rest2.find('}').ok_or_else(|| bad("unclosed denominator"))?;
            let den = &rest2[..close2];
            i += 6 + close + 2 + close2 + 1;
            parse_rat(&format!("{num}/{den}")).ok_or_else(|| bad("bad fraction"))?
        } else {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
                i += 1;
            }
            if start == i {
                Rat::from_integer(1.into())
            } else {
                parse_rat(&text[start..i]).ok_or_else(|| bad("bad coefficient"))?
            }
        };
        let b = match bytes.get(i) {
            Some(b'p') => Basis::P,
            Some(b's') => Basis::S,
            _ => return Err(bad("expected p or s")),
        };
        if basis.is_some_and(|x| x != b) {
            return Err(bad("mixed bases"));
        }
        basis = Some(b);
        i += 1;
        if bytes.get(i) != Some(&b'_') {
            return Err(bad("expected '_'"));
        }
        i += 1;
        let sub = if bytes.get(i) == Some(&b'{') {
            let close = text[i..].find('}').ok_or_else(|| bad("unclosed subscript"))?;
            let sub = &text[i + 1..i + close];
            i += close + 1;
            sub.to_string()
        } else {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            text[start..i].to_string()
        };
        let parts: Vec<usize> = sub
            .split(',')
            .map(|x| x.parse().map_err(|_| bad("bad subscript")))
            .collect::<Result<_>>()?;
        terms.push((Partition::new(parts), sign * coeff));
    }
    SymFunc::from_terms(n, basis.unwrap_or(Basis::P), terms)
}
