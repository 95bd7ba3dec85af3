//! CSV and JSON rendering. Numbers go through one formatter so both formats
//! carry identical values.

use serde_json::{json, Value as Json};

use super::{Comparison, Format, KinkReport, RegimeMap, SweepTable, Value};
use crate::error::{Error, Result};

/// Scientific notation with 12 significant digits; `NaN` for missing values.
pub fn format_number(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.11e}")
    }
}

fn number_json(x: f64) -> Json {
    if x.is_finite() {
        let rounded: f64 = format_number(x).parse().expect("formatter output parses");
        json!(rounded)
    } else {
        Json::Null
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<Json> {
    serde_json::to_value(v).map_err(|e| Error::Numerical(format!("serialisation failed: {e}")))
}

fn pretty(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

fn comment_block(out: &mut String, title: &str, config: &Json) {
    out.push_str("# ");
    out.push_str(title);
    out.push('\n');
    out.push_str("# config:\n");
    for line in serde_json::to_string_pretty(config).expect("json values serialise").lines() {
        out.push_str("#   ");
        out.push_str(line);
        out.push('\n');
    }
}

pub fn render_table(t: &SweepTable, format: Format) -> Result<String> {
    let config = to_json(&t.config)?;
    let mut names = vec!["alpha"];
    names.extend(t.columns.iter().map(|c| c.name()));
    match format {
        Format::Csv => {
            let mut out = String::new();
            comment_block(&mut out, "qdiss sweep", &config);
            out.push_str(&format!("# grid_shift: {}\n", format_number(t.grid_shift)));
            out.push_str(&names.join(","));
            out.push('\n');
            for (i, &a) in t.alpha.iter().enumerate() {
                out.push_str(&format_number(a));
                for col in &t.data {
                    out.push(',');
                    match col[i] {
                        Value::Num(x) => out.push_str(&format_number(x)),
                        Value::Label(l) => out.push_str(l),
                    }
                }
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => {
            let rows: Vec<Json> = t
                .alpha
                .iter()
                .enumerate()
                .map(|(i, &a)| {
                    let mut row = vec![number_json(a)];
                    row.extend(t.data.iter().map(|col| match col[i] {
                        Value::Num(x) => number_json(x),
                        Value::Label(l) => json!(l),
                    }));
                    Json::Array(row)
                })
                .collect();
            Ok(pretty(&json!({
                "config": config,
                "grid_shift": number_json(t.grid_shift),
                "columns": names,
                "rows": rows,
            })))
        }
    }
}

pub fn render_kink(column: &str, kink: Option<&KinkReport>, format: Format) -> String {
    match (format, kink) {
        (Format::Csv, None) => format!("# no kink in {column}\n"),
        (Format::Csv, Some(k)) => format!(
            "column,location,strength,jump,order,grid_spacing\n{},{},{},{},{},{}\n",
            k.column,
            format_number(k.location),
            format_number(k.strength),
            format_number(k.jump),
            k.order,
            format_number(k.grid_spacing)
        ),
        (Format::Json, None) => pretty(&json!({ "column": column, "kink": Json::Null })),
        (Format::Json, Some(k)) => pretty(&json!({
            "column": column,
            "kink": {
                "location": number_json(k.location),
                "strength": number_json(k.strength),
                "jump": number_json(k.jump),
                "order": k.order,
                "grid_spacing": number_json(k.grid_spacing),
            }
        })),
    }
}

pub fn render_regime_map(map: &RegimeMap, format: Format) -> Result<String> {
    let config = to_json(&map.config)?;
    match format {
        Format::Csv => {
            let mut out = String::new();
            comment_block(&mut out, "qdiss regime-map", &config);
            out.push_str("# transition line: alpha = s * ratio\n");
            out.push_str("ratio,alpha,alpha_line,regime\n");
            for c in &map.cells {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    format_number(c.ratio),
                    format_number(c.alpha),
                    format_number(map.config.s * c.ratio),
                    c.regime.as_str()
                ));
            }
            Ok(out)
        }
        Format::Json => {
            let cells: Vec<Json> = map
                .cells
                .iter()
                .map(|c| json!([number_json(c.ratio), number_json(c.alpha), c.regime.as_str()]))
                .collect();
            let line: Vec<Json> = map
                .line
                .iter()
                .map(|&(r, a)| json!([number_json(r), number_json(a)]))
                .collect();
            Ok(pretty(&json!({
                "config": config,
                "columns": ["ratio", "alpha", "regime"],
                "cells": cells,
                "line": line,
            })))
        }
    }
}

pub fn render_comparisons(rows: &[Comparison], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::from("observable,analytic,oracle,abs_err,rel_err\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.observable,
                    format_number(r.analytic),
                    format_number(r.oracle),
                    format_number(r.abs_err),
                    format_number(r.rel_err)
                ));
            }
            out
        }
        Format::Json => {
            let rows: Vec<Json> = rows
                .iter()
                .map(|r| {
                    json!({
                        "observable": r.observable,
                        "analytic": number_json(r.analytic),
                        "oracle": number_json(r.oracle),
                        "abs_err": number_json(r.abs_err),
                        "rel_err": number_json(r.rel_err),
                    })
                })
                .collect();
            pretty(&Json::Array(rows))
        }
    }
}
