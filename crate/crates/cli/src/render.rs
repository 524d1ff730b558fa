//! Text and LaTeX renderings of report documents.

use anyhow::Result;
use serde_json::Value;

use crate::args::Format;

pub fn render(doc: &Value, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(doc)?,
        Format::Table => table(doc),
        Format::Latex => latex(doc),
    })
}

fn s(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(t) => t.clone(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.to_string(),
        other => other.to_string(),
    }
}

fn params(v: &Value) -> String {
    match v.as_object() {
        Some(m) if !m.is_empty() => m.iter().map(|(k, v)| format!("{k}={}", s(v))).collect::<Vec<_>>().join(","),
        _ => "-".to_string(),
    }
}

enum Cell {
    Text(String),
    Math(String),
}

struct Table {
    title: String,
    headers: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

fn tables(doc: &Value, tex: bool) -> Vec<Table> {
    let results = doc["results"].as_array().cloned().unwrap_or_default();
    let space = s(&doc["space"]);
    let text = |v: &Value| Cell::Text(s(v));
    match doc["command"].as_str().unwrap_or("") {
        "compute" => {
            let rows = results
                .iter()
                .map(|r| {
                    let class = if r["value"].is_null() {
                        Cell::Text("hypothesis fails".into())
                    } else if tex {
                        Cell::Math(s(&r["latex"]))
                    } else {
                        text(&r["display"])
                    };
                    vec![text(&r["cycle"]), text(&r["dim"]), class, text(&r["discriminant_degree"])]
                })
                .collect();
            let req = &doc["request"]["bundle"];
            let mut title = format!("{space}, bundle {}", s(&req["bundle"]));
            if let Some(d) = req["d"].as_str() {
                title.push_str(&format!(", d={d}"));
            }
            vec![Table { title, headers: vec!["cycle", "dim", "orbit class", "discriminant degree"], rows }]
        }
        "check" => {
            let mut out = Vec::new();
            for v in &results {
                let title = format!("{space}: surjective = {}", s(&v["surjective"]));
                let rows = v["per_degree"]
                    .as_object()
                    .map(|m| {
                        let mut degs: Vec<_> = m.iter().collect();
                        degs.sort_by_key(|(deg, _)| deg.parse::<u32>().unwrap_or(u32::MAX));
                        degs.into_iter()
                            .map(|(deg, r)| vec![Cell::Text(deg.clone()), text(&r["primitives"]), text(&r["rank"])])
                            .collect()
                    })
                    .unwrap_or_default();
                out.push(Table { title, headers: vec!["degree", "primitives", "rank"], rows });
                let rows = v["witnesses"]
                    .as_object()
                    .map(|m| m.iter().map(|(sym, w)| vec![Cell::Text(sym.clone()), text(&w["cycle"]), text(&w["coefficient"])]).collect())
                    .unwrap_or_default();
                out.push(Table { title: "witnesses".into(), headers: vec!["primitive", "cycle", "coefficient"], rows });
            }
            out
        }
        "scan" => results
            .iter()
            .map(|r| {
                let rows = r["points"]
                    .as_array()
                    .map(|ps| {
                        ps.iter()
                            .map(|p| {
                                let vanishing = p["vanishing"]
                                    .as_array()
                                    .map(|vs| {
                                        vs.iter()
                                            .map(|v| match v["formula"].as_str() {
                                                Some(f) => format!("{}@{}: {f}", s(&v["symbol"]), s(&v["cycle"])),
                                                None => format!("{}@{}", s(&v["symbol"]), s(&v["cycle"])),
                                            })
                                            .collect::<Vec<_>>()
                                            .join("; ")
                                    })
                                    .unwrap_or_else(|| "-".into());
                                vec![Cell::Text(params(&p["params"])), text(&p["status"]), Cell::Text(vanishing)]
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                let delta: Vec<String> = r["exceptional"].as_array().map(|a| a.iter().map(params).collect()).unwrap_or_default();
                Table {
                    title: format!("{space}, bundle {}: exceptional set {{{}}}", s(&r["bundle"]), delta.join(" ")),
                    headers: vec!["parameters", "status", "vanishing coefficients"],
                    rows,
                }
            })
            .collect(),
        "generic-check" => results
            .iter()
            .map(|r| Table {
                title: space.clone(),
                headers: vec!["sample", "span rank", "image dim", "target dim", "hyperplane free"],
                rows: vec![vec![
                    text(&r["sample_size"]),
                    text(&r["span_rank"]),
                    text(&r["image_dim"]),
                    text(&r["target_dim"]),
                    text(&r["hyperplane_free"]),
                ]],
            })
            .collect(),
        "divisor-check" => vec![Table {
            title: format!("{space} and its quadric"),
            headers: vec!["cycle", "restricted", "lhs", "rhs", "equal"],
            rows: results
                .iter()
                .map(|r| vec![text(&r["cycle"]), text(&r["restricted_cycle"]), text(&r["lhs_display"]), text(&r["rhs_display"]), text(&r["equal"])])
                .collect(),
        }],
        "spaces" => vec![Table {
            title: "spaces".into(),
            headers: vec!["id", "kind", "description", "bounds"],
            rows: results.iter().map(|r| vec![text(&r["id"]), text(&r["kind"]), text(&r["description"]), text(&r["bounds"])]).collect(),
        }],
        "selftest" => vec![Table {
            title: "selftest".into(),
            headers: vec!["result", "check"],
            rows: results
                .iter()
                .map(|r| vec![Cell::Text(if r["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" }.into()), text(&r["check"])])
                .collect(),
        }],
        other => vec![Table { title: format!("unknown document kind {other:?}"), headers: vec![], rows: vec![] }],
    }
}

fn cell_text(c: &Cell) -> &str {
    match c {
        Cell::Text(t) | Cell::Math(t) => t,
    }
}

fn table(doc: &Value) -> String {
    let mut out = String::new();
    for t in tables(doc, false) {
        let mut widths: Vec<usize> = t.headers.iter().map(|h| h.len()).collect();
        for r in &t.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(cell_text(c).chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        out.push_str(&t.title);
        out.push('\n');
        out.push_str(&line(t.headers.clone()));
        out.push('\n');
        out.push_str(&line(widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().iter().map(|s| s.as_str()).collect()));
        out.push('\n');
        for r in &t.rows {
            out.push_str(&line(r.iter().map(cell_text).collect()));
            out.push('\n');
        }
        out.push('\n');
    }
    for d in doc["diagnostics"].as_array().into_iter().flatten() {
        out.push_str(&format!("note: {}\n", s(d)));
    }
    out
}

fn escape(t: &str) -> String {
    let mut out = String::new();
    for ch in t.chars() {
        match ch {
            '_' | '&' | '%' | '#' | '$' | '{' | '}' => {
                out.push('\\');
                out.push(ch);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            _ => out.push(ch),
        }
    }
    out
}

fn latex(doc: &Value) -> String {
    let mut out = String::new();
    for t in tables(doc, true) {
        out.push_str(&format!("% {}\n", t.title));
        out.push_str(&format!("\\begin{{tabular}}{{{}}}\n\\hline\n", "l".repeat(t.headers.len().max(1))));
        out.push_str(&t.headers.iter().map(|h| escape(h)).collect::<Vec<_>>().join(" & "));
        out.push_str(" \\\\\n\\hline\n");
        for r in &t.rows {
            let cells: Vec<String> = r
                .iter()
                .map(|c| match c {
                    Cell::Text(t) => escape(t),
                    Cell::Math(m) => format!("${m}$"),
                })
                .collect();
            out.push_str(&cells.join(" & "));
            out.push_str(" \\\\\n");
        }
        out.push_str("\\hline\n\\end{tabular}\n");
    }
    out
}
