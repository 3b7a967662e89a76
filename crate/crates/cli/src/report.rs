use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportDocument {
    pub command: String,
    pub kind: String,
    pub input_sha256: String,
    pub version: String,
    pub seed: u64,
    pub samples: usize,
    pub results: Value,
    pub certification_failed: bool,
}

impl ReportDocument {
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), Value::from(self.command.as_str()));
        m.insert("kind".into(), Value::from(self.kind.as_str()));
        m.insert("input_sha256".into(), Value::from(self.input_sha256.as_str()));
        m.insert("version".into(), Value::from(self.version.as_str()));
        m.insert("seed".into(), Value::from(self.seed));
        m.insert("samples".into(), Value::from(self.samples));
        m.insert("results".into(), self.results.clone());
        Value::Object(m)
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn label(key: &str) -> String {
    match key {
        "W" => "W (essential divisors)".to_string(),
        k => k.replace('_', " "),
    }
}

fn table_lines(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    if let Value::Object(m) = v {
        let width = m.keys().map(|k| label(k).len()).max().unwrap_or(0);
        for (k, val) in m {
            let nested = match val {
                Value::Object(_) => true,
                Value::Array(items) => items.iter().any(|x| x.is_object()),
                _ => false,
            };
            if !nested {
                out.push_str(&format!("{pad}{:<width$}  {}\n", format!("{}:", label(k)), compact(val), width = width + 1));
                continue;
            }
            out.push_str(&format!("{pad}{}:\n", label(k)));
            match val {
                Value::Array(items) => {
                    for (i, item) in items.iter().enumerate() {
                        out.push_str(&format!("{pad}  [{i}]\n"));
                        table_lines(item, indent + 4, out);
                    }
                }
                other => table_lines(other, indent + 2, out),
            }
        }
    } else {
        out.push_str(&format!("{pad}{}\n", compact(v)));
    }
}

fn offending_rays(results: &Value) -> Vec<String> {
    let mut out = Vec::new();
    let mut stack = vec![results];
    while let Some(v) = stack.pop() {
        match v {
            Value::Object(m) => {
                if let Some(Value::Array(fs)) = m.get("failures") {
                    for f in fs {
                        if let Some(r) = f.get("ray") {
                            out.push(compact(r));
                        }
                    }
                }
                for (k, x) in m {
                    if k != "failures" {
                        stack.push(x);
                    }
                }
            }
            Value::Array(xs) => stack.extend(xs.iter()),
            _ => {}
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Renders a report. JSON output is compact with sorted keys.
pub fn emit_report(report: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = compact(&report.to_value());
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = format!(
                "toric-nash {} {} ({} input, sha256 {})\nseed {}, samples {}\n",
                report.version, report.command, report.kind, report.input_sha256, report.seed, report.samples
            );
            table_lines(&report.results, 0, &mut s);
            if report.certification_failed {
                let rays = offending_rays(&report.results);
                s.push_str(&format!("NOT BIJECTIVE: offending rays {}\n", rays.join(", ")));
            }
            s
        }
    }
}
