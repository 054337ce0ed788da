//! Small table emitter shared by the CLI subcommands: CSV, JSON and
//! Markdown renderings of a header plus string rows, all deterministic.

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Md,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Md),
            other => Err(format!("unknown format `{other}` (expected csv, json or md)")),
        }
    }
}

pub fn render(columns: &[&str], rows: &[Vec<String>], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = columns.join(",");
            out.push('\n');
            for row in rows {
                let quoted: Vec<String> = row
                    .iter()
                    .map(|cell| {
                        if cell.contains([',', '"', '\n']) {
                            format!("\"{}\"", cell.replace('"', "\"\""))
                        } else {
                            cell.clone()
                        }
                    })
                    .collect();
                out.push_str(&quoted.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let objects: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut map = serde_json::Map::new();
                    for (c, cell) in columns.iter().zip(row) {
                        map.insert((*c).to_string(), json!(cell));
                    }
                    Value::Object(map)
                })
                .collect();
            serde_json::to_string_pretty(&objects).expect("table serializes")
        }
        Format::Md => {
            let mut out = format!("| {} |\n", columns.join(" | "));
            out.push_str(&format!("|{}\n", "---|".repeat(columns.len())));
            for row in rows {
                out.push_str(&format!("| {} |\n", row.join(" | ")));
            }
            out
        }
    }
}
