use clap::ValueEnum;
use serde_json::Value;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_IO: u8 = 74;

/// JSON is canonical; CSV and pretty are projections of it.
#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

pub fn fail(code: u8, msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render(doc: &Value, format: Format, table: &(Vec<&str>, Vec<Vec<String>>), pretty: &[String]) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).unwrap_or_default() + "\n",
        Format::Csv => {
            let mut s = table.0.join(",") + "\n";
            for row in &table.1 {
                s += &row.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
                s.push('\n');
            }
            s
        }
        Format::Pretty => pretty.iter().map(|l| format!("{l}\n")).collect(),
    }
}

/// Writes to `out` (or stdout) and returns `code`, or 74 when writing fails.
pub fn emit(
    doc: &Value,
    format: Format,
    table: (Vec<&str>, Vec<Vec<String>>),
    pretty: &[String],
    out: Option<&Path>,
    code: i32,
) -> ExitCode {
    let text = render(doc, format, &table, pretty);
    let written = match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    match written {
        Ok(()) => ExitCode::from(code as u8),
        Err(e) => fail(EXIT_IO, &e),
    }
}
