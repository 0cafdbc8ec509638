use polycount_core::counting::CountingParams;
use polycount_core::ExactRatio;
use serde::Serialize;

use crate::args::OutputFormat;
use crate::error::CliError;

/// Fixed-point rendering; text mode marks inexact values with a trailing `…`.
pub fn ratio(r: &ExactRatio, precision: u32, format: OutputFormat) -> String {
    let mut s = r.render_decimal(precision);
    if format == OutputFormat::Text && !r.is_exact_at(precision) {
        s.push('…');
    }
    s
}

/// `numerator/denominator` in lowest terms.
pub fn fraction(r: &ExactRatio) -> String {
    format!("{}/{}", r.numerator(), r.denominator())
}

pub fn ring_name(params: &CountingParams) -> String {
    let vars = match params.m() {
        1 => "x".to_string(),
        2 => "x,y".to_string(),
        3 => "x,y,z".to_string(),
        m => format!("x1..x{m}"),
    };
    format!("F_{}[{vars}]", params.q())
}

/// The closed form predicting `1 - I/N`, e.g. `3/2^d` for `F_2[x,y]`.
pub fn prediction_formula(params: &CountingParams) -> String {
    let q = params.q();
    let n1 = polycount_core::counting::count_normalized(params, 1)
        .map(|n| n.to_string())
        .unwrap_or_else(|_| "N(1)".into());
    match params.m() {
        2 => format!("{}/{q}^d", q + 1),
        3 => format!("{n1}/{q}^((d+1)(d+2)/2)"),
        m => format!("{n1}/{q}^C(d+{},{})", m - 1, m - 1),
    }
}

/// Right-aligned columns separated by two spaces.
pub fn text_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let width = |s: &String| s.chars().count();
    let mut widths: Vec<usize> = headers.iter().map(width).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(width(cell));
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{}{c}", " ".repeat(w - width(c))))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(headers);
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

/// Header plus rows, UTF-8, LF line endings.
pub fn csv_table(headers: &[String], rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .flexible(true)
        .from_writer(Vec::new());
    writer.write_record(headers)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv input was UTF-8"))
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}
