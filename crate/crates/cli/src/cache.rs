//! JSON import/export of a [`CountTable`]:
//! `{"q": 2, "m": 2, "rows": [{"d": 1, "N": "6", "I": "6", "R": "0", "S": ["6"]}, ...]}`.
//! Big integers are always decimal strings.

use std::path::Path;

use polycount_core::counting::{CountTable, CountingParams, DegreeCounts};
use polycount_core::BigCount;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub q: u64,
    pub m: u32,
    pub rows: Vec<TableFileRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFileRow {
    pub d: u32,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "I")]
    pub i: String,
    #[serde(rename = "R")]
    pub r: String,
    #[serde(rename = "S")]
    pub s: Vec<String>,
}

impl From<&CountTable> for TableFile {
    fn from(table: &CountTable) -> Self {
        TableFile {
            q: table.params().q(),
            m: table.params().m(),
            rows: table
                .rows()
                .iter()
                .map(|row| TableFileRow {
                    d: row.degree,
                    n: row.normalized.to_string(),
                    i: row.irreducible.to_string(),
                    r: row.reducible.to_string(),
                    s: row
                        .by_factor_count
                        .iter()
                        .map(ToString::to_string)
                        .collect(),
                })
                .collect(),
        }
    }
}

fn parse(field: &str, value: &str) -> Result<BigCount, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Invalid(format!("{field} is not a decimal integer: {value:?}")))
}

impl TryFrom<TableFile> for CountTable {
    type Error = CliError;

    fn try_from(file: TableFile) -> Result<Self, CliError> {
        let params = CountingParams::new(file.q, file.m)?;
        let rows = file
            .rows
            .into_iter()
            .map(|row| {
                Ok(DegreeCounts {
                    degree: row.d,
                    normalized: parse("N", &row.n)?,
                    irreducible: parse("I", &row.i)?,
                    reducible: parse("R", &row.r)?,
                    by_factor_count: row
                        .s
                        .iter()
                        .map(|s| parse("S", s))
                        .collect::<Result<_, _>>()?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(CountTable::from_rows(params, rows)?)
    }
}

pub fn export_table(table: &CountTable) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(&TableFile::from(table))?;
    text.push('\n');
    Ok(text)
}

pub fn import_table(json: &str) -> Result<CountTable, CliError> {
    let file: TableFile = serde_json::from_str(json)?;
    CountTable::try_from(file)
}

/// A table for `params`, seeded from `cache` when it holds matching params.
/// Unreadable or mismatched caches are reported on stderr and ignored.
pub fn warm_table(params: CountingParams, cache: Option<&Path>) -> CountTable {
    let Some(path) = cache else {
        return CountTable::new(params);
    };
    let loaded = std::fs::read_to_string(path)
        .map_err(CliError::from)
        .and_then(|json| import_table(&json));
    match loaded {
        Ok(table) if table.params() == &params => table,
        Ok(table) => {
            eprintln!(
                "warning: ignoring cache {} (q = {}, m = {} does not match)",
                path.display(),
                table.params().q(),
                table.params().m()
            );
            CountTable::new(params)
        }
        Err(err) => {
            eprintln!("warning: ignoring cache {}: {err}", path.display());
            CountTable::new(params)
        }
    }
}
