use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use polycount_core::counting::{
    asymptotic_report_from, simplified_prediction, CountTable, DegreeCounts,
};
use polycount_core::oracle::{Oracle, OracleCounts, PrimeField};
use polycount_core::partitions::{count_partitions, count_partitions_into, partitions_of};
use polycount_core::BigCount;
use serde::{Deserialize, Serialize};

use crate::args::{
    Cli, Command, CountArgs, IrreducibleArgs, OutputFormat, PartitionArgs, RangeArgs, RunConfig,
    TableArgs, VerifyArgs,
};
use crate::cache::{export_table, warm_table};
use crate::error::CliError;
use crate::render;
use crate::CACHE_ENV;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub q: u64,
    pub m: u32,
}

/// One degree of `count` / `table` output. Exact values are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRowJson {
    pub d: u32,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "I")]
    pub i: String,
    #[serde(rename = "R")]
    pub r: String,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    /// `I/N` rendered at the requested precision.
    pub density: String,
    /// `I/N` as an exact fraction.
    pub density_fraction: String,
    /// `1 - N(1) / q^C(m+d-1, m-1)` rendered at the requested precision.
    pub predicted_density: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountDocument {
    pub params: ParamsJson,
    pub rows: Vec<CountRowJson>,
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Count(args) => count(cli, args, out),
        Command::Table(args) => table(cli, args, out),
        Command::Verify(args) => verify(cli, args, out),
        Command::Asymptotic(args) => asymptotic(cli, args, out),
        Command::Partitions(args) => partitions(cli, args, out),
        Command::Irreducibles(args) => irreducibles(cli, args, out),
    }
}

fn cache_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn filled_table(config: &RunConfig) -> Result<CountTable, CliError> {
    let mut table = warm_table(config.params, cache_path().as_deref());
    table.extend_to(config.degree)?;
    Ok(table)
}

fn params_json(config: &RunConfig) -> ParamsJson {
    ParamsJson {
        q: config.params.q(),
        m: config.params.m(),
    }
}

fn count_row(config: &RunConfig, row: &DegreeCounts) -> Result<CountRowJson, CliError> {
    let density = row.density();
    let predicted = simplified_prediction(&config.params, row.degree)?.complement();
    Ok(CountRowJson {
        d: row.degree,
        n: row.normalized.to_string(),
        i: row.irreducible.to_string(),
        r: row.reducible.to_string(),
        s: row
            .by_factor_count
            .iter()
            .map(ToString::to_string)
            .collect(),
        density: render::ratio(&density, config.precision, config.format),
        density_fraction: render::fraction(&density),
        predicted_density: render::ratio(&predicted, config.precision, config.format),
    })
}

fn count(cli: &Cli, args: &CountArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = RunConfig::new(&args.field, args.d, cli, None)?;
    let table = filled_table(&config)?;
    let row = count_row(&config, table.get(args.d).expect("filled"))?;
    let text = match config.format {
        OutputFormat::Json => render::json(&CountDocument {
            params: params_json(&config),
            rows: vec![row],
        })?,
        OutputFormat::Csv => {
            let mut headers: Vec<String> = ["q", "m", "d", "N", "I", "R", "density"]
                .map(String::from)
                .into();
            headers.extend((1..=args.d).map(|k| format!("S_{k}")));
            let mut cells = vec![
                config.params.q().to_string(),
                config.params.m().to_string(),
                row.d.to_string(),
                row.n,
                row.i,
                row.r,
                row.density,
            ];
            cells.extend(row.s);
            render::csv_table(&headers, &[cells])?
        }
        OutputFormat::Text => {
            let mut s = format!("{}, degree {}\n", render::ring_name(&config.params), row.d);
            s += &format!("N = {}\nI = {}\nR = {}\n", row.n, row.i, row.r);
            for (k, v) in row.s.iter().enumerate() {
                s += &format!("S_{} = {v}\n", k + 1);
            }
            s += &format!("I/N = {}\n", row.density);
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn table(cli: &Cli, args: &TableArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = RunConfig::new(&args.range.field, args.range.dmax, cli, None)?;
    let table = filled_table(&config)?;
    let rows: Vec<CountRowJson> = table.rows()[..config.degree as usize]
        .iter()
        .map(|row| count_row(&config, row))
        .collect::<Result<_, _>>()?;
    if let Some(path) = &args.export {
        std::fs::write(path, export_table(&table)?)?;
    }
    let predicted_header = format!("1-{}", render::prediction_formula(&config.params));
    let text = match config.format {
        OutputFormat::Json => render::json(&CountDocument {
            params: params_json(&config),
            rows,
        })?,
        OutputFormat::Csv => {
            let headers: Vec<String> = ["d", "N", "I", "I/N", predicted_header.as_str()]
                .map(String::from)
                .into();
            let cells: Vec<Vec<String>> = rows
                .into_iter()
                .map(|r| vec![r.d.to_string(), r.n, r.i, r.density, r.predicted_density])
                .collect();
            render::csv_table(&headers, &cells)?
        }
        OutputFormat::Text => {
            let headers: Vec<String> = ["d", "N(d)", "I(d)", "I/N", predicted_header.as_str()]
                .map(String::from)
                .into();
            let cells: Vec<Vec<String>> = rows
                .into_iter()
                .map(|r| vec![r.d.to_string(), r.n, r.i, r.density, r.predicted_density])
                .collect();
            format!(
                "{}\n{}",
                render::ring_name(&config.params),
                render::text_table(&headers, &cells)
            )
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsJson {
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "I")]
    pub i: String,
    #[serde(rename = "R")]
    pub r: String,
    #[serde(rename = "S")]
    pub s: Vec<String>,
}

impl CountsJson {
    fn new(n: &BigCount, i: &BigCount, r: &BigCount, s: &[BigCount]) -> Self {
        CountsJson {
            n: n.to_string(),
            i: i.to_string(),
            r: r.to_string(),
            s: s.iter().map(ToString::to_string).collect(),
        }
    }

    fn brief(&self) -> String {
        format!(
            "N={} I={} R={} S=[{}]",
            self.n,
            self.i,
            self.r,
            self.s.join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRowJson {
    pub d: u32,
    pub passed: bool,
    pub unique_factorization: bool,
    pub oracle: CountsJson,
    pub recursion: CountsJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub params: ParamsJson,
    pub rows: Vec<VerifyRowJson>,
    pub passed: bool,
}

fn verify(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = RunConfig::new(&args.range.field, args.range.dmax, cli, Some(args.guard))?;
    let field = PrimeField::new(config.params.q())?;
    let mut oracle = Oracle::with_guard(field, config.params.m(), config.degree, config.guard)?;
    let mut table = CountTable::new(config.params);

    let mut rows = Vec::new();
    for d in 1..=config.degree {
        let started = Instant::now();
        let brute: OracleCounts = oracle.counts(d)?.clone();
        let report = oracle.factorization_report(d)?;
        let oracle_time = started.elapsed();
        let started = Instant::now();
        let row = table.ensure(d)?.clone();
        let recursion_time = started.elapsed();
        eprintln!(
            "d={d}: oracle {:.3} ms, recursion {:.3} ms",
            oracle_time.as_secs_f64() * 1e3,
            recursion_time.as_secs_f64() * 1e3
        );
        let oracle_json = CountsJson::new(
            &brute.normalized,
            &brute.irreducible,
            &brute.reducible,
            &brute.by_factor_count,
        );
        let recursion_json = CountsJson::new(
            &row.normalized,
            &row.irreducible,
            &row.reducible,
            &row.by_factor_count,
        );
        rows.push(VerifyRowJson {
            d,
            passed: oracle_json == recursion_json && report.passed(),
            unique_factorization: report.unique(),
            oracle: oracle_json,
            recursion: recursion_json,
        });
    }
    let passed = rows.iter().all(|r| r.passed);

    let text = match config.format {
        OutputFormat::Json => render::json(&VerifyDocument {
            params: params_json(&config),
            rows: rows.clone(),
            passed,
        })?,
        OutputFormat::Csv => {
            let headers: Vec<String> = [
                "d", "status", "unique", "N", "I", "R", "S", "N_rec", "I_rec", "R_rec", "S_rec",
            ]
            .map(String::from)
            .into();
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.d.to_string(),
                        status(r.passed).into(),
                        r.unique_factorization.to_string(),
                        r.oracle.n.clone(),
                        r.oracle.i.clone(),
                        r.oracle.r.clone(),
                        r.oracle.s.join(";"),
                        r.recursion.n.clone(),
                        r.recursion.i.clone(),
                        r.recursion.r.clone(),
                        r.recursion.s.join(";"),
                    ]
                })
                .collect();
            render::csv_table(&headers, &cells)?
        }
        OutputFormat::Text => {
            let mut s = format!(
                "verify {} degrees 1..={} (brute force vs recursion)\n",
                render::ring_name(&config.params),
                config.degree
            );
            for r in &rows {
                if r.passed {
                    s += &format!("d={} PASS {}\n", r.d, r.oracle.brief());
                } else {
                    s += &format!(
                        "d={} FAIL\n  oracle:    {}\n  recursion: {}\n  unique factorization: {}\n",
                        r.d,
                        r.oracle.brief(),
                        r.recursion.brief(),
                        r.unique_factorization
                    );
                }
            }
            s += &format!("{}, {} degrees checked\n", status(passed), rows.len());
            s
        }
    };
    out.write_all(text.as_bytes())?;
    if passed {
        Ok(())
    } else {
        let failed: Vec<String> = rows
            .iter()
            .filter(|r| !r.passed)
            .map(|r| r.d.to_string())
            .collect();
        Err(CliError::Mismatch(format!("degrees {}", failed.join(", "))))
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticRowJson {
    pub d: u32,
    pub density: String,
    /// `1 - N(1) / q^C(m+d-1, m-1)`.
    pub predicted_density: String,
    /// `|(1 - I/N) - p| / p` for the closed-form prediction `p`.
    pub relative_error: String,
    /// `1 - N(1) N(d-1) / N(d)`.
    pub predicted_density_exact_form: String,
    pub relative_error_exact_form: String,
    pub density_fraction: String,
    pub predicted_fraction: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AsymptoticDocument {
    pub params: ParamsJson,
    /// Closed form predicting `1 - I/N`.
    pub prediction: String,
    pub rows: Vec<AsymptoticRowJson>,
    /// Whether the closed-form relative error shrinks at every step.
    pub error_monotone: bool,
}

fn asymptotic(cli: &Cli, args: &RangeArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = RunConfig::new(&args.field, args.dmax, cli, None)?;
    let mut table = warm_table(config.params, cache_path().as_deref());
    let report = asymptotic_report_from(&mut table, config.degree)?;
    let (p, f) = (config.precision, config.format);
    let rows: Vec<AsymptoticRowJson> = report
        .iter()
        .map(|r| AsymptoticRowJson {
            d: r.degree,
            density: render::ratio(&r.density, p, f),
            predicted_density: render::ratio(&r.predicted_simplified.complement(), p, f),
            relative_error: render::ratio(&r.relative_error_simplified, p, f),
            predicted_density_exact_form: render::ratio(&r.predicted.complement(), p, f),
            relative_error_exact_form: render::ratio(&r.relative_error, p, f),
            density_fraction: render::fraction(&r.density),
            predicted_fraction: render::fraction(&r.predicted_simplified),
        })
        .collect();
    let error_monotone = report
        .windows(2)
        .all(|w| w[1].relative_error_simplified < w[0].relative_error_simplified);
    let formula = render::prediction_formula(&config.params);

    let text = match config.format {
        OutputFormat::Json => render::json(&AsymptoticDocument {
            params: params_json(&config),
            prediction: formula,
            rows,
            error_monotone,
        })?,
        OutputFormat::Csv => {
            let headers: Vec<String> = [
                "d",
                "density",
                "predicted_density",
                "relative_error",
                "predicted_density_exact_form",
                "relative_error_exact_form",
            ]
            .map(String::from)
            .into();
            let cells: Vec<Vec<String>> = rows
                .into_iter()
                .map(|r| {
                    vec![
                        r.d.to_string(),
                        r.density,
                        r.predicted_density,
                        r.relative_error,
                        r.predicted_density_exact_form,
                        r.relative_error_exact_form,
                    ]
                })
                .collect();
            render::csv_table(&headers, &cells)?
        }
        OutputFormat::Text => {
            let mut s = format!(
                "{}: 1 - I/N ~ {formula}\npredicted = 1 - {formula}; exact form = 1 - N(1)N(d-1)/N(d)\n",
                render::ring_name(&config.params)
            );
            let headers: Vec<String> = [
                "d",
                "I/N",
                "predicted",
                "rel.error",
                "exact form",
                "rel.error",
            ]
            .map(String::from)
            .into();
            let cells: Vec<Vec<String>> = rows
                .into_iter()
                .map(|r| {
                    vec![
                        r.d.to_string(),
                        r.density,
                        r.predicted_density,
                        r.relative_error,
                        r.predicted_density_exact_form,
                        r.relative_error_exact_form,
                    ]
                })
                .collect();
            s += &render::text_table(&headers, &cells);
            s += &format!(
                "relative error shrinks monotonically: {}\n",
                if error_monotone { "yes" } else { "no" }
            );
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionsDocument {
    pub d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partitions: Option<Vec<Vec<u32>>>,
}

fn partitions(cli: &Cli, args: &PartitionArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.d < 1 {
        return Err(polycount_core::Error::InvalidDegree(args.d).into());
    }
    let ks = match args.k {
        Some(k) => {
            partitions_of(args.d, k)?;
            k..=k
        }
        None => 1..=args.d,
    };
    if args.count {
        let count = match args.k {
            Some(k) => count_partitions_into(args.d, k)?,
            None => count_partitions(args.d)?,
        };
        let text = match cli.format {
            OutputFormat::Json => render::json(&PartitionsDocument {
                d: args.d,
                k: args.k,
                count: Some(count.to_string()),
                partitions: None,
            })?,
            OutputFormat::Csv => render::csv_table(
                &["d".into(), "k".into(), "count".into()],
                &[vec![
                    args.d.to_string(),
                    args.k.map(|k| k.to_string()).unwrap_or_default(),
                    count.to_string(),
                ]],
            )?,
            OutputFormat::Text => format!("{count}\n"),
        };
        out.write_all(text.as_bytes())?;
        return Ok(());
    }

    match cli.format {
        OutputFormat::Json => {
            let mut all = Vec::new();
            for k in ks {
                all.extend(partitions_of(args.d, k)?.map(|p| p.parts().to_vec()));
            }
            let doc = PartitionsDocument {
                d: args.d,
                k: args.k,
                count: None,
                partitions: Some(all),
            };
            out.write_all(render::json(&doc)?.as_bytes())?;
        }
        // Streamed line by line; the listing can be long.
        OutputFormat::Csv => {
            writeln!(out, "k,parts")?;
            for k in ks {
                let mut stream = partitions_of(args.d, k)?;
                while let Some(parts) = stream.advance() {
                    writeln!(out, "{k},{}", join(parts, " "))?;
                }
            }
        }
        OutputFormat::Text => {
            for k in ks {
                let mut stream = partitions_of(args.d, k)?;
                while let Some(parts) = stream.advance() {
                    writeln!(out, "[{}]", join(parts, ","))?;
                }
            }
        }
    }
    Ok(())
}

fn join(parts: &[u32], sep: &str) -> String {
    parts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreduciblesDocument {
    pub params: ParamsJson,
    pub d: u32,
    pub irreducibles: Vec<String>,
}

fn irreducibles(cli: &Cli, args: &IrreducibleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = RunConfig::new(&args.field, args.d, cli, Some(args.guard))?;
    let field = PrimeField::new(config.params.q())?;
    let mut oracle = Oracle::with_guard(field, config.params.m(), config.degree, config.guard)?;
    let hex_lines: Vec<String> = oracle
        .irreducibles(config.degree)?
        .iter()
        .map(|p| hex::encode(p.canonical_bytes()))
        .collect();
    match config.format {
        OutputFormat::Json => {
            let doc = IrreduciblesDocument {
                params: params_json(&config),
                d: config.degree,
                irreducibles: hex_lines,
            };
            out.write_all(render::json(&doc)?.as_bytes())?;
        }
        OutputFormat::Csv | OutputFormat::Text => {
            for line in hex_lines {
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}
