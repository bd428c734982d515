//! CSV/JSON exporters for the engine's tables. Column orders are fixed and
//! documented in the README; re-running with identical flags yields
//! byte-identical files.

use std::io::Write;

use grasscoh::grassmann::{gysin_report, ucharrank_oriented3};
use grasscoh::oriented3::cup_bounds;
use grasscoh::swclasses::g_classes_with_cap;
use grasscoh::{Error, Result};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

/// `gi` table: columns `i,term_count,vanishes,poly`.
pub fn export_gi(
    out: &mut dyn Write,
    k: u32,
    max: u32,
    cap_terms: usize,
    format: ExportFormat,
) -> Result<()> {
    let g = g_classes_with_cap(k, max, cap_terms)?;
    match format {
        ExportFormat::Csv => {
            wln(out, "i,term_count,vanishes,poly")?;
            for (i, poly) in g.iter().enumerate() {
                wln(
                    out,
                    &format!("{i},{},{},{}", poly.term_count(), poly.is_zero(), poly),
                )?;
            }
        }
        ExportFormat::Json => {
            let rows: Vec<_> = g
                .iter()
                .enumerate()
                .map(|(i, poly)| {
                    json!({
                        "i": i,
                        "term_count": poly.term_count(),
                        "vanishes": poly.is_zero(),
                        "poly": format!("{poly}"),
                    })
                })
                .collect();
            wln(out, &serde_json::to_string_pretty(&rows).unwrap())?;
        }
    }
    Ok(())
}

/// Betti table: columns `j,dim_base,ker,coker,betti`.
pub fn export_betti(out: &mut dyn Write, n: u32, k: u32, format: ExportFormat) -> Result<()> {
    let report = gysin_report(n, k)?;
    match format {
        ExportFormat::Csv => {
            wln(out, "j,dim_base,ker,coker,betti")?;
            for j in 0..report.betti.len() {
                wln(
                    out,
                    &format!(
                        "{j},{},{},{},{}",
                        report.base_dims[j], report.ker[j], report.coker[j], report.betti[j]
                    ),
                )?;
            }
        }
        ExportFormat::Json => {
            let value = json!({
                "n": n,
                "k": k,
                "betti": report.betti,
                "ker": report.ker,
                "coker": report.coker,
                "failure_degrees": report.failure_degrees,
                "first_failure": report.first_failure(),
                "charrank": report.charrank,
            });
            wln(out, &serde_json::to_string_pretty(&value).unwrap())?;
        }
    }
    Ok(())
}

/// Characteristic-rank sweep over `n`: columns
/// `n,charrank,ucharrank,first_failure`.
pub fn export_charrank(
    out: &mut dyn Write,
    n_min: u32,
    n_max: u32,
    format: ExportFormat,
) -> Result<()> {
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let report = gysin_report(n, 3)?;
        let ucharrank = ucharrank_oriented3(n)?;
        rows.push((n, report.charrank, ucharrank, report.first_failure()));
    }
    match format {
        ExportFormat::Csv => {
            wln(out, "n,charrank,ucharrank,first_failure")?;
            for (n, c, u, f) in rows {
                wln(out, &format!("{n},{c},{u},{f}"))?;
            }
        }
        ExportFormat::Json => {
            let value: Vec<_> = rows
                .iter()
                .map(|(n, c, u, f)| {
                    json!({"n": n, "charrank": c, "ucharrank": u, "first_failure": f})
                })
                .collect();
            wln(out, &serde_json::to_string_pretty(&value).unwrap())?;
        }
    }
    Ok(())
}

/// Cup-bound sweep for one `t`: columns `n,lower,upper`, exact rationals
/// rendered as `p/q`.
pub fn export_cup_bounds(out: &mut dyn Write, t: u32, format: ExportFormat) -> Result<()> {
    let half = 1u32 << (t - 1);
    let mut rows = Vec::new();
    for n in (4 * half).div_ceil(3)..=(2 * half - 2) {
        let (lower, upper) = cup_bounds(n, t)?;
        rows.push((n, format!("{lower}"), format!("{upper}")));
    }
    match format {
        ExportFormat::Csv => {
            wln(out, "n,lower,upper")?;
            for (n, lower, upper) in rows {
                wln(out, &format!("{n},{lower},{upper}"))?;
            }
        }
        ExportFormat::Json => {
            let value: Vec<_> = rows
                .iter()
                .map(|(n, lower, upper)| json!({"n": n, "lower": lower, "upper": upper}))
                .collect();
            wln(out, &serde_json::to_string_pretty(&value).unwrap())?;
        }
    }
    Ok(())
}

fn wln(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(|e| Error::InvalidInput(format!("write failed: {e}")))
}
