//! CSV form of [`SummaryStats`], with metadata in leading `#` lines.

use super::{Model, SummaryStats};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::io::{Read, Write};

pub const HEADER: [&str; 19] = [
    "model",
    "body",
    "r",
    "n",
    "reps",
    "seed",
    "mean_f0",
    "se_f0",
    "var_f0",
    "mean_missed",
    "se_missed",
    "var_missed",
    "mean_perim_diff",
    "se_perim_diff",
    "var_perim_diff",
    "norm_mean_f0",
    "norm_mean_missed",
    "norm_var_f0",
    "norm_var_missed",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes `# key: value` metadata lines (values as compact JSON) followed by the table.
pub fn write_csv<W: Write>(
    mut out: W,
    metadata: &serde_json::Map<String, serde_json::Value>,
    rows: &[SummaryStats],
) -> Result<()> {
    for (k, v) in metadata {
        writeln!(out, "# {k}: {v}")?;
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for s in rows {
        w.write_record([
            s.model.to_string(),
            s.body.clone(),
            s.r.to_string(),
            s.n.to_string(),
            s.reps.to_string(),
            s.seed.to_string(),
            s.mean_f0.to_string(),
            s.se_f0.to_string(),
            s.var_f0.to_string(),
            s.mean_missed.to_string(),
            s.se_missed.to_string(),
            s.var_missed.to_string(),
            opt(s.mean_perim_diff),
            opt(s.se_perim_diff),
            opt(s.var_perim_diff),
            s.norm_mean_f0.to_string(),
            s.norm_mean_missed.to_string(),
            s.norm_var_f0.to_string(),
            s.norm_var_missed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Renders the CSV into a string.
pub fn to_csv_string(
    metadata: &serde_json::Map<String, serde_json::Value>,
    rows: &[SummaryStats],
) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(&mut buf, metadata, rows)?;
    String::from_utf8(buf).map_err(|e| Error::Csv(e.to_string()))
}

/// Reads rows written by [`write_csv`]; `#` lines are skipped.
pub fn read_csv<R: Read>(input: R) -> Result<Vec<SummaryStats>> {
    let mut rdr = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    let headers = rdr.headers()?.clone();
    let index: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    for h in HEADER {
        if !index.contains_key(h) {
            return Err(Error::Csv(format!("missing column '{h}'")));
        }
    }
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let field = |name: &str| rec.get(index[name]).unwrap_or("");
        let bad = |name: &str| Error::Csv(format!("row {}: bad value in '{name}'", line + 1));
        let num = |name: &str| field(name).trim().parse::<f64>().map_err(|_| bad(name));
        let int = |name: &str| field(name).trim().parse::<u64>().map_err(|_| bad(name));
        let maybe = |name: &str| -> Result<Option<f64>> {
            match field(name).trim() {
                "" => Ok(None),
                v => v.parse().map(Some).map_err(|_| bad(name)),
            }
        };
        rows.push(SummaryStats {
            model: field("model").parse::<Model>()?,
            body: field("body").to_string(),
            r: num("r")?,
            n: int("n")? as usize,
            reps: int("reps")? as usize,
            seed: int("seed")?,
            mean_f0: num("mean_f0")?,
            se_f0: num("se_f0")?,
            var_f0: num("var_f0")?,
            mean_missed: num("mean_missed")?,
            se_missed: num("se_missed")?,
            var_missed: num("var_missed")?,
            mean_perim_diff: maybe("mean_perim_diff")?,
            se_perim_diff: maybe("se_perim_diff")?,
            var_perim_diff: maybe("var_perim_diff")?,
            norm_mean_f0: num("norm_mean_f0")?,
            norm_mean_missed: num("norm_mean_missed")?,
            norm_var_f0: num("norm_var_f0")?,
            norm_var_missed: num("norm_var_missed")?,
            f0_mismatches: 0,
        });
    }
    Ok(rows)
}
