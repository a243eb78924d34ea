// Copyright 2026 The sg-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! CSV outputs and the probability-table input format.
//!
//! All files are UTF-8 with LF line endings and a header row; reals are
//! written by [`format_sig`].
//!
//! Table schema (`prep,measurement,outcome,probability`), labels 1-based:
//!
//! * U tables: `measurement` is `1`; `outcome` is the readout `b ∈ 1..=N`.
//! * W tables: `measurement` is `x>x'` (for example `2>1`); `outcome` is
//!   `+1` or `-1`.
//!
//! Outcomes absent from a table count as probability 0. A `(prep,
//! measurement)` block must still sum to 1 within the caller's tolerance.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::simulator::{CountRecord, SweepRow};
use crate::witness::{MeasurementLabel, ProbabilityTable, WitnessKind};

use super::number::format_sig;

pub const CHAIN_HEADER: &str = "stage_index,transmitted,outcome_plus,outcome_minus";
pub const SWEEP_HEADER: &str = "angle_rad,analytic_p,estimate_p,ci_low,ci_high,n";
pub const TABLE_HEADER: &str = "prep,measurement,outcome,probability";

/// Tolerance on distribution sums when reading tables from text.
pub const CSV_DISTRIBUTION_TOLERANCE: f64 = 1e-6;

/// One row per stage (1-based): particles through the selected port, then
/// the counts in the `+` and `−` beams.
pub fn chain_csv(record: &CountRecord) -> String {
    let mut out = String::from(CHAIN_HEADER);
    out.push('\n');
    for (i, (t, o)) in record
        .per_stage_transmitted
        .iter()
        .zip(&record.per_stage_outcomes)
        .enumerate()
    {
        let _ = writeln!(out, "{},{},{},{}", i + 1, t, o.plus, o.minus);
    }
    out
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            format_sig(r.angle),
            format_sig(r.analytic_p),
            format_sig(r.estimate.p_hat),
            format_sig(r.estimate.ci_low),
            format_sig(r.estimate.ci_high),
            r.estimate.n
        );
    }
    out
}

fn measurement_text(label: MeasurementLabel) -> String {
    match label {
        MeasurementLabel::Readout => "1".to_string(),
        MeasurementLabel::Pair(x, xp) => format!("{}>{}", x + 1, xp + 1),
    }
}

fn outcome_text(kind: WitnessKind, index: usize) -> String {
    match kind {
        WitnessKind::U => (index + 1).to_string(),
        WitnessKind::W => if index == 0 { "+1" } else { "-1" }.to_string(),
    }
}

pub fn table_csv(table: &ProbabilityTable) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for (prep, label, dist) in table.rows() {
        for (i, p) in dist.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                prep + 1,
                measurement_text(label),
                outcome_text(table.kind(), i),
                format_sig(*p)
            );
        }
    }
    out
}

fn parse_err(line: usize, key: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_index(text: &str, n: usize, line: usize, key: &str) -> Result<usize> {
    match text.parse::<usize>() {
        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
        _ => Err(parse_err(
            line,
            key,
            format!("expected an integer in 1..={n}, got `{text}`"),
        )),
    }
}

type Block = (usize, Vec<Option<f64>>);

/// Reads a table of the given kind and size.
pub fn parse_table_csv(
    text: &str,
    kind: WitnessKind,
    n_preps: usize,
    tolerance: f64,
) -> Result<ProbabilityTable> {
    let mut table = ProbabilityTable::new(kind, n_preps)?;
    let mut reader = ::csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(::csv::Trim::All)
        .from_reader(text.as_bytes());

    let header = reader
        .headers()
        .map_err(|e| parse_err(1, "header", e.to_string()))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if header != TABLE_HEADER {
        return Err(parse_err(
            1,
            "header",
            format!("expected `{TABLE_HEADER}`, got `{header}`"),
        ));
    }

    let n_outcomes = table.n_outcomes();
    // (prep, measurement) -> (first line, outcome probabilities seen so far)
    let mut blocks: BTreeMap<(usize, MeasurementLabel), Block> = BTreeMap::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, "row", e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != 4 {
            return Err(parse_err(
                line,
                "row",
                format!("expected 4 columns, got {}", record.len()),
            ));
        }
        let prep = parse_index(&record[0], n_preps, line, "prep")?;
        let label = match kind {
            WitnessKind::U => {
                if &record[1] != "1" {
                    return Err(parse_err(
                        line,
                        "measurement",
                        "U tables have the single measurement `1`",
                    ));
                }
                MeasurementLabel::Readout
            }
            WitnessKind::W => {
                let (x, xp) = record[1].split_once('>').ok_or_else(|| {
                    parse_err(
                        line,
                        "measurement",
                        format!("expected `x>x'`, got `{}`", &record[1]),
                    )
                })?;
                let x = parse_index(x.trim(), n_preps, line, "measurement")?;
                let xp = parse_index(xp.trim(), n_preps, line, "measurement")?;
                if x <= xp {
                    return Err(parse_err(line, "measurement", "pairs must satisfy x > x'"));
                }
                MeasurementLabel::Pair(x, xp)
            }
        };
        let outcome = match kind {
            WitnessKind::U => parse_index(&record[2], n_outcomes, line, "outcome")?,
            WitnessKind::W => match &record[2] {
                "+1" | "1" | "+" => 0,
                "-1" | "-" => 1,
                other => {
                    return Err(parse_err(
                        line,
                        "outcome",
                        format!("expected +1 or -1, got `{other}`"),
                    ))
                }
            },
        };
        let p: f64 = record[3].parse().map_err(|_| {
            parse_err(
                line,
                "probability",
                format!("`{}` is not a number", &record[3]),
            )
        })?;
        if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
            return Err(parse_err(
                line,
                "probability",
                format!("{p} is outside [0, 1]"),
            ));
        }
        let block = blocks
            .entry((prep, label))
            .or_insert_with(|| (line, vec![None; n_outcomes]));
        if block.1[outcome].replace(p).is_some() {
            return Err(parse_err(
                line,
                "row",
                "duplicate (prep, measurement, outcome) entry",
            ));
        }
    }

    for ((prep, label), (line, dist)) in blocks {
        let dist: Vec<f64> = dist.into_iter().map(|p| p.unwrap_or(0.0)).collect();
        table
            .set(prep, label, dist, tolerance)
            .map_err(|e| parse_err(line, "probability", e.to_string()))?;
    }
    Ok(table)
}
