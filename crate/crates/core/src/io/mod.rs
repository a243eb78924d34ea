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

//! File formats: TOML plans in, CSV and JSON out.

pub mod csv;
pub mod number;
pub mod plan;

pub use self::csv::{chain_csv, parse_table_csv, sweep_csv, table_csv, CSV_DISTRIBUTION_TOLERANCE};
pub use number::{format_sig, round_sig};
pub use plan::{parse_plan, parse_preparations, PreparationList};

use crate::witness::WitnessReport;

/// Pretty-printed JSON with a trailing newline; reals are rounded to the
/// same 12 significant digits as the CSV outputs.
pub fn report_json(report: &WitnessReport) -> String {
    let mut rounded = report.clone();
    rounded.witness_value = round_sig(rounded.witness_value);
    rounded.tolerance = round_sig(rounded.tolerance);
    for b in &mut rounded.bound_per_d {
        b.bound = round_sig(b.bound);
    }
    let mut s = serde_json::to_string_pretty(&rounded).expect("reports always serialize");
    s.push('\n');
    s
}
