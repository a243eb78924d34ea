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

#![no_main]

use libfuzzer_sys::fuzz_target;
use sg_lab::io::{parse_table_csv, table_csv, CSV_DISTRIBUTION_TOLERANCE};
use sg_lab::witness::{WitnessKind, WitnessReport};

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let kind = if selector & 1 == 0 {
        WitnessKind::U
    } else {
        WitnessKind::W
    };
    let n = 2 + usize::from(selector >> 1) % 5;
    let Ok(table) = parse_table_csv(text, kind, n, CSV_DISTRIBUTION_TOLERANCE) else {
        return;
    };
    // Writing and re-reading a parsed table must be lossless at the
    // written precision.
    let written = table_csv(&table);
    let again = parse_table_csv(&written, kind, n, CSV_DISTRIBUTION_TOLERANCE).expect("re-read");
    assert_eq!(table_csv(&again), written);
    if let Ok(report) = WitnessReport::analyze(&table, 1e-9) {
        assert!(report.witness_value.is_finite());
    }
});
