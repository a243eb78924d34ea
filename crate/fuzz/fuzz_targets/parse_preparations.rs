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
use sg_lab::io::parse_preparations;
use sg_lab::witness::{analytic_table, WitnessKind, WitnessReport};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(list) = parse_preparations(text) else {
        return;
    };
    if (2..=8).contains(&list.preparations.len()) {
        let table = analytic_table(&list.preparations, WitnessKind::W).expect("valid preparations");
        let report = WitnessReport::analyze(&table, 1e-9).expect("analytic tables are consistent");
        assert!(report.witness_value.is_finite() && report.witness_value >= 0.0);
    }
});
