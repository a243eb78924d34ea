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
use sg_lab::io::{chain_csv, parse_plan};
use sg_lab::simulator::{simulate_chain, ExperimentPlan};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(plan) = parse_plan(text) else { return };
    for stage in plan.stages() {
        let t = stage.direction.theta();
        assert!((0.0..=std::f64::consts::PI).contains(&t));
    }
    // Keep simulated work bounded; the parser accepts any n ≥ 1.
    let small = ExperimentPlan::new(
        plan.stages().to_vec(),
        plan.n_particles().min(64),
        plan.seed(),
        plan.source(),
    )
    .expect("a parsed plan revalidates");
    let record = simulate_chain(&small);
    assert_eq!(chain_csv(&record).lines().count(), plan.stages().len() + 1);
});
