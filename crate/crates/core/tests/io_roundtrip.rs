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

//! Text formats: plans, tables and number rendering.

use proptest::prelude::*;
use sg_lab::io::*;
use sg_lab::qubit::{Direction, Port};
use sg_lab::simulator::{simulate_chain, SgStage, Source};
use sg_lab::witness::*;
use sg_lab::Error;

fn preparation() -> impl Strategy<Value = SgStage> {
    (
        0.0..=std::f64::consts::PI,
        0.0..std::f64::consts::TAU,
        any::<bool>(),
    )
        .prop_map(|(t, p, s)| {
            SgStage::new(
                Direction::new(t, p).unwrap(),
                if s { Port::Plus } else { Port::Minus },
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn written_tables_reproduce_the_witness(preps in prop::collection::vec(preparation(), 2..=6)) {
        let table = analytic_table(&preps, WitnessKind::W).unwrap().map_probabilities(round_sig);
        let back = parse_table_csv(&table_csv(&table), WitnessKind::W, preps.len(), CSV_DISTRIBUTION_TOLERANCE).unwrap();
        let a = WitnessReport::analyze(&table, 1e-9).unwrap();
        let b = WitnessReport::analyze(&back, 1e-9).unwrap();
        prop_assert!((a.witness_value - b.witness_value).abs() < 1e-12);
        prop_assert_eq!(report_json(&a), report_json(&b));
    }

    #[test]
    fn plan_values_survive_parsing(t in 0.0..=std::f64::consts::PI, p in -10.0..10.0f64, n in 1u64..1000, seed in any::<u64>()) {
        let text = format!(
            "source = \"unpolarized\"\nn_particles = {n}\nseed = \"{seed}\"\n\n[[stages]]\ntheta = {t:?}\nphi = {p:?}\nport = \"-\"\n"
        );
        let plan = parse_plan(&text).unwrap();
        prop_assert_eq!(plan.n_particles(), n);
        prop_assert_eq!(plan.seed(), seed);
        prop_assert_eq!(plan.stages()[0].selected_port, Port::Minus);
        prop_assert!((plan.stages()[0].direction.theta() - t).abs() < 1e-15);
    }

    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,200}") {
        let _ = parse_plan(&s);
        let _ = parse_preparations(&s);
        let _ = parse_table_csv(&s, WitnessKind::W, 3, CSV_DISTRIBUTION_TOLERANCE);
    }
}

const PLAN: &str = r#"
source = "unpolarized"
n_particles = 2000
seed = 42

[[stages]]
theta = 0.0
phi = 0.0
port = "+"

[[stages]]
theta = 1.5707963267948966
phi = 0.0
port = "+"
"#;

#[test]
fn chain_csv_layout() {
    let plan = parse_plan(PLAN).unwrap();
    assert_eq!(plan.source(), Source::Unpolarized);
    let csv = chain_csv(&simulate_chain(&plan));
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(
        lines[0],
        "stage_index,transmitted,outcome_plus,outcome_minus"
    );
    assert!(lines[1].starts_with("1,") && lines[2].starts_with("2,"));
    assert!(csv.ends_with('\n') && !csv.contains('\r'));
}

#[test]
fn plan_errors_name_key_and_line() {
    let bad = PLAN.replacen("theta = 1.5707963267948966", "theta = 7.0", 1);
    match parse_plan(&bad) {
        Err(Error::Parse { line, key, .. }) => {
            assert_eq!(key, "stages[1].theta");
            assert_eq!(line, 12);
        }
        other => panic!("{other:?}"),
    }
    let typo = PLAN.replacen("seed", "sed", 1);
    assert!(matches!(parse_plan(&typo), Err(Error::Parse { .. })));
    let degrees = PLAN.replacen(
        "phi = 0.0\nport = \"+\"\n\n[[stages]]",
        "phi = 0.0\nport = \"+\"\nunits = \"deg\"\n\n[[stages]]",
        1,
    );
    assert!(parse_plan(&degrees).is_err());
    assert!(
        parse_plan("source = \"unpolarized\"\nn_particles = 1\nseed = 1\nstages = []\n").is_err()
    );
}

#[test]
fn preparation_lists() {
    let text = "n_particles = 100\nseed = 5\n\n[[preparations]]\ntheta = 0.0\nphi = 0.0\nport = \"+\"\n\n[[preparations]]\ntheta = 3.141592653589793\nphi = 0.0\nport = \"+\"\n";
    let list = parse_preparations(text).unwrap();
    assert_eq!(list.preparations.len(), 2);
    assert_eq!(list.n_particles, Some(100));
    assert_eq!(list.seed, 5);
}
