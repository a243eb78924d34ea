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

//! Probability tables produced by Stern-Gerlach preparation and measuring
//! boxes, either exactly or by simulation.
//!
//! Pair measurement `(x, x')` is the Stern-Gerlach test along the Helstrom
//! axis of `ρ_x − ρ_x'`; its `+` beam is outcome `+1`. When the two
//! preparations coincide the test is aligned with the prepared spin instead.
//! The U readout exists only for two preparations: outcome 1 is the `+`
//! beam of the Helstrom test of `ρ_1 − ρ_2`, outcome 2 the `−` beam.

use crate::error::{Error, Result};
use crate::qubit::{antipode, density_from_direction, Direction, Port};
use crate::simulator::{
    analytic_probability, derive_seed, simulate_chain, ExperimentPlan, SgStage, Source,
};

use super::distinguish::helstrom_direction;
use super::table::{MeasurementLabel, ProbabilityTable, WitnessKind, DISTRIBUTION_TOLERANCE};

/// A preparation button: magnet axis plus the beam let through.
pub type Preparation = SgStage;

fn discrimination_axis(a: &Preparation, b: &Preparation) -> Result<Direction> {
    let rho = density_from_direction(a.direction, a.selected_port);
    let sigma = density_from_direction(b.direction, b.selected_port);
    match helstrom_direction(&rho, &sigma) {
        Ok(axis) => Ok(axis),
        Err(Error::IdenticalStates) => Ok(match a.selected_port {
            Port::Plus => a.direction,
            Port::Minus => antipode(a.direction),
        }),
        Err(e) => Err(e),
    }
}

fn measurement_axes(
    preps: &[Preparation],
    kind: WitnessKind,
) -> Result<Vec<(MeasurementLabel, Direction)>> {
    if preps.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two preparations, got {}",
            preps.len()
        )));
    }
    match kind {
        WitnessKind::U => {
            if preps.len() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "readout tables can only be generated for 2 preparations, got {}",
                    preps.len()
                )));
            }
            Ok(vec![(
                MeasurementLabel::Readout,
                discrimination_axis(&preps[0], &preps[1])?,
            )])
        }
        WitnessKind::W => {
            let mut out = Vec::new();
            for x in 0..preps.len() {
                for xp in 0..x {
                    out.push((
                        MeasurementLabel::Pair(x, xp),
                        discrimination_axis(&preps[x], &preps[xp])?,
                    ));
                }
            }
            Ok(out)
        }
    }
}

/// Exact table from the Born rule.
pub fn analytic_table(preps: &[Preparation], kind: WitnessKind) -> Result<ProbabilityTable> {
    let axes = measurement_axes(preps, kind)?;
    let mut table = ProbabilityTable::new(kind, preps.len())?;
    for (label, axis) in axes {
        for (z, prep) in preps.iter().enumerate() {
            let p = analytic_probability(prep.direction, prep.selected_port, axis, Port::Plus);
            table.set(z, label, vec![p, 1.0 - p], DISTRIBUTION_TOLERANCE)?;
        }
    }
    Ok(table)
}

/// Table estimated by running every `(preparation, measurement)` cell as a
/// two-stage chain fed by an unpolarized source.
///
/// Cells are numbered measurement-major; cell `k` runs with seed
/// `derive_seed(seed, k)`. Probabilities are frequencies among the particles
/// that survive the preparing magnet.
pub fn sampled_table(
    preps: &[Preparation],
    kind: WitnessKind,
    n_particles: u64,
    seed: u64,
) -> Result<ProbabilityTable> {
    let axes = measurement_axes(preps, kind)?;
    let mut table = ProbabilityTable::new(kind, preps.len())?;
    let mut cell = 0u64;
    for (label, axis) in axes {
        for (z, prep) in preps.iter().enumerate() {
            let plan = ExperimentPlan::new(
                vec![*prep, SgStage::new(axis, Port::Plus)],
                n_particles,
                derive_seed(seed, cell),
                Source::Unpolarized,
            )?;
            cell += 1;
            let record = simulate_chain(&plan);
            let trials = record.final_trials();
            if trials == 0 {
                return Err(Error::InvalidPlan(format!(
                    "no particle survived preparation {}; increase n_particles",
                    z + 1
                )));
            }
            let p = record.final_outcomes().plus as f64 / trials as f64;
            table.set(z, label, vec![p, 1.0 - p], DISTRIBUTION_TOLERANCE)?;
        }
    }
    Ok(table)
}
