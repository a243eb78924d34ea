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

//! Monte Carlo and analytic engine for chains of Stern-Gerlach stages.
//!
//! Every particle leaves the source, meets the stages in order and at each
//! one is sent into the `+` or `−` beam with its Born probability; the state
//! collapses onto that beam's eigenstate. A particle in the blocked beam of
//! a non-final stage is lost. At the final stage both beams are counted.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(plan.seed)`. Particles are processed sequentially in index
//! order. Each stage consumes one uniform `f64` in `[0, 1)` (53 random bits),
//! and an unpolarized source consumes one more per particle, so counts are
//! bit-reproducible across platforms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::qubit::{inner_product, state_from_direction, Direction, Port, PureState};

/// Born probabilities closer than this to 0 or 1 are snapped to the
/// boundary before sampling, so eigenstates are transmitted with certainty.
const CERTAINTY_SNAP: f64 = 1e-12;

/// One magnet together with the beam it lets through.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SgStage {
    pub direction: Direction,
    pub selected_port: Port,
}

impl SgStage {
    pub fn new(direction: Direction, selected_port: Port) -> Self {
        SgStage {
            direction,
            selected_port,
        }
    }
}

/// What the furnace emits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    /// `|0⟩` or `|1⟩` with probability ½ each, equivalent to `½𝟙`.
    Unpolarized,
    Fixed(PureState),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    stages: Vec<SgStage>,
    n_particles: u64,
    seed: u64,
    source: Source,
}

impl ExperimentPlan {
    pub fn new(stages: Vec<SgStage>, n_particles: u64, seed: u64, source: Source) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::InvalidPlan("a plan needs at least one stage".into()));
        }
        if n_particles == 0 {
            return Err(Error::InvalidPlan("n_particles must be at least 1".into()));
        }
        Ok(ExperimentPlan {
            stages,
            n_particles,
            seed,
            source,
        })
    }

    pub fn stages(&self) -> &[SgStage] {
        &self.stages
    }

    pub fn n_particles(&self) -> u64 {
        self.n_particles
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn source(&self) -> Source {
        self.source
    }
}

/// Beam counts at one stage, by physical port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct PortCounts {
    pub plus: u64,
    pub minus: u64,
}

impl PortCounts {
    pub fn get(&self, port: Port) -> u64 {
        match port {
            Port::Plus => self.plus,
            Port::Minus => self.minus,
        }
    }

    pub fn total(&self) -> u64 {
        self.plus + self.minus
    }

    fn bump(&mut self, port: Port) {
        match port {
            Port::Plus => self.plus += 1,
            Port::Minus => self.minus += 1,
        }
    }
}

/// Outcome of [`simulate_chain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRecord {
    /// Particles leaving each stage through its selected port.
    pub per_stage_transmitted: Vec<u64>,
    /// Particles reaching each beam of each stage.
    pub per_stage_outcomes: Vec<PortCounts>,
    pub n_source: u64,
}

impl CountRecord {
    /// Detector counts of the last stage.
    pub fn final_outcomes(&self) -> PortCounts {
        *self
            .per_stage_outcomes
            .last()
            .expect("plans have at least one stage")
    }

    /// Particles that entered the last stage.
    pub fn final_trials(&self) -> u64 {
        self.final_outcomes().total()
    }
}

/// `Pr(meas_port | prep, meas) = (1 + (s r̂)·(b û)) / 2`.
pub fn analytic_probability(
    prep_dir: Direction,
    prep_port: Port,
    meas_dir: Direction,
    meas_port: Port,
) -> f64 {
    let c = prep_port.sign() * meas_port.sign() * prep_dir.dot(&meas_dir);
    (0.5 * (1.0 + c)).clamp(0.0, 1.0)
}

fn snap(p: f64) -> f64 {
    if p >= 1.0 - CERTAINTY_SNAP {
        1.0
    } else if p <= CERTAINTY_SNAP {
        0.0
    } else {
        p
    }
}

struct CompiledStage {
    plus: PureState,
    minus: PureState,
    selected: Port,
}

/// Runs the plan particle by particle.
pub fn simulate_chain(plan: &ExperimentPlan) -> CountRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let compiled: Vec<CompiledStage> = plan
        .stages
        .iter()
        .map(|s| CompiledStage {
            plus: state_from_direction(s.direction, Port::Plus),
            minus: state_from_direction(s.direction, Port::Minus),
            selected: s.selected_port,
        })
        .collect();
    let last = compiled.len() - 1;
    let mut outcomes = vec![PortCounts::default(); compiled.len()];

    for _ in 0..plan.n_particles {
        let mut state = match plan.source {
            Source::Fixed(s) => s,
            Source::Unpolarized => {
                if rng.random::<f64>() < 0.5 {
                    PureState::zero()
                } else {
                    PureState::one()
                }
            }
        };
        for (i, stage) in compiled.iter().enumerate() {
            let p_plus = snap(probability_of(&stage.plus, &state));
            let u: f64 = rng.random();
            let port = if u < p_plus { Port::Plus } else { Port::Minus };
            outcomes[i].bump(port);
            if i != last && port != stage.selected {
                break;
            }
            state = match port {
                Port::Plus => stage.plus,
                Port::Minus => stage.minus,
            };
        }
    }

    let per_stage_transmitted = outcomes
        .iter()
        .zip(&compiled)
        .map(|(c, s)| c.get(s.selected))
        .collect();
    CountRecord {
        per_stage_transmitted,
        per_stage_outcomes: outcomes,
        n_source: plan.n_particles,
    }
}

fn probability_of(eigen: &PureState, state: &PureState) -> f64 {
    let amp: Complex64 = inner_product(eigen, state);
    amp.norm_sqr()
}

/// A binomial proportion with its Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateWithCI {
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n: u64,
    pub confidence: f64,
}

pub const DEFAULT_CONFIDENCE: f64 = 0.95;

/// Point estimate and Wilson score interval for `successes / trials`.
pub fn estimate_probability(
    successes: u64,
    trials: u64,
    confidence: f64,
) -> Result<EstimateWithCI> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if successes > trials {
        return Err(Error::InvalidArgument(format!(
            "successes ({successes}) exceed trials ({trials})"
        )));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    let z = Normal::standard().inverse_cdf(1.0 - (1.0 - confidence) / 2.0);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;

    let mut ci_low = (centre - half).clamp(0.0, p);
    let mut ci_high = (centre + half).clamp(p, 1.0);
    if successes == 0 {
        ci_low = 0.0;
    }
    if successes == trials {
        ci_high = 1.0;
    }
    Ok(EstimateWithCI {
        p_hat: p,
        ci_low,
        ci_high,
        n: trials,
        confidence,
    })
}

/// One point of an angle sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub angle: f64,
    pub analytic_p: f64,
    pub estimate: EstimateWithCI,
}

/// SplitMix64 finalizer applied to `seed + index`; gives each sub-run of a
/// composite experiment its own well-mixed seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Prepare along `prep`, then measure along `prep` rotated by each angle.
///
/// The measuring magnet turns in the plane spanned by the preparation axis
/// and its polar tangent, so the angle between the two magnets is exactly
/// the requested angle. The source emits the prepared state and the first
/// stage re-selects it, so every one of the `n_per_point` particles reaches
/// the measuring magnet. Point `i` uses seed `derive_seed(seed, i)`.
pub fn sweep_angle(
    prep: (Direction, Port),
    meas_port: Port,
    angles: &[f64],
    n_per_point: u64,
    seed: u64,
) -> Result<Vec<SweepRow>> {
    if angles.is_empty() {
        return Err(Error::InvalidArgument("no angles to sweep".into()));
    }
    if let Some(bad) = angles.iter().find(|a| !a.is_finite()) {
        return Err(Error::InvalidArgument(format!("angle {bad} is not finite")));
    }
    let (prep_dir, prep_port) = prep;
    let source = Source::Fixed(state_from_direction(prep_dir, prep_port));
    angles
        .iter()
        .enumerate()
        .map(|(i, &angle)| {
            let meas_dir = prep_dir.rotated_polar(angle);
            let analytic_p = 0.5 * (1.0 + prep_port.sign() * meas_port.sign() * angle.cos());
            let plan = ExperimentPlan::new(
                vec![
                    SgStage::new(prep_dir, prep_port),
                    SgStage::new(meas_dir, meas_port),
                ],
                n_per_point,
                derive_seed(seed, i as u64),
                source,
            )?;
            let record = simulate_chain(&plan);
            let trials = record.final_trials();
            let successes = record.final_outcomes().get(meas_port);
            let estimate = estimate_probability(successes, trials.max(1), DEFAULT_CONFIDENCE)?;
            Ok(SweepRow {
                angle,
                analytic_p,
                estimate,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn analytic_examples() {
        let z = Direction::Z;
        assert_eq!(analytic_probability(z, Port::Plus, z, Port::Plus), 1.0);
        assert_eq!(analytic_probability(z, Port::Plus, z, Port::Minus), 0.0);
        let p = analytic_probability(z, Port::Plus, Direction::X, Port::Minus);
        assert!((p - 0.5).abs() < 1e-15);
        let tilted = Direction::new(PI / 6.0, 0.0).unwrap();
        let p = analytic_probability(z, Port::Plus, tilted, Port::Plus);
        assert!((p - 0.933_012_701_892_219_3).abs() < 1e-12);
    }

    #[test]
    fn plan_validation() {
        assert!(ExperimentPlan::new(vec![], 10, 0, Source::Unpolarized).is_err());
        let st = vec![SgStage::new(Direction::Z, Port::Plus)];
        assert!(ExperimentPlan::new(st, 0, 0, Source::Unpolarized).is_err());
    }

    #[test]
    fn orthogonal_port_never_fires() {
        let plan = ExperimentPlan::new(
            vec![
                SgStage::new(Direction::Z, Port::Plus),
                SgStage::new(Direction::Z, Port::Minus),
            ],
            5_000,
            3,
            Source::Fixed(PureState::zero()),
        )
        .unwrap();
        let rec = simulate_chain(&plan);
        assert_eq!(rec.final_outcomes().minus, 0);
        assert_eq!(rec.final_outcomes().plus, 5_000);
        assert_eq!(rec.per_stage_transmitted, vec![5_000, 0]);
    }

    #[test]
    fn counts_are_monotone_and_consistent() {
        let plan = ExperimentPlan::new(
            vec![
                SgStage::new(Direction::Z, Port::Plus),
                SgStage::new(Direction::X, Port::Minus),
                SgStage::new(Direction::Y, Port::Plus),
            ],
            2_000,
            11,
            Source::Unpolarized,
        )
        .unwrap();
        let rec = simulate_chain(&plan);
        assert_eq!(rec.per_stage_outcomes[0].total(), 2_000);
        for w in rec.per_stage_transmitted.windows(2) {
            assert!(w[1] <= w[0]);
        }
        for i in 1..3 {
            assert_eq!(
                rec.per_stage_outcomes[i].total(),
                rec.per_stage_transmitted[i - 1]
            );
        }
        assert_eq!(simulate_chain(&plan), rec);
    }

    #[test]
    fn wilson_boundaries() {
        let e = estimate_probability(0, 40, 0.95).unwrap();
        assert_eq!((e.p_hat, e.ci_low), (0.0, 0.0));
        assert!(e.ci_high > 0.0);
        let e = estimate_probability(40, 40, 0.95).unwrap();
        assert_eq!((e.p_hat, e.ci_high), (1.0, 1.0));
        assert!(e.ci_low < 1.0);
    }

    #[test]
    fn wilson_rejects_bad_input() {
        assert!(estimate_probability(0, 0, 0.95).is_err());
        assert!(estimate_probability(5, 4, 0.95).is_err());
        assert!(estimate_probability(1, 4, 1.0).is_err());
    }

    #[test]
    fn sweep_endpoints() {
        let rows = sweep_angle(
            (Direction::Z, Port::Plus),
            Port::Plus,
            &[0.0, PI / 2.0, PI],
            1_000,
            1,
        )
        .unwrap();
        let analytic: Vec<f64> = rows.iter().map(|r| r.analytic_p).collect();
        assert_eq!(analytic[0], 1.0);
        assert!((analytic[1] - 0.5).abs() < 1e-15);
        assert_eq!(analytic[2], 0.0);
        assert_eq!(rows[0].estimate.p_hat, 1.0);
        assert_eq!(rows[2].estimate.p_hat, 0.0);
        assert!(sweep_angle((Direction::Z, Port::Plus), Port::Plus, &[], 10, 1).is_err());
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(7, 0), derive_seed(7, 1));
        assert_ne!(derive_seed(7, 0), derive_seed(8, 0));
    }
}
