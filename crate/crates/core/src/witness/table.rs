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

//! Black-box probability tables `Pr(outcome | preparation, measurement)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance on `Σ_outcomes Pr = 1`.
pub const DISTRIBUTION_TOLERANCE: f64 = 1e-9;

/// Which witness a table is shaped for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessKind {
    /// One measurement with `N` outcomes; witness `U_N`.
    U,
    /// `N(N−1)/2` dichotomic measurements, one per pair; witness `W_N`.
    W,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::U => "U",
            WitnessKind::W => "W",
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for WitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" | "u" => Ok(WitnessKind::U),
            "W" | "w" => Ok(WitnessKind::W),
            other => Err(Error::InvalidArgument(format!(
                "witness kind must be U or W, got `{other}`"
            ))),
        }
    }
}

/// Measurement button. Preparation indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MeasurementLabel {
    /// The single `N`-outcome measurement of a U table.
    Readout,
    /// The dichotomic measurement `y = (x, x')` of a W table, `x > x'`.
    Pair(usize, usize),
}

/// Outcome distributions for every recorded `(preparation, measurement)`.
///
/// A U table stores `N` probabilities per row, indexed by outcome `b`; a W
/// table stores `[Pr(+1), Pr(−1)]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    kind: WitnessKind,
    n_preps: usize,
    rows: BTreeMap<(usize, MeasurementLabel), Vec<f64>>,
}

impl ProbabilityTable {
    pub fn new(kind: WitnessKind, n_preps: usize) -> Result<Self> {
        if n_preps < 2 {
            return Err(Error::InvalidArgument(format!(
                "a table needs at least 2 preparations, got {n_preps}"
            )));
        }
        Ok(ProbabilityTable {
            kind,
            n_preps,
            rows: BTreeMap::new(),
        })
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    pub fn n_preps(&self) -> usize {
        self.n_preps
    }

    /// Number of outcomes per measurement.
    pub fn n_outcomes(&self) -> usize {
        match self.kind {
            WitnessKind::U => self.n_preps,
            WitnessKind::W => 2,
        }
    }

    /// All measurement labels of the scenario, pairs ordered by `(x, x')`.
    pub fn measurements(&self) -> Vec<MeasurementLabel> {
        match self.kind {
            WitnessKind::U => vec![MeasurementLabel::Readout],
            WitnessKind::W => (0..self.n_preps)
                .flat_map(|x| (0..x).map(move |xp| MeasurementLabel::Pair(x, xp)))
                .collect(),
        }
    }

    pub fn check_label(&self, label: MeasurementLabel) -> Result<()> {
        match (self.kind, label) {
            (WitnessKind::U, MeasurementLabel::Readout) => Ok(()),
            (WitnessKind::W, MeasurementLabel::Pair(x, xp)) => {
                if x >= self.n_preps || xp >= x {
                    Err(Error::InvalidArgument(format!(
                        "pair measurement ({}, {}) needs N >= x > x' >= 1 with N = {}",
                        x + 1,
                        xp + 1,
                        self.n_preps
                    )))
                } else {
                    Ok(())
                }
            }
            (WitnessKind::U, _) => Err(Error::WrongScenario {
                expected: "U",
                found: "W",
            }),
            (WitnessKind::W, _) => Err(Error::WrongScenario {
                expected: "W",
                found: "U",
            }),
        }
    }

    /// Records one outcome distribution, replacing any previous one.
    pub fn set(
        &mut self,
        prep: usize,
        label: MeasurementLabel,
        distribution: Vec<f64>,
        tolerance: f64,
    ) -> Result<()> {
        if prep >= self.n_preps {
            return Err(Error::InvalidArgument(format!(
                "preparation {} outside 1..={}",
                prep + 1,
                self.n_preps
            )));
        }
        self.check_label(label)?;
        if distribution.len() != self.n_outcomes() {
            return Err(Error::InconsistentTable(format!(
                "expected {} outcomes, got {}",
                self.n_outcomes(),
                distribution.len()
            )));
        }
        if let Some(p) = distribution
            .iter()
            .find(|p| !(p.is_finite() && (0.0..=1.0).contains(*p)))
        {
            return Err(Error::ProbabilityOutOfRange(*p));
        }
        let sum: f64 = distribution.iter().sum();
        if (sum - 1.0).abs() > tolerance {
            return Err(Error::InconsistentTable(format!(
                "distribution for preparation {} sums to {sum}",
                prep + 1
            )));
        }
        self.rows.insert((prep, label), distribution);
        Ok(())
    }

    pub fn get(&self, prep: usize, label: MeasurementLabel) -> Option<&[f64]> {
        self.rows.get(&(prep, label)).map(Vec::as_slice)
    }

    pub(crate) fn require(&self, prep: usize, label: MeasurementLabel) -> Result<&[f64]> {
        self.get(prep, label).ok_or_else(|| {
            let what = match label {
                MeasurementLabel::Readout => "readout".to_string(),
                MeasurementLabel::Pair(x, xp) => format!("({},{})", x + 1, xp + 1),
            };
            Error::MissingEntry(format!("preparation {}, measurement {what}", prep + 1))
        })
    }

    /// `(prep, measurement, distribution)` in ascending order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, MeasurementLabel, &[f64])> {
        self.rows.iter().map(|(&(p, m), d)| (p, m, d.as_slice()))
    }

    /// Applies `f` to every probability.
    pub fn map_probabilities(&self, f: impl Fn(f64) -> f64) -> ProbabilityTable {
        let rows = self
            .rows
            .iter()
            .map(|(k, d)| (*k, d.iter().map(|&p| f(p)).collect()))
            .collect();
        ProbabilityTable {
            kind: self.kind,
            n_preps: self.n_preps,
            rows,
        }
    }
}
