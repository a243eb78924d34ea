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

//! Dimension witnesses for prepare-and-measure boxes.
//!
//! Two witnesses are computed from a [`ProbabilityTable`]:
//!
//! * `U_N = (1/N) Σ_x Pr(b = x | x)` with bound `d/N`;
//! * `W_N = Σ_{x>x'} |Pr(x, (x,x')) − Pr(x', (x,x'))|²` with bound
//!   `(N²/2)(1 − 1/min{d, N})`.
//!
//! The smallest `d` whose bound accommodates the observed value is the
//! minimal Hilbert-space dimension compatible with the data.
//!
//! `W_N` is sometimes also quoted against `d/N`. For `N = 2` the two bounds
//! agree; for larger `N` optimal qubit preparations exceed `d/N`, so only the
//! `(N²/2)(1 − 1/min{d, N})` bound is used here. The closed form for
//! Stern-Gerlach preparations, [`w_from_angles`], sums over pairs `x > x'`
//! like `W_N` itself.

mod distinguish;
mod generate;
mod table;

use std::fmt;

use serde::{Serialize, Serializer};

pub use distinguish::{
    average_state_purity, fidelity, fuchs_van_de_graaf_check, helstrom_direction,
    helstrom_measurement, pairwise_overlap_sum, trace_distance, AverageState, FvdgCheck,
    FVDG_TOLERANCE,
};
pub use generate::{analytic_table, sampled_table, Preparation};
pub use table::{MeasurementLabel, ProbabilityTable, WitnessKind, DISTRIBUTION_TOLERANCE};

use crate::error::{Error, Result};

/// Tolerance for comparing exact (analytic) witness values to bounds.
pub const ANALYTIC_TOLERANCE: f64 = 1e-9;

/// `U_N`, the average probability of reading out the preparation label.
pub fn u_witness(table: &ProbabilityTable) -> Result<f64> {
    if table.kind() != WitnessKind::U {
        return Err(Error::WrongScenario {
            expected: "U",
            found: table.kind().name(),
        });
    }
    let n = table.n_preps();
    let mut sum = 0.0;
    for x in 0..n {
        sum += table.require(x, MeasurementLabel::Readout)?[x];
    }
    Ok(sum / n as f64)
}

/// `d / N`.
pub fn u_bound(d: u32, n: u32) -> f64 {
    d as f64 / n as f64
}

/// `W_N` over every pair measurement `(x, x')`, `x > x'`.
pub fn w_witness(table: &ProbabilityTable) -> Result<f64> {
    if table.kind() != WitnessKind::W {
        return Err(Error::WrongScenario {
            expected: "W",
            found: table.kind().name(),
        });
    }
    let mut sum = 0.0;
    for label in table.measurements() {
        let MeasurementLabel::Pair(x, xp) = label else {
            unreachable!("W tables only hold pair measurements")
        };
        let a = table.require(x, label)?[0];
        let b = table.require(xp, label)?[0];
        sum += (a - b) * (a - b);
    }
    Ok(sum)
}

/// `(N²/2)(1 − 1/min{d, N})`.
pub fn w_bound(d: u32, n: u32) -> f64 {
    let m = d.min(n).max(1) as f64;
    let n = n as f64;
    0.5 * n * n * (1.0 - 1.0 / m)
}

pub fn bound(kind: WitnessKind, d: u32, n: u32) -> f64 {
    match kind {
        WitnessKind::U => u_bound(d, n),
        WitnessKind::W => w_bound(d, n),
    }
}

/// Integer `d ∈ [1, N]` with `d/N = (N²/2)(1 − 1/min{d, N})`.
///
/// With `d ≤ N` the equation is `2d² = N³(d − 1)`, which is solved exactly
/// in integers. Its two roots have product and sum `N³/2`, so at most one of
/// them can lie in `[1, N]`.
pub fn solve_dimension_tight(n: u32) -> Result<u32> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "N must be at least 2, got {n}"
        )));
    }
    let n3 = u128::from(n).pow(3);
    (1..=n)
        .find(|&d| {
            let d = u128::from(d);
            2 * d * d == n3 * (d - 1)
        })
        .ok_or(Error::NoTightDimension { n })
}

/// `¼ Σ_{x>x'} (cos θ_x − cos θ_x')²`: `W_N` for magnets tilted by `θ_x`
/// from a common measuring axis.
pub fn w_from_angles(thetas: &[f64]) -> Result<f64> {
    if thetas.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least two angles, got {}",
            thetas.len()
        )));
    }
    let cos: Vec<f64> = thetas.iter().map(|t| t.cos()).collect();
    let sum: f64 = cos
        .iter()
        .enumerate()
        .flat_map(|(x, a)| cos[..x].iter().map(move |b| (a - b) * (a - b)))
        .sum();
    Ok(0.25 * sum)
}

/// Minimal dimension compatible with a witness value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinDimension {
    Bounded(u32),
    /// The value exceeds the bound for every `d ≤ N`.
    Unbounded,
}

impl fmt::Display for MinDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinDimension::Bounded(d) => write!(f, "{d}"),
            MinDimension::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl Serialize for MinDimension {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MinDimension::Bounded(d) => s.serialize_u32(*d),
            MinDimension::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

/// Smallest `d ≥ 1` with `value ≤ bound(d, N) + tolerance`.
pub fn infer_min_dimension(
    value: f64,
    kind: WitnessKind,
    n: u32,
    tolerance: f64,
) -> Result<MinDimension> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "witness value must be finite and non-negative, got {value}"
        )));
    }
    if !tolerance.is_finite() || tolerance < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be finite and non-negative, got {tolerance}"
        )));
    }
    Ok((1..=n)
        .find(|&d| value <= bound(kind, d, n) + tolerance)
        .map_or(MinDimension::Unbounded, MinDimension::Bounded))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimensionBound {
    pub d: u32,
    pub bound: f64,
}

/// Witness value, the bounds for `d = 1..=N` and the inferred dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub witness_kind: WitnessKind,
    pub witness_value: f64,
    pub n_preps: u32,
    pub tolerance: f64,
    pub bound_per_d: Vec<DimensionBound>,
    pub inferred_min_d: MinDimension,
}

impl WitnessReport {
    pub fn analyze(table: &ProbabilityTable, tolerance: f64) -> Result<Self> {
        let kind = table.kind();
        let value = match kind {
            WitnessKind::U => u_witness(table)?,
            WitnessKind::W => w_witness(table)?,
        };
        let n = u32::try_from(table.n_preps())
            .map_err(|_| Error::InvalidArgument("too many preparations".into()))?;
        Ok(WitnessReport {
            witness_kind: kind,
            witness_value: value,
            n_preps: n,
            tolerance,
            bound_per_d: (1..=n)
                .map(|d| DimensionBound {
                    d,
                    bound: bound(kind, d, n),
                })
                .collect(),
            inferred_min_d: infer_min_dimension(value, kind, n, tolerance)?,
        })
    }
}
