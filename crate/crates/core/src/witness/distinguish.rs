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

//! Distinguishability of qubit states: trace distance, fidelity, the
//! optimal (Helstrom) two-outcome measurement and the average state.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::qubit::{inner_product, DensityMatrix, Direction, Measurement, PureState};
use crate::tol;

/// Tolerance used when checking the Fuchs-van de Graaf inequalities.
pub const FVDG_TOLERANCE: f64 = 1e-9;

/// `max_M Tr[(ρ−σ)M]`: the sum of the positive eigenvalues of `ρ − σ`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let delta = *rho.matrix() - *sigma.matrix();
    let positive: f64 = delta
        .hermitian_eigenvalues()
        .iter()
        .filter(|&&l| l > 0.0)
        .sum();
    positive.clamp(0.0, 1.0)
}

/// `Tr√(√ρ σ √ρ)`, evaluated through the qubit identity
/// `F² = Tr(ρσ) + 2√(det ρ · det σ)`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    let overlap = (*rho.matrix() * *sigma.matrix()).trace().re;
    let dets = rho.matrix().det().re.max(0.0) * sigma.matrix().det().re.max(0.0);
    (overlap + 2.0 * dets.sqrt()).max(0.0).sqrt().min(1.0)
}

/// Result of checking `1 − D ≤ F ≤ √(1 − D²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FvdgCheck {
    pub holds: bool,
    /// `F − (1 − D)`.
    pub slack_low: f64,
    /// `√(1 − D²) − F`.
    pub slack_high: f64,
}

pub fn fuchs_van_de_graaf_check(rho: &DensityMatrix, sigma: &DensityMatrix) -> FvdgCheck {
    let d = trace_distance(rho, sigma);
    let f = fidelity(rho, sigma);
    let slack_low = f - (1.0 - d);
    let slack_high = (1.0 - d * d).max(0.0).sqrt() - f;
    FvdgCheck {
        holds: slack_low >= -FVDG_TOLERANCE && slack_high >= -FVDG_TOLERANCE,
        slack_low,
        slack_high,
    }
}

fn difference_axis(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<[f64; 3]> {
    let delta = *rho.matrix() - *sigma.matrix();
    if delta.max_abs() <= tol::EXACT {
        return Err(Error::IdenticalStates);
    }
    let (_, b) = delta.pauli_components();
    Ok(b)
}

/// Axis of the Stern-Gerlach test whose `+` beam is the Helstrom effect.
pub fn helstrom_direction(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Direction> {
    Direction::from_cartesian(difference_axis(rho, sigma)?)
}

/// Measurement whose `M₊` projects onto the non-negative eigenspace of
/// `ρ − σ`, so that `Tr[(ρ−σ)M₊] = D(ρ, σ)`.
pub fn helstrom_measurement(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Measurement> {
    let b = difference_axis(rho, sigma)?;
    let norm = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
    let plus = Mat2::from_pauli_components(
        0.5,
        [0.5 * b[0] / norm, 0.5 * b[1] / norm, 0.5 * b[2] / norm],
    );
    Measurement::from_plus_projector(plus)
}

/// `Ω = (1/N) Σ |Ψ_x⟩⟨Ψ_x|` and its purity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AverageState {
    pub omega: DensityMatrix,
    pub purity: f64,
}

pub fn average_state_purity(states: &[PureState]) -> Result<AverageState> {
    let densities: Vec<DensityMatrix> = states.iter().map(PureState::density).collect();
    let omega = DensityMatrix::average(&densities)?;
    Ok(AverageState {
        omega,
        purity: omega.purity(),
    })
}

/// `Σ_{x>x'} |⟨Ψ_x|Ψ_x'⟩|²`.
pub fn pairwise_overlap_sum(states: &[PureState]) -> f64 {
    states
        .iter()
        .enumerate()
        .flat_map(|(x, a)| {
            states[..x]
                .iter()
                .map(move |b| inner_product(a, b).norm_sqr())
        })
        .sum()
}
