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

//! A prepare-and-measure laboratory for spin-½ particles.
//!
//! * [`qubit`]: directions, pure states, density matrices, projective
//!   measurements and the Born rule.
//! * [`simulator`]: analytic and Monte Carlo Stern-Gerlach chains.
//! * [`witness`]: dimension witnesses, trace distance, fidelity and optimal
//!   discrimination.
//! * [`hopf`]: the Hopf map from normalized spinors to the sphere.
//! * [`io`]: plan files, CSV tables and JSON reports.
//!
//! ```
//! use sg_lab::qubit::{Direction, Port};
//! use sg_lab::simulator::{analytic_probability, simulate_chain, ExperimentPlan, SgStage, Source};
//!
//! let tilted = Direction::new(std::f64::consts::FRAC_PI_3, 0.0)?;
//! let p = analytic_probability(Direction::Z, Port::Plus, tilted, Port::Plus);
//! assert!((p - 0.75).abs() < 1e-12);
//!
//! let stages = vec![SgStage::new(Direction::Z, Port::Plus), SgStage::new(tilted, Port::Plus)];
//! let plan = ExperimentPlan::new(stages, 10_000, 1, Source::Unpolarized)?;
//! let counts = simulate_chain(&plan);
//! assert_eq!(counts.final_trials(), counts.per_stage_transmitted[0]);
//! # Ok::<(), sg_lab::Error>(())
//! ```

pub mod error;
pub mod hopf;
pub mod io;
pub mod linalg;
pub mod qubit;
pub mod simulator;
pub mod witness;

pub use error::{Error, Result};

/// Numerical tolerances used across the crate.
pub mod tol {
    /// Validity checks: positivity, normalization of user input, Hermiticity
    /// of effects.
    pub const VALIDITY: f64 = 1e-10;
    /// Exact 2x2 algebra and round trips.
    pub const EXACT: f64 = 1e-12;
}
