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

//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("state is not normalized (|amp0|^2 + |amp1|^2 = {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid projector: {0}")]
    InvalidProjector(String),

    #[error("probability {0} lies outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("invalid experiment plan: {0}")]
    InvalidPlan(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("expected a {expected} table, got a {found} table")]
    WrongScenario {
        expected: &'static str,
        found: &'static str,
    },

    #[error("probability table is missing entry: {0}")]
    MissingEntry(String),

    #[error("inconsistent probability table: {0}")]
    InconsistentTable(String),

    #[error("states are identical; discrimination is undefined")]
    IdenticalStates,

    #[error("no tight dimension: no integer root in [1, {n}]")]
    NoTightDimension { n: u32 },

    #[error("point at infinity: the h chart requires a != 0")]
    PointAtInfinity,

    #[error("the north pole (0, 0, 1) has no stereographic image")]
    NorthPole,

    #[error("line {line}: `{key}`: {message}")]
    Parse {
        line: usize,
        key: String,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
