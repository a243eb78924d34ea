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

//! The Hopf map `S³ → S²` and its charts.
//!
//! A normalized pair `(a, b) ∈ ℂ²` is a point of `S³`. Multiplying by a
//! phase does not change any probability, and the classes of phase-equivalent
//! pairs are labelled by `h(a, b) = b/a`. Equatorial stereographic
//! projection identifies `ℂ` with the sphere minus its north pole, and the
//! composition gives
//!
//! ```text
//! π(a, b) = (2 Re(b a*), 2 Im(b a*), |b|² − |a|²),
//! ```
//!
//! defined everywhere on `S³`. The fibre over each point is a circle of
//! phases.
//!
//! In this chart `|0⟩ = (1, 0)` lands on the south pole `(0, 0, −1)`, so
//! `π(ψ)` equals the Bloch vector of `ψ` with its third coordinate negated.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol;

/// A point `(a, b)` of the unit sphere `S³ ⊂ ℂ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorPair {
    a: Complex64,
    b: Complex64,
}

impl SpinorPair {
    /// Requires `|a|² + |b|² = 1` within `tol::EXACT`.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        let norm_sq = a.norm_sqr() + b.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > tol::EXACT {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(SpinorPair { a, b })
    }

    /// Rescales any non-zero pair onto `S³`.
    pub fn normalized(a: Complex64, b: Complex64) -> Result<Self> {
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(SpinorPair {
            a: a / norm,
            b: b / norm,
        })
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr()).sqrt()
    }

    /// `e^{iφ}(a, b)`.
    pub fn with_phase(&self, phi: f64) -> SpinorPair {
        let u = Complex64::from_polar(1.0, phi);
        SpinorPair {
            a: u * self.a,
            b: u * self.b,
        }
    }
}

/// A point of the unit sphere `S² ⊂ ℝ³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl SpherePoint {
    pub const NORTH_POLE: SpherePoint = SpherePoint {
        x1: 0.0,
        x2: 0.0,
        x3: 1.0,
    };
    pub const SOUTH_POLE: SpherePoint = SpherePoint {
        x1: 0.0,
        x2: 0.0,
        x3: -1.0,
    };

    /// Requires unit norm within `tol::EXACT`.
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let p = SpherePoint { x1, x2, x3 };
        let n = p.norm();
        if !n.is_finite() || (n - 1.0).abs() > tol::EXACT {
            return Err(Error::InvalidArgument(format!(
                "({x1}, {x2}, {x3}) is not on the unit sphere (norm {n})"
            )));
        }
        Ok(p)
    }

    pub fn normalized(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let n = (x1 * x1 + x2 * x2 + x3 * x3).sqrt();
        if !n.is_finite() || n == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(SpherePoint {
            x1: x1 / n,
            x2: x2 / n,
            x3: x3 / n,
        })
    }

    pub fn norm(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn distance(&self, other: &SpherePoint) -> f64 {
        let d = [self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
    }
}

/// A point of the plane `Π_{x₁x₂}`, read as a complex number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub z: Complex64,
}

impl PlanePoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidArgument(format!("{z} is not finite")));
        }
        Ok(PlanePoint { z })
    }
}

/// `h(a, b) = b / a`; the same for every phase of `(a, b)`.
pub fn h_map(p: &SpinorPair) -> Result<PlanePoint> {
    if p.a.norm() <= tol::EXACT {
        return Err(Error::PointAtInfinity);
    }
    PlanePoint::new(p.b / p.a)
}

/// Projection from the north pole onto the equatorial plane.
pub fn stereographic(p: &SpherePoint) -> Result<PlanePoint> {
    let rho_xy = p.x1.hypot(p.x2);
    if rho_xy <= tol::EXACT && p.x3 > 0.0 {
        return Err(Error::NorthPole);
    }
    if rho_xy == 0.0 {
        return PlanePoint::new(Complex64::new(0.0, 0.0));
    }
    // √(1 − x₃²) is taken as √(x₁² + x₂²), which is exact on S² and
    // avoids cancellation near the poles.
    let radius = rho_xy / (1.0 - p.x3);
    PlanePoint::new(Complex64::from_polar(radius, p.x2.atan2(p.x1)))
}

/// `z = X + iY ↦ (2X, 2Y, X² + Y² − 1) / (X² + Y² + 1)`.
pub fn stereographic_inverse(z: &PlanePoint) -> SpherePoint {
    let (x, y) = (z.z.re, z.z.im);
    let r2 = x * x + y * y;
    if !r2.is_finite() {
        return SpherePoint::NORTH_POLE;
    }
    let d = r2 + 1.0;
    SpherePoint {
        x1: 2.0 * x / d,
        x2: 2.0 * y / d,
        x3: (r2 - 1.0) / d,
    }
}

/// `π(a, b) = (2 Re(b a*), 2 Im(b a*), |b|² − |a|²)`.
pub fn hopf_projection(p: &SpinorPair) -> SpherePoint {
    let w = p.b * p.a.conj();
    SpherePoint {
        x1: 2.0 * w.re,
        x2: 2.0 * w.im,
        x3: p.b.norm_sqr() - p.a.norm_sqr(),
    }
}

/// Canonical preimage of `target`: `a = √((1 − x₃)/2)` real and positive,
/// `b = (x₁ + i x₂)/(2a)`; the north pole maps to `(0, 1)`.
pub fn canonical_preimage(target: &SpherePoint) -> SpinorPair {
    let a = (0.5 * (1.0 - target.x3)).max(0.0).sqrt();
    if a <= tol::EXACT {
        return SpinorPair {
            a: Complex64::new(0.0, 0.0),
            b: Complex64::new(1.0, 0.0),
        };
    }
    let b = Complex64::new(target.x1, target.x2) / (2.0 * a);
    // Renormalize so that slightly off-sphere targets still give S³ points.
    SpinorPair::normalized(Complex64::new(a, 0.0), b).expect("a > 0")
}

/// `n_phases` points of the fibre over `target`, at phases `2πk/n`.
pub fn fiber_sample(target: &SpherePoint, n_phases: usize) -> Result<Vec<SpinorPair>> {
    if n_phases == 0 {
        return Err(Error::InvalidArgument("n_phases must be at least 1".into()));
    }
    let base = canonical_preimage(target);
    Ok((0..n_phases)
        .map(|k| base.with_phase(TAU * k as f64 / n_phases as f64))
        .collect())
}
