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

//! Qubit state space built from magnet directions.
//!
//! A Stern-Gerlach magnet oriented along `r̂ = (sinθ cosφ, sinθ sinφ, cosθ)`
//! with its `+` beam selected prepares
//! `cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`; the `−` beam prepares the orthogonal
//! state, which sits at the antipode `−r̂` of the Bloch sphere. Density
//! matrices take the form `½(𝟙 + r̂·σ)` and every probability is a trace
//! `Tr(ρ M)` against a projector.
//!
//! Conventions:
//! * `θ ∈ [0, π]`, `φ ∈ [0, 2π)`; at the poles `φ` is set to 0.
//! * Pure states carry a canonical global phase: `amp0` is real and
//!   non-negative, and if `amp0 = 0` then `amp1` is real and positive.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, I, ONE, ZERO};
use crate::tol;

/// A unit vector in physical space, labelling a magnet orientation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    /// `ê₃`, the `z` axis.
    pub const Z: Direction = Direction {
        theta: 0.0,
        phi: 0.0,
    };
    /// `ê₁`, the `x` axis.
    pub const X: Direction = Direction {
        theta: PI / 2.0,
        phi: 0.0,
    };
    /// `ê₂`, the `y` axis.
    pub const Y: Direction = Direction {
        theta: PI / 2.0,
        phi: PI / 2.0,
    };

    /// Builds a direction from polar and azimuthal angles in radians.
    ///
    /// `theta` must lie in `[0, π]`; `phi` may be any finite angle and is
    /// reduced to `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidDirection(format!(
                "angles must be finite (theta = {theta}, phi = {phi})"
            )));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::InvalidDirection(format!(
                "theta = {theta} outside [0, pi]"
            )));
        }
        Ok(Self::canonical(theta, phi))
    }

    fn canonical(theta: f64, phi: f64) -> Self {
        let phi = if theta == 0.0 || theta == PI {
            0.0
        } else {
            let p = phi.rem_euclid(TAU);
            if p >= TAU {
                0.0
            } else {
                p
            }
        };
        Direction { theta, phi }
    }

    /// Builds a direction from any non-zero Cartesian vector.
    pub fn from_cartesian(v: [f64; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidDirection(format!(
                "cannot normalize vector {v:?}"
            )));
        }
        let (x, y, z) = (v[0] / norm, v[1] / norm, v[2] / norm);
        let theta = x.hypot(y).atan2(z);
        let phi = if x == 0.0 && y == 0.0 {
            0.0
        } else {
            y.atan2(x)
        };
        Ok(Self::canonical(theta, phi))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `(r₁, r₂, r₃)`.
    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        let (a, b) = (self.cartesian(), other.cartesian());
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    }

    /// Angle between the two directions, in `[0, π]`.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        let (a, b) = (self.cartesian(), other.cartesian());
        let cross = [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ];
        let sin = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
        sin.atan2(self.dot(other))
    }

    /// Unit tangent `∂r̂/∂θ`: perpendicular to `r̂` and well defined at the
    /// poles.
    pub fn polar_tangent(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [ct * cp, ct * sp, -st]
    }

    /// Rotates the direction by `angle` inside the plane spanned by itself
    /// and [`Direction::polar_tangent`].
    pub fn rotated_polar(&self, angle: f64) -> Direction {
        let r = self.cartesian();
        let t = self.polar_tangent();
        let (s, c) = angle.sin_cos();
        let v = [
            c * r[0] + s * t[0],
            c * r[1] + s * t[1],
            c * r[2] + s * t[2],
        ];
        Direction::from_cartesian(v).expect("rotation of a unit vector is a unit vector")
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(theta={}, phi={})", self.theta, self.phi)
    }
}

/// Which of the two split beams a stage transmits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Port {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Port {
    pub fn sign(self) -> f64 {
        match self {
            Port::Plus => 1.0,
            Port::Minus => -1.0,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Port> {
        match sign {
            1 => Ok(Port::Plus),
            -1 => Ok(Port::Minus),
            other => Err(Error::InvalidArgument(format!(
                "port sign must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn opposite(self) -> Port {
        match self {
            Port::Plus => Port::Minus,
            Port::Minus => Port::Plus,
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Port::Plus => "+",
            Port::Minus => "-",
        })
    }
}

/// A normalized qubit `amp0|0⟩ + amp1|1⟩` in canonical phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState {
    amp0: Complex64,
    amp1: Complex64,
}

impl PureState {
    /// Accepts amplitudes whose squared norm is within `tol::VALIDITY` of 1.
    pub fn new(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm_sq = amp0.norm_sqr() + amp1.norm_sqr();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > tol::VALIDITY {
            return Err(Error::NotNormalized { norm_sq });
        }
        Self::normalized(amp0, amp1)
    }

    /// Normalizes any non-zero pair of amplitudes.
    pub fn normalized(amp0: Complex64, amp1: Complex64) -> Result<Self> {
        let norm = (amp0.norm_sqr() + amp1.norm_sqr()).sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(Self::canonicalize(amp0 / norm, amp1 / norm))
    }

    fn canonicalize(amp0: Complex64, amp1: Complex64) -> Self {
        let r0 = amp0.norm();
        if r0 > 0.0 {
            let phase = amp0.conj() / r0;
            PureState {
                amp0: Complex64::new(r0, 0.0),
                amp1: amp1 * phase,
            }
        } else {
            PureState {
                amp0: ZERO,
                amp1: Complex64::new(amp1.norm(), 0.0),
            }
        }
    }

    pub fn zero() -> Self {
        PureState {
            amp0: ONE,
            amp1: ZERO,
        }
    }

    pub fn one() -> Self {
        PureState {
            amp0: ZERO,
            amp1: ONE,
        }
    }

    pub fn amp0(&self) -> Complex64 {
        self.amp0
    }

    pub fn amp1(&self) -> Complex64 {
        self.amp1
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.amp0, self.amp1]
    }

    /// The projector `|ψ⟩⟨ψ|`.
    pub fn projector(&self) -> Mat2 {
        Mat2::outer(self.amplitudes(), self.amplitudes())
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(self.projector())
    }
}

/// A 2x2 Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Mat2);

impl DensityMatrix {
    pub fn new(m: Mat2) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if !defect.is_finite() || defect > tol::EXACT {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {defect:e})"
            )));
        }
        let trace = m.trace().re;
        if (trace - 1.0).abs() > tol::EXACT {
            return Err(Error::InvalidDensity(format!("trace is {trace}, not 1")));
        }
        let ev = m.hermitian_eigenvalues();
        if ev[0] < -tol::VALIDITY {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {}",
                ev[0]
            )));
        }
        Ok(DensityMatrix(m))
    }

    /// `½(𝟙 + r·σ)` for a Bloch vector with `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if !norm.is_finite() || norm > 1.0 + tol::VALIDITY {
            return Err(Error::InvalidDensity(format!(
                "Bloch vector norm {norm} exceeds 1"
            )));
        }
        Ok(DensityMatrix(Mat2::from_pauli_components(
            0.5,
            [0.5 * r[0], 0.5 * r[1], 0.5 * r[2]],
        )))
    }

    /// `½𝟙`.
    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat2::IDENTITY.scale_real(0.5))
    }

    /// Uniform average of density matrices.
    pub fn average(states: &[DensityMatrix]) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidArgument(
                "cannot average an empty list of states".into(),
            ));
        }
        let sum = states.iter().fold(Mat2::ZERO, |acc, s| acc + s.0);
        Ok(DensityMatrix(sum.scale_real(1.0 / states.len() as f64)))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    pub fn is_pure(&self) -> bool {
        (self.purity() - 1.0).abs() <= tol::VALIDITY
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.0.hermitian_eigenvalues()
    }

    /// `rᵢ = Tr(ρ σᵢ)`.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let p = &PAULI;
        [
            (self.0 * p.sigma_x).trace().re,
            (self.0 * p.sigma_y).trace().re,
            (self.0 * p.sigma_z).trace().re,
        ]
    }
}

/// A two-outcome projective measurement `{M₊, M₋}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    plus: Mat2,
    minus: Mat2,
}

impl Measurement {
    pub fn new(plus: Mat2, minus: Mat2) -> Result<Self> {
        let checks = [
            (
                "M+ + M- != identity",
                (plus + minus).distance(&Mat2::IDENTITY),
            ),
            ("M+ is not idempotent", (plus * plus).distance(&plus)),
            ("M- is not idempotent", (minus * minus).distance(&minus)),
            ("M+ M- != 0", (plus * minus).max_abs()),
            ("M+ is not Hermitian", plus.hermiticity_defect()),
        ];
        for (what, dev) in checks {
            if !dev.is_finite() || dev > tol::EXACT {
                return Err(Error::InvalidProjector(format!(
                    "{what} (deviation {dev:e})"
                )));
            }
        }
        Ok(Measurement { plus, minus })
    }

    /// Completes a projector `M₊` with `M₋ = 𝟙 − M₊`.
    pub fn from_plus_projector(plus: Mat2) -> Result<Self> {
        Self::new(plus, Mat2::IDENTITY - plus)
    }

    pub fn plus(&self) -> &Mat2 {
        &self.plus
    }

    pub fn minus(&self) -> &Mat2 {
        &self.minus
    }

    pub fn effect(&self, port: Port) -> &Mat2 {
        match port {
            Port::Plus => &self.plus,
            Port::Minus => &self.minus,
        }
    }
}

/// The Pauli matrices in the computational basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliSet {
    pub sigma_x: Mat2,
    pub sigma_y: Mat2,
    pub sigma_z: Mat2,
}

pub const PAULI: PauliSet = PauliSet {
    sigma_x: Mat2::new(ZERO, ONE, ONE, ZERO),
    sigma_y: Mat2::new(ZERO, Complex64::new(0.0, -1.0), I, ZERO),
    sigma_z: Mat2::new(ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0)),
};

impl PauliSet {
    pub fn all(&self) -> [Mat2; 3] {
        [self.sigma_x, self.sigma_y, self.sigma_z]
    }
}

/// State transmitted by the `port` beam of a magnet along `dir`.
pub fn state_from_direction(dir: Direction, port: Port) -> PureState {
    let (s, c) = (dir.theta / 2.0).sin_cos();
    let phase = Complex64::from_polar(1.0, dir.phi);
    let (amp0, amp1) = match port {
        Port::Plus => (Complex64::new(c, 0.0), phase * s),
        Port::Minus => (Complex64::new(s, 0.0), -phase * c),
    };
    PureState::canonicalize(amp0, amp1)
}

pub fn bloch_vector(rho: &DensityMatrix) -> [f64; 3] {
    rho.bloch_vector()
}

/// `½(𝟙 + s r̂·σ)` with `s` the port sign.
pub fn density_from_direction(dir: Direction, port: Port) -> DensityMatrix {
    let r = dir.cartesian();
    let h = 0.5 * port.sign();
    DensityMatrix(Mat2::from_pauli_components(
        0.5,
        [h * r[0], h * r[1], h * r[2]],
    ))
}

/// The Stern-Gerlach test along `dir`: projectors onto its two beams.
pub fn measurement_from_direction(dir: Direction) -> Measurement {
    Measurement {
        plus: state_from_direction(dir, Port::Plus).projector(),
        minus: state_from_direction(dir, Port::Minus).projector(),
    }
}

/// Born rule `Tr(ρ·effect)`.
///
/// Values within `tol::EXACT` outside `[0, 1]` are clamped; larger
/// excursions are reported as errors.
pub fn born_probability(rho: &DensityMatrix, effect: &Mat2) -> Result<f64> {
    let deviation = effect.hermiticity_defect();
    if !deviation.is_finite() || deviation > tol::VALIDITY {
        return Err(Error::NotHermitian { deviation });
    }
    clamp_probability((rho.0 * *effect).trace().re)
}

pub(crate) fn clamp_probability(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else if (-tol::EXACT..0.0).contains(&p) {
        Ok(0.0)
    } else if p > 1.0 && p <= 1.0 + tol::EXACT {
        Ok(1.0)
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner_product(a: &PureState, b: &PureState) -> Complex64 {
    a.amp0.conj() * b.amp0 + a.amp1.conj() * b.amp1
}

/// `r̂⁻(θ, φ) = r̂⁺(π − θ, φ + π)`.
pub fn antipode(dir: Direction) -> Direction {
    Direction::canonical(PI - dir.theta, dir.phi + PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn direction_rejects_theta_out_of_range() {
        assert!(Direction::new(7.0, 0.0).is_err());
        assert!(Direction::new(-0.1, 0.0).is_err());
        assert!(Direction::new(f64::NAN, 0.0).is_err());
        assert!(Direction::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn direction_canonicalizes_phi() {
        let d = Direction::new(1.0, -PI / 2.0).unwrap();
        assert!((d.phi() - 1.5 * PI).abs() < 1e-15);
        assert_eq!(Direction::new(0.0, 2.0).unwrap().phi(), 0.0);
        assert_eq!(Direction::new(PI, 2.0).unwrap().phi(), 0.0);
    }

    #[test]
    fn cartesian_round_trip() {
        let d = Direction::new(0.7, 4.1).unwrap();
        let back = Direction::from_cartesian(d.cartesian()).unwrap();
        assert!((back.theta() - d.theta()).abs() < 1e-12);
        assert!((back.phi() - d.phi()).abs() < 1e-12);
        assert!(Direction::from_cartesian([0.0; 3]).is_err());
    }

    #[test]
    fn basis_states_from_directions() {
        let s = state_from_direction(Direction::Z, Port::Plus);
        assert!(close(s.amp0(), ONE, 1e-15) && close(s.amp1(), ZERO, 1e-15));

        let s = state_from_direction(Direction::new(PI, 0.0).unwrap(), Port::Plus);
        assert!(close(s.amp0(), ZERO, 1e-12) && close(s.amp1(), ONE, 1e-12));

        let s = state_from_direction(Direction::X, Port::Plus);
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(close(s.amp0(), h, 1e-15) && close(s.amp1(), h, 1e-15));

        let s = state_from_direction(Direction::Y, Port::Plus);
        assert!(close(s.amp0(), h, 1e-15));
        assert!(close(s.amp1(), Complex64::new(0.0, FRAC_1_SQRT_2), 1e-15));
    }

    #[test]
    fn minus_port_of_z_is_one() {
        let s = state_from_direction(Direction::Z, Port::Minus);
        assert_eq!(s, PureState::one());
    }

    #[test]
    fn state_rejects_unnormalized() {
        assert!(matches!(
            PureState::new(ONE, ONE),
            Err(Error::NotNormalized { .. })
        ));
        assert_eq!(PureState::normalized(ZERO, ZERO), Err(Error::ZeroVector));
    }

    #[test]
    fn bloch_vector_of_basis_and_mixed() {
        let r = bloch_vector(&PureState::zero().density());
        assert_eq!(r, [0.0, 0.0, 1.0]);
        assert_eq!(bloch_vector(&DensityMatrix::maximally_mixed()), [0.0; 3]);
    }

    #[test]
    fn density_of_x_direction() {
        let rho = density_from_direction(Direction::X, Port::Plus);
        let expected = Mat2::from_real(0.5, 0.5, 0.5, 0.5);
        assert!(rho.matrix().distance(&expected) < 1e-15);
        let rho = density_from_direction(Direction::Z, Port::Plus);
        assert!(rho.matrix().distance(&Mat2::from_real(1.0, 0.0, 0.0, 0.0)) < 1e-15);
    }

    #[test]
    fn measurement_of_axes() {
        let m = measurement_from_direction(Direction::Z);
        assert!(m.plus().distance(&Mat2::from_real(1.0, 0.0, 0.0, 0.0)) < 1e-15);
        assert!(m.minus().distance(&Mat2::from_real(0.0, 0.0, 0.0, 1.0)) < 1e-15);
        let m = measurement_from_direction(Direction::X);
        assert!(m.plus().distance(&Mat2::from_real(0.5, 0.5, 0.5, 0.5)) < 1e-15);
        assert!(m.minus().distance(&Mat2::from_real(0.5, -0.5, -0.5, 0.5)) < 1e-15);
    }

    #[test]
    fn measurement_rejects_non_projectors() {
        let half = Mat2::IDENTITY.scale_real(0.5);
        assert!(Measurement::new(half, half).is_err());
    }

    #[test]
    fn born_rule_basics() {
        let zero = PureState::zero().density();
        let p = born_probability(&zero, &PureState::zero().projector()).unwrap();
        assert_eq!(p, 1.0);
        let p = born_probability(&zero, &PureState::one().projector()).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn born_rejects_non_hermitian_effect() {
        let bad = Mat2::from_real(1.0, 1.0, 0.0, 0.0);
        let rho = DensityMatrix::maximally_mixed();
        assert!(matches!(
            born_probability(&rho, &bad),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn born_rejects_large_excursion() {
        let rho = PureState::zero().density();
        let effect = Mat2::IDENTITY.scale_real(2.0);
        assert!(matches!(
            born_probability(&rho, &effect),
            Err(Error::ProbabilityOutOfRange(_))
        ));
    }

    #[test]
    fn clamping_near_boundary() {
        assert_eq!(clamp_probability(1.0 + 1e-13).unwrap(), 1.0);
        assert_eq!(clamp_probability(-1e-13).unwrap(), 0.0);
        assert!(clamp_probability(1.0 + 1e-9).is_err());
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_product(&PureState::zero(), &PureState::one()), ZERO);
        let plus = state_from_direction(Direction::X, Port::Plus);
        let minus = state_from_direction(Direction::X, Port::Minus);
        assert!(inner_product(&plus, &minus).norm() < 1e-15);
        assert!(close(inner_product(&plus, &plus), ONE, 1e-15));
    }

    #[test]
    fn antipodes() {
        let a = antipode(Direction::Z);
        assert_eq!(a.cartesian()[2], -1.0);
        let a = antipode(Direction::X);
        assert!((a.theta() - PI / 2.0).abs() < 1e-15);
        assert!((a.phi() - PI).abs() < 1e-15);
    }

    #[test]
    fn pauli_properties() {
        for s in PAULI.all() {
            assert!(s.is_hermitian(0.0));
            assert_eq!(s.trace(), ZERO);
            assert_eq!(s * s, Mat2::IDENTITY);
        }
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(Mat2::from_real(1.0, 0.0, 0.0, 1.0)).is_err());
        assert!(DensityMatrix::new(Mat2::from_real(1.5, 0.0, 0.0, -0.5)).is_err());
        assert!(DensityMatrix::new(Mat2::from_real(0.5, 0.1, 0.0, 0.5)).is_err());
        assert!(DensityMatrix::from_bloch([1.0, 1.0, 0.0]).is_err());
        assert!(DensityMatrix::new(Mat2::from_real(0.5, 0.5, 0.5, 0.5)).is_ok());
    }

    #[test]
    fn rotated_polar_at_pole() {
        let u = Direction::Z.rotated_polar(PI / 2.0);
        let c = u.cartesian();
        assert!((c[0] - 1.0).abs() < 1e-15 && c[2].abs() < 1e-15);
        assert!((Direction::Z.angle_to(&Direction::Z.rotated_polar(0.3)) - 0.3).abs() < 1e-15);
    }
}
