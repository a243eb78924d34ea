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

//! Dense complex 2x2 matrices.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// A complex 2x2 matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO, ZERO], [ZERO, ZERO]]);
    pub const IDENTITY: Mat2 = Mat2([[ONE, ZERO], [ZERO, ONE]]);

    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Outer product |u⟩⟨v|.
    pub fn outer(u: [Complex64; 2], v: [Complex64; 2]) -> Self {
        Mat2([
            [u[0] * v[0].conj(), u[0] * v[1].conj()],
            [u[1] * v[0].conj(), u[1] * v[1].conj()],
        ])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry of |A - B|.
    pub fn distance(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest entry of |A - A†|.
    pub fn hermiticity_defect(&self) -> f64 {
        self.distance(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Eigenvalues of the Hermitian part, ascending.
    ///
    /// For a Hermitian matrix `a·I + b·σ` they are `a ± |b|`, which avoids
    /// the cancellation of the textbook quadratic formula.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let (a, b) = self.pauli_components();
        let r = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
        [a - r, a + r]
    }

    /// Real coefficients `(a, b)` with `self = a·I + b·σ` for the Hermitian
    /// part of the matrix.
    pub fn pauli_components(&self) -> (f64, [f64; 3]) {
        let m = &self.0;
        let a = 0.5 * (m[0][0].re + m[1][1].re);
        let off = 0.5 * (m[1][0] + m[0][1].conj());
        let bz = 0.5 * (m[0][0].re - m[1][1].re);
        (a, [off.re, off.im, bz])
    }

    /// Builds `a·I + b·σ`.
    pub fn from_pauli_components(a: f64, b: [f64; 3]) -> Self {
        Mat2::new(
            Complex64::new(a + b[2], 0.0),
            Complex64::new(b[0], -b[1]),
            Complex64::new(b[0], b[1]),
            Complex64::new(a - b[2], 0.0),
        )
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale_real(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_neutral() {
        let m = Mat2::new(ONE, I, -I, ONE.scale(2.0));
        assert_eq!(m * Mat2::IDENTITY, m);
        assert_eq!(Mat2::IDENTITY * m, m);
    }

    #[test]
    fn pauli_components_round_trip() {
        let b = [0.3, -0.2, 0.1];
        let m = Mat2::from_pauli_components(0.5, b);
        let (a2, b2) = m.pauli_components();
        assert!((a2 - 0.5).abs() < 1e-15);
        for k in 0..3 {
            assert!((b[k] - b2[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let ev = Mat2::from_real(0.25, 0.0, 0.0, 0.75).hermitian_eigenvalues();
        assert!((ev[0] - 0.25).abs() < 1e-15);
        assert!((ev[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn det_and_trace() {
        let m = Mat2::from_real(1.0, 2.0, 3.0, 4.0);
        assert_eq!(m.det(), Complex64::new(-2.0, 0.0));
        assert_eq!(m.trace(), Complex64::new(5.0, 0.0));
    }
}
