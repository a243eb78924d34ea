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

//! Randomized checks of the qubit layer against hand-written formulas.

use num_complex::Complex64;
use proptest::prelude::*;
use sg_lab::linalg::Mat2;
use sg_lab::qubit::*;

fn direction() -> impl Strategy<Value = Direction> {
    (0.0..=std::f64::consts::PI, 0.0..std::f64::consts::TAU)
        .prop_map(|(t, p)| Direction::new(t, p).unwrap())
}

fn port() -> impl Strategy<Value = Port> {
    prop_oneof![Just(Port::Plus), Just(Port::Minus)]
}

/// Spinor of the `+` beam written out by hand: (cos θ/2, e^{iφ} sin θ/2).
fn spinor(theta: f64, phi: f64) -> [Complex64; 2] {
    [
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ]
}

fn overlap_sq(u: [Complex64; 2], v: [Complex64; 2]) -> f64 {
    (u[0].conj() * v[0] + u[1].conj() * v[1]).norm_sqr()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn born_matches_overlap(r in direction(), u in direction()) {
        let rho = density_from_direction(r, Port::Plus);
        let m = measurement_from_direction(u);
        let p = born_probability(&rho, m.plus()).unwrap();
        let oracle = overlap_sq(spinor(u.theta(), u.phi()), spinor(r.theta(), r.phi()));
        prop_assert!((p - oracle).abs() < 1e-12);
        let dot: f64 = r.cartesian().iter().zip(u.cartesian()).map(|(a, b)| a * b).sum();
        prop_assert!((p - 0.5 * (1.0 + dot)).abs() < 1e-12);
    }

    #[test]
    fn ports_are_complementary(r in direction(), s in port(), u in direction()) {
        let rho = density_from_direction(r, s);
        let m = measurement_from_direction(u);
        let total = born_probability(&rho, m.plus()).unwrap()
            + born_probability(&rho, m.minus()).unwrap();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn antipode_is_orthogonal(r in direction()) {
        let a = state_from_direction(r, Port::Plus);
        let b = state_from_direction(antipode(r), Port::Plus);
        prop_assert!(inner_product(&a, &b).norm() < 1e-12);
        // The − beam of r is the + beam of its antipode, up to phase.
        let c = state_from_direction(r, Port::Minus);
        prop_assert!((inner_product(&b, &c).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bloch_inverts_density(r in direction(), s in port()) {
        let rho = density_from_direction(r, s);
        let v = bloch_vector(&rho);
        for (a, b) in v.iter().zip(r.cartesian()) {
            prop_assert!((a - s.sign() * b).abs() < 1e-12);
        }
        prop_assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn density_is_outer_product(r in direction(), s in port()) {
        let psi = state_from_direction(r, s);
        let [a, b] = psi.amplitudes();
        let outer = Mat2::new(a * a.conj(), a * b.conj(), b * a.conj(), b * b.conj());
        prop_assert!(density_from_direction(r, s).matrix().distance(&outer) < 1e-12);
    }

    #[test]
    fn global_phase_is_canonical(t in 0.0..std::f64::consts::PI, p in 0.0..std::f64::consts::TAU, g in -10.0..10.0f64) {
        let [a, b] = spinor(t, p);
        let u = Complex64::from_polar(1.0, g);
        let x = PureState::new(a, b).unwrap();
        let y = PureState::new(u * a, u * b).unwrap();
        prop_assert!((x.amp0() - y.amp0()).norm() < 1e-12);
        prop_assert!((x.amp1() - y.amp1()).norm() < 1e-12);
        prop_assert!(x.amp0().im == 0.0 && x.amp0().re >= 0.0);
    }

    #[test]
    fn polar_family(t in 0.0..std::f64::consts::PI, omega in 0.0..std::f64::consts::PI) {
        prop_assume!(t + omega <= std::f64::consts::PI);
        let rho = density_from_direction(Direction::new(t, 0.0).unwrap(), Port::Plus);
        let m = measurement_from_direction(Direction::new(t + omega, 0.0).unwrap());
        let plus = born_probability(&rho, m.plus()).unwrap();
        let minus = born_probability(&rho, m.minus()).unwrap();
        prop_assert!((plus - (omega / 2.0).cos().powi(2)).abs() < 1e-12);
        prop_assert!((minus - (omega / 2.0).sin().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn mixed_states_from_bloch(x in -1.0..1.0f64, y in -1.0..1.0f64, z in -1.0..1.0f64) {
        let n = (x * x + y * y + z * z).sqrt();
        prop_assume!(n <= 1.0);
        let rho = DensityMatrix::from_bloch([x, y, z]).unwrap();
        let [l0, l1] = rho.eigenvalues();
        prop_assert!((l0 - 0.5 * (1.0 - n)).abs() < 1e-12 || (l0 - 0.5 * (1.0 + n)).abs() < 1e-12);
        prop_assert!((l0 + l1 - 1.0).abs() < 1e-12);
        prop_assert!((rho.purity() - 0.5 * (1.0 + n * n)).abs() < 1e-12);
    }
}

#[test]
fn rejects_invalid_inputs() {
    assert!(Direction::new(3.2, 0.0).is_err());
    assert!(Direction::new(f64::NAN, 0.0).is_err());
    assert!(PureState::new(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)).is_err());
    assert!(DensityMatrix::from_bloch([1.0, 1.0, 0.0]).is_err());
    let not_hermitian = Mat2::new(
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, 0.3),
        Complex64::new(0.0, 0.3),
        Complex64::new(0.5, 0.0),
    );
    assert!(DensityMatrix::new(not_hermitian).is_err());
    assert!(born_probability(&DensityMatrix::maximally_mixed(), &not_hermitian).is_err());
}
