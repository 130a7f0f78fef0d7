use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use korteweg_core::dispersion::propagating_wavenumber;
use korteweg_core::reflection::{
    boundary_residual, critical_angle, reflect_amplitude, reflected_pair, snell_transmit, tir_transmitted_wave,
    BoundaryKind, InterfaceSpec, PlaneWave,
};
use korteweg_core::{Complex64, Director, Error, MaterialParams, Vec2};
use proptest::prelude::*;

fn reference_material() -> MaterialParams {
    MaterialParams::new(1.0, 1.0, 1e-3, 5e-4).unwrap()
}

fn incoming(theta: f64, omega: f64, n: &Director) -> PlaneWave {
    PlaneWave::admissible(&reference_material(), omega, n, Vec2::new(theta.sin(), -theta.cos())).unwrap()
}

fn samples() -> Vec<f64> {
    (0..41).map(|i| -3.0 + 0.15 * i as f64).collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn soft_and_hard_amplitudes() {
    let w = incoming(0.4, 5.0, &Director::from_angle(0.2));
    for (bc, a) in [(BoundaryKind::SoundSoft, -1.0), (BoundaryKind::SoundHard, 1.0)] {
        let iface = InterfaceSpec::new(bc).unwrap();
        assert_eq!(reflect_amplitude(&w, &iface).unwrap(), c(a, 0.0));
        let pair = reflected_pair(&w, &iface).unwrap();
        assert!(boundary_residual(&pair, &iface, &samples()) < 1e-12);
    }
}

#[test]
fn wrong_amplitude_leaves_defect() {
    let w = incoming(0.4, 5.0, &Director::default());
    let iface = InterfaceSpec::new(BoundaryKind::SoundSoft).unwrap();
    let bad = [w, w.mirrored(c(0.5, 0.0))];
    assert!(boundary_residual(&bad, &iface, &samples()) > 0.1);
}

#[test]
fn impedance_limits() {
    let w = incoming(0.7, 3.0, &Director::default());
    let a0 = reflect_amplitude(&w, &InterfaceSpec::new(BoundaryKind::Impedance(c(0.0, 0.0))).unwrap()).unwrap();
    assert!((a0 - c(-1.0, 0.0)).norm() < 1e-12);
    let big = reflect_amplitude(&w, &InterfaceSpec::new(BoundaryKind::Impedance(c(1e10, 0.0))).unwrap()).unwrap();
    assert!((big - c(1.0, 0.0)).norm() < 1e-8);
}

#[test]
fn impedance_pole_and_guards() {
    let w = incoming(0.5, 3.0, &Director::default());
    let zeta = w.k * w.d.y;
    let r = reflect_amplitude(&w, &InterfaceSpec::new(BoundaryKind::Impedance(zeta)).unwrap());
    assert!(matches!(r, Err(Error::ImpedancePole { .. })));
    assert!(InterfaceSpec::new(BoundaryKind::Impedance(c(f64::INFINITY, 0.0))).is_err());
    let up = PlaneWave::new(c(1.0, 0.0), c(1.0, 0.0), Vec2::new(0.0, 1.0)).unwrap();
    assert!(reflect_amplitude(&up, &InterfaceSpec::new(BoundaryKind::SoundSoft).unwrap()).is_err());
    assert!(PlaneWave::new(c(1.0, 0.0), c(1.0, 0.0), Vec2::new(1.0, 1.0)).is_err());
}

#[test]
fn snell_examples() {
    let d = snell_transmit(0.3, 1.2, 1.2);
    assert!((d.d1 - 0.2955202).abs() < 1e-7 && (d.d2.re - 0.9553365).abs() < 1e-7);
    let d = snell_transmit(0.0, 1.5, 1.0);
    assert_eq!((d.d1, d.d2), (0.0, c(1.0, 0.0)));
    let d = snell_transmit(FRAC_PI_3, 1.5, 1.0);
    assert!((d.d1 - 1.2990).abs() < 1e-4);
    assert!(!d.is_propagating() && d.d2.re == 0.0 && d.d2.im > 0.0);
}

#[test]
fn critical_angle_examples() {
    assert!((critical_angle(1.5, 1.0).unwrap() - 0.7297277).abs() < 1e-7);
    assert!((critical_angle(1.3, 1.3).unwrap() - FRAC_PI_2).abs() < 1e-15);
    assert!(matches!(critical_angle(1.0, 1.5), Err(Error::NoTotalInternalReflection { .. })));
}

#[test]
fn tir_examples() {
    let w = tir_transmitted_wave(FRAC_PI_3, 1.0, 1.5, 1.0).unwrap();
    assert!((w.alpha - 0.3055556).abs() < 1e-7);
    assert!((w.wave_vector[0].re - 0.8660254).abs() < 1e-7);
    // √(11/36); the rounded 0.5527679 is within 5e-6.
    assert!((w.wave_vector[1].im - (11.0f64 / 36.0).sqrt()).abs() < 1e-15);
    assert!((w.wave_vector[1].im - 0.5527679).abs() < 5e-6);
    let depth = w.decay_length();
    assert!((w.value(Vec2::new(0.0, depth)).norm() - (-1.0f64).exp()).abs() < 1e-14);
    let tc = critical_angle(1.5, 1.0).unwrap();
    assert!(tir_transmitted_wave(tc, 2.0, 1.5, 1.0).unwrap().alpha < 1e-12);
    assert!(tir_transmitted_wave(0.3, 2.0, 1.5, 1.0).is_err());
}

#[test]
fn impedance_amplitude_depends_on_director() {
    // k is smaller across the director, so |A| differs between the two cases.
    let omega = 20.0;
    let zeta = BoundaryKind::Impedance(c(4.0, 1.0));
    let iface = InterfaceSpec::new(zeta).unwrap();
    let d = Vec2::new(0.0, -1.0);
    let along = PlaneWave::admissible(&reference_material(), omega, &Director::new(d).unwrap(), d).unwrap();
    let across = PlaneWave::admissible(&reference_material(), omega, &Director::from_angle(0.0), d).unwrap();
    assert!(across.k.re > along.k.re);
    assert_eq!(along.k.re, propagating_wavenumber(&reference_material(), omega, 0.0));
    let a = reflect_amplitude(&along, &iface).unwrap().norm();
    let b = reflect_amplitude(&across, &iface).unwrap().norm();
    assert!((a - b).abs() > 1e-3);
}

fn arb_zeta() -> impl Strategy<Value = Complex64> {
    (-50.0f64..50.0, 0.0f64..50.0).prop_map(|(re, im)| c(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflected_field_satisfies_condition(theta in 0.0f64..1.5, omega in 0.5f64..30.0, nang in -PI..PI, zeta in arb_zeta()) {
        let w = incoming(theta, omega, &Director::from_angle(nang));
        prop_assume!((w.k * w.d.y - zeta).norm() > 1e-3);
        for bc in [BoundaryKind::SoundSoft, BoundaryKind::SoundHard, BoundaryKind::Impedance(zeta)] {
            let iface = InterfaceSpec::new(bc).unwrap();
            let pair = reflected_pair(&w, &iface).unwrap();
            prop_assert!(boundary_residual(&pair, &iface, &samples()) < 1e-10);
        }
    }

    #[test]
    fn imaginary_impedance_is_lossless(theta in 0.0f64..1.5, beta in -50.0f64..50.0) {
        let w = incoming(theta, 4.0, &Director::default());
        let a = reflect_amplitude(&w, &InterfaceSpec::new(BoundaryKind::Impedance(c(0.0, beta))).unwrap()).unwrap();
        prop_assert!((a.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn real_impedance_gives_real_amplitude(theta in 0.0f64..1.5, zeta in -50.0f64..50.0) {
        let w = incoming(theta, 4.0, &Director::default());
        prop_assume!((w.k * w.d.y - zeta).norm() > 1e-6);
        let a = reflect_amplitude(&w, &InterfaceSpec::new(BoundaryKind::Impedance(c(zeta, 0.0))).unwrap()).unwrap();
        prop_assert!(a.im == 0.0 || a.im.abs() < 1e-15 * a.re.abs());
    }

    #[test]
    fn snell_reciprocity(theta in 0.0f64..1.5, n in 0.5f64..2.0, nt in 0.5f64..2.0) {
        let d = snell_transmit(theta, n, nt);
        prop_assume!(d.is_propagating());
        let back = snell_transmit(d.angle().unwrap(), nt, n);
        prop_assert!((back.angle().unwrap() - theta).abs() < 1e-12);
    }
}
