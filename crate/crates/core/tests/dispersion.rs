#![allow(clippy::excessive_precision)]

use std::f64::consts::{FRAC_PI_2, PI};

use korteweg_core::dispersion::{
    dispersion_residual, kirchhoff_love_mu, penetration_depth, penetration_depth_approx, penetration_depth_nondim,
    phase_speed, propagating_wavenumber, quartic_relative_residual, solve_nondimensional, solve_wavenumbers,
    speed_ratio, tir_alpha, RootKind,
};
use korteweg_core::medium::tau2;
use korteweg_core::{Complex64, Director, MaterialParams, Vec2};
use proptest::prelude::*;

/// Durand–Kerner iteration for the monic form of `-1 + κ² + qκ⁴`.
fn durand_kerner(q: f64) -> [Complex64; 4] {
    // z⁴ + c3 z³ + c2 z² + c1 z + c0
    let c = [-1.0 / q, 0.0, 1.0 / q, 0.0];
    let eval = |z: Complex64| ((z + c[3]) * z + c[2]) * z * z + c[1] * z + c[0];
    let seed = Complex64::new(0.4, 0.9);
    let scale = (1.0 / q).sqrt().sqrt().max(1.0);
    let mut z: [Complex64; 4] = core::array::from_fn(|i| seed.powu(i as u32) * scale);
    for _ in 0..500 {
        let prev = z;
        for i in 0..4 {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..4 {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            z[i] -= eval(z[i]) / den;
        }
        if (0..4).all(|i| (z[i] - prev[i]).norm() <= 1e-15 * z[i].norm()) {
            break;
        }
    }
    // Newton polish in the original polynomial.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let f = -1.0 + *zi * *zi + q * zi.powu(4);
            let df = 2.0 * *zi + 4.0 * q * zi.powu(3);
            *zi -= f / df;
        }
    }
    z
}

fn matches_oracle(omega_tau: f64) -> f64 {
    let ours = solve_nondimensional(omega_tau).unwrap();
    let oracle = durand_kerner(0.25 * omega_tau * omega_tau);
    ours.roots()
        .iter()
        .map(|r| oracle.iter().map(|o| (r - o).norm() / r.norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

#[test]
fn roots_agree_with_generic_quartic_solver() {
    for &x in &[1e-4, 1e-2, 0.3, 1.0, 3.0, 10.0, 100.0] {
        assert!(matches_oracle(x) < 1e-10, "omega_tau={x}");
    }
}

#[test]
fn spec_root_examples() {
    let p = MaterialParams::new(1.0, 1.0, 1e-3, 0.0).unwrap();
    let r = solve_wavenumbers(&p, 1.0, 0.3).unwrap();
    // 40-digit evaluations of the closed form; the rounded values 0.998011
    // and 15.8430 agree to 5e-6 and 2e-4.
    assert!((r.propagating() - 0.998013869413409372).abs() < 1e-14);
    assert!((r.evanescent().unwrap() - 15.8428542783029323).abs() < 1e-12);
    assert!((r.propagating() - 0.998011).abs() < 5e-6);
    assert!((r.evanescent().unwrap() - 15.8430).abs() < 2e-4);
    let r = solve_nondimensional(1.0).unwrap();
    assert!((r.propagating() - 0.9101797).abs() < 1e-7);
    assert!((r.evanescent().unwrap() - 2.1973682).abs() < 1e-7);
    let kinds: Vec<_> = r.kinds().collect();
    assert_eq!(
        kinds,
        [RootKind::Propagating, RootKind::Propagating, RootKind::Evanescent, RootKind::Evanescent]
    );
    let h = solve_wavenumbers(&MaterialParams::helmholtz(), 1.0, 0.0).unwrap();
    assert!(h.is_degenerate());
    assert_eq!(h.roots().len(), 2);
}

#[test]
fn residual_examples() {
    let n = Director::default();
    let d = Vec2::from_angle(0.4);
    let r = dispersion_residual(&MaterialParams::helmholtz(), 2.0, &n, Complex64::new(2.0, 0.0), d);
    assert_eq!(r, Complex64::new(0.0, 0.0));
    let p = MaterialParams::new(1.0, 1.0, 1e-3, 0.0).unwrap();
    // The admissible dimensional root at ω = 1 (0.998011 belongs to the
    // nondimensional quartic, see the module docs).
    let k = propagating_wavenumber(&p, 1.0, 0.0);
    assert!((k - 0.999500872943070019).abs() < 1e-14);
    assert!(dispersion_residual(&p, 1.0, &n, Complex64::new(0.999501, 0.0), d).norm() < 1e-6);
    let pn = MaterialParams::new(1.0, 1.0, 1e-3, 7e-4).unwrap();
    let perp = Vec2::new(0.0, 1.0);
    let kk = Complex64::new(1.3, 0.2);
    assert_eq!(dispersion_residual(&pn, 1.0, &n, kk, perp), dispersion_residual(&p, 1.0, &n, kk, perp));
}

#[test]
fn speed_ratio_values() {
    assert_eq!(speed_ratio(0.0), 1.0);
    assert!((speed_ratio(1.0) - 0.9101797).abs() < 1e-7);
    let closed = ((-2.0 + 2.0 * 101f64.sqrt()) / 100.0).sqrt();
    assert!((speed_ratio(10.0) - closed).abs() < 1e-14);
    assert!((speed_ratio(10.0) - 0.4257).abs() < 5e-4);
}

#[test]
fn penetration_depth_examples() {
    assert!((penetration_depth_nondim(1.0, 1.0, 1.0).unwrap() - 0.776887).abs() < 1e-6);
    assert!(penetration_depth_nondim(1.0, 1.0, 0.0).is_err());
    let exact = penetration_depth_nondim(1.0, 1.0, 100.0).unwrap();
    assert!((penetration_depth_approx(1.0, 1.0, 100.0) - 5.0).abs() < 1e-12);
    assert!(((5.0 - exact) / exact).abs() < 5e-3 * 2.0);
    let p = MaterialParams::new(1.0, 1.0, 1e-3, 5e-4).unwrap();
    for &w in &[1.0, 10.0, 100.0] {
        assert!(penetration_depth(&p, w, 0.0).unwrap() > penetration_depth(&p, w, FRAC_PI_2).unwrap());
    }
}

#[test]
fn tir_alpha_examples() {
    let r = tir_alpha(1.0, 1.0);
    assert!((r.physical - 4.0 * (2f64.sqrt() - 1.0)).abs() < 1e-12);
    assert!((r.nonphysical + 4.0 * (1.0 + 2f64.sqrt())).abs() < 1e-12);
    assert!((tir_alpha(1e-4, 1.0).physical - 2.0).abs() < 1e-8);
    assert!((tir_alpha(1.0, 2.0).physical - 6.6274170).abs() < 1e-7);
    // The closed form maps onto the dispersion quartic: α/(2(c/c0)²) is the
    // κ² of the propagating (α₊) and evanescent (α₋) roots.
    for (x, c) in [(1.0, 1.0), (0.3, 2.0), (7.0, 0.5)] {
        let r = tir_alpha(x, c);
        let k = solve_nondimensional(x).unwrap();
        let plus = r.physical / (2.0 * c * c);
        let minus = r.nonphysical / (2.0 * c * c);
        assert!((plus - k.propagating().powi(2)).abs() < 1e-12 * plus);
        assert!((minus + k.evanescent().unwrap().powi(2)).abs() < 1e-12 * minus.abs());
    }
}

#[test]
fn kirchhoff_love_examples() {
    let p = |u1| MaterialParams::new(1.0, 1.0, u1, 0.0).unwrap();
    assert_eq!(kirchhoff_love_mu(&p(1.0), 1.0).unwrap(), 1.0);
    assert!((kirchhoff_love_mu(&p(1e-3), 2.0).unwrap() - 4000.0).abs() < 1e-9);
    assert!(kirchhoff_love_mu(&p(0.0), 1.0).is_err());
}

#[test]
fn helmholtz_limit() {
    let r = solve_nondimensional(1e-6).unwrap();
    assert!((r.propagating() - 1.0).abs() < 1e-5);
    assert!(r.evanescent().unwrap() > 1e5);
}

proptest! {
    #[test]
    fn roots_solve_quartic(x in 1e-4f64..100.0) {
        let r = solve_nondimensional(x).unwrap();
        for &k in r.roots() {
            prop_assert!(quartic_relative_residual(x, k) < 1e-10);
        }
        let k2: Vec<Complex64> = r.roots().iter().step_by(2).map(|k| k * k).collect();
        let vieta = -4.0 / (x * x);
        prop_assert!(((k2[0] * k2[1]).re - vieta).abs() < 1e-9 * vieta.abs());
        let neg: Vec<Complex64> = r.roots().iter().map(|k| -k).collect();
        for k in &neg {
            prop_assert!(r.roots().contains(k));
        }
    }

    #[test]
    fn speed_ratio_decreasing(a in 0.0f64..1e3, b in 0.0f64..1e3) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(speed_ratio(lo) > speed_ratio(hi));
    }

    #[test]
    fn parallel_propagation_is_fastest(omega in 0.1f64..100.0, xi in 0.0f64..PI) {
        let p = MaterialParams::new(1.0, 1.0, 1e-3, 5e-4).unwrap();
        prop_assert!(speed_ratio(omega * tau2(&p, 0.0)) <= speed_ratio(omega * tau2(&p, xi)));
        prop_assert!(phase_speed(&p, omega, 0.0) >= phase_speed(&p, omega, xi) * (1.0 - 1e-15));
    }

    #[test]
    fn dimensional_root_is_admissible(omega in 0.1f64..100.0, xi in -PI..PI, u2 in 0.0f64..1e-2) {
        let p = MaterialParams::new(1.2, 0.9, 1e-3, u2).unwrap();
        let n = Director::from_angle(0.3);
        let d = Vec2::from_angle(0.3 + xi);
        let k = propagating_wavenumber(&p, omega, xi);
        let res = dispersion_residual(&p, omega, &n, Complex64::new(k, 0.0), d).norm();
        prop_assert!(res < 1e-10 * omega * omega);
    }

    #[test]
    fn outputs_even_in_xi(omega in 0.1f64..100.0, xi in 0.0f64..PI) {
        let p = MaterialParams::new(1.0, 1.0, 1e-3, 5e-4).unwrap();
        let a = solve_wavenumbers(&p, omega, xi).unwrap().propagating();
        let b = solve_wavenumbers(&p, omega, -xi).unwrap().propagating();
        let c = solve_wavenumbers(&p, omega, PI - xi).unwrap().propagating();
        prop_assert!((a - b).abs() < 1e-14 && (a - c).abs() < 1e-12);
    }
}
