//! Dispersion relation of the (nematic) Helmholtz–Korteweg equation.
//!
//! A plane wave `e^{ik x·d}` is admissible when
//!
//! ```text
//! -ω² + c0²k² + ρ0²(u1 + u2 (d·n)²) k⁴ = 0.
//! ```
//!
//! Two parametrizations are exposed. The *nondimensional* functions take the
//! product `ωτ` and work with the quartic `-1 + κ² + (ωτ)²κ⁴/4 = 0`; they
//! follow the closed forms used throughout the literature on this model.
//! The *dimensional* functions take `(params, ω, ξ)` and solve the relation
//! above directly; these are what the reflection, scattering and solver
//! modules use. Substituting `k = ωκ/c0` into the dimensional relation gives
//! the nondimensional quartic with `ωτ` replaced by `ωτ/2`, so
//! `c0·k(ω, ξ)/ω == speed_ratio(ω·τ2(ξ)/2)`.

use num_complex::Complex64;

use crate::error::{check_nonnegative, check_positive, Error, Result};
use crate::medium::{tau2, Director, MaterialParams};
use crate::vec2::Vec2;

/// Below this value of `ωτ` the quartic is treated as the Helmholtz quadratic.
pub const DEGENERATE_OMEGA_TAU: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    Propagating,
    Evanescent,
    Mixed,
}

impl RootKind {
    pub fn classify(z: Complex64) -> Self {
        if z.im == 0.0 {
            RootKind::Propagating
        } else if z.re == 0.0 {
            RootKind::Evanescent
        } else {
            RootKind::Mixed
        }
    }
}

/// Roots `κ` of `-1 + κ² + (ωτ)²κ⁴/4 = 0`.
///
/// Ordered as `+κr, -κr, +iκi, -iκi`. In the degenerate limit only the
/// Helmholtz pair `±1` is stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionRoots {
    omega_tau: f64,
    roots: [Complex64; 4],
    count: usize,
    degenerate: bool,
}

impl DispersionRoots {
    pub fn omega_tau(&self) -> f64 {
        self.omega_tau
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.roots[..self.count]
    }

    pub fn kinds(&self) -> impl Iterator<Item = RootKind> + '_ {
        self.roots().iter().map(|&z| RootKind::classify(z))
    }

    /// Set when `ωτ < 1e-14` and the quartic collapsed to `κ² = 1`.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// The positive real root.
    pub fn propagating(&self) -> f64 {
        self.roots[0].re
    }

    /// Magnitude of the imaginary pair, `None` in the degenerate limit.
    pub fn evanescent(&self) -> Option<f64> {
        (!self.degenerate).then(|| self.roots[2].im)
    }

    /// Relative residual of `κ` in the quartic: the defect divided by the
    /// largest of the three terms.
    pub fn relative_residual(&self, kappa: Complex64) -> f64 {
        quartic_relative_residual(self.omega_tau, kappa)
    }
}

pub fn quartic_relative_residual(omega_tau: f64, kappa: Complex64) -> f64 {
    let q = 0.25 * omega_tau * omega_tau;
    let k2 = kappa * kappa;
    let k4 = k2 * k2;
    let defect = (-1.0 + k2 + q * k4).norm();
    let scale = 1.0_f64.max(k2.norm()).max(q * k4.norm());
    defect / scale
}

/// `κ²` values of the nondimensional quartic, written without cancellation.
fn kappa_squared(x: f64) -> (f64, f64) {
    let s = libm::sqrt(1.0 + x * x);
    let plus = 2.0 / (s + 1.0);
    let minus = -2.0 * (1.0 + s) / (x * x);
    (plus, minus)
}

/// Roots of the nondimensional quartic for a given `ωτ ≥ 0`.
pub fn solve_nondimensional(omega_tau: f64) -> Result<DispersionRoots> {
    check_nonnegative("omega_tau", omega_tau)?;
    let zero = Complex64::new(0.0, 0.0);
    if omega_tau < DEGENERATE_OMEGA_TAU {
        return Ok(DispersionRoots {
            omega_tau,
            roots: [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), zero, zero],
            count: 2,
            degenerate: true,
        });
    }
    let (plus, minus) = kappa_squared(omega_tau);
    let kr = libm::sqrt(plus);
    let ki = libm::sqrt(-minus);
    Ok(DispersionRoots {
        omega_tau,
        roots: [
            Complex64::new(kr, 0.0),
            Complex64::new(-kr, 0.0),
            Complex64::new(0.0, ki),
            Complex64::new(0.0, -ki),
        ],
        count: 4,
        degenerate: false,
    })
}

/// Roots at `ωτ2(ξ)`.
pub fn solve_wavenumbers(params: &MaterialParams, omega: f64, xi: f64) -> Result<DispersionRoots> {
    check_positive("omega", omega)?;
    solve_nondimensional(omega * tau2(params, xi))
}

/// `c0/c` for the propagating wave: the positive real root of the quartic.
/// Equals 1 at `ωτ = 0` and decreases strictly with `ωτ`.
pub fn speed_ratio(omega_tau: f64) -> f64 {
    libm::sqrt(kappa_squared(omega_tau).0)
}

/// `-ω² + c0²k² + ρ0²u1k⁴ + ρ0²u2k⁴(d·n)²`.
pub fn dispersion_residual(
    params: &MaterialParams,
    omega: f64,
    n: &Director,
    k: Complex64,
    d: Vec2,
) -> Complex64 {
    let dn = n.cos_to(d);
    let k2 = k * k;
    let k4 = k2 * k2;
    let c0 = params.c0();
    -omega * omega + c0 * c0 * k2 + (params.korteweg1() + params.korteweg2() * dn * dn) * k4
}

/// Effective capillarity `ρ0²(u1 + u2 cos²ξ)`.
pub fn effective_korteweg(params: &MaterialParams, xi: f64) -> f64 {
    let c = libm::cos(xi);
    params.korteweg1() + params.korteweg2() * c * c
}

/// Positive real wavenumber of the dimensional relation for propagation at
/// angle `ξ` to the director.
pub fn propagating_wavenumber(params: &MaterialParams, omega: f64, xi: f64) -> f64 {
    let c2 = params.c0() * params.c0();
    let b = effective_korteweg(params, xi);
    let disc = libm::sqrt(c2 * c2 + 4.0 * b * omega * omega);
    libm::sqrt(2.0 * omega * omega / (c2 + disc))
}

/// Decay rate `|Im k|` of the evanescent dimensional root, `None` when the
/// effective capillarity vanishes.
pub fn evanescent_wavenumber(params: &MaterialParams, omega: f64, xi: f64) -> Option<f64> {
    let c2 = params.c0() * params.c0();
    let b = effective_korteweg(params, xi);
    if b <= 0.0 {
        return None;
    }
    let disc = libm::sqrt(c2 * c2 + 4.0 * b * omega * omega);
    Some(libm::sqrt((c2 + disc) / (2.0 * b)))
}

/// Phase speed `ω/k` of the propagating wave.
pub fn phase_speed(params: &MaterialParams, omega: f64, xi: f64) -> f64 {
    if omega == 0.0 {
        return params.c0();
    }
    omega / propagating_wavenumber(params, omega, xi)
}

/// Penetration depth `δ = (c0/2ω)·[(-1 + √(1+x²))/x²]^{-1/2}` with `x = ωτ`.
pub fn penetration_depth_nondim(c0: f64, omega: f64, omega_tau: f64) -> Result<f64> {
    check_positive("c0", c0)?;
    check_positive("omega", omega)?;
    if !(omega_tau >= DEGENERATE_OMEGA_TAU) || !omega_tau.is_finite() {
        return Err(Error::Domain("penetration depth needs omega*tau > 0"));
    }
    // (-1 + √(1+x²))/x² = 1/(√(1+x²) + 1)
    let s = libm::sqrt(1.0 + omega_tau * omega_tau);
    Ok(c0 / (2.0 * omega) * libm::sqrt(s + 1.0))
}

/// Penetration depth at `ωτ2(ξ)`; largest along the director.
pub fn penetration_depth(params: &MaterialParams, omega: f64, xi: f64) -> Result<f64> {
    check_positive("omega", omega)?;
    penetration_depth_nondim(params.c0(), omega, omega * tau2(params, xi))
}

/// Large-`ωτ` approximation `(c0/2ω)√(ωτ)`.
pub fn penetration_depth_approx(c0: f64, omega: f64, omega_tau: f64) -> f64 {
    c0 / (2.0 * omega) * libm::sqrt(omega_tau)
}

/// Roots of `-1 - (c0/c)²α + (ωτ)²(c0/c)⁴α²/4 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TirRoots {
    /// `α+ ≥ 0`.
    pub physical: f64,
    /// `α- < 0`, not a valid decay parameter.
    pub nonphysical: f64,
}

pub fn tir_alpha(omega_tau: f64, c_ratio: f64) -> TirRoots {
    let scale = 4.0 * c_ratio * c_ratio;
    let s = libm::sqrt(1.0 + omega_tau * omega_tau);
    TirRoots {
        physical: scale / (s + 1.0),
        nonphysical: -scale * (1.0 + s) / (omega_tau * omega_tau),
    }
}

/// `μ = ω²/(c0²u1ρ0²)`, the eigenvalue of the high-frequency limit `Δ²S = μS`.
pub fn kirchhoff_love_mu(params: &MaterialParams, omega: f64) -> Result<f64> {
    let denom = params.c0() * params.c0() * params.korteweg1();
    if denom == 0.0 {
        return Err(Error::Domain("Kirchhoff-Love limit needs u1*rho0 > 0"));
    }
    Ok(omega * omega / denom)
}
