//! Scattering of a plane wave by a sound-soft disk of radius `R`.
//!
//! The incident wave `S⁻ = e^{ik x·(cosψ, sinψ)}` is expanded with the
//! Jacobi–Anger formula, `S⁻ = Σ a_j e^{ijθ}` with `a_j = i^j e^{-ijψ} J_j(kr)`.
//! The scattered field is the Mie series
//!
//! ```text
//! S⁺(r, θ) = -Σ a_j(R) H_j(kr)/H_j(kR) e^{ijθ},
//! ```
//!
//! so that the total field `S⁻ + S⁺` vanishes on `r = R`.
//!
//! When `ρ0²u1 = ℓ²` and `ρ0²u2 = ℓ²/γ` are small the Korteweg terms act
//! only in a boundary layer of width `O(ℓ)` around the obstacle; see
//! [`boundary_layer_rate`] and [`boundary_layer_value`].

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{check_positive, Error, Result};
use crate::medium::{Director, MaterialParams};
use crate::specfun::{bessel_j_seq, hankel1_seq, signed_order, MAX_ORDER};
use crate::vec2::Vec2;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Tail bound targeted by [`select_jmax`] when building expansions.
pub const DEFAULT_TAIL: f64 = 1e-14;

/// `i^j e^{-ijψ}`.
fn ja_phase(j: i32, psi: f64) -> Complex64 {
    I.powi(j) * Complex64::from_polar(1.0, -(j as f64) * psi)
}

/// Jacobi–Anger coefficients `a_j`, `|j| ≤ jmax`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiAnger {
    pub jmax: usize,
    /// `coeffs[j + jmax] = a_j`.
    pub coeffs: Vec<Complex64>,
    /// Set when `|a_jmax| / max|a_j| ≥ 1e-12`.
    pub truncation_warning: bool,
}

impl JacobiAnger {
    pub fn coeff(&self, j: i32) -> Complex64 {
        self.coeffs[(j + self.jmax as i32) as usize]
    }

    /// `Σ a_j e^{ijθ}`.
    pub fn reconstruct(&self, theta: f64) -> Complex64 {
        let jmax = self.jmax as i32;
        (-jmax..=jmax)
            .map(|j| self.coeff(j) * Complex64::from_polar(1.0, j as f64 * theta))
            .sum()
    }
}

pub fn jacobi_anger_coeffs(k: f64, psi: f64, r: f64, jmax: usize) -> Result<JacobiAnger> {
    let kr = k * r;
    check_positive("k*r", kr)?;
    if (jmax as f64) < libm::ceil(kr) + 20.0 {
        return Err(Error::Domain("jmax must be at least ceil(k*r) + 20"));
    }
    if jmax > MAX_ORDER as usize {
        return Err(Error::Domain("jmax exceeds 200"));
    }
    let bessel = bessel_j_seq(jmax, kr)?;
    let j = jmax as i32;
    let coeffs: Vec<Complex64> = (-j..=j)
        .map(|m| ja_phase(m, psi) * signed_order(&bessel, m))
        .collect();
    let peak = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tail = coeffs[0].norm().max(coeffs[2 * jmax].norm());
    Ok(JacobiAnger {
        jmax,
        coeffs,
        truncation_warning: tail >= 1e-12 * peak,
    })
}

/// Truncation order chosen by [`select_jmax`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JmaxChoice {
    pub jmax: usize,
    /// The bound was not met below order 200.
    pub capped: bool,
}

/// Smallest `jmax ≥ kR + 10` with `|J_jmax(kR)| < target_tail`, capped at 200.
pub fn select_jmax(k: f64, radius: f64, target_tail: f64) -> Result<JmaxChoice> {
    let kr = k * radius;
    check_positive("k*R", kr)?;
    check_positive("target_tail", target_tail)?;
    let cap = MAX_ORDER as usize;
    let floor = (libm::ceil(kr + 10.0) as usize).min(cap);
    let j = bessel_j_seq(cap, kr)?;
    match (floor..=cap).find(|&m| j[m].abs() < target_tail) {
        Some(jmax) => Ok(JmaxChoice { jmax, capped: false }),
        None => Ok(JmaxChoice { jmax: cap, capped: true }),
    }
}

/// Truncated Mie solution for a sound-soft disk.
#[derive(Debug, Clone, PartialEq)]
pub struct MieExpansion {
    /// `a_j` evaluated at the obstacle radius, `coeffs[j + jmax]`.
    pub coeffs: Vec<Complex64>,
    pub k: f64,
    pub radius: f64,
    pub psi: f64,
    pub jmax: usize,
    /// `H_j(kR)` for `0 ≤ j ≤ jmax`.
    boundary_hankel: Vec<Complex64>,
}

/// Field value and Cartesian second derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondDerivatives {
    pub value: Complex64,
    /// `(∂x S, ∂y S)`.
    pub gradient: [Complex64; 2],
    /// `(∂xx S, ∂xy S, ∂yy S)`.
    pub hessian: [Complex64; 3],
}

impl SecondDerivatives {
    pub fn laplacian(&self) -> Complex64 {
        self.hessian[0] + self.hessian[2]
    }

    /// `n·(HS)n`.
    pub fn directional(&self, n: &Director) -> Complex64 {
        let v = n.vector();
        self.hessian[0] * (v.x * v.x) + self.hessian[1] * (2.0 * v.x * v.y) + self.hessian[2] * (v.y * v.y)
    }

    pub fn of_plane_wave(wave: &crate::reflection::PlaneWave, x: Vec2) -> Self {
        Self {
            value: wave.value(x),
            gradient: wave.gradient(x),
            hessian: wave.hessian(x),
        }
    }
}

impl MieExpansion {
    /// Expansion with `jmax` from [`select_jmax`] at [`DEFAULT_TAIL`], but at
    /// least `ceil(kR) + 20` so the Jacobi–Anger precondition holds.
    pub fn new(k: f64, radius: f64, psi: f64) -> Result<Self> {
        let choice = select_jmax(k, radius, DEFAULT_TAIL)?;
        let jmax = choice
            .jmax
            .max(libm::ceil(k * radius) as usize + 20)
            .min(MAX_ORDER as usize);
        Self::with_jmax(k, radius, psi, jmax)
    }

    pub fn with_jmax(k: f64, radius: f64, psi: f64, jmax: usize) -> Result<Self> {
        check_positive("R", radius)?;
        let ja = jacobi_anger_coeffs(k, psi, radius, jmax)?;
        Ok(Self {
            coeffs: ja.coeffs,
            k,
            radius,
            psi,
            jmax,
            boundary_hankel: hankel1_seq(jmax, k * radius)?,
        })
    }

    pub fn coeff(&self, j: i32) -> Complex64 {
        self.coeffs[(j + self.jmax as i32) as usize]
    }

    /// `|a_jmax| / max|a_j| < 1e-12`.
    pub fn truncation_ok(&self) -> bool {
        let peak = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        self.coeffs[0].norm().max(self.coeffs[2 * self.jmax].norm()) < 1e-12 * peak
    }

    /// The incident plane wave at `(r, θ)`.
    pub fn incident(&self, r: f64, theta: f64) -> Complex64 {
        (I * self.k * r * libm::cos(theta - self.psi)).exp()
    }

    /// Incidence direction `(cosψ, sinψ)`.
    pub fn direction(&self) -> Vec2 {
        Vec2::from_angle(self.psi)
    }

    fn check_radius(&self, r: f64) -> Result<()> {
        if !(r >= self.radius * (1.0 - 1e-12)) {
            return Err(Error::Domain("Mie series is valid only for r >= R"));
        }
        Ok(())
    }

    /// Radial factors `-a_j H_j(kr)/H_j(kR)` with the derivative orders needed
    /// up to the second: returns `(c_j, c'_j, c''_j)` w.r.t. `r`.
    fn radial(&self, r: f64, derivs: bool) -> Result<Vec<[Complex64; 3]>> {
        let extra = if derivs { 2 } else { 0 };
        let h = hankel1_seq(self.jmax + extra, self.k * r)?;
        let jmax = self.jmax as i32;
        let k = self.k;
        Ok((-jmax..=jmax)
            .map(|j| {
                let scale = -self.coeff(j) / signed_order(&self.boundary_hankel, j);
                let h0 = signed_order(&h, j);
                if !derivs {
                    return [scale * h0, Complex64::default(), Complex64::default()];
                }
                let hm1 = signed_order(&h, j - 1);
                let hp1 = signed_order(&h, j + 1);
                let hm2 = signed_order(&h, j - 2);
                let hp2 = signed_order(&h, j + 2);
                let d1 = (hm1 - hp1) * 0.5 * k;
                let d2 = (hm2 - h0 * 2.0 + hp2) * 0.25 * k * k;
                [scale * h0, scale * d1, scale * d2]
            })
            .collect())
    }

    /// Scattered field `S⁺(r, θ)`.
    pub fn scattered(&self, r: f64, theta: f64) -> Result<Complex64> {
        self.check_radius(r)?;
        let radial = self.radial(r, false)?;
        let jmax = self.jmax as i32;
        Ok((-jmax..=jmax)
            .zip(radial)
            .map(|(j, c)| c[0] * Complex64::from_polar(1.0, j as f64 * theta))
            .sum())
    }

    /// Scattered field with its Cartesian gradient and Hessian, summed term
    /// by term from Hankel-function derivatives.
    pub fn scattered_derivatives(&self, r: f64, theta: f64) -> Result<SecondDerivatives> {
        self.check_radius(r)?;
        let radial = self.radial(r, true)?;
        let jmax = self.jmax as i32;
        let zero = Complex64::default();
        let (mut s, mut s_r, mut s_rr, mut s_t, mut s_rt, mut s_tt) = (zero, zero, zero, zero, zero, zero);
        for (j, c) in (-jmax..=jmax).zip(radial) {
            let jf = j as f64;
            let e = Complex64::from_polar(1.0, jf * theta);
            s += c[0] * e;
            s_r += c[1] * e;
            s_rr += c[2] * e;
            s_t += c[0] * e * I * jf;
            s_rt += c[1] * e * I * jf;
            s_tt -= c[0] * e * (jf * jf);
        }
        Ok(polar_to_cartesian(r, theta, s, s_r, s_t, s_rr, s_rt, s_tt))
    }

    /// Directional amplitude `F(θ)` with `S⁺ ≈ F(θ) e^{ikr}/√r` far away.
    pub fn far_field(&self, theta: f64) -> Complex64 {
        let jmax = self.jmax as i32;
        let sum: Complex64 = (-jmax..=jmax)
            .map(|j| {
                let jf = j as f64;
                self.coeff(j) * Complex64::from_polar(1.0, jf * (theta - FRAC_PI_2))
                    / signed_order(&self.boundary_hankel, j)
            })
            .sum();
        -libm::sqrt(2.0 / (PI * self.k)) * Complex64::from_polar(1.0, -FRAC_PI_4) * sum
    }
}

/// Cartesian value/gradient/Hessian from polar derivatives.
#[allow(clippy::too_many_arguments)]
pub(crate) fn polar_to_cartesian(
    r: f64,
    theta: f64,
    s: Complex64,
    s_r: Complex64,
    s_t: Complex64,
    s_rr: Complex64,
    s_rt: Complex64,
    s_tt: Complex64,
) -> SecondDerivatives {
    let (sn, cs) = (libm::sin(theta), libm::cos(theta));
    let h_rr = s_rr;
    let h_rt = s_rt / r - s_t / (r * r);
    let h_tt = s_r / r + s_tt / (r * r);
    let grad_t = s_t / r;
    SecondDerivatives {
        value: s,
        gradient: [s_r * cs - grad_t * sn, s_r * sn + grad_t * cs],
        hessian: [
            h_rr * (cs * cs) - h_rt * (2.0 * cs * sn) + h_tt * (sn * sn),
            (h_rr - h_tt) * (cs * sn) + h_rt * (cs * cs - sn * sn),
            h_rr * (sn * sn) + h_rt * (2.0 * cs * sn) + h_tt * (cs * cs),
        ],
    }
}

/// Scattered field of the Mie series.
pub fn mie_scattered_field(exp: &MieExpansion, r: f64, theta: f64) -> Result<Complex64> {
    exp.scattered(r, theta)
}

pub fn far_field_amplitude(exp: &MieExpansion, theta: f64) -> Complex64 {
    exp.far_field(theta)
}

/// Physical regime `ρ0²u1 = ℓ²`, `ρ0²u2 = ℓ²/γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryLayerSpec {
    pub gamma: f64,
    pub ell: f64,
}

impl BoundaryLayerSpec {
    /// Requires `γ ≥ 1` (infinity allowed) and `0 < ℓ < R/10`.
    pub fn new(gamma: f64, ell: f64, radius: f64) -> Result<Self> {
        if !(gamma >= 1.0) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "must be at least 1",
            });
        }
        if !(ell > 0.0 && ell < 0.1 * radius) {
            return Err(Error::InvalidParameter {
                name: "ell",
                value: ell,
                reason: "must lie in (0, R/10)",
            });
        }
        Ok(Self { gamma, ell })
    }

    /// Material with these Korteweg constants.
    pub fn material(&self, c0: f64, rho0: f64) -> Result<MaterialParams> {
        let l2 = self.ell * self.ell / (rho0 * rho0);
        MaterialParams::new(c0, rho0, l2, l2 / self.gamma)
    }

    pub fn decay_rate(&self, params: &MaterialParams, nu: Vec2, n: &Director) -> Result<f64> {
        boundary_layer_rate(params, self.gamma, nu, n)
    }
}

/// Decay rate of the layer in the stretched normal coordinate
/// `(distance from the boundary)/ℓ`: `c0/√(1 + (n·ν)²/γ)`.
pub fn boundary_layer_rate(params: &MaterialParams, gamma: f64, nu: Vec2, n: &Director) -> Result<f64> {
    if !(gamma >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "must be at least 1",
        });
    }
    let c = n.cos_to(nu);
    Ok(params.c0() / libm::sqrt(1.0 + c * c / gamma))
}

/// Boundary value of the layer term that corrects the outer solution.
///
/// `incident` and `outer` are the incident wave and the outer (Helmholtz)
/// scattered field at a boundary point, with the convention that the total
/// field is `S⁻ + S⁺`. The layer makes `ρ0²(u1ΔS + u2 n·(HS)n)` of the total
/// field vanish, which gives
///
/// ```text
/// S_ℓ = -(ℓ²/c0²)(ΔS⁻ + γ⁻¹n·HS⁻n + ΔS₀⁺ + γ⁻¹n·HS₀⁺n).
/// ```
///
/// With the opposite convention for the scattered field (total `S⁻ - S⁺`)
/// this is `(ℓ²/c0²)(ΔS⁻ + γ⁻¹n·HS⁻n - ΔS₀⁺ - γ⁻¹n·HS₀⁺n)` for the layer of
/// `S⁺`; [`boundary_layer_value_subtractive`] evaluates that form.
pub fn boundary_layer_value(
    incident: &SecondDerivatives,
    outer: &SecondDerivatives,
    params: &MaterialParams,
    spec: &BoundaryLayerSpec,
    n: &Director,
) -> Complex64 {
    -boundary_layer_value_subtractive(incident, &negate(outer), params, spec, n)
}

/// Layer value for the convention in which the total field is `S⁻ - S⁺`.
pub fn boundary_layer_value_subtractive(
    incident: &SecondDerivatives,
    outer: &SecondDerivatives,
    params: &MaterialParams,
    spec: &BoundaryLayerSpec,
    n: &Director,
) -> Complex64 {
    let g = 1.0 / spec.gamma;
    let c0 = params.c0();
    let a = incident.laplacian() + incident.directional(n) * g;
    let b = outer.laplacian() + outer.directional(n) * g;
    (a - b) * (spec.ell * spec.ell / (c0 * c0))
}

fn negate(s: &SecondDerivatives) -> SecondDerivatives {
    SecondDerivatives {
        value: -s.value,
        gradient: [-s.gradient[0], -s.gradient[1]],
        hessian: [-s.hessian[0], -s.hessian[1], -s.hessian[2]],
    }
}
