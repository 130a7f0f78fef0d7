//! Plane waves at the flat interface `x2 = 0`.
//!
//! The fluid occupies the upper half-plane. An incoming wave travels toward
//! the interface (`d2 ≤ 0`) and its mirror image flips `d2`. The total field
//! `S⁻ + A·mirror(S⁻)` satisfies one of three boundary conditions:
//!
//! - sound-soft: `S = 0`, giving `A = -1`;
//! - sound-hard: `∂2 S = 0`, giving `A = +1`;
//! - impedance: `A(d2k - ζ) = -(d2k + ζ)`, i.e. `ζ ∂2S = i ∂22S` on the line.

use num_complex::Complex64;

use crate::dispersion::{dispersion_residual, propagating_wavenumber};
use crate::error::{check_positive, Error, Result};
use crate::medium::{Director, MaterialParams};
use crate::vec2::Vec2;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `s0·e^{ik x·d}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub s0: Complex64,
    pub k: Complex64,
    pub d: Vec2,
}

impl PlaneWave {
    pub fn new(s0: Complex64, k: Complex64, d: Vec2) -> Result<Self> {
        let norm = d.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Domain("plane-wave direction must be a unit vector"));
        }
        Ok(Self { s0, k, d })
    }

    /// Unit-amplitude wave along `d` with the real wavenumber that makes it
    /// admissible for the medium.
    pub fn admissible(params: &MaterialParams, omega: f64, n: &Director, d: Vec2) -> Result<Self> {
        let xi = libm::acos(n.cos_to(d).clamp(-1.0, 1.0));
        let k = propagating_wavenumber(params, omega, xi);
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(k, 0.0), d)
    }

    pub fn is_admissible(&self, params: &MaterialParams, omega: f64, n: &Director) -> bool {
        let r = dispersion_residual(params, omega, n, self.k, self.d);
        r.norm() <= 1e-8 * (omega * omega).max(1.0)
    }

    pub fn value(&self, x: Vec2) -> Complex64 {
        self.s0 * (I * self.k * x.dot(self.d)).exp()
    }

    /// `(∂1 S, ∂2 S)`.
    pub fn gradient(&self, x: Vec2) -> [Complex64; 2] {
        let s = I * self.k * self.value(x);
        [s * self.d.x, s * self.d.y]
    }

    /// `(∂11 S, ∂12 S, ∂22 S)`.
    pub fn hessian(&self, x: Vec2) -> [Complex64; 3] {
        let s = -self.k * self.k * self.value(x);
        let d = self.d;
        [s * (d.x * d.x), s * (d.x * d.y), s * (d.y * d.y)]
    }

    pub fn laplacian(&self, x: Vec2) -> Complex64 {
        -self.k * self.k * self.value(x)
    }

    /// Mirror image across `x2 = 0` with amplitude `a·s0`.
    pub fn mirrored(&self, a: Complex64) -> Self {
        Self {
            s0: a * self.s0,
            k: self.k,
            d: Vec2::new(self.d.x, -self.d.y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryKind {
    SoundSoft,
    SoundHard,
    /// Impedance condition with constant `ζ`.
    Impedance(Complex64),
}

impl BoundaryKind {
    pub fn validate(&self) -> Result<()> {
        match self {
            BoundaryKind::Impedance(z) if !(z.re.is_finite() && z.im.is_finite()) => {
                Err(Error::Domain("impedance zeta must be finite"))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefractivePair {
    pub n: f64,
    pub n_t: f64,
}

impl RefractivePair {
    pub fn new(n: f64, n_t: f64) -> Result<Self> {
        Ok(Self {
            n: check_positive("n", n)?,
            n_t: check_positive("n_t", n_t)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceSpec {
    pub bc: BoundaryKind,
    pub refractive: Option<RefractivePair>,
}

impl InterfaceSpec {
    pub fn new(bc: BoundaryKind) -> Result<Self> {
        bc.validate()?;
        Ok(Self { bc, refractive: None })
    }
}

/// Amplitude `A` of the reflected wave.
pub fn reflect_amplitude(incoming: &PlaneWave, iface: &InterfaceSpec) -> Result<Complex64> {
    if incoming.d.y > 0.0 {
        return Err(Error::Domain("incoming wave must travel toward the interface (d2 <= 0)"));
    }
    match iface.bc {
        BoundaryKind::SoundSoft => Ok(Complex64::new(-1.0, 0.0)),
        BoundaryKind::SoundHard => Ok(Complex64::new(1.0, 0.0)),
        BoundaryKind::Impedance(zeta) => {
            iface.bc.validate()?;
            let d2k = incoming.k * incoming.d.y;
            let denom = d2k - zeta;
            let distance = denom.norm();
            if distance <= 1e-14 * (d2k.norm() + zeta.norm()).max(f64::MIN_POSITIVE) {
                return Err(Error::ImpedancePole { distance });
            }
            Ok(-(d2k + zeta) / denom)
        }
    }
}

/// Incoming wave plus its reflection.
pub fn reflected_pair(incoming: &PlaneWave, iface: &InterfaceSpec) -> Result<[PlaneWave; 2]> {
    let a = reflect_amplitude(incoming, iface)?;
    Ok([*incoming, incoming.mirrored(a)])
}

/// Largest boundary-condition defect of a plane-wave superposition over the
/// points `(x1, 0)`, relative to the size of the individual contributions.
pub fn boundary_residual(total: &[PlaneWave], iface: &InterfaceSpec, sample_points: &[f64]) -> f64 {
    let zero = Complex64::new(0.0, 0.0);
    let scale: f64 = total
        .iter()
        .map(|w| {
            let a = w.s0.norm();
            let k = w.k.norm();
            match iface.bc {
                BoundaryKind::SoundSoft => a,
                BoundaryKind::SoundHard => a * k,
                BoundaryKind::Impedance(z) => a * (z.norm() * k + k * k),
            }
        })
        .sum::<f64>()
        .max(f64::MIN_POSITIVE);
    sample_points
        .iter()
        .map(|&x1| {
            let x = Vec2::new(x1, 0.0);
            let defect = match iface.bc {
                BoundaryKind::SoundSoft => total.iter().fold(zero, |acc, w| acc + w.value(x)),
                BoundaryKind::SoundHard => total.iter().fold(zero, |acc, w| acc + w.gradient(x)[1]),
                BoundaryKind::Impedance(z) => total.iter().fold(zero, |acc, w| {
                    acc + z * w.gradient(x)[1] - I * w.hessian(x)[2]
                }),
            };
            defect.norm() / scale
        })
        .fold(0.0, f64::max)
}

/// Transmitted direction; `d2` is imaginary beyond the critical angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmittedDirection {
    pub d1: f64,
    pub d2: Complex64,
}

impl TransmittedDirection {
    pub fn is_propagating(&self) -> bool {
        self.d2.im == 0.0
    }

    /// Refraction angle, defined only for propagating transmission.
    pub fn angle(&self) -> Option<f64> {
        self.is_propagating().then(|| libm::asin(self.d1))
    }
}

pub fn snell_transmit(theta: f64, n: f64, n_t: f64) -> TransmittedDirection {
    let s = libm::sin(theta);
    let d1 = s * n / n_t;
    let radicand = 1.0 - d1 * d1;
    let d2 = if radicand >= 0.0 {
        Complex64::new(libm::sqrt(radicand), 0.0)
    } else {
        Complex64::new(0.0, libm::sqrt(-radicand))
    };
    TransmittedDirection { d1, d2 }
}

/// `arcsin(nT/n)`; total internal reflection needs `nT ≤ n`.
pub fn critical_angle(n: f64, n_t: f64) -> Result<f64> {
    check_positive("n", n)?;
    check_positive("n_t", n_t)?;
    if n_t > n {
        return Err(Error::NoTotalInternalReflection { n, n_t });
    }
    Ok(libm::asin(n_t / n))
}

/// Transmitted wave under total internal reflection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TirWave {
    /// `α = k²·|(nT/n)² - sin²θ|`.
    pub alpha: f64,
    /// `(k sinθ, i√α)`; `e^{i kT·x}` decays as `x2` grows, so `x2` is the
    /// depth into the transmitting medium.
    pub wave_vector: [Complex64; 2],
}

impl TirWave {
    pub fn value(&self, x: Vec2) -> Complex64 {
        (I * (self.wave_vector[0] * x.x + self.wave_vector[1] * x.y)).exp()
    }

    /// `1/√α`, the depth at which the amplitude has fallen by `1/e`.
    pub fn decay_length(&self) -> f64 {
        1.0 / libm::sqrt(self.alpha)
    }
}

pub fn tir_transmitted_wave(theta: f64, k: f64, n: f64, n_t: f64) -> Result<TirWave> {
    let theta_c = critical_angle(n, n_t)?;
    if theta < theta_c - 1e-12 {
        return Err(Error::Domain("total internal reflection needs theta >= critical angle"));
    }
    let s = libm::sin(theta);
    let ratio = n_t / n;
    let alpha = k * k * (ratio * ratio - s * s).abs();
    Ok(TirWave {
        alpha,
        wave_vector: [Complex64::new(k * s, 0.0), Complex64::new(0.0, libm::sqrt(alpha))],
    })
}
