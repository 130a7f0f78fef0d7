//! Material constants, the nematic director and the characteristic time scales.
//!
//! A Korteweg fluid is described by the isotropic sound speed `c0`, the
//! reference density `rho0` and the capillarity constant `u1`. A nematic
//! liquid crystal adds `u2`, which weights density gradients along the
//! director. With `u1 = u2 = 0` everything downstream reduces to the
//! classical Helmholtz setting.

use crate::error::{check_nonnegative, check_positive, Error, Result};
use crate::vec2::Vec2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    c0: f64,
    rho0: f64,
    u1: f64,
    u2: f64,
}

impl MaterialParams {
    pub fn new(c0: f64, rho0: f64, u1: f64, u2: f64) -> Result<Self> {
        Ok(Self {
            c0: check_positive("c0", c0)?,
            rho0: check_positive("rho0", rho0)?,
            u1: check_nonnegative("u1", u1)?,
            u2: check_nonnegative("u2", u2)?,
        })
    }

    /// Ideal fluid with unit sound speed and density.
    pub fn helmholtz() -> Self {
        Self {
            c0: 1.0,
            rho0: 1.0,
            u1: 0.0,
            u2: 0.0,
        }
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn u1(&self) -> f64 {
        self.u1
    }

    pub fn u2(&self) -> f64 {
        self.u2
    }

    /// `ρ0²·u1`, the coefficient of the biharmonic term.
    pub fn korteweg1(&self) -> f64 {
        self.rho0 * self.rho0 * self.u1
    }

    /// `ρ0²·u2`, the coefficient of the nematic term.
    pub fn korteweg2(&self) -> f64 {
        self.rho0 * self.rho0 * self.u2
    }

    pub fn is_isotropic(&self) -> bool {
        self.u2 == 0.0
    }

    pub fn is_helmholtz(&self) -> bool {
        self.u1 == 0.0 && self.u2 == 0.0
    }
}

/// Constant nematic director, stored as a unit vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Director(Vec2);

impl Director {
    /// Normalizes `v`; only the zero vector is rejected.
    pub fn new(v: Vec2) -> Result<Self> {
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ZeroDirector);
        }
        Ok(Self(Vec2::new(v.x / norm, v.y / norm)))
    }

    pub fn from_angle(angle: f64) -> Self {
        Self(Vec2::from_angle(angle))
    }

    pub fn vector(&self) -> Vec2 {
        self.0
    }

    pub fn angle(&self) -> f64 {
        self.0.angle()
    }

    /// `cos ξ` where ξ is the angle between `d` and the director.
    pub fn cos_to(&self, d: Vec2) -> f64 {
        self.0.dot(d) / d.norm()
    }

    pub fn flipped(&self) -> Self {
        Self(-self.0)
    }
}

impl Default for Director {
    fn default() -> Self {
        Self(Vec2::X)
    }
}

/// `τ1 = 4ρ0√u1 / c0²`.
pub fn tau1(params: &MaterialParams) -> f64 {
    4.0 * params.rho0 * libm::sqrt(params.u1) / (params.c0 * params.c0)
}

/// `τ2(ξ) = 4ρ0√(u1 + u2 cos²ξ) / c0²`, where ξ is the angle between the
/// propagation direction and the director.
pub fn tau2(params: &MaterialParams, xi: f64) -> f64 {
    let c = libm::cos(xi);
    4.0 * params.rho0 * libm::sqrt(params.u1 + params.u2 * c * c) / (params.c0 * params.c0)
}

/// Characteristic times at a fixed angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NondimGroups {
    pub params: MaterialParams,
    pub omega: f64,
}

impl NondimGroups {
    pub fn new(params: MaterialParams, omega: f64) -> Result<Self> {
        check_nonnegative("omega", omega)?;
        Ok(Self { params, omega })
    }

    pub fn tau1(&self) -> f64 {
        tau1(&self.params)
    }

    pub fn tau2(&self, xi: f64) -> f64 {
        tau2(&self.params, xi)
    }

    /// `ω·τ2(ξ)`, the argument of the nondimensional dispersion formulas.
    pub fn omega_tau(&self, xi: f64) -> f64 {
        self.omega * self.tau2(xi)
    }
}
