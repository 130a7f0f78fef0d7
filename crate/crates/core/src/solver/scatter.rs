//! Sound-soft scattering by a disk, solved on a boundary-fitted polar annulus
//! with an absorbing layer at the outer rim.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use super::grid::{Edge, Grid2D, PolarGrid};
use super::{assemble, AbsorbingLayerSpec, ComplexField, Homogeneous, IncidentTrace};
use crate::dispersion::propagating_wavenumber;
use crate::error::{check_positive, Error, Result};
use crate::medium::{Director, MaterialParams};
use crate::reflection::{BoundaryKind, PlaneWave};
use crate::vec2::Vec2;

/// Inputs of [`scatter_bvp`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterRequest {
    pub params: MaterialParams,
    pub omega: f64,
    pub director: Director,
    /// Incidence angle: the incident wave travels along `(cosψ, sinψ)`.
    pub psi: f64,
    pub radius: f64,
    pub outer_radius: f64,
    pub layer: AbsorbingLayerSpec,
    /// Radial points per shortest wavelength.
    pub points_per_wavelength: f64,
    /// Angular node count; by default the smallest power of two that gives
    /// the radial spacing along the inner edge of the layer.
    pub theta_nodes: Option<usize>,
}

impl ScatterRequest {
    /// Wavenumber of the incident wave.
    pub fn incident_wavenumber(&self) -> f64 {
        let d = Vec2::from_angle(self.psi);
        let xi = libm::acos(self.director.cos_to(d).clamp(-1.0, 1.0));
        propagating_wavenumber(&self.params, self.omega, xi)
    }

    /// Shortest propagating wavelength over all directions.
    pub fn shortest_wavelength(&self) -> f64 {
        TAU / propagating_wavenumber(&self.params, self.omega, FRAC_PI_2)
    }

    pub fn incident_wave(&self) -> PlaneWave {
        PlaneWave {
            s0: Complex64::new(1.0, 0.0),
            k: Complex64::new(self.incident_wavenumber(), 0.0),
            d: Vec2::from_angle(self.psi),
        }
    }

    /// Outer radius `R + free·λ + layer width`, with `λ` the incident wavelength.
    pub fn rim_for(radius: f64, wavelength: f64, free_wavelengths: f64, layer_width: f64) -> f64 {
        radius + free_wavelengths * wavelength + layer_width
    }

    pub fn grid(&self) -> Result<PolarGrid> {
        let h = self.shortest_wavelength() / self.points_per_wavelength;
        let nr_cells = libm::ceil((self.outer_radius - self.radius) / h) as usize;
        let nt = match self.theta_nodes {
            Some(n) => n,
            None => {
                let arc = TAU * (self.outer_radius - self.layer.width);
                (libm::ceil(arc / h) as usize).max(8).next_power_of_two()
            }
        };
        PolarGrid::new(self.radius, self.outer_radius, nr_cells, nt)
    }
}

/// Scattered field on the annulus.
#[derive(Debug, Clone)]
pub struct ScatterSolution {
    pub scattered: ComplexField,
    pub auxiliary: ComplexField,
    pub grid: PolarGrid,
    pub k: f64,
    pub residual: f64,
    pub iterations: usize,
}

impl ScatterSolution {
    pub fn value(&self, ir: usize, it: usize) -> Complex64 {
        self.scattered.values[self.grid.index(ir, it)]
    }

    /// Index of the radial node closest to `r`.
    pub fn nearest_ring(&self, r: f64) -> usize {
        let i = libm::round((r - self.grid.r_inner) / self.grid.hr);
        (i.max(0.0) as usize).min(self.grid.nr - 1)
    }

    /// Index of the angular node closest to `theta`.
    pub fn nearest_angle(&self, theta: f64) -> usize {
        let wrapped = theta - TAU * libm::floor(theta / TAU);
        let t = libm::round(wrapped / self.grid.htheta) as usize;
        t % self.grid.ntheta
    }

    /// `(r, S)` along the ray at angular node `it`, for `r_min ≤ r ≤ r_max`.
    pub fn ray(&self, it: usize, r_min: f64, r_max: f64) -> Vec<(f64, Complex64)> {
        (0..self.grid.nr)
            .map(|ir| (self.grid.radius(ir), self.value(ir, it)))
            .filter(|(r, _)| *r >= r_min - 1e-12 && *r <= r_max + 1e-12)
            .collect()
    }

    /// Relative `L²` distance to `exact(r, θ)` over `r_min ≤ r ≤ r_max`.
    pub fn relative_l2_error(&self, exact: impl Fn(f64, f64) -> Complex64, r_min: f64, r_max: f64) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for ir in 0..self.grid.nr {
            let r = self.grid.radius(ir);
            if r < r_min - 1e-12 || r > r_max + 1e-12 {
                continue;
            }
            for it in 0..self.grid.ntheta {
                let e = exact(r, self.grid.angle(it));
                num += r * (self.value(ir, it) - e).norm_sqr();
                den += r * e.norm_sqr();
            }
        }
        libm::sqrt(num / den)
    }

    /// `max_θ |∂_r S - ikS| / max_θ |kS|` on ring `ir` (central difference).
    pub fn sommerfeld_defect(&self, ir: usize) -> f64 {
        let ir = ir.clamp(1, self.grid.nr - 2);
        let k = self.k;
        let (mut defect, mut scale) = (0.0_f64, 0.0_f64);
        for it in 0..self.grid.ntheta {
            let dr = (self.value(ir + 1, it) - self.value(ir - 1, it)) / (2.0 * self.grid.hr);
            let s = self.value(ir, it);
            defect = defect.max((dr - Complex64::new(0.0, k) * s).norm());
            scale = scale.max((s * k).norm());
        }
        defect / scale
    }
}

/// Solves the sound-soft scattering problem for an incident plane wave.
pub fn scatter_bvp(req: &ScatterRequest) -> Result<ScatterSolution> {
    check_positive("omega", req.omega)?;
    let k = req.incident_wavenumber();
    let wavelength = TAU / k;
    let needed = req.radius + 3.0 * wavelength + req.layer.width;
    if req.outer_radius < needed * (1.0 - 1e-9) {
        return Err(Error::Domain("outer radius must be at least R + 3 wavelengths + layer width"));
    }
    let polar = req.grid()?;
    let grid = Grid2D::Polar(polar);
    let mut system = assemble(&req.params, req.omega, &req.director, &grid, Some(&req.layer), None)?;
    let incident = IncidentTrace::new(req.incident_wave(), BoundaryKind::SoundSoft, &req.params, &req.director);
    system.apply_bc(Edge::Inner, BoundaryKind::SoundSoft, &incident)?;
    system.apply_bc(Edge::Outer, BoundaryKind::SoundSoft, &Homogeneous)?;
    let sol = system.solve()?;
    Ok(ScatterSolution {
        scattered: sol.s,
        auxiliary: sol.v,
        grid: polar,
        k,
        residual: sol.residual,
        iterations: sol.iterations,
    })
}
