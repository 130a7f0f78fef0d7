//! Leapfrog integration of the linearized (nematic) Korteweg wave equation
//!
//! ```text
//! ∂²_t s = c0²Δs - Δv,   v = ρ0²(u1Δs + u2 D_nn s),
//! ```
//!
//! on Cartesian grids that are periodic, or sound-soft (`s = v = 0`) on
//! non-periodic edges. The spatial operator is the one assembled by the
//! solver module.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use crate::dispersion::phase_speed;
use crate::error::{check_positive, Error, Result};
use crate::medium::{Director, MaterialParams};
use crate::solver::CartesianGrid;
use crate::vec2::Vec2;

/// Fraction of `dt_max` used when no step is given.
pub const SAFETY: f64 = 0.9;

/// `2/√λmax` with `λmax = c0²·8/h² + ρ0²(u1+u2)·64/h⁴`, `h` the smaller spacing.
pub fn dt_max(params: &MaterialParams, grid: &CartesianGrid) -> f64 {
    let h = grid.h[0].min(grid.h[1]);
    let c2 = params.c0() * params.c0();
    let lam = c2 * 8.0 / (h * h) + (params.korteweg1() + params.korteweg2()) * 64.0 / (h * h * h * h);
    2.0 / libm::sqrt(lam)
}

/// Operator `L s = c0²Δs - Δv` with precomputed stencil weights.
#[derive(Debug, Clone)]
pub struct WaveOperator {
    grid: CartesianGrid,
    c2: f64,
    k1: f64,
    k2: f64,
    ax: f64,
    ay: f64,
    /// `(nx²/hx², 2nxny/(4hxhy), ny²/hy²)`.
    dnn: [f64; 3],
}

impl WaveOperator {
    pub fn new(params: &MaterialParams, n: &Director, grid: &CartesianGrid) -> Self {
        let v = n.vector();
        let (hx, hy) = (grid.h[0], grid.h[1]);
        Self {
            grid: *grid,
            c2: params.c0() * params.c0(),
            k1: params.korteweg1(),
            k2: params.korteweg2(),
            ax: 1.0 / (hx * hx),
            ay: 1.0 / (hy * hy),
            dnn: [v.x * v.x / (hx * hx), 2.0 * v.x * v.y / (4.0 * hx * hy), v.y * v.y / (hy * hy)],
        }
    }

    pub fn grid(&self) -> &CartesianGrid {
        &self.grid
    }

    /// Neighbor index offsets in the `(i±1, j±1)` pattern, or `None` on a
    /// non-periodic boundary node.
    #[inline]
    fn neighbors(&self, i: usize, j: usize) -> Option<[usize; 4]> {
        let [nx, ny] = self.grid.n;
        let [px, py] = self.grid.periodic;
        let wrap = |v: usize, n: usize, p: bool| -> Option<(usize, usize)> {
            if v == 0 {
                p.then(|| (n - 1, 1 % n))
            } else if v + 1 == n {
                p.then(|| (v - 1, 0))
            } else {
                Some((v - 1, v + 1))
            }
        };
        let (im, ip) = wrap(i, nx, px)?;
        let (jm, jp) = wrap(j, ny, py)?;
        Some([im, ip, jm, jp])
    }

    fn laplacian(&self, s: &[f64], out: &mut [f64]) {
        let nx = self.grid.n[0];
        for j in 0..self.grid.n[1] {
            for i in 0..nx {
                let p = j * nx + i;
                out[p] = match self.neighbors(i, j) {
                    None => 0.0,
                    Some([im, ip, jm, jp]) => {
                        self.ax * (s[j * nx + im] + s[j * nx + ip] - 2.0 * s[p])
                            + self.ay * (s[jm * nx + i] + s[jp * nx + i] - 2.0 * s[p])
                    }
                };
            }
        }
    }

    /// `v = ρ0²(u1Δs + u2 D_nn s)`, zero on non-periodic boundary nodes.
    fn auxiliary(&self, s: &[f64], out: &mut [f64]) {
        let nx = self.grid.n[0];
        let [dxx, dxy, dyy] = self.dnn;
        for j in 0..self.grid.n[1] {
            for i in 0..nx {
                let p = j * nx + i;
                out[p] = match self.neighbors(i, j) {
                    None => 0.0,
                    Some([im, ip, jm, jp]) => {
                        let sxx = s[j * nx + im] + s[j * nx + ip] - 2.0 * s[p];
                        let syy = s[jm * nx + i] + s[jp * nx + i] - 2.0 * s[p];
                        let sxy = s[jp * nx + ip] + s[jm * nx + im] - s[jm * nx + ip] - s[jp * nx + im];
                        self.k1 * (self.ax * sxx + self.ay * syy) + self.k2 * (dxx * sxx + dxy * sxy + dyy * syy)
                    }
                };
            }
        }
    }

    /// `out = L s`; `scratch` must have the same length.
    pub fn apply(&self, s: &[f64], out: &mut [f64], scratch: &mut [f64]) {
        self.auxiliary(s, scratch);
        let v = scratch.to_vec();
        self.laplacian(&v, scratch);
        self.laplacian(s, out);
        for (o, dv) in out.iter_mut().zip(scratch.iter()) {
            *o = self.c2 * *o - dv;
        }
    }
}

/// Two consecutive time levels.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseState {
    pub prev: Vec<f64>,
    pub cur: Vec<f64>,
    pub t: f64,
    pub step: usize,
}

impl PulseState {
    /// Starts from `s(0) = s0`, `∂_t s(0) = 0` using the second-order
    /// Taylor start `s(-dt) = s(dt) = s0 + dt²/2 L s0`.
    pub fn at_rest(op: &WaveOperator, s0: Vec<f64>, dt: f64) -> Self {
        let n = s0.len();
        let mut ls = vec![0.0; n];
        let mut scratch = vec![0.0; n];
        op.apply(&s0, &mut ls, &mut scratch);
        let prev = s0.iter().zip(&ls).map(|(s, l)| s + 0.5 * dt * dt * l).collect();
        Self {
            prev,
            cur: s0,
            t: 0.0,
            step: 0,
        }
    }
}

/// Leapfrog stepper bound to an operator and a time step.
#[derive(Debug, Clone)]
pub struct Stepper {
    pub op: WaveOperator,
    pub dt: f64,
    work: Vec<f64>,
    scratch: Vec<f64>,
}

impl Stepper {
    /// Rejects `dt` above the stability bound unless `allow_unstable` is set.
    pub fn new(params: &MaterialParams, n: &Director, grid: &CartesianGrid, dt: f64, allow_unstable: bool) -> Result<Self> {
        check_positive("dt", dt)?;
        let limit = dt_max(params, grid);
        if dt > limit && !allow_unstable {
            return Err(Error::Unstable { dt, dt_max: limit });
        }
        let nodes = grid.node_count();
        Ok(Self {
            op: WaveOperator::new(params, n, grid),
            dt,
            work: vec![0.0; nodes],
            scratch: vec![0.0; nodes],
        })
    }

    /// `s^{n+1} = 2s^n - s^{n-1} + dt² L s^n`.
    pub fn step(&mut self, state: &mut PulseState) {
        self.op.apply(&state.cur, &mut self.work, &mut self.scratch);
        let dt2 = self.dt * self.dt;
        for ((p, c), l) in state.prev.iter_mut().zip(&state.cur).zip(&self.work) {
            *p = 2.0 * c - *p + dt2 * l;
        }
        core::mem::swap(&mut state.prev, &mut state.cur);
        state.t += self.dt;
        state.step += 1;
    }

    /// Discrete energy between the two stored levels,
    /// `½‖(s^n - s^{n-1})/dt‖² - ½⟨s^n, L s^{n-1}⟩`, times the cell area.
    /// Conserved exactly by the scheme on periodic grids.
    pub fn energy(&mut self, state: &PulseState) -> f64 {
        discrete_energy_with(&self.op, state, self.dt, &mut self.work, &mut self.scratch)
    }
}

fn discrete_energy_with(op: &WaveOperator, state: &PulseState, dt: f64, work: &mut [f64], scratch: &mut [f64]) -> f64 {
    op.apply(&state.prev, work, scratch);
    let area = op.grid.h[0] * op.grid.h[1];
    let mut kinetic = 0.0;
    let mut potential = 0.0;
    for ((c, p), l) in state.cur.iter().zip(&state.prev).zip(work.iter()) {
        let ds = (c - p) / dt;
        kinetic += ds * ds;
        potential -= c * l;
    }
    0.5 * (kinetic + potential) * area
}

/// See [`Stepper::energy`].
pub fn discrete_energy(state: &PulseState, params: &MaterialParams, n: &Director, grid: &CartesianGrid, dt: f64) -> f64 {
    let op = WaveOperator::new(params, n, grid);
    let nodes = grid.node_count();
    discrete_energy_with(&op, state, dt, &mut vec![0.0; nodes], &mut vec![0.0; nodes])
}

/// One leapfrog step with a fresh operator.
pub fn step(state: &mut PulseState, params: &MaterialParams, n: &Director, grid: &CartesianGrid, dt: f64) -> Result<()> {
    let mut stepper = Stepper::new(params, n, grid, dt, false)?;
    stepper.step(state);
    Ok(())
}

/// Tracks energy growth against the initial value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyMonitor {
    pub initial: f64,
    pub max_drift: f64,
    /// Set once `|E - E0| > tolerance·|E0|` or `E` stops being finite.
    pub growth_flag: bool,
    pub tolerance: f64,
}

impl EnergyMonitor {
    pub fn new(initial: f64, tolerance: f64) -> Self {
        Self {
            initial,
            max_drift: 0.0,
            growth_flag: false,
            tolerance,
        }
    }

    pub fn record(&mut self, e: f64) {
        let drift = if self.initial != 0.0 {
            ((e - self.initial) / self.initial).abs()
        } else {
            e.abs()
        };
        if !drift.is_finite() {
            self.max_drift = f64::INFINITY;
            self.growth_flag = true;
            return;
        }
        self.max_drift = self.max_drift.max(drift);
        if drift > self.tolerance {
            self.growth_flag = true;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gaussian {
    pub center: Vec2,
    pub width: f64,
    pub amplitude: f64,
}

impl Gaussian {
    /// `A·exp(-|x - c|²/w²)`.
    pub fn eval(&self, x: Vec2) -> f64 {
        let d = x - self.center;
        self.amplitude * libm::exp(-d.dot(d) / (self.width * self.width))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub field: Vec<f64>,
}

/// Runs a Gaussian pulse released at rest and records the field at each of
/// `times` (sorted, each rounded to the nearest step). The step is
/// `SAFETY·dt_max` unless `dt` is given.
pub fn run_pulse(
    params: &MaterialParams,
    n: &Director,
    grid: &CartesianGrid,
    gaussian: &Gaussian,
    times: &[f64],
    dt: Option<f64>,
) -> Result<Vec<Snapshot>> {
    if gaussian.width < 4.0 * grid.h[0].max(grid.h[1]) {
        return Err(Error::Domain("pulse width must cover at least 4 grid spacings"));
    }
    let dt = dt.unwrap_or(SAFETY * dt_max(params, grid));
    let mut stepper = Stepper::new(params, n, grid, dt, false)?;
    let s0 = (0..grid.node_count()).map(|p| gaussian.eval(grid.coord(p))).collect();
    let mut state = PulseState::at_rest(&stepper.op, s0, dt);
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let target = libm::round(t / dt) as usize;
        while state.step < target {
            stepper.step(&mut state);
        }
        out.push(Snapshot {
            t: state.t,
            field: state.cur.clone(),
        });
    }
    Ok(out)
}

/// Outermost distance from `center` along `dir` at which `|s|` reaches
/// `fraction` of the peak of `|s|` along that ray (first arrival seen from
/// outside). Samples at grid nodes on rays along axes and diagonals; other
/// directions use bilinear interpolation.
pub fn front_radius(grid: &CartesianGrid, field: &[f64], center: Vec2, dir: Vec2, fraction: f64) -> f64 {
    let dir = dir * (1.0 / dir.norm());
    let h = grid.h[0].min(grid.h[1]);
    let step = 0.5 * h;
    let reach = 0.5 * ((grid.n[0] as f64) * grid.h[0]).min((grid.n[1] as f64) * grid.h[1]);
    let samples: Vec<(f64, f64)> = (0..)
        .map(|i| i as f64 * step)
        .take_while(|r| *r < reach)
        .map(|r| (r, sample_bilinear(grid, field, center + dir * r).abs()))
        .collect();
    let peak = samples.iter().map(|s| s.1).fold(0.0, f64::max);
    let threshold = fraction * peak;
    let last = samples.iter().rposition(|s| s.1 >= threshold).unwrap_or(0);
    if last + 1 < samples.len() {
        // linear interpolation of the crossing
        let (r0, a0) = samples[last];
        let (r1, a1) = samples[last + 1];
        if a0 != a1 {
            return r0 + (a0 - threshold) / (a0 - a1) * (r1 - r0);
        }
    }
    samples[last].0
}

/// Bilinear interpolation with periodic wrap.
pub fn sample_bilinear(grid: &CartesianGrid, field: &[f64], x: Vec2) -> f64 {
    let [nx, ny] = grid.n;
    let fx = (x.x - grid.origin.x) / grid.h[0];
    let fy = (x.y - grid.origin.y) / grid.h[1];
    let (i0, j0) = (libm::floor(fx), libm::floor(fy));
    let (tx, ty) = (fx - i0, fy - j0);
    let idx = |i: f64, j: f64| {
        let ii = (i as isize).rem_euclid(nx as isize) as usize;
        let jj = (j as isize).rem_euclid(ny as isize) as usize;
        field[jj * nx + ii]
    };
    let a = idx(i0, j0) * (1.0 - tx) + idx(i0 + 1.0, j0) * tx;
    let b = idx(i0, j0 + 1.0) * (1.0 - tx) + idx(i0 + 1.0, j0 + 1.0) * tx;
    a * (1.0 - ty) + b * ty
}

/// Phase speed measured from the oscillation of a single mode on a periodic
/// strip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpeedMeasurement {
    pub k: f64,
    pub measured: f64,
    pub predicted: f64,
    pub relative_deviation: f64,
}

/// Puts `cos(k x)` on a periodic strip aligned with `(cosξ, sinξ)` relative
/// to the director, with `k` the propagating root at `omega_target`, and times
/// the zero crossings at one node. `cells_per_wavelength` fixes the strip
/// resolution and `periods` how many oscillations are timed.
pub fn measure_phase_speed(
    params: &MaterialParams,
    xi: f64,
    omega_target: f64,
    cells_per_wavelength: usize,
    periods: usize,
) -> Result<PhaseSpeedMeasurement> {
    check_positive("omega_target", omega_target)?;
    let predicted = phase_speed(params, omega_target, xi);
    let k = omega_target / predicted;
    let wavelength = TAU / k;
    // propagation along x, director at angle ξ from it
    let n = Director::from_angle(xi);
    let grid = CartesianGrid::new(
        [0.0, wavelength],
        [0.0, 4.0 * wavelength / cells_per_wavelength as f64],
        [cells_per_wavelength, 4],
        [true, true],
    )?;
    let dt = 0.5 * dt_max(params, &grid);
    let mut stepper = Stepper::new(params, &n, &grid, dt, false)?;
    let s0 = (0..grid.node_count())
        .map(|p| libm::cos(k * grid.coord(p).x))
        .collect();
    let mut state = PulseState::at_rest(&stepper.op, s0, dt);
    let mut crossings = Vec::new();
    let mut last = state.cur[0];
    let wanted = 2 * periods + 1;
    let limit = (periods as f64 + 2.0) * TAU / (omega_target * 0.5) / dt;
    while crossings.len() < wanted && (state.step as f64) < limit {
        stepper.step(&mut state);
        let now = state.cur[0];
        if (last > 0.0) != (now > 0.0) {
            let t0 = state.t - dt;
            crossings.push(t0 + dt * last / (last - now));
        }
        last = now;
    }
    if crossings.len() < wanted {
        return Err(Error::Domain("mode did not oscillate within the time budget"));
    }
    let period = (crossings[wanted - 1] - crossings[0]) / periods as f64;
    let measured = TAU / period / k;
    Ok(PhaseSpeedMeasurement {
        k,
        measured,
        predicted,
        relative_deviation: (measured - predicted) / predicted,
    })
}
