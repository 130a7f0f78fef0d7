//! Finite-difference solver for the time-harmonic (nematic) Helmholtz–Korteweg
//! equation in mixed form.
//!
//! With the auxiliary unknown `v = ρ0²(u1ΔS + u2 D_nn S)` the fourth-order
//! equation becomes two second-order block rows
//!
//! ```text
//! -(ω² + iωσ(x)) S - c0²ΔS + Δv = f
//!  v - ρ0²u1 ΔS - ρ0²u2 D_nn S   = 0
//! ```
//!
//! where `σ` is an optional absorbing layer. Sound-soft boundaries become
//! Dirichlet conditions on `(S, v)`, sound-hard ones Neumann conditions, and
//! impedance boundaries Robin conditions `∂_ν u = iζu` on both unknowns.
//!
//! Cartesian systems are solved with a banded LU; polar systems with GMRES
//! preconditioned by the θ-averaged operator, diagonalized by an FFT.

mod banded;
mod fft;
mod gmres;
mod grid;
mod precond;
mod scatter;
mod sparse;
pub mod stencil;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

pub use banded::BandedLu;
pub use fft::Fft;
pub use gmres::{gmres, GmresOptions, GmresReport};
pub use grid::{CartesianGrid, Edge, Grid2D, PolarGrid};
pub use scatter::{scatter_bvp, ScatterRequest, ScatterSolution};
pub use sparse::{norm2, relative_residual, CsrMatrix};
pub use stencil::Stencil;

use crate::dispersion::propagating_wavenumber;
use crate::error::{check_nonnegative, check_positive, Error, Result};
use crate::medium::{Director, MaterialParams};
use crate::reflection::{BoundaryKind, PlaneWave};
use crate::vec2::Vec2;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Required contract on `‖Au - b‖/‖b‖`.
pub const RESIDUAL_CONTRACT: f64 = 1e-8;

/// Minimum points per shortest wavelength.
pub const MIN_POINTS_PER_WAVELENGTH: f64 = 8.0;

/// Absorption `σ = σmax·(depth/width)^degree` inside a layer of the given
/// width along the outer boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorbingLayerSpec {
    pub width: f64,
    pub sigma_max: f64,
    pub ramp_degree: i32,
    /// Cartesian edges carrying the layer; ignored on polar grids, where the
    /// layer always sits at the outer radius.
    pub edges: [bool; 4],
}

impl AbsorbingLayerSpec {
    pub fn new(width: f64, sigma_max: f64) -> Result<Self> {
        Ok(Self {
            width: check_positive("layer width", width)?,
            sigma_max: check_nonnegative("sigma_max", sigma_max)?,
            ramp_degree: 3,
            edges: [true; 4],
        })
    }

    pub fn with_degree(mut self, degree: i32) -> Self {
        self.ramp_degree = degree;
        self
    }

    /// Restricts a Cartesian layer to the listed edges.
    pub fn on_edges(mut self, edges: &[Edge]) -> Self {
        self.edges = [false; 4];
        for e in edges {
            if let Some(i) = cartesian_edge_slot(*e) {
                self.edges[i] = true;
            }
        }
        self
    }

    pub fn sigma(&self, depth: f64) -> f64 {
        if depth <= 0.0 {
            0.0
        } else {
            self.sigma_max * libm::pow((depth / self.width).min(1.0), self.ramp_degree as f64)
        }
    }

    fn depth(&self, grid: &Grid2D, x: Vec2) -> f64 {
        match grid {
            Grid2D::Polar(g) => x.norm() - (g.r_outer - self.width),
            Grid2D::Cartesian(g) => {
                let x1 = g.origin.x + (g.n[0] - 1) as f64 * g.h[0];
                let y1 = g.origin.y + (g.n[1] - 1) as f64 * g.h[1];
                let dist = [x.x - g.origin.x, x1 - x.x, x.y - g.origin.y, y1 - x.y];
                let periodic = [g.periodic[0], g.periodic[0], g.periodic[1], g.periodic[1]];
                (0..4)
                    .filter(|&i| self.edges[i] && !periodic[i])
                    .map(|i| self.width - dist[i])
                    .fold(f64::NEG_INFINITY, f64::max)
            }
        }
    }
}

fn cartesian_edge_slot(e: Edge) -> Option<usize> {
    match e {
        Edge::Left => Some(0),
        Edge::Right => Some(1),
        Edge::Bottom => Some(2),
        Edge::Top => Some(3),
        _ => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldRole {
    /// The condensation amplitude `S`.
    Condensation,
    /// The auxiliary unknown `v`.
    Auxiliary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    pub grid: Grid2D,
    pub values: Vec<Complex64>,
    pub role: FieldRole,
}

impl ComplexField {
    pub fn coord(&self, node: usize) -> Vec2 {
        self.grid.coord(node)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite())
    }
}

/// Coefficients of the two block rows:
/// `-(mass + iωσ)S - stiffness·ΔS + Δv = f`, `v - k1ΔS - k2 D_nn S = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorCoefficients {
    pub mass: f64,
    pub omega: f64,
    pub stiffness: f64,
    pub korteweg1: f64,
    pub korteweg2: f64,
}

impl OperatorCoefficients {
    pub fn helmholtz_korteweg(params: &MaterialParams, omega: f64) -> Self {
        Self {
            mass: omega * omega,
            omega,
            stiffness: params.c0() * params.c0(),
            korteweg1: params.korteweg1(),
            korteweg2: params.korteweg2(),
        }
    }

    /// `Δ²S = μS` written as `-μS + Δw = 0`, `w - ΔS = 0`.
    pub fn kirchhoff_love(mu: f64) -> Self {
        Self {
            mass: mu,
            omega: 0.0,
            stiffness: 0.0,
            korteweg1: 1.0,
            korteweg2: 0.0,
        }
    }
}

/// Boundary data `(g, g2)` for the two unknowns at a boundary point with
/// outward normal `normal`. Its meaning follows the condition: values for
/// sound-soft, normal derivatives for sound-hard, `∂_ν - iζ` for impedance.
pub trait BoundaryData {
    fn eval(&self, x: Vec2, normal: Vec2) -> [Complex64; 2];
}

impl<F: Fn(Vec2, Vec2) -> [Complex64; 2]> BoundaryData for F {
    fn eval(&self, x: Vec2, normal: Vec2) -> [Complex64; 2] {
        self(x, normal)
    }
}

/// Zero data.
#[derive(Debug, Clone, Copy, Default)]
pub struct Homogeneous;

impl BoundaryData for Homogeneous {
    fn eval(&self, _: Vec2, _: Vec2) -> [Complex64; 2] {
        [Complex64::default(); 2]
    }
}

/// Data that cancels an incident plane wave, so the solved field is the
/// scattered part.
#[derive(Debug, Clone, Copy)]
pub struct IncidentTrace {
    pub wave: PlaneWave,
    pub kind: BoundaryKind,
    /// `v⁻ = factor·S⁻` for the incident wave.
    v_factor: Complex64,
}

impl IncidentTrace {
    pub fn new(wave: PlaneWave, kind: BoundaryKind, params: &MaterialParams, n: &Director) -> Self {
        let dn = n.cos_to(wave.d);
        let k2 = wave.k * wave.k;
        let v_factor = -k2 * (params.korteweg1() + params.korteweg2() * dn * dn);
        Self { wave, kind, v_factor }
    }
}

impl BoundaryData for IncidentTrace {
    fn eval(&self, x: Vec2, normal: Vec2) -> [Complex64; 2] {
        let s = self.wave.value(x);
        let g = self.wave.gradient(x);
        let dn = g[0] * normal.x + g[1] * normal.y;
        let trace = match self.kind {
            BoundaryKind::SoundSoft => s,
            BoundaryKind::SoundHard => dn,
            BoundaryKind::Impedance(z) => dn - I * z * s,
        };
        [-trace, -trace * self.v_factor]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BcTag {
    Dirichlet,
    Neumann,
    Robin,
    /// Dirichlet on `S` plus vanishing excess pressure `c0²S - v`.
    Pressure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeTag {
    Interior,
    Boundary { edge: Edge, condition: Option<BcTag> },
}

/// Assembled block system; unknowns are interleaved as `(S_p, v_p)`.
#[derive(Debug, Clone)]
pub struct MixedSystem {
    grid: Grid2D,
    director: Director,
    coeffs: OperatorCoefficients,
    interior: CsrMatrix,
    boundary_rows: BTreeMap<usize, Vec<(usize, Complex64)>>,
    rhs: Vec<Complex64>,
    tags: Vec<NodeTag>,
}

/// Result of [`MixedSystem::solve`].
#[derive(Debug, Clone)]
pub struct Solution {
    pub s: ComplexField,
    pub v: ComplexField,
    /// `‖Au - b‖/‖b‖`.
    pub residual: f64,
    /// GMRES iterations (zero for the direct solver).
    pub iterations: usize,
}

/// Checks that the grid resolves the shortest propagating wavelength.
pub fn check_resolution(params: &MaterialParams, omega: f64, grid: &Grid2D) -> Result<()> {
    if omega == 0.0 {
        return Ok(());
    }
    let kmax = propagating_wavenumber(params, omega, core::f64::consts::FRAC_PI_2);
    let ppw = TAU / kmax / grid.max_spacing();
    if ppw < MIN_POINTS_PER_WAVELENGTH {
        return Err(Error::UnderResolved { points_per_wavelength: ppw });
    }
    Ok(())
}

/// Assembles the interior rows for the Helmholtz–Korteweg operator.
/// Boundary rows are filled afterwards with [`MixedSystem::apply_bc`].
pub fn assemble(
    params: &MaterialParams,
    omega: f64,
    n: &Director,
    grid: &Grid2D,
    layer: Option<&AbsorbingLayerSpec>,
    source: Option<&dyn Fn(Vec2) -> Complex64>,
) -> Result<MixedSystem> {
    check_nonnegative("omega", omega)?;
    check_resolution(params, omega, grid)?;
    let coeffs = OperatorCoefficients::helmholtz_korteweg(params, omega);
    Ok(assemble_with(&coeffs, n, grid, layer, source))
}

/// Assembles with explicit block-row coefficients (no resolution guard).
pub fn assemble_with(
    coeffs: &OperatorCoefficients,
    n: &Director,
    grid: &Grid2D,
    layer: Option<&AbsorbingLayerSpec>,
    source: Option<&dyn Fn(Vec2) -> Complex64>,
) -> MixedSystem {
    let nodes = grid.node_count();
    let mut rhs = vec![Complex64::default(); 2 * nodes];
    let mut tags = Vec::with_capacity(nodes);
    let mut blocks: Vec<Vec<(usize, Complex64)>> = Vec::with_capacity(2 * nodes);
    let real = |x: f64| Complex64::new(x, 0.0);
    for p in 0..nodes {
        let x = grid.coord(p);
        match stencil::node_stencils(grid, p, n) {
            None => {
                tags.push(NodeTag::Boundary {
                    edge: grid.edge_of(p).expect("boundary node without edge"),
                    condition: None,
                });
                blocks.push(Vec::new());
                blocks.push(Vec::new());
            }
            Some((lap, dnn)) => {
                tags.push(NodeTag::Interior);
                let sigma = layer.map_or(0.0, |l| l.sigma(l.depth(grid, x)));
                let mut r1 = Vec::with_capacity(11);
                r1.push((2 * p, -Complex64::new(coeffs.mass, coeffs.omega * sigma)));
                for &(q, w) in lap.entries() {
                    if coeffs.stiffness != 0.0 {
                        r1.push((2 * q, real(-coeffs.stiffness * w)));
                    }
                    r1.push((2 * q + 1, real(w)));
                }
                let mut r2 = Vec::with_capacity(10);
                r2.push((2 * p + 1, real(1.0)));
                for &(q, w) in lap.entries() {
                    r2.push((2 * q, real(-coeffs.korteweg1 * w)));
                }
                if coeffs.korteweg2 != 0.0 {
                    for &(q, w) in dnn.entries() {
                        r2.push((2 * q, real(-coeffs.korteweg2 * w)));
                    }
                }
                if let Some(f) = source {
                    rhs[2 * p] = f(x);
                }
                blocks.push(r1);
                blocks.push(r2);
            }
        }
    }
    MixedSystem {
        grid: *grid,
        director: *n,
        coeffs: *coeffs,
        interior: CsrMatrix::from_rows(2 * nodes, blocks),
        boundary_rows: BTreeMap::new(),
        rhs,
        tags,
    }
}

impl MixedSystem {
    pub fn grid(&self) -> &Grid2D {
        &self.grid
    }

    pub fn director(&self) -> &Director {
        &self.director
    }

    pub fn coefficients(&self) -> &OperatorCoefficients {
        &self.coeffs
    }

    pub fn rhs(&self) -> &[Complex64] {
        &self.rhs
    }

    pub fn tags(&self) -> &[NodeTag] {
        &self.tags
    }

    /// Nodes whose boundary rows are still unset.
    pub fn unset_boundary_nodes(&self) -> usize {
        self.tags
            .iter()
            .filter(|t| matches!(t, NodeTag::Boundary { condition: None, .. }))
            .count()
    }

    fn set_rows(&mut self, p: usize, tag: BcTag, rows: [Vec<(usize, Complex64)>; 2], data: [Complex64; 2]) {
        let [a, b] = rows;
        self.boundary_rows.insert(2 * p, a);
        self.boundary_rows.insert(2 * p + 1, b);
        self.rhs[2 * p] = data[0];
        self.rhs[2 * p + 1] = data[1];
        if let NodeTag::Boundary { condition, .. } = &mut self.tags[p] {
            *condition = Some(tag);
        }
    }

    fn edge_targets(&self, edge: Edge) -> Result<Vec<usize>> {
        let nodes = self.grid.edge_nodes(edge);
        if nodes.is_empty() {
            return Err(Error::UnsupportedBoundary("edge does not exist on this grid"));
        }
        Ok(nodes)
    }

    /// Fills the boundary rows of `edge`. On shared corners an existing
    /// Dirichlet-type row is kept; other rows are overwritten.
    pub fn apply_bc(&mut self, edge: Edge, kind: BoundaryKind, data: &dyn BoundaryData) -> Result<&mut Self> {
        kind.validate()?;
        let one = Complex64::new(1.0, 0.0);
        for p in self.edge_targets(edge)? {
            let existing = match self.tags[p] {
                NodeTag::Boundary { condition, .. } => condition,
                NodeTag::Interior => continue,
            };
            if matches!(existing, Some(BcTag::Dirichlet | BcTag::Pressure)) {
                continue;
            }
            let x = self.grid.coord(p);
            let normal = self.grid.outward_normal(p, edge);
            let g = data.eval(x, normal);
            match kind {
                BoundaryKind::SoundSoft => {
                    self.set_rows(p, BcTag::Dirichlet, [vec![(2 * p, one)], vec![(2 * p + 1, one)]], g);
                }
                BoundaryKind::SoundHard | BoundaryKind::Impedance(_) => {
                    let (a, b, h) = self
                        .grid
                        .inward(p, edge)
                        .ok_or(Error::UnsupportedBoundary("grid too small for one-sided closure"))?;
                    let zeta = match kind {
                        BoundaryKind::Impedance(z) => z,
                        _ => Complex64::default(),
                    };
                    // ∂_ν u ≈ (3u_p - 4u_a + u_b)/(2h)
                    let row = |c: usize| {
                        vec![
                            (2 * p + c, Complex64::new(1.5 / h, 0.0) - I * zeta),
                            (2 * a + c, Complex64::new(-2.0 / h, 0.0)),
                            (2 * b + c, Complex64::new(0.5 / h, 0.0)),
                        ]
                    };
                    let tag = if matches!(kind, BoundaryKind::SoundHard) {
                        BcTag::Neumann
                    } else {
                        BcTag::Robin
                    };
                    self.set_rows(p, tag, [row(0), row(1)], g);
                }
            }
        }
        Ok(self)
    }

    /// Sound-soft rows written as `S = g` and `c0²S - v = c0²g - g2`, i.e.
    /// vanishing excess pressure instead of `v = g2`. The solution is the
    /// same as with [`MixedSystem::apply_bc`].
    pub fn apply_soft_pressure_form(&mut self, edge: Edge, data: &dyn BoundaryData) -> Result<&mut Self> {
        let one = Complex64::new(1.0, 0.0);
        let c2 = Complex64::new(self.coeffs.stiffness, 0.0);
        for p in self.edge_targets(edge)? {
            if !matches!(self.tags[p], NodeTag::Boundary { condition: None, .. }) {
                continue;
            }
            let x = self.grid.coord(p);
            let g = data.eval(x, self.grid.outward_normal(p, edge));
            self.set_rows(
                p,
                BcTag::Pressure,
                [vec![(2 * p, one)], vec![(2 * p, c2), (2 * p + 1, -one)]],
                [g[0], c2 * g[0] - g[1]],
            );
        }
        Ok(self)
    }

    /// The full operator, boundary rows included (unset rows are empty).
    pub fn operator(&self) -> CsrMatrix {
        let n = self.interior.dim();
        CsrMatrix::from_rows(
            n,
            (0..n).map(|i| -> Vec<(usize, Complex64)> {
                match self.boundary_rows.get(&i) {
                    Some(r) => r.clone(),
                    None => {
                        let (c, v) = self.interior.row(i);
                        c.iter().copied().zip(v.iter().copied()).collect()
                    }
                }
            }),
        )
    }

    /// Solves to the residual contract.
    pub fn solve(&self) -> Result<Solution> {
        let unset = self.unset_boundary_nodes();
        if unset > 0 {
            return Err(Error::MissingBoundary { count: unset });
        }
        let a = self.operator();
        let n = a.dim();
        let mut x = vec![Complex64::default(); n];
        let mut iterations = 0;
        let residual = match &self.grid {
            Grid2D::Cartesian(_) => {
                let (kl, ku) = a.bandwidths();
                if (2 * kl + ku + 1).saturating_mul(n) > 400_000_000 {
                    return Err(Error::UnsupportedBoundary("bandwidth too large for the direct solver"));
                }
                let lu = BandedLu::from_csr(&a)?;
                x.copy_from_slice(&self.rhs);
                lu.solve(&mut x);
                let mut res = relative_residual(&a, &x, &self.rhs);
                let mut ax = vec![Complex64::default(); n];
                for _ in 0..3 {
                    if res < 1e-12 {
                        break;
                    }
                    a.matvec(&x, &mut ax);
                    let mut r: Vec<Complex64> = self.rhs.iter().zip(&ax).map(|(b, y)| b - y).collect();
                    lu.solve(&mut r);
                    x.iter_mut().zip(&r).for_each(|(u, d)| *u += d);
                    res = relative_residual(&a, &x, &self.rhs);
                }
                res
            }
            Grid2D::Polar(g) => {
                let pre = precond::FourierRadial::new(&a, g)?;
                let opts = GmresOptions {
                    restart: 20,
                    max_iterations: 400,
                    tolerance: 1e-10,
                };
                let report = gmres(|u, out| a.matvec(u, out), |u, out| pre.apply(u, out), &self.rhs, &mut x, &opts);
                iterations = report.iterations;
                relative_residual(&a, &x, &self.rhs)
            }
        };
        if !(residual < RESIDUAL_CONTRACT) {
            return Err(Error::NotConverged { residual, iterations });
        }
        let (s, v): (Vec<_>, Vec<_>) = x.chunks_exact(2).map(|c| (c[0], c[1])).unzip();
        Ok(Solution {
            s: ComplexField {
                grid: self.grid,
                values: s,
                role: FieldRole::Condensation,
            },
            v: ComplexField {
                grid: self.grid,
                values: v,
                role: FieldRole::Auxiliary,
            },
            residual,
            iterations,
        })
    }
}
