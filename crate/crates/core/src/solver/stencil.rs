//! Second-order stencils for `Δ` and `D_nn = n·(HS)n = ∇·((n⊗n)∇S)`.
//!
//! Cartesian: 5-point Laplacian; `D_nn = nx²δxx + 2nxny δxy + ny²δyy` with the
//! 4-point centered cross difference. Polar: the Hessian in the `(e_r, e_θ)`
//! frame, `H_rr = S_rr`, `H_rθ = S_rθ/r - S_θ/r²`, `H_θθ = S_r/r + S_θθ/r²`,
//! contracted with `n_r = n·e_r`, `n_θ = n·e_θ`.

use core::ops::{Add, Mul};

use super::grid::{CartesianGrid, Grid2D, PolarGrid};
use crate::medium::Director;

pub const MAX_ENTRIES: usize = 9;

/// Sparse row of at most nine `(node, weight)` pairs, duplicates merged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    entries: [(usize, f64); MAX_ENTRIES],
    len: usize,
}

impl Default for Stencil {
    fn default() -> Self {
        Self {
            entries: [(0, 0.0); MAX_ENTRIES],
            len: 0,
        }
    }
}

impl Stencil {
    pub fn push(&mut self, node: usize, w: f64) {
        if let Some(e) = self.entries[..self.len].iter_mut().find(|e| e.0 == node) {
            e.1 += w;
            return;
        }
        self.entries[self.len] = (node, w);
        self.len += 1;
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries[..self.len]
    }

    pub fn apply<T>(&self, values: &[T]) -> T
    where
        T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
    {
        self.entries()
            .iter()
            .fold(T::default(), |acc, &(q, w)| acc + values[q] * w)
    }
}

/// `Δ` and `D_nn` at an interior node; `None` on boundary nodes.
pub fn node_stencils(grid: &Grid2D, node: usize, n: &Director) -> Option<(Stencil, Stencil)> {
    match grid {
        Grid2D::Cartesian(g) => cartesian(g, node, n),
        Grid2D::Polar(g) => polar(g, node, n),
    }
}

fn cartesian(g: &CartesianGrid, p: usize, n: &Director) -> Option<(Stencil, Stencil)> {
    if g.edge_of(p).is_some() {
        return None;
    }
    let v = n.vector();
    let (ax, ay) = (1.0 / (g.h[0] * g.h[0]), 1.0 / (g.h[1] * g.h[1]));
    let axy = 1.0 / (4.0 * g.h[0] * g.h[1]);
    let (nxx, nxy, nyy) = (v.x * v.x, 2.0 * v.x * v.y, v.y * v.y);
    let at = |di, dj| g.offset(p, di, dj);
    let mut lap = Stencil::default();
    let mut dnn = Stencil::default();
    lap.push(p, -2.0 * ax - 2.0 * ay);
    dnn.push(p, -2.0 * ax * nxx - 2.0 * ay * nyy);
    for (di, dj, w, wn) in [
        (1, 0, ax, ax * nxx),
        (-1, 0, ax, ax * nxx),
        (0, 1, ay, ay * nyy),
        (0, -1, ay, ay * nyy),
    ] {
        let q = at(di, dj)?;
        lap.push(q, w);
        dnn.push(q, wn);
    }
    for (di, dj, s) in [(1, 1, 1.0), (-1, -1, 1.0), (1, -1, -1.0), (-1, 1, -1.0)] {
        dnn.push(at(di, dj)?, s * nxy * axy);
    }
    Some((lap, dnn))
}

fn polar(g: &PolarGrid, p: usize, n: &Director) -> Option<(Stencil, Stencil)> {
    if g.edge_of(p).is_some() {
        return None;
    }
    let (ir, it) = g.split(p);
    let r = g.radius(ir);
    let (hr, ht) = (g.hr, g.htheta);
    // projections of n, so that n and -n give identical products
    let (c, s) = (libm::cos(g.angle(it)), libm::sin(g.angle(it)));
    let v = n.vector();
    let (n_r, n_t) = (v.x * c + v.y * s, v.y * c - v.x * s);
    let at = |dr, dt| g.offset(p, dr, dt);
    let (out, inn, up, down) = (at(1, 0)?, at(-1, 0)?, at(0, 1)?, at(0, -1)?);

    let arr = 1.0 / (hr * hr);
    let ar = 1.0 / (2.0 * hr * r);
    let att = 1.0 / (r * ht * r * ht);
    let mut lap = Stencil::default();
    lap.push(p, -2.0 * arr - 2.0 * att);
    lap.push(out, arr + ar);
    lap.push(inn, arr - ar);
    lap.push(up, att);
    lap.push(down, att);

    let mut dnn = Stencil::default();
    let (rr, tt, rt) = (n_r * n_r, n_t * n_t, 2.0 * n_r * n_t);
    // H_rr
    dnn.push(p, -2.0 * arr * rr);
    dnn.push(out, arr * rr);
    dnn.push(inn, arr * rr);
    // H_θθ = S_r/r + S_θθ/r²
    dnn.push(out, ar * tt);
    dnn.push(inn, -ar * tt);
    dnn.push(up, att * tt);
    dnn.push(down, att * tt);
    dnn.push(p, -2.0 * att * tt);
    // H_rθ = S_rθ/r - S_θ/r²
    let cross = rt / (4.0 * hr * ht * r);
    dnn.push(at(1, 1)?, cross);
    dnn.push(at(-1, -1)?, cross);
    dnn.push(at(1, -1)?, -cross);
    dnn.push(at(-1, 1)?, -cross);
    let st = rt / (2.0 * ht * r * r);
    dnn.push(up, -st);
    dnn.push(down, st);
    Some((lap, dnn))
}

/// `Δs` at every interior node, zero on boundary nodes.
pub fn apply_laplacian<T>(grid: &Grid2D, values: &[T], out: &mut [T])
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    let n = Director::default();
    for (p, o) in out.iter_mut().enumerate() {
        *o = node_stencils(grid, p, &n).map_or(T::default(), |(lap, _)| lap.apply(values));
    }
}

/// `D_nn s` at every interior node, zero on boundary nodes.
pub fn apply_dnn<T>(grid: &Grid2D, n: &Director, values: &[T], out: &mut [T])
where
    T: Copy + Default + Add<Output = T> + Mul<f64, Output = T>,
{
    for (p, o) in out.iter_mut().enumerate() {
        *o = node_stencils(grid, p, n).map_or(T::default(), |(_, dnn)| dnn.apply(values));
    }
}
