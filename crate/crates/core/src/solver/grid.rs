//! Structured grids: Cartesian boxes (optionally periodic per axis) and polar
//! annuli (periodic in θ, no duplicated seam node).

use core::f64::consts::TAU;

use crate::error::{check_positive, Error, Result};
use crate::vec2::Vec2;

/// A boundary of the computational domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Edge {
    Left,
    Right,
    Bottom,
    Top,
    /// `r = r_inner` of a polar annulus.
    Inner,
    /// `r = r_outer` of a polar annulus.
    Outer,
}

/// Nodes `origin + (i·hx, j·hy)`, `i < nx`, `j < ny`. Along a periodic axis the
/// node `n` coincides with node `0` and is not stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartesianGrid {
    pub origin: Vec2,
    pub h: [f64; 2],
    pub n: [usize; 2],
    pub periodic: [bool; 2],
}

impl CartesianGrid {
    /// Non-periodic box `[x0, x1] × [y0, y1]` split into `cells` intervals per axis.
    pub fn new_box(x: [f64; 2], y: [f64; 2], cells: [usize; 2]) -> Result<Self> {
        Self::new(x, y, cells, [false, false])
    }

    /// Box with the given periodicity. A periodic axis of length `L` with
    /// `cells` intervals stores `cells` nodes.
    pub fn new(x: [f64; 2], y: [f64; 2], cells: [usize; 2], periodic: [bool; 2]) -> Result<Self> {
        let lx = check_positive("x extent", x[1] - x[0])?;
        let ly = check_positive("y extent", y[1] - y[0])?;
        for (c, p) in cells.iter().zip(periodic) {
            if *c < if p { 3 } else { 2 } {
                return Err(Error::Domain("too few grid cells"));
            }
        }
        let nodes = |c: usize, p: bool| if p { c } else { c + 1 };
        Ok(Self {
            origin: Vec2::new(x[0], y[0]),
            h: [lx / cells[0] as f64, ly / cells[1] as f64],
            n: [nodes(cells[0], periodic[0]), nodes(cells[1], periodic[1])],
            periodic,
        })
    }

    pub fn node_count(&self) -> usize {
        self.n[0] * self.n[1]
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.n[0] + i
    }

    pub fn ij(&self, node: usize) -> (usize, usize) {
        (node % self.n[0], node / self.n[0])
    }

    pub fn coord(&self, node: usize) -> Vec2 {
        let (i, j) = self.ij(node);
        Vec2::new(self.origin.x + i as f64 * self.h[0], self.origin.y + j as f64 * self.h[1])
    }

    /// Index of the neighbor at offset `(di, dj)`, wrapping periodic axes.
    pub fn offset(&self, node: usize, di: isize, dj: isize) -> Option<usize> {
        let (i, j) = self.ij(node);
        let shift = |v: usize, d: isize, n: usize, p: bool| -> Option<usize> {
            let t = v as isize + d;
            if p {
                Some(t.rem_euclid(n as isize) as usize)
            } else if t >= 0 && (t as usize) < n {
                Some(t as usize)
            } else {
                None
            }
        };
        let ii = shift(i, di, self.n[0], self.periodic[0])?;
        let jj = shift(j, dj, self.n[1], self.periodic[1])?;
        Some(self.index(ii, jj))
    }

    /// The edge a node lies on, `None` for interior nodes. Corners report the
    /// x-edge (left/right).
    pub fn edge_of(&self, node: usize) -> Option<Edge> {
        let (i, j) = self.ij(node);
        if !self.periodic[0] {
            if i == 0 {
                return Some(Edge::Left);
            }
            if i + 1 == self.n[0] {
                return Some(Edge::Right);
            }
        }
        if !self.periodic[1] {
            if j == 0 {
                return Some(Edge::Bottom);
            }
            if j + 1 == self.n[1] {
                return Some(Edge::Top);
            }
        }
        None
    }

    /// Nodes on `edge`, corners included.
    pub fn edge_nodes(&self, edge: Edge) -> alloc::vec::Vec<usize> {
        let [nx, ny] = self.n;
        match edge {
            Edge::Left if !self.periodic[0] => (0..ny).map(|j| self.index(0, j)).collect(),
            Edge::Right if !self.periodic[0] => (0..ny).map(|j| self.index(nx - 1, j)).collect(),
            Edge::Bottom if !self.periodic[1] => (0..nx).map(|i| self.index(i, 0)).collect(),
            Edge::Top if !self.periodic[1] => (0..nx).map(|i| self.index(i, ny - 1)).collect(),
            _ => alloc::vec::Vec::new(),
        }
    }

    /// Outward unit normal and inward grid step `(di, dj)` of an edge.
    pub fn edge_frame(&self, edge: Edge) -> Option<(Vec2, (isize, isize), f64)> {
        match edge {
            Edge::Left => Some((Vec2::new(-1.0, 0.0), (1, 0), self.h[0])),
            Edge::Right => Some((Vec2::new(1.0, 0.0), (-1, 0), self.h[0])),
            Edge::Bottom => Some((Vec2::new(0.0, -1.0), (0, 1), self.h[1])),
            Edge::Top => Some((Vec2::new(0.0, 1.0), (0, -1), self.h[1])),
            _ => None,
        }
    }

    /// Distance from `x` to the nearest non-periodic boundary.
    pub fn distance_to_boundary(&self, x: Vec2) -> f64 {
        let mut d = f64::INFINITY;
        if !self.periodic[0] {
            let x1 = self.origin.x + (self.n[0] - 1) as f64 * self.h[0];
            d = d.min(x.x - self.origin.x).min(x1 - x.x);
        }
        if !self.periodic[1] {
            let y1 = self.origin.y + (self.n[1] - 1) as f64 * self.h[1];
            d = d.min(x.y - self.origin.y).min(y1 - x.y);
        }
        d
    }
}

/// Nodes `(r_inner + i·hr, j·hθ)`, `i ≤ nr_cells`, `j < ntheta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarGrid {
    pub r_inner: f64,
    pub r_outer: f64,
    pub nr: usize,
    pub ntheta: usize,
    pub hr: f64,
    pub htheta: f64,
}

impl PolarGrid {
    pub fn new(r_inner: f64, r_outer: f64, nr_cells: usize, ntheta: usize) -> Result<Self> {
        check_positive("r_inner", r_inner)?;
        let width = check_positive("annulus width", r_outer - r_inner)?;
        if nr_cells < 4 || ntheta < 8 {
            return Err(Error::Domain("polar grid needs at least 4 radial cells and 8 angles"));
        }
        Ok(Self {
            r_inner,
            r_outer,
            nr: nr_cells + 1,
            ntheta,
            hr: width / nr_cells as f64,
            htheta: TAU / ntheta as f64,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nr * self.ntheta
    }

    pub fn index(&self, ir: usize, it: usize) -> usize {
        ir * self.ntheta + it
    }

    pub fn split(&self, node: usize) -> (usize, usize) {
        (node / self.ntheta, node % self.ntheta)
    }

    pub fn radius(&self, ir: usize) -> f64 {
        self.r_inner + ir as f64 * self.hr
    }

    pub fn angle(&self, it: usize) -> f64 {
        it as f64 * self.htheta
    }

    pub fn coord(&self, node: usize) -> Vec2 {
        let (ir, it) = self.split(node);
        Vec2::from_angle(self.angle(it)) * self.radius(ir)
    }

    pub fn offset(&self, node: usize, dr: isize, dt: isize) -> Option<usize> {
        let (ir, it) = self.split(node);
        let r = ir as isize + dr;
        if r < 0 || r as usize >= self.nr {
            return None;
        }
        let t = (it as isize + dt).rem_euclid(self.ntheta as isize) as usize;
        Some(self.index(r as usize, t))
    }

    pub fn edge_of(&self, node: usize) -> Option<Edge> {
        let (ir, _) = self.split(node);
        if ir == 0 {
            Some(Edge::Inner)
        } else if ir + 1 == self.nr {
            Some(Edge::Outer)
        } else {
            None
        }
    }

    pub fn edge_nodes(&self, edge: Edge) -> alloc::vec::Vec<usize> {
        let ir = match edge {
            Edge::Inner => 0,
            Edge::Outer => self.nr - 1,
            _ => return alloc::vec::Vec::new(),
        };
        (0..self.ntheta).map(|it| self.index(ir, it)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid2D {
    Cartesian(CartesianGrid),
    Polar(PolarGrid),
}

impl Grid2D {
    pub fn node_count(&self) -> usize {
        match self {
            Grid2D::Cartesian(g) => g.node_count(),
            Grid2D::Polar(g) => g.node_count(),
        }
    }

    pub fn coord(&self, node: usize) -> Vec2 {
        match self {
            Grid2D::Cartesian(g) => g.coord(node),
            Grid2D::Polar(g) => g.coord(node),
        }
    }

    pub fn edge_of(&self, node: usize) -> Option<Edge> {
        match self {
            Grid2D::Cartesian(g) => g.edge_of(node),
            Grid2D::Polar(g) => g.edge_of(node),
        }
    }

    pub fn edge_nodes(&self, edge: Edge) -> alloc::vec::Vec<usize> {
        match self {
            Grid2D::Cartesian(g) => g.edge_nodes(edge),
            Grid2D::Polar(g) => g.edge_nodes(edge),
        }
    }

    /// Largest grid spacing, measured as arc length at the outer radius for
    /// polar grids.
    pub fn max_spacing(&self) -> f64 {
        match self {
            Grid2D::Cartesian(g) => g.h[0].max(g.h[1]),
            Grid2D::Polar(g) => g.hr.max(g.r_outer * g.htheta),
        }
    }

    /// Outward normal at a boundary node.
    pub fn outward_normal(&self, node: usize, edge: Edge) -> Vec2 {
        match (self, edge) {
            (Grid2D::Polar(g), Edge::Inner) => -Vec2::from_angle(g.angle(g.split(node).1)),
            (Grid2D::Polar(g), Edge::Outer) => Vec2::from_angle(g.angle(g.split(node).1)),
            (Grid2D::Cartesian(g), e) => g.edge_frame(e).map(|f| f.0).unwrap_or_default(),
            _ => Vec2::default(),
        }
    }

    /// The node one and two steps inward from a boundary node, with the step length.
    pub fn inward(&self, node: usize, edge: Edge) -> Option<(usize, usize, f64)> {
        match self {
            Grid2D::Cartesian(g) => {
                let (_, (di, dj), h) = g.edge_frame(edge)?;
                let a = g.offset(node, di, dj)?;
                let b = g.offset(node, 2 * di, 2 * dj)?;
                Some((a, b, h))
            }
            Grid2D::Polar(g) => {
                let dr = match edge {
                    Edge::Inner => 1,
                    Edge::Outer => -1,
                    _ => return None,
                };
                Some((g.offset(node, dr, 0)?, g.offset(node, 2 * dr, 0)?, g.hr))
            }
        }
    }
}
