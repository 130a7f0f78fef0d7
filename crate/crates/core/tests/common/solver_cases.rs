//! Solver cases shared by the core tests and the acceptance run.
#![allow(dead_code)]

use std::f64::consts::PI;

use korteweg_core::dispersion::kirchhoff_love_mu;
use korteweg_core::reflection::BoundaryKind;
use korteweg_core::solver::stencil::node_stencils;
use korteweg_core::solver::{assemble, assemble_with, CartesianGrid, Edge, Grid2D, OperatorCoefficients};
use korteweg_core::{Complex64, Director, MaterialParams, Vec2};

pub fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

pub const BOX_EDGES: [Edge; 4] = [Edge::Left, Edge::Right, Edge::Bottom, Edge::Top];

pub fn unit_box(cells: usize) -> Grid2D {
    Grid2D::Cartesian(CartesianGrid::new_box([0.0, 1.0], [0.0, 1.0], [cells, cells]).unwrap())
}

/// Max-norm error of the manufactured solution `sin(πx)sin(πy)`.
pub fn manufactured_error(p: &MaterialParams, angle: f64, cells: usize, pressure_form: bool) -> (f64, Vec<Complex64>) {
    let n = Director::from_angle(angle);
    let nv = n.vector();
    let omega = 1.0;
    let rho2 = p.rho0() * p.rho0();
    let exact = |x: Vec2| (PI * x.x).sin() * (PI * x.y).sin();
    let v_exact = |x: Vec2| {
        let s = exact(x);
        let dnn = -PI * PI * s + 2.0 * nv.x * nv.y * PI * PI * (PI * x.x).cos() * (PI * x.y).cos();
        rho2 * (p.u1() * (-2.0 * PI * PI * s) + p.u2() * dnn)
    };
    let c0 = p.c0();
    // every term of v* is an eigenfunction of Δ with eigenvalue -2π²
    let f = move |x: Vec2| c(-omega * omega * exact(x) + 2.0 * PI * PI * (c0 * c0 * exact(x) - v_exact(x)));
    let grid = unit_box(cells);
    let mut sys = assemble(p, omega, &n, &grid, None, Some(&f)).unwrap();
    let data = |x: Vec2, _: Vec2| [c(exact(x)), c(v_exact(x))];
    for e in BOX_EDGES {
        if pressure_form {
            sys.apply_soft_pressure_form(e, &data).unwrap();
        } else {
            sys.apply_bc(e, BoundaryKind::SoundSoft, &data).unwrap();
        }
    }
    let sol = sys.solve().unwrap();
    assert!(sol.residual < 1e-8);
    let err = sol
        .s
        .values
        .iter()
        .enumerate()
        .map(|(q, s)| (s - c(exact(grid.coord(q)))).norm())
        .fold(0.0, f64::max);
    (err, sol.s.values)
}

pub fn orders(errs: &[f64]) -> Vec<f64> {
    errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect()
}

/// Largest deviation of the discrete `Δ` and `D_nn` from their exact values
/// on a quadratic, over eight director angles.
pub fn dnn_quadratic_defect() -> f64 {
    let grid = Grid2D::Cartesian(CartesianGrid::new_box([-0.3, 0.9], [0.1, 0.7], [12, 9]).unwrap());
    let (a, b, cxy, d, e, f0) = (0.7, -1.3, 2.1, 0.4, -0.9, 0.25);
    let s: Vec<f64> = (0..grid.node_count())
        .map(|q| {
            let x = grid.coord(q);
            a * x.x * x.x + b * x.y * x.y + cxy * x.x * x.y + d * x.x + e * x.y + f0
        })
        .collect();
    let mut worst = 0.0_f64;
    for k in 0..8 {
        let n = Director::from_angle(k as f64 * PI / 8.0 + 0.1);
        let v = n.vector();
        let analytic = 2.0 * a * v.x * v.x + 2.0 * b * v.y * v.y + 2.0 * cxy * v.x * v.y;
        for q in 0..grid.node_count() {
            if let Some((lap, dnn)) = node_stencils(&grid, q, &n) {
                worst = worst.max((dnn.apply(&s) - analytic).abs());
                worst = worst.max((lap.apply(&s) - 2.0 * (a + b)).abs());
            }
        }
    }
    worst
}

/// High-frequency regime `ρ0²u1 = 10⁴c0²` on the unit square: relative L²
/// gaps between the Helmholtz–Korteweg solve and the biharmonic
/// eigenproblem, and between the latter and its exact solution.
pub fn kirchhoff_love_gaps(cells: usize) -> (f64, f64) {
    let p = MaterialParams::new(1.0, 1.0, 1e4, 0.0).unwrap();
    let omega = 1000.0;
    let mu = kirchhoff_love_mu(&p, omega).unwrap();
    let kappa = mu.sqrt().sqrt();
    let alpha: f64 = 0.6;
    let exact = move |x: Vec2| (kappa * (x.x * alpha.cos() + x.y * alpha.sin())).cos() + (kappa * x.x).cosh();
    let lap = move |x: Vec2| {
        -kappa * kappa * (kappa * (x.x * alpha.cos() + x.y * alpha.sin())).cos() + kappa * kappa * (kappa * x.x).cosh()
    };
    let grid = unit_box(cells);
    let n = Director::default();
    let mut hk = assemble(&p, omega, &n, &grid, None, None).unwrap();
    let hk_data = |x: Vec2, _: Vec2| [c(exact(x)), c(p.korteweg1() * lap(x))];
    let mut kl = assemble_with(&OperatorCoefficients::kirchhoff_love(mu), &n, &grid, None, None);
    let kl_data = |x: Vec2, _: Vec2| [c(exact(x)), c(lap(x))];
    for e in BOX_EDGES {
        hk.apply_bc(e, BoundaryKind::SoundSoft, &hk_data).unwrap();
        kl.apply_bc(e, BoundaryKind::SoundSoft, &kl_data).unwrap();
    }
    let a = hk.solve().unwrap().s.values;
    let b = kl.solve().unwrap().s.values;
    let num: f64 = a.iter().zip(&b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    let err: f64 = b.iter().enumerate().map(|(q, y)| (y - c(exact(grid.coord(q)))).norm_sqr()).sum();
    let norm: f64 = (0..grid.node_count()).map(|q| exact(grid.coord(q)).powi(2)).sum();
    ((num / den).sqrt(), (err / norm).sqrt())
}
