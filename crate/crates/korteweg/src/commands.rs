//! One function per subcommand. Each returns its `key=value` summary and
//! writes its artifacts under the output directory.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::path::{Path, PathBuf};

use korteweg_core::dispersion::{penetration_depth, phase_speed, propagating_wavenumber, solve_wavenumbers};
use korteweg_core::medium::tau2;
use korteweg_core::reflection::{
    boundary_residual, critical_angle, reflected_pair, snell_transmit, tir_transmitted_wave, BoundaryKind,
    InterfaceSpec, PlaneWave,
};
use korteweg_core::scattering::MieExpansion;
use korteweg_core::solver::{
    assemble, scatter_bvp, AbsorbingLayerSpec, CartesianGrid, Edge, Grid2D, ScatterRequest, ScatterSolution,
};
use korteweg_core::specfun::{bessel_j_seq, bessel_y_seq};
use korteweg_core::timedomain::{front_radius, run_pulse, Gaussian};
use korteweg_core::{Complex64, Director, MaterialParams, Vec2};

use crate::config::{Command, RunConfig};
use crate::output::{curve_filename, write_amplitude_csv, write_csv, write_pgm};
use crate::CliError;

/// Ordered `key=value` pairs printed on standard output.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    pub entries: Vec<(String, String)>,
    pub artifacts: Vec<PathBuf>,
}

impl Summary {
    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.entries.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.extend(self.artifacts.iter().map(|p| format!("artifact={}", p.display())));
        out
    }
}

/// Runs the configured command, writing artifacts under `out`.
pub fn run(cfg: &RunConfig, out: &Path) -> Result<Summary, CliError> {
    let mut s = Summary::default();
    s.push("command", cfg.command.name());
    match cfg.command {
        Command::Dispersion => dispersion(cfg, out, &mut s)?,
        Command::Reflect => reflect(cfg, &mut s)?,
        Command::Transmit => transmit(cfg, &mut s)?,
        Command::ScatterMie => scatter_mie(cfg, out, &mut s)?,
        Command::ScatterSolve => scatter_solve(cfg, out, &mut s)?,
        Command::Solve => solve_box(cfg, out, &mut s)?,
        Command::Pulse => pulse(cfg, out, &mut s)?,
        Command::SpecfunCheck => specfun_check(cfg, out, &mut s)?,
    }
    Ok(s)
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn dispersion(cfg: &RunConfig, out: &Path, s: &mut Summary) -> Result<(), CliError> {
    let p = cfg.material.params()?;
    let d = &cfg.dispersion;
    let mut rows = Vec::new();
    let mut degenerate = false;
    for xi in linspace(d.xi_min, d.xi_max, d.samples) {
        let roots = solve_wavenumbers(&p, cfg.omega, xi)?;
        degenerate |= roots.is_degenerate();
        let depth = penetration_depth(&p, cfg.omega, xi).unwrap_or(f64::NAN);
        rows.push(vec![
            xi,
            roots.omega_tau(),
            roots.propagating(),
            roots.evanescent().unwrap_or(f64::NAN),
            propagating_wavenumber(&p, cfg.omega, xi),
            phase_speed(&p, cfg.omega, xi),
            depth,
        ]);
    }
    let path = out.join("dispersion.csv");
    write_csv(
        &path,
        &["xi", "omega_tau", "kappa", "kappa_evanescent", "k", "phase_speed", "penetration_depth"],
        &rows,
    )?;
    s.push("degenerate", degenerate);
    if degenerate {
        s.push("kappa", "+-1");
    }
    let first = &rows[0];
    let last = &rows[rows.len() - 1];
    s.push("omega_tau_first", first[1]);
    s.push("omega_tau_last", last[1]);
    s.push("phase_speed_first", first[5]);
    s.push("phase_speed_last", last[5]);
    s.push("penetration_depth_first", first[6]);
    s.push("penetration_depth_last", last[6]);
    s.artifacts.push(path);
    Ok(())
}

fn incoming_wave(cfg: &RunConfig, p: &MaterialParams, n: &Director) -> Result<PlaneWave, CliError> {
    let th = cfg.wave.incidence;
    if !(0.0..FRAC_PI_2).contains(&th) {
        return Err(CliError::config("wave.incidence must lie in [0, pi/2)"));
    }
    Ok(PlaneWave::admissible(p, cfg.omega, n, Vec2::new(th.sin(), -th.cos()))?)
}

fn reflect(cfg: &RunConfig, s: &mut Summary) -> Result<(), CliError> {
    let p = cfg.material.params()?;
    let n = Director::from_angle(cfg.director.angle);
    let wave = incoming_wave(cfg, &p, &n)?;
    let iface = InterfaceSpec::new(cfg.bc.kind()?)?;
    let pair = reflected_pair(&wave, &iface)?;
    let a = pair[1].s0;
    let lambda = TAU / wave.k.re;
    let res = boundary_residual(&pair, &iface, &linspace(-2.0 * lambda, 2.0 * lambda, 41));
    s.push("k", wave.k.re);
    s.push("amplitude_re", a.re);
    s.push("amplitude_im", a.im);
    s.push("amplitude_abs", a.norm());
    s.push("boundary_residual", format!("{res:e}"));
    Ok(())
}

fn transmit(cfg: &RunConfig, s: &mut Summary) -> Result<(), CliError> {
    let p = cfg.material.params()?;
    let n = Director::from_angle(cfg.director.angle);
    let wave = incoming_wave(cfg, &p, &n)?;
    let (ni, nt) = (cfg.wave.n, cfg.wave.n_t);
    if !(ni > 0.0 && nt > 0.0) {
        return Err(CliError::config("wave.n and wave.n_t must be positive"));
    }
    let dir = snell_transmit(cfg.wave.incidence, ni, nt);
    s.push("propagating", dir.is_propagating());
    match dir.angle() {
        Some(angle) => s.push("transmitted_angle", angle),
        None => {
            let tir = tir_transmitted_wave(cfg.wave.incidence, wave.k.re, ni, nt)?;
            s.push("critical_angle", critical_angle(ni, nt)?);
            s.push("alpha", tir.alpha);
            s.push("decay_length", tir.decay_length());
        }
    }
    Ok(())
}

/// Incidence-relative director sweep of the scattering commands:
/// `(ξ, director, k)`.
fn sweep(cfg: &RunConfig, p: &MaterialParams) -> Vec<(f64, Director, f64)> {
    let psi = cfg.geometry.psi;
    cfg.director
        .xi
        .iter()
        .map(|&xi| (xi, Director::from_angle(psi + xi), propagating_wavenumber(p, cfg.omega, xi)))
        .collect()
}

/// Points on the y axis with `y_min ≤ |y| ≤ y_max`, negative side first.
fn axis_points(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    let g = &cfg.geometry;
    if g.y_min < g.radius {
        return Err(CliError::config("geometry.y_min must be outside the obstacle"));
    }
    let half = linspace(g.y_min, g.y_max, g.samples);
    Ok(half.iter().rev().map(|y| -y).chain(half.iter().copied()).collect())
}

/// `Re S⁺(0, y)` from the series.
pub fn mie_axis_curve(mie: &MieExpansion, ys: &[f64]) -> Result<Vec<(f64, f64)>, CliError> {
    ys.iter()
        .map(|&y| {
            let theta = if y > 0.0 { FRAC_PI_2 } else { 3.0 * FRAC_PI_2 };
            Ok((y, mie.scattered(y.abs(), theta)?.re))
        })
        .collect()
}

/// Largest pointwise gap between two curves on common abscissae, relative
/// to the largest magnitude of `b`.
pub fn max_relative_gap(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let scale = b.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    a.iter().zip(b).map(|(x, y)| (x.1 - y.1).abs()).fold(0.0, f64::max) / scale
}

fn peak(curve: &[(f64, f64)]) -> f64 {
    curve.iter().map(|p| p.1.abs()).fold(0.0, f64::max)
}

fn report_pair(s: &mut Summary, curves: &[(f64, Vec<(f64, f64)>)]) {
    if let [(xa, a), (xb, b)] = curves {
        s.push("curve_gap", max_relative_gap(a, b).max(max_relative_gap(b, a)));
        let order = if peak(a) >= peak(b) { ">" } else { "<" };
        s.push("amplitude_order", format!("xi={xa:.2}{order}xi={xb:.2}"));
    }
}

fn scatter_mie(cfg: &RunConfig, out: &Path, s: &mut Summary) -> Result<(), CliError> {
    let p = cfg.material.params()?;
    let ys = axis_points(cfg)?;
    let mut curves = Vec::new();
    for (xi, _, k) in sweep(cfg, &p) {
        let mie = MieExpansion::new(k, cfg.geometry.radius, cfg.geometry.psi)?;
        let curve = mie_axis_curve(&mie, &ys)?;
        let path = out.join(curve_filename(p.u1(), p.u2(), xi));
        write_amplitude_csv(&curve, &path)?;
        s.push(format!("k_xi_{xi:.2}"), k);
        s.push(format!("jmax_xi_{xi:.2}"), mie.jmax);
        s.push(format!("peak_xi_{xi:.2}"), peak(&curve));
        s.artifacts.push(path);
        curves.push((xi, curve));
    }
    report_pair(s, &curves);
    Ok(())
}

/// Builds the scattering request for one director orientation.
pub fn scatter_request(cfg: &RunConfig, p: &MaterialParams, n: Director, k: f64) -> Result<ScatterRequest, CliError> {
    let g = &cfg.geometry;
    let lambda = TAU / k;
    let width = g.layer_wavelengths * lambda;
    Ok(ScatterRequest {
        params: *p,
        omega: cfg.omega,
        director: n,
        psi: g.psi,
        radius: g.radius,
        outer_radius: ScatterRequest::rim_for(g.radius, lambda, g.free_wavelengths, width),
        layer: AbsorbingLayerSpec::new(width, g.sigma_factor * cfg.omega)?,
        points_per_wavelength: g.points_per_wavelength,
        theta_nodes: (g.theta_nodes > 0).then_some(g.theta_nodes),
    })
}

/// `Re S` along the y axis at the radial nodes within `[y_min, y_max]`.
pub fn solved_axis_curve(sol: &ScatterSolution, y_min: f64, y_max: f64) -> Vec<(f64, f64)> {
    let up = sol.ray(sol.nearest_angle(FRAC_PI_2), y_min, y_max);
    let down = sol.ray(sol.nearest_angle(3.0 * FRAC_PI_2), y_min, y_max);
    down.iter()
        .rev()
        .map(|(r, v)| (-r, v.re))
        .chain(up.iter().map(|(r, v)| (*r, v.re)))
        .collect()
}

fn polar_image(sol: &ScatterSolution, extent: f64, px: usize) -> Vec<f64> {
    let g = &sol.grid;
    let mut img = vec![0.0; px * px];
    for row in 0..px {
        for col in 0..px {
            let x = -extent + 2.0 * extent * (col as f64 + 0.5) / px as f64;
            let y = extent - 2.0 * extent * (row as f64 + 0.5) / px as f64;
            let r = x.hypot(y);
            if r < g.r_inner || r > g.r_outer {
                continue;
            }
            let ir = sol.nearest_ring(r);
            let it = sol.nearest_angle(y.atan2(x));
            img[row * px + col] = sol.value(ir, it).norm();
        }
    }
    img
}

fn scatter_solve(cfg: &RunConfig, out: &Path, s: &mut Summary) -> Result<(), CliError> {
    let p = cfg.material.params()?;
    let g = &cfg.geometry;
    let mut curves = Vec::new();
    for (xi, n, k) in sweep(cfg, &p) {
        let req = scatter_request(cfg, &p, n, k)?;
        let sol = scatter_bvp(&req)?;
        let curve = solved_axis_curve(&sol, g.y_min, g.y_max);
        let mie = MieExpansion::new(k, g.radius, g.psi)?;
        let ys: Vec<f64> = curve.iter().map(|c| c.0).collect();
        let reference = mie_axis_curve(&mie, &ys)?;
        let probe = sol.nearest_ring(g.radius + g.free_wavelengths * TAU / k);
        let tag = format!("xi_{xi:.2}");
        s.push(format!("residual_{tag}"), format!("{:e}", sol.residual));
        s.push(format!("iterations_{tag}"), sol.iterations);
        s.push(format!("grid_{tag}"), format!("{}x{}", sol.grid.nr, sol.grid.ntheta));
        s.push(format!("mie_gap_{tag}"), max_relative_gap(&curve, &reference));
        s.push(format!("sommerfeld_defect_{tag}"), sol.sommerfeld_defect(probe));
        s.push(format!("peak_{tag}"), peak(&curve));
        let path = out.join(curve_filename(p.u1(), p.u2(), xi));
        write_amplitude_csv(&curve, &path)?;
        s.artifacts.push(path);
        if cfg.output.pgm {
            let extent = sol.grid.radius(probe);
            let img = polar_image(&sol, extent, 256);
            let path = out.join(format!("scattered_{tag}.pgm"));
            write_pgm(&path, 256, 256, &img)?;
            s.artifacts.push(path);
        }
        curves.push((xi, curve));
    }
    report_pair(s, &curves);
    Ok(())
}

fn solve_box(cfg: &RunConfig, out: &Path, s: &mut Summary) -> Result<(), CliError> {
    let p = cfg.material.params()?;
    let n = Director::from_angle(cfg.director.angle);
    let g = &cfg.geometry;
    let kind = cfg.bc.kind()?;
    let wave = PlaneWave::admissible(&p, cfg.omega, &n, Vec2::from_angle(g.psi))?;
    let dn = n.cos_to(wave.d);
    let v_factor = -wave.k * wave.k * (p.korteweg1() + p.korteweg2() * dn * dn);
    let grid = CartesianGrid::new_box([0.0, g.box_size], [0.0, g.box_size], [g.cells, g.cells])?;
    let grid2 = Grid2D::Cartesian(grid);
    let mut sys = assemble(&p, cfg.omega, &n, &grid2, None, None)?;
    let data = move |x: Vec2, normal: Vec2| {
        let sv = wave.value(x);
        let gr = wave.gradient(x);
        let dnu = gr[0] * normal.x + gr[1] * normal.y;
        let trace = match kind {
            BoundaryKind::SoundSoft => sv,
            BoundaryKind::SoundHard => dnu,
            BoundaryKind::Impedance(z) => dnu - Complex64::i() * z * sv,
        };
        [trace, trace * v_factor]
    };
    for e in [Edge::Left, Edge::Right, Edge::Bottom, Edge::Top] {
        sys.apply_bc(e, kind, &data)?;
    }
    let sol = sys.solve()?;
    let (mut num, mut den, mut max_err) = (0.0, 0.0, 0.0_f64);
    let mut rows = Vec::with_capacity(sol.s.values.len());
    for (q, v) in sol.s.values.iter().enumerate() {
        let x = grid.coord(q);
        let e = wave.value(x);
        num += (v - e).norm_sqr();
        den += e.norm_sqr();
        max_err = max_err.max((v - e).norm());
        rows.push(vec![x.x, x.y, v.re, v.im]);
    }
    s.push("k", wave.k.re);
    s.push("residual", format!("{:e}", sol.residual));
    s.push("relative_l2_error", (num / den).sqrt());
    s.push("max_error", max_err);
    let path = out.join("solve_field.csv");
    write_csv(&path, &["x", "y", "re", "im"], &rows)?;
    s.artifacts.push(path);
    if cfg.output.pgm {
        let [nx, ny] = grid.n;
        let img: Vec<f64> = (0..ny)
            .rev()
            .flat_map(|j| (0..nx).map(move |i| (i, j)))
            .map(|(i, j)| sol.s.values[grid.index(i, j)].re.abs())
            .collect();
        let path = out.join("solve_field.pgm");
        write_pgm(&path, nx, ny, &img)?;
        s.artifacts.push(path);
    }
    Ok(())
}

fn pulse(cfg: &RunConfig, out: &Path, s: &mut Summary) -> Result<(), CliError> {
    let p = cfg.material.params()?;
    let n = Director::from_angle(cfg.director.angle);
    let pc = &cfg.pulse;
    if pc.times.is_empty() || pc.times.windows(2).any(|w| w[1] < w[0]) {
        return Err(CliError::config("pulse.times must be a non-empty ascending list"));
    }
    let hw = pc.half_width;
    let grid = CartesianGrid::new([-hw, hw], [-hw, hw], [pc.cells, pc.cells], [true, true])?;
    let gauss = Gaussian {
        center: Vec2::new(0.0, 0.0),
        width: pc.width,
        amplitude: pc.amplitude,
    };
    let snaps = run_pulse(&p, &n, &grid, &gauss, &pc.times, None)?;
    let along = n.vector();
    let across = Vec2::new(-along.y, along.x);
    for (i, snap) in snaps.iter().enumerate() {
        let ra = front_radius(&grid, &snap.field, gauss.center, along, pc.threshold);
        let rc = front_radius(&grid, &snap.field, gauss.center, across, pc.threshold);
        s.push(format!("t_{i}"), snap.t);
        s.push(format!("front_along_{i}"), ra);
        s.push(format!("front_across_{i}"), rc);
        s.push(format!("axis_ratio_{i}"), ra / rc);
        let [nx, ny] = grid.n;
        let path = out.join(format!("pulse_{i}.csv"));
        let rows: Vec<Vec<f64>> = (0..grid.node_count())
            .map(|q| {
                let x = grid.coord(q);
                vec![x.x, x.y, snap.field[q]]
            })
            .collect();
        write_csv(&path, &["x", "y", "s"], &rows)?;
        s.artifacts.push(path);
        if cfg.output.pgm {
            let img: Vec<f64> = (0..ny)
                .rev()
                .flat_map(|j| (0..nx).map(move |i| (i, j)))
                .map(|(i, j)| snap.field[grid.index(i, j)].abs())
                .collect();
            let path = out.join(format!("pulse_{i}.pgm"));
            write_pgm(&path, nx, ny, &img)?;
            s.artifacts.push(path);
        }
    }
    Ok(())
}

fn specfun_check(cfg: &RunConfig, out: &Path, s: &mut Summary) -> Result<(), CliError> {
    let sc = &cfg.specfun;
    if !(sc.x_min > 0.0 && sc.x_max > sc.x_min) {
        return Err(CliError::config("specfun needs 0 < x_min < x_max"));
    }
    let mut worst = 0.0_f64;
    let mut rows = Vec::new();
    for x in linspace(sc.x_min, sc.x_max, sc.samples) {
        let j = bessel_j_seq(sc.max_order + 1, x)?;
        let y = bessel_y_seq(sc.max_order + 1, x)?;
        let target = 2.0 / (PI * x);
        let mut row_worst = 0.0_f64;
        for m in 0..=sc.max_order {
            let w = j[m + 1] * y[m] - j[m] * y[m + 1];
            row_worst = row_worst.max(((w - target) / target).abs());
        }
        worst = worst.max(row_worst);
        rows.push(vec![x, j[0], y[0], j[1], y[1], row_worst]);
    }
    let path = out.join("specfun.csv");
    write_csv(&path, &["x", "J0", "Y0", "J1", "Y1", "wronskian_defect"], &rows)?;
    s.push("wronskian_max", format!("{worst:e}"));
    s.push("tau2_check", tau2(&cfg.material.params()?, 0.0));
    s.artifacts.push(path);
    Ok(())
}
