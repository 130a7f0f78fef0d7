//! Restarted GMRES with right preconditioning and complex Givens rotations.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::sparse::norm2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresOptions {
    pub restart: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for GmresOptions {
    fn default() -> Self {
        Self {
            restart: 30,
            max_iterations: 600,
            tolerance: 1e-10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresReport {
    pub iterations: usize,
    /// Relative residual estimated by the Arnoldi recurrence.
    pub residual: f64,
    pub converged: bool,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Solves `A x = b` where `apply(u, out)` computes `A u` and `precond(u, out)`
/// approximates `A⁻¹ u`. `x` holds the initial guess on entry.
pub fn gmres(
    apply: impl Fn(&[Complex64], &mut [Complex64]),
    precond: impl Fn(&[Complex64], &mut [Complex64]),
    b: &[Complex64],
    x: &mut [Complex64],
    opts: &GmresOptions,
) -> GmresReport {
    let n = b.len();
    let bnorm = norm2(b);
    let zero = Complex64::default();
    if bnorm == 0.0 {
        x.iter_mut().for_each(|v| *v = zero);
        return GmresReport {
            iterations: 0,
            residual: 0.0,
            converged: true,
        };
    }
    let m = opts.restart.max(1);
    let mut total = 0;
    let mut work = vec![zero; n];
    let mut z = vec![zero; n];
    let mut residual = f64::INFINITY;
    while total < opts.max_iterations {
        // r = b - A x
        apply(x, &mut work);
        let r: Vec<Complex64> = b.iter().zip(&work).map(|(p, q)| p - q).collect();
        let beta = norm2(&r);
        residual = beta / bnorm;
        if residual < opts.tolerance {
            break;
        }
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(m + 1);
        basis.push(r.iter().map(|v| v / beta).collect());
        let mut h = vec![vec![zero; m]; m + 1];
        let mut cs = vec![0.0; m];
        let mut sn = vec![zero; m];
        let mut g = vec![zero; m + 1];
        g[0] = Complex64::new(beta, 0.0);
        let mut k_used = 0;
        for k in 0..m {
            precond(&basis[k], &mut z);
            apply(&z, &mut work);
            let mut w = work.clone();
            for (i, vi) in basis.iter().enumerate() {
                let hik = dot(vi, &w);
                h[i][k] = hik;
                w.iter_mut().zip(vi).for_each(|(a, b)| *a -= hik * b);
            }
            let wn = norm2(&w);
            h[k + 1][k] = Complex64::new(wn, 0.0);
            for i in 0..k {
                let (a, b) = (h[i][k], h[i + 1][k]);
                h[i][k] = a * cs[i] + sn[i] * b;
                h[i + 1][k] = -sn[i].conj() * a + b * cs[i];
            }
            let (a, b) = (h[k][k], h[k + 1][k]);
            let rho = libm::hypot(a.norm(), b.norm());
            if a.norm() == 0.0 {
                cs[k] = 0.0;
                sn[k] = Complex64::new(1.0, 0.0);
            } else {
                cs[k] = a.norm() / rho;
                sn[k] = (a / a.norm()) * b.conj() / rho;
            }
            h[k][k] = a * cs[k] + sn[k] * b;
            h[k + 1][k] = zero;
            g[k + 1] = -sn[k].conj() * g[k];
            g[k] *= cs[k];
            total += 1;
            k_used = k + 1;
            residual = g[k + 1].norm() / bnorm;
            if residual < opts.tolerance || wn == 0.0 || total >= opts.max_iterations {
                break;
            }
            basis.push(w.iter().map(|v| v / wn).collect());
        }
        // back substitution for y, then x += M⁻¹ V y
        let mut y = vec![zero; k_used];
        for i in (0..k_used).rev() {
            let mut s = g[i];
            for j in i + 1..k_used {
                s -= h[i][j] * y[j];
            }
            y[i] = s / h[i][i];
        }
        let mut update = vec![zero; n];
        for (yi, vi) in y.iter().zip(&basis) {
            update.iter_mut().zip(vi).for_each(|(u, v)| *u += yi * v);
        }
        precond(&update, &mut z);
        x.iter_mut().zip(&z).for_each(|(a, b)| *a += b);
        if residual < opts.tolerance {
            // confirm with the true residual before reporting convergence
            apply(x, &mut work);
            let rn = libm::sqrt(b.iter().zip(&work).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>());
            residual = rn / bnorm;
            if residual < opts.tolerance * 10.0 {
                return GmresReport {
                    iterations: total,
                    residual,
                    converged: true,
                };
            }
        }
    }
    GmresReport {
        iterations: total,
        residual,
        converged: residual < opts.tolerance,
    }
}
