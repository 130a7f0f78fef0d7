//! Bessel functions `J_j`, `Y_j` and Hankel functions `H_j^(1)` of integer
//! order and real argument.
//!
//! `J_j` comes from Miller's downward recurrence normalized with
//! `J_0 + 2ΣJ_{2k} = 1`. `Y_0` and `Y_1` use the Neumann series in the same
//! `J` sequence for `x ≤ 50` and the Hankel asymptotic expansion beyond;
//! higher `Y_j` follow by upward recurrence.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest supported `|j|`.
pub const MAX_ORDER: u32 = 200;

/// Below this argument `Y_j` is reported as divergent.
pub const Y_MIN_ARG: f64 = 1e-8;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const ASYMPTOTIC_FROM: f64 = 50.0;

/// Cylinder-function order, `|j| ≤ 200`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CylOrder(i32);

impl CylOrder {
    pub fn new(j: i32) -> Result<Self> {
        if j.unsigned_abs() > MAX_ORDER {
            return Err(Error::Domain("Bessel order exceeds 200"));
        }
        Ok(Self(j))
    }

    pub fn get(self) -> i32 {
        self.0
    }
}

fn parity(j: i32) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Unnormalized Miller sequence `J_0..=J_m` for `x > 0`, long enough for
/// both the requested orders and the Neumann series.
fn miller(x: f64, nmax: usize) -> Vec<f64> {
    let top = (nmax as f64).max(libm::ceil(x));
    let mut m = top as usize + 30 + libm::sqrt(40.0 * top) as usize;
    m += m % 2;
    let mut f = vec![0.0; m + 2];
    f[m] = 1.0;
    for k in (1..=m).rev() {
        f[k - 1] = 2.0 * k as f64 / x * f[k] - f[k + 1];
        if f[k - 1].abs() > 1e250 {
            for v in &mut f[k - 1..] {
                *v *= 1e-250;
            }
        }
    }
    let sum = f[0] + 2.0 * f[2..].iter().step_by(2).sum::<f64>();
    for v in &mut f {
        *v /= sum;
    }
    f
}

/// `J_0(x)..=J_nmax(x)` for `x ≥ 0`.
pub fn bessel_j_seq(nmax: usize, x: f64) -> Result<Vec<f64>> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain("Bessel J needs a finite x >= 0"));
    }
    if x == 0.0 {
        let mut out = vec![0.0; nmax + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    let mut f = miller(x, nmax);
    f.truncate(nmax + 1);
    Ok(f)
}

pub fn bessel_j(j: i32, x: f64) -> Result<f64> {
    let order = CylOrder::new(j)?.get();
    let n = order.unsigned_abs() as usize;
    let v = bessel_j_seq(n, x)?[n];
    Ok(if order < 0 { parity(order) * v } else { v })
}

/// Hankel asymptotic expansion of `(J_ν, Y_ν)` for large `x`.
fn hankel_asymptotic(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (k as f64 * 8.0 * x);
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        // P = 1 - a2/x² + a4/x⁴ - ..., Q = a1/x - a3/x³ + ...
        match k % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-17 * p.abs() {
            break;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    let (s, c) = (libm::sin(chi), libm::cos(chi));
    let a = libm::sqrt(FRAC_2_PI / x);
    (a * (p * c - q * s), a * (p * s + q * c))
}

/// `(Y_0(x), Y_1(x))` for `x ≥ 1e-8`.
fn y01(x: f64) -> (f64, f64) {
    if x >= ASYMPTOTIC_FROM {
        return (hankel_asymptotic(0.0, x).1, hankel_asymptotic(1.0, x).1);
    }
    let j = miller(x, 2);
    let log_term = libm::log(0.5 * x) + EULER_GAMMA;
    let kmax = (j.len() - 2) / 2;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    for k in (1..kmax).rev() {
        let sign = parity(k as i32);
        let kf = k as f64;
        s0 += sign * j[2 * k] / kf;
        s1 += sign * (2.0 * kf + 1.0) * j[2 * k + 1] / (kf * (kf + 1.0));
    }
    let y0 = FRAC_2_PI * (log_term * j[0] - 2.0 * s0);
    let y1 = FRAC_2_PI * (-j[0] / x + (log_term - 1.0) * j[1] - s1);
    (y0, y1)
}

fn check_y_arg(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain("Bessel Y needs a finite x > 0"));
    }
    if x < Y_MIN_ARG {
        return Err(Error::Domain("Bessel Y diverges as x -> 0"));
    }
    Ok(())
}

/// `Y_0(x)..=Y_nmax(x)` by upward recurrence.
pub fn bessel_y_seq(nmax: usize, x: f64) -> Result<Vec<f64>> {
    check_y_arg(x)?;
    let (y0, y1) = y01(x);
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(y0);
    if nmax >= 1 {
        out.push(y1);
    }
    for j in 1..nmax {
        let next = 2.0 * j as f64 / x * out[j] - out[j - 1];
        out.push(next);
    }
    Ok(out)
}

pub fn bessel_y(j: i32, x: f64) -> Result<f64> {
    let order = CylOrder::new(j)?.get();
    let n = order.unsigned_abs() as usize;
    let v = bessel_y_seq(n, x)?[n];
    Ok(if order < 0 { parity(order) * v } else { v })
}

/// `H_0^(1)(x)..=H_nmax^(1)(x)`.
pub fn hankel1_seq(nmax: usize, x: f64) -> Result<Vec<Complex64>> {
    check_y_arg(x)?;
    let j = bessel_j_seq(nmax, x)?;
    let y = bessel_y_seq(nmax, x)?;
    Ok(j.into_iter().zip(y).map(|(a, b)| Complex64::new(a, b)).collect())
}

pub fn hankel1(j: i32, x: f64) -> Result<Complex64> {
    let order = CylOrder::new(j)?.get();
    let n = order.unsigned_abs() as usize;
    let v = hankel1_seq(n, x)?[n];
    Ok(if order < 0 { v * parity(order) } else { v })
}

/// Value at order `j` (any sign) from a non-negative-order table.
pub(crate) fn signed_order<T>(table: &[T], j: i32) -> T
where
    T: Copy + core::ops::Mul<f64, Output = T>,
{
    let v = table[j.unsigned_abs() as usize];
    if j < 0 {
        v * parity(j)
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asymptotic_and_series_agree_at_crossover() {
        let x = ASYMPTOTIC_FROM;
        let (ja, ya) = hankel_asymptotic(0.0, x);
        let j = miller(x, 2);
        assert!((ja - j[0]).abs() < 1e-14);
        let (y0, _) = {
            // series evaluated just below the switch
            let j = miller(x, 2);
            let log_term = libm::log(0.5 * x) + EULER_GAMMA;
            let kmax = (j.len() - 2) / 2;
            let s: f64 = (1..kmax).map(|k| parity(k as i32) * j[2 * k] / k as f64).sum();
            (FRAC_2_PI * (log_term * j[0] - 2.0 * s), 0.0)
        };
        assert!((ya - y0).abs() < 1e-13);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_j(0, -1.0).is_err());
        assert!(bessel_y(0, 0.0).is_err());
        assert!(bessel_y(0, 1e-9).is_err());
        assert!(bessel_j(201, 1.0).is_err());
    }
}
