//! Preconditioner for polar-grid systems.
//!
//! The operator's stencil weights are averaged over θ. The averaged operator
//! commutes with rotations, so a discrete Fourier transform in θ splits it into
//! one small banded radial system per angular mode. For isotropic media the
//! weights do not depend on θ and this is an exact inverse; for a nematic
//! director it is a close approximation used inside GMRES.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use super::banded::BandedLu;
use super::fft::Fft;
use super::grid::PolarGrid;
use super::sparse::CsrMatrix;
use crate::error::{Error, Result};

/// Radial reach of the stencils (Neumann closures look two nodes inward).
const DR: usize = 2;
const DT: usize = 1;
const NDR: usize = 2 * DR + 1;
const NDT: usize = 2 * DT + 1;

pub struct FourierRadial {
    nr: usize,
    nt: usize,
    fft: Fft,
    modes: Vec<BandedLu>,
}

impl FourierRadial {
    pub fn new(a: &CsrMatrix, grid: &PolarGrid) -> Result<Self> {
        let (nr, nt) = (grid.nr, grid.ntheta);
        // avg[(2 ir + c) * 2 + c'][dr][dt]
        let mut avg = vec![[[Complex64::default(); NDT]; NDR]; nr * 4];
        let scale = 1.0 / nt as f64;
        for row in 0..a.dim() {
            let (node, c) = (row / 2, row % 2);
            let (ir, it) = grid.split(node);
            let (cols, vals) = a.row(row);
            for (&col, &v) in cols.iter().zip(vals) {
                let (node2, c2) = (col / 2, col % 2);
                let (jr, jt) = grid.split(node2);
                let dr = jr as isize - ir as isize;
                let mut dt = jt as isize - it as isize;
                if dt > nt as isize / 2 {
                    dt -= nt as isize;
                } else if dt < -(nt as isize / 2) {
                    dt += nt as isize;
                }
                if dr.unsigned_abs() > DR || dt.unsigned_abs() > DT {
                    return Err(Error::UnsupportedBoundary("stencil reach exceeds preconditioner layout"));
                }
                avg[(2 * ir + c) * 2 + c2][(dr + DR as isize) as usize][(dt + DT as isize) as usize] += v * scale;
            }
        }
        let size = 2 * nr;
        let band = 2 * DR + 1;
        let mut modes = Vec::with_capacity(nt);
        for m in 0..nt {
            let phase: [Complex64; NDT] =
                core::array::from_fn(|k| Complex64::from_polar(1.0, TAU * (m as f64) * (k as f64 - DT as f64) / nt as f64));
            let lu = BandedLu::from_fn(size, band, band, |i, j| {
                let (ir, c) = (i / 2, i % 2);
                let (jr, c2) = (j / 2, j % 2);
                let dr = jr as isize - ir as isize;
                if dr.unsigned_abs() > DR {
                    return Complex64::default();
                }
                let w = &avg[(2 * ir + c) * 2 + c2][(dr + DR as isize) as usize];
                w.iter().zip(&phase).map(|(a, p)| a * p).sum()
            })?;
            modes.push(lu);
        }
        Ok(Self {
            nr,
            nt,
            fft: Fft::new(nt),
            modes,
        })
    }

    pub fn apply(&self, x: &[Complex64], out: &mut [Complex64]) {
        let (nr, nt) = (self.nr, self.nt);
        // spectra[m][2 ir + c]
        let mut spectra = vec![Complex64::default(); nt * 2 * nr];
        let mut line = vec![Complex64::default(); nt];
        for ir in 0..nr {
            for c in 0..2 {
                for (it, v) in line.iter_mut().enumerate() {
                    *v = x[2 * (ir * nt + it) + c];
                }
                self.fft.forward(&mut line);
                for (m, v) in line.iter().enumerate() {
                    spectra[m * 2 * nr + 2 * ir + c] = *v;
                }
            }
        }
        for (m, lu) in self.modes.iter().enumerate() {
            lu.solve(&mut spectra[m * 2 * nr..(m + 1) * 2 * nr]);
        }
        let scale = 1.0 / nt as f64;
        for ir in 0..nr {
            for c in 0..2 {
                for (m, v) in line.iter_mut().enumerate() {
                    *v = spectra[m * 2 * nr + 2 * ir + c];
                }
                self.fft.inverse(&mut line);
                for (it, v) in line.iter().enumerate() {
                    out[2 * (ir * nt + it) + c] = v * scale;
                }
            }
        }
    }
}
