//! Banded LU factorization with partial pivoting.
//!
//! Row `i` stores columns `i - kl ..= i + ku + kl`; the extra `kl` columns hold
//! the fill-in created by row interchanges, as in LAPACK's `gbtrf`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::sparse::CsrMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct BandedLu {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    band: Vec<Complex64>,
    pivots: Vec<usize>,
}

impl BandedLu {
    fn empty(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            band: vec![Complex64::default(); n * width],
            pivots: vec![0; n],
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> usize {
        i * self.width + (j + self.kl - i)
    }

    pub fn from_csr(a: &CsrMatrix) -> Result<Self> {
        let (kl, ku) = a.bandwidths();
        let mut lu = Self::empty(a.dim(), kl, ku);
        for i in 0..a.dim() {
            let (c, v) = a.row(i);
            for (&j, &x) in c.iter().zip(v) {
                let k = lu.at(i, j);
                lu.band[k] += x;
            }
        }
        lu.factor()?;
        Ok(lu)
    }

    /// Factors a matrix given entry by entry through `fill(i, j)` over the band.
    pub fn from_fn(n: usize, kl: usize, ku: usize, mut fill: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut lu = Self::empty(n, kl, ku);
        for i in 0..n {
            for j in i.saturating_sub(kl)..(i + ku + 1).min(n) {
                let k = lu.at(i, j);
                lu.band[k] = fill(i, j);
            }
        }
        lu.factor()?;
        Ok(lu)
    }

    fn factor(&mut self) -> Result<()> {
        let (n, kl) = (self.n, self.kl);
        let reach = self.kl + self.ku;
        for c in 0..n {
            let last = (c + kl).min(n - 1);
            let mut p = c;
            let mut best = self.band[self.at(c, c)].norm();
            for r in c + 1..=last {
                let v = self.band[self.at(r, c)].norm();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Error::Singular { pivot: c });
            }
            self.pivots[c] = p;
            let jend = (c + reach).min(n - 1);
            if p != c {
                for j in c..=jend {
                    let (a, b) = (self.at(c, j), self.at(p, j));
                    self.band.swap(a, b);
                }
            }
            let inv = self.band[self.at(c, c)].inv();
            for r in c + 1..=last {
                let lrc = self.at(r, c);
                let f = self.band[lrc] * inv;
                self.band[lrc] = f;
                if f == Complex64::default() {
                    continue;
                }
                let src = self.at(c, c + 1);
                let dst = self.at(r, c + 1);
                let len = jend - c;
                for t in 0..len {
                    let u = self.band[src + t];
                    self.band[dst + t] -= f * u;
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Solves in place.
    pub fn solve(&self, b: &mut [Complex64]) {
        let (n, kl) = (self.n, self.kl);
        for c in 0..n {
            let p = self.pivots[c];
            if p != c {
                b.swap(c, p);
            }
            let bc = b[c];
            for r in c + 1..=(c + kl).min(n - 1) {
                b[r] -= self.band[self.at(r, c)] * bc;
            }
        }
        let reach = self.kl + self.ku;
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in i + 1..=(i + reach).min(n - 1) {
                s -= self.band[self.at(i, j)] * b[j];
            }
            b[i] = s / self.band[self.at(i, i)];
        }
    }
}
