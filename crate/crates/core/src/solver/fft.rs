//! In-place complex FFT for the angular direction of polar grids.
//!
//! Radix-2 for power-of-two lengths, a direct DFT otherwise. Forward uses
//! `e^{-2πi mk/N}`; the inverse is unnormalized.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub struct Fft {
    n: usize,
    /// `e^{-2πik/N}` for `k < N`.
    twiddles: Vec<Complex64>,
}

impl Fft {
    pub fn new(n: usize) -> Self {
        let twiddles = (0..n)
            .map(|k| Complex64::from_polar(1.0, -TAU * k as f64 / n as f64))
            .collect();
        Self { n, twiddles }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn forward(&self, x: &mut [Complex64]) {
        self.transform(x, false);
    }

    pub fn inverse(&self, x: &mut [Complex64]) {
        self.transform(x, true);
    }

    fn twiddle(&self, k: usize, inverse: bool) -> Complex64 {
        let w = self.twiddles[k % self.n];
        if inverse {
            w.conj()
        } else {
            w
        }
    }

    fn transform(&self, x: &mut [Complex64], inverse: bool) {
        let n = self.n;
        assert_eq!(x.len(), n);
        if n <= 1 {
            return;
        }
        if !n.is_power_of_two() {
            let src: Vec<Complex64> = x.to_vec();
            for (m, out) in x.iter_mut().enumerate() {
                *out = src
                    .iter()
                    .enumerate()
                    .map(|(k, &v)| v * self.twiddle(m * k % n, inverse))
                    .sum();
            }
            return;
        }
        let bits = n.trailing_zeros();
        for i in 0..n {
            let j = i.reverse_bits() >> (usize::BITS - bits);
            if j > i {
                x.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let stride = n / len;
            for start in (0..n).step_by(len) {
                for k in 0..len / 2 {
                    let w = self.twiddle(k * stride, inverse);
                    let a = x[start + k];
                    let b = x[start + k + len / 2] * w;
                    x[start + k] = a + b;
                    x[start + k + len / 2] = a - b;
                }
            }
            len <<= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dft(x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|m| {
                x.iter()
                    .enumerate()
                    .map(|(k, &v)| v * Complex64::from_polar(1.0, -TAU * (m * k) as f64 / n as f64))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_direct_dft() {
        for n in [1usize, 2, 8, 64, 12] {
            let x: Vec<Complex64> = (0..n)
                .map(|k| Complex64::new(libm::sin(k as f64 * 1.3), libm::cos(k as f64 * 0.7)))
                .collect();
            let mut y = x.clone();
            let fft = Fft::new(n);
            fft.forward(&mut y);
            for (a, b) in y.iter().zip(dft(&x)) {
                assert!((a - b).norm() < 1e-12 * n as f64);
            }
            fft.inverse(&mut y);
            for (a, b) in y.iter().zip(&x) {
                assert!((a / n as f64 - b).norm() < 1e-13);
            }
        }
    }
}
