//! Compressed sparse row storage for the assembled operator.

use alloc::vec::Vec;

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl CsrMatrix {
    /// Builds from per-row entry lists; duplicate columns are summed and
    /// columns are sorted within each row.
    pub fn from_rows<I, R>(n: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = (usize, Complex64)>,
    {
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut scratch: Vec<(usize, Complex64)> = Vec::new();
        row_ptr.push(0);
        for row in rows {
            scratch.clear();
            scratch.extend(row);
            scratch.sort_by_key(|e| e.0);
            for &(c, v) in &scratch {
                match cols.last() {
                    Some(&last) if last == c && cols.len() > *row_ptr.last().unwrap() => {
                        *vals.last_mut().unwrap() += v;
                    }
                    _ => {
                        cols.push(c);
                        vals.push(v);
                    }
                }
            }
            row_ptr.push(cols.len());
        }
        assert_eq!(row_ptr.len(), n + 1, "row count mismatch");
        Self { n, row_ptr, cols, vals }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[Complex64]) {
        let (a, b) = (self.row_ptr[i], self.row_ptr[i + 1]);
        (&self.cols[a..b], &self.vals[a..b])
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        let (c, v) = self.row(i);
        c.binary_search(&j).map(|k| v[k]).unwrap_or_default()
    }

    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (i, yi) in y.iter_mut().enumerate().take(self.n) {
            let (c, v) = self.row(i);
            *yi = c.iter().zip(v).map(|(&j, &a)| a * x[j]).sum();
        }
    }

    /// Largest `|j - i|` over stored entries, split into lower and upper parts.
    pub fn bandwidths(&self) -> (usize, usize) {
        let mut lo = 0;
        let mut up = 0;
        for i in 0..self.n {
            let (c, _) = self.row(i);
            if let (Some(&first), Some(&last)) = (c.first(), c.last()) {
                lo = lo.max(i.saturating_sub(first));
                up = up.max(last.saturating_sub(i));
            }
        }
        (lo, up)
    }
}

pub fn norm2(x: &[Complex64]) -> f64 {
    libm::sqrt(x.iter().map(|v| v.norm_sqr()).sum::<f64>())
}

/// `‖Ax - b‖ / ‖b‖`, or `‖Ax‖` when `b = 0`.
pub fn relative_residual(a: &CsrMatrix, x: &[Complex64], b: &[Complex64]) -> f64 {
    let mut ax = alloc::vec![Complex64::default(); a.dim()];
    a.matvec(x, &mut ax);
    let r = libm::sqrt(ax.iter().zip(b).map(|(p, q)| (p - q).norm_sqr()).sum::<f64>());
    let nb = norm2(b);
    if nb > 0.0 {
        r / nb
    } else {
        r
    }
}
