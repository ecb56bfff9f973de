//! Fast solver for the five-point Dirichlet Laplacian on a square, by
//! diagonalization with the type-I discrete sine transform.

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Inverse of the homogeneous-Dirichlet five-point Laplacian on the
/// `m × m` interior of a grid with spacing `h`.
pub struct DirichletLaplacian {
    m: usize,
    fft: Arc<dyn Fft<f64>>,
    /// Eigenvalues `μ_p + μ_q` in `(q, p)` row-major order.
    eigen: Vec<f64>,
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
}

impl DirichletLaplacian {
    pub fn new(m: usize, h: f64) -> Self {
        let len = 2 * (m + 1);
        let fft = FftPlanner::new().plan_fft_forward(len);
        let mu: Vec<f64> = (1..=m)
            .map(|p| {
                let s = (p as f64 * std::f64::consts::PI / (2.0 * (m + 1) as f64)).sin();
                -4.0 * s * s / (h * h)
            })
            .collect();
        let mut eigen = Vec::with_capacity(m * m);
        for q in 0..m {
            for p in 0..m {
                eigen.push(mu[p] + mu[q]);
            }
        }
        let scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        DirichletLaplacian {
            m,
            fft,
            eigen,
            buf: vec![Complex64::default(); len * m],
            scratch,
        }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// Unnormalized DST-I along rows or, with `columns`, along columns.
    fn dst(&mut self, data: &mut [f64], columns: bool) {
        let m = self.m;
        let len = 2 * (m + 1);
        for line in 0..m {
            let b = &mut self.buf[line * len..(line + 1) * len];
            b[0] = Complex64::default();
            b[m + 1] = Complex64::default();
            for k in 0..m {
                let v = if columns { data[k * m + line] } else { data[line * m + k] };
                b[k + 1] = Complex64::new(v, 0.0);
                b[len - 1 - k] = Complex64::new(-v, 0.0);
            }
        }
        self.fft.process_with_scratch(&mut self.buf, &mut self.scratch);
        for line in 0..m {
            let b = &self.buf[line * len..(line + 1) * len];
            for k in 0..m {
                let v = -0.5 * b[k + 1].im;
                if columns {
                    data[k * m + line] = v;
                } else {
                    data[line * m + k] = v;
                }
            }
        }
    }

    /// Overwrite `rhs` (interior values, row-major, `m²` entries) with the
    /// solution `x` of `L x = rhs`.
    pub fn solve_in_place(&mut self, rhs: &mut [f64]) {
        assert_eq!(rhs.len(), self.m * self.m);
        self.dst(rhs, false);
        self.dst(rhs, true);
        let norm = (2.0 / (self.m + 1) as f64).powi(2);
        for (v, e) in rhs.iter_mut().zip(&self.eigen) {
            *v *= norm / e;
        }
        self.dst(rhs, false);
        self.dst(rhs, true);
    }

    /// Apply the five-point Laplacian with zero boundary values.
    pub fn apply(&self, x: &[f64], h: f64) -> Vec<f64> {
        let m = self.m;
        let inv = 1.0 / (h * h);
        let mut out = vec![0.0; m * m];
        for j in 0..m {
            for i in 0..m {
                let c = x[j * m + i];
                let l = if i > 0 { x[j * m + i - 1] } else { 0.0 };
                let r = if i + 1 < m { x[j * m + i + 1] } else { 0.0 };
                let d = if j > 0 { x[(j - 1) * m + i] } else { 0.0 };
                let u = if j + 1 < m { x[(j + 1) * m + i] } else { 0.0 };
                out[j * m + i] = (l + r + d + u - 4.0 * c) * inv;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = 31;
        let h = 1.0 / 32.0;
        let mut solver = DirichletLaplacian::new(m, h);
        let x: Vec<f64> = (0..m * m).map(|k| ((k * 7919) % 113) as f64 / 113.0 - 0.5).collect();
        let mut b = solver.apply(&x, h);
        solver.solve_in_place(&mut b);
        let err = x.iter().zip(&b).map(|(a, c)| (a - c).abs()).fold(0.0, f64::max);
        assert!(err < 1e-11, "round trip error {err}");
    }
}
