//! Small dense matrices: products, inverses and the spectral norm.

use alloc::vec;
use alloc::vec::Vec;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<f64>,
}

pub const POWER_ITERATION_TOL: f64 = 1e-12;
pub const POWER_ITERATION_CAP: usize = 10_000;

impl Matrix {
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix { dim, data: rows.iter().flat_map(|r| r.iter().copied()).collect() }
    }

    pub fn from_vec(dim: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Matrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, 1.0)
    }

    pub fn scalar(dim: usize, s: f64) -> Self {
        Self::diagonal(&vec![s; dim])
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut data = vec![0.0; dim * dim];
        for (i, &v) in diag.iter().enumerate() {
            data[i * dim + i] = v;
        }
        Matrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        let d = self.dim;
        let mut data = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                for j in 0..d {
                    data[i * d + j] += a * o.get(k, j);
                }
            }
        }
        Matrix { dim: d, data }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j) * x[j]).sum()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let d = self.dim;
        Matrix { dim: d, data: (0..d * d).map(|k| self.get(k % d, k / d)).collect() }
    }

    /// `Some(λ)` if the matrix is `λ·id`.
    pub fn as_scalar(&self) -> Option<f64> {
        let s = self.get(0, 0);
        let ok = (0..self.dim).all(|i| (0..self.dim).all(|j| self.get(i, j) == if i == j { s } else { 0.0 }));
        ok.then_some(s)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.get(i, j) == 0.0))
    }

    pub fn det(&self) -> f64 {
        match self.dim {
            1 => self.data[0],
            2 => self.data[0] * self.data[3] - self.data[1] * self.data[2],
            _ => {
                let (lu, sign) = match self.lu() {
                    Some(x) => x,
                    None => return 0.0,
                };
                (0..self.dim).map(|i| lu[i * self.dim + i]).product::<f64>() * sign
            }
        }
    }

    /// LU with partial pivoting; returns the packed factors and the permutation sign.
    fn lu(&self) -> Option<(Vec<f64>, f64)> {
        let d = self.dim;
        let mut a = self.data.clone();
        let mut sign = 1.0;
        for c in 0..d {
            let p = (c..d).max_by(|&x, &y| a[x * d + c].abs().total_cmp(&a[y * d + c].abs()))?;
            if a[p * d + c] == 0.0 {
                return None;
            }
            if p != c {
                for j in 0..d {
                    a.swap(p * d + j, c * d + j);
                }
                sign = -sign;
            }
            for r in c + 1..d {
                let f = a[r * d + c] / a[c * d + c];
                a[r * d + c] = f;
                for j in c + 1..d {
                    a[r * d + j] -= f * a[c * d + j];
                }
            }
        }
        Some((a, sign))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let d = self.dim;
        match d {
            1 => (self.data[0] != 0.0).then(|| Matrix { dim: 1, data: vec![1.0 / self.data[0]] }),
            2 => {
                let det = self.det();
                (det != 0.0).then(|| {
                    let [a, b, c, e] = [self.data[0], self.data[1], self.data[2], self.data[3]];
                    Matrix { dim: 2, data: vec![e / det, -b / det, -c / det, a / det] }
                })
            }
            _ => {
                let mut a = self.data.clone();
                let mut inv = Matrix::identity(d).data;
                for c in 0..d {
                    let p = (c..d).max_by(|&x, &y| a[x * d + c].abs().total_cmp(&a[y * d + c].abs()))?;
                    if a[p * d + c] == 0.0 {
                        return None;
                    }
                    for j in 0..d {
                        a.swap(p * d + j, c * d + j);
                        inv.swap(p * d + j, c * d + j);
                    }
                    let piv = a[c * d + c];
                    for j in 0..d {
                        a[c * d + j] /= piv;
                        inv[c * d + j] /= piv;
                    }
                    for r in 0..d {
                        if r != c {
                            let f = a[r * d + c];
                            for j in 0..d {
                                a[r * d + j] -= f * a[c * d + j];
                                inv[r * d + j] -= f * inv[c * d + j];
                            }
                        }
                    }
                }
                Some(Matrix { dim: d, data: inv })
            }
        }
    }

    /// `max_{|x|=1} |Ax|`.
    pub fn spectral_norm(&self) -> f64 {
        match self.dim {
            1 => self.data[0].abs(),
            2 => {
                let fro2: f64 = self.data.iter().map(|v| v * v).sum();
                let det = self.det();
                let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0);
                libm::sqrt((fro2 + libm::sqrt(disc)) / 2.0)
            }
            _ => self.power_iteration(),
        }
    }

    fn power_iteration(&self) -> f64 {
        let ata = self.transpose().mul(self);
        let d = self.dim;
        let mut x: Vec<f64> = (0..d).map(|i| 1.0 + i as f64 / d as f64).collect();
        let mut lambda = 0.0;
        for _ in 0..POWER_ITERATION_CAP {
            let y = ata.apply(&x);
            let norm = libm::sqrt(y.iter().map(|v| v * v).sum());
            if norm == 0.0 {
                return 0.0;
            }
            let next = norm / libm::sqrt(x.iter().map(|v| v * v).sum::<f64>());
            x = y.into_iter().map(|v| v / norm).collect();
            if (next - lambda).abs() <= POWER_ITERATION_TOL * next {
                lambda = next;
                break;
            }
            lambda = next;
        }
        libm::sqrt(lambda)
    }

    /// `‖A‖·‖A^{-1}‖`, infinite when singular.
    pub fn condition(&self) -> f64 {
        match self.inverse() {
            Some(inv) => self.spectral_norm() * inv.spectral_norm(),
            None => f64::INFINITY,
        }
    }
}

pub fn euclid(x: &[f64]) -> f64 {
    libm::sqrt(x.iter().map(|v| v * v).sum())
}
