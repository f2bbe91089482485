//! Dense third-order real tensors.
//!
//! Entries are stored frontal-slice major and row-major within each slice,
//! so the `m x n` slice `A^(k)` occupies one contiguous run of the buffer.
//! Indices are 0-based in the API; file formats and reports use the
//! 1-based `(i, j, k)` convention.

use std::ops::{Add, Mul, Sub};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// A dense `m x n x p` real tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    m: usize,
    n: usize,
    p: usize,
    data: Vec<f64>,
}

impl Tensor3 {
    /// Builds a tensor from a frontal-slice-major buffer where
    /// `data[k*m*n + i*n + j]` holds `a_(i+1)(j+1)(k+1)`.
    pub fn new(m: usize, n: usize, p: usize, data: Vec<f64>) -> Result<Self> {
        check_dims(m, n, p)?;
        let expected = m * n * p;
        if data.len() != expected {
            return Err(Error::LengthMismatch {
                m,
                n,
                p,
                expected,
                actual: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            let (i, j, k) = (pos % (m * n) / n, pos % n, pos / (m * n));
            return Err(Error::NonFinite {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                value: data[pos],
            });
        }
        Ok(Self { m, n, p, data })
    }

    /// # Panics
    /// If any dimension is zero.
    pub fn zeros(m: usize, n: usize, p: usize) -> Self {
        check_dims(m, n, p).expect("tensor dimensions must be positive");
        Self {
            m,
            n,
            p,
            data: vec![0.0; m * n * p],
        }
    }

    /// # Panics
    /// If any dimension is zero or `f` returns a non-finite value.
    pub fn from_fn(m: usize, n: usize, p: usize, mut f: impl FnMut(usize, usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(m * n * p);
        for k in 0..p {
            for i in 0..m {
                for j in 0..n {
                    data.push(f(i, j, k));
                }
            }
        }
        Self::new(m, n, p, data).expect("invalid tensor from generator")
    }

    /// Tensor with independent standard normal entries.
    pub fn random_normal<R: Rng + ?Sized>(m: usize, n: usize, p: usize, rng: &mut R) -> Self {
        Self::from_fn(m, n, p, |_, _, _| rng.sample(StandardNormal))
    }

    /// Tensor whose only nonzero entry is `value` at `(i, j, k)`.
    pub fn single_entry(m: usize, n: usize, p: usize, (i, j, k): (usize, usize, usize), value: f64) -> Self {
        let mut t = Self::zeros(m, n, p);
        t.set(i, j, k, value);
        t
    }

    /// `I_nnp`: the `n x n` identity as frontal slice 1, zeros elsewhere.
    pub fn identity(n: usize, p: usize) -> Self {
        let mut t = Self::zeros(n, n, p);
        for i in 0..n {
            t.set(i, i, 0, 1.0);
        }
        t
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.p)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn tubes(&self) -> usize {
        self.p
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    fn offset(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < self.m && j < self.n && k < self.p);
        k * self.m * self.n + i * self.n + j
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.data[self.offset(i, j, k)]
    }

    /// # Panics
    /// If `value` is not finite.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: f64) {
        assert!(value.is_finite(), "tensor entries must be finite");
        let idx = self.offset(i, j, k);
        self.data[idx] = value;
    }

    /// Frontal slice `A^(k)` (0-based `k`) as a row-major `m x n` block.
    pub fn frontal_slice(&self, k: usize) -> &[f64] {
        let len = self.m * self.n;
        &self.data[k * len..(k + 1) * len]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// The `n x m x p` tensor transpose: slice 1 transposed, slices `2..p`
    /// transposed and taken in reverse order.
    pub fn transpose(&self) -> Self {
        let (m, n, p) = self.dims();
        Self::from_fn(n, m, p, |i, j, k| self.get(j, i, (p - k) % p))
    }

    /// True when every frontal slice is diagonal, allowing off-diagonal
    /// magnitudes up to `tol`.
    pub fn is_f_diagonal(&self, tol: f64) -> bool {
        self.off_diagonal_max() <= tol
    }

    /// Largest off-diagonal magnitude over all frontal slices.
    pub fn off_diagonal_max(&self) -> f64 {
        let mut worst = 0.0_f64;
        for k in 0..self.p {
            for i in 0..self.m {
                for j in 0..self.n {
                    if i != j {
                        worst = worst.max(self.get(i, j, k).abs());
                    }
                }
            }
        }
        worst
    }

    /// Entrywise scaling.
    pub fn scale(&self, factor: f64) -> Self {
        Self::new(self.m, self.n, self.p, self.data.iter().map(|x| x * factor).collect())
            .expect("scaling produced a non-finite entry")
    }

    fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.dims(), other.dims(), "tensor shapes differ");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Self::new(self.m, self.n, self.p, data).expect("elementwise op produced a non-finite entry")
    }

    /// `‖self − other‖_F`.
    ///
    /// # Panics
    /// If the shapes differ.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dims(), other.dims(), "tensor shapes differ");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

fn check_dims(m: usize, n: usize, p: usize) -> Result<()> {
    if m == 0 || n == 0 || p == 0 {
        Err(Error::ZeroDimension { m, n, p })
    } else {
        Ok(())
    }
}

impl Add for &Tensor3 {
    type Output = Tensor3;

    fn add(self, rhs: &Tensor3) -> Tensor3 {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Tensor3 {
    type Output = Tensor3;

    fn sub(self, rhs: &Tensor3) -> Tensor3 {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &Tensor3 {
    type Output = Tensor3;

    fn mul(self, rhs: f64) -> Tensor3 {
        self.scale(rhs)
    }
}

/// Dense real matrix, row-major. Used for the unfolded and block-circulant
/// views of a tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// # Panics
    /// If `data.len() != rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix buffer length mismatch");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_vec(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(size: usize) -> Self {
        let mut out = Self::zeros(size, size);
        for i in 0..size {
            out.set(i, i, 1.0);
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: f64) {
        self.data[r * self.cols + c] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// # Panics
    /// If the inner dimensions differ.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix inner dimensions differ");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a == 0.0 {
                    continue;
                }
                let row = &rhs.data[t * rhs.cols..(t + 1) * rhs.cols];
                let dst = &mut out.data[r * rhs.cols..(r + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}
