//! Block-circulant and unfolded matrix views of a tensor.
//!
//! These are the matrix-side definitions the T-product is built on. They are
//! materialized only for verification; the production product never builds
//! the `(m·p) x (n·p)` matrix.

use crate::error::{Error, Result};
use crate::tensor::{Matrix, Tensor3};

/// Default absolute tolerance for the circulant structure check.
pub const CIRCULANT_TOL: f64 = 1e-9;

/// `bcirc(A)`: block `(r, c)` is the frontal slice `A^(1 + (r − c) mod p)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCirculantMatrix {
    matrix: Matrix,
    block_rows: usize,
    block_cols: usize,
    blocks: usize,
}

impl BlockCirculantMatrix {
    /// Wraps a dense matrix as an `(m·p) x (n·p)` block-circulant candidate.
    /// Structure is checked by [`bcirc_inverse`], not here.
    pub fn from_matrix(matrix: Matrix, m: usize, n: usize, p: usize) -> Result<Self> {
        if matrix.rows() != m * p {
            return Err(Error::DimensionMismatch {
                axes: "bcirc rows vs m·p",
                left: matrix.rows(),
                right: m * p,
            });
        }
        if matrix.cols() != n * p {
            return Err(Error::DimensionMismatch {
                axes: "bcirc cols vs n·p",
                left: matrix.cols(),
                right: n * p,
            });
        }
        Ok(Self {
            matrix,
            block_rows: m,
            block_cols: n,
            blocks: p,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    /// Block shape `(m, n, p)`.
    pub fn block_dims(&self) -> (usize, usize, usize) {
        (self.block_rows, self.block_cols, self.blocks)
    }
}

pub fn bcirc(a: &Tensor3) -> BlockCirculantMatrix {
    let (m, n, p) = a.dims();
    let mut out = Matrix::zeros(m * p, n * p);
    for br in 0..p {
        for bc in 0..p {
            let k = (br + p - bc) % p;
            for i in 0..m {
                for j in 0..n {
                    out.set(br * m + i, bc * n + j, a.get(i, j, k));
                }
            }
        }
    }
    BlockCirculantMatrix {
        matrix: out,
        block_rows: m,
        block_cols: n,
        blocks: p,
    }
}

/// Recovers the tensor from the first block column after checking that
/// every block matches the circulant pattern within `tol` (absolute).
pub fn bcirc_inverse(b: &BlockCirculantMatrix, tol: f64) -> Result<Tensor3> {
    let (m, n, p) = b.block_dims();
    let mat = &b.matrix;
    let t = Tensor3::from_fn(m, n, p, |i, j, k| mat.get(k * m + i, j));
    for br in 0..p {
        for bc in 0..p {
            let k = (br + p - bc) % p;
            let mut deviation = 0.0_f64;
            for i in 0..m {
                for j in 0..n {
                    deviation = deviation.max((mat.get(br * m + i, bc * n + j) - t.get(i, j, k)).abs());
                }
            }
            if deviation > tol {
                return Err(Error::NotCirculant {
                    row: br + 1,
                    col: bc + 1,
                    deviation,
                });
            }
        }
    }
    Ok(t)
}

/// Frontal slices stacked vertically: an `(m·p) x n` matrix.
pub fn unfold(a: &Tensor3) -> Matrix {
    let (m, n, p) = a.dims();
    Matrix::from_vec(m * p, n, a.as_slice().to_vec())
}

/// Inverse of [`unfold`].
pub fn fold(mat: &Matrix, p: usize) -> Result<Tensor3> {
    if p == 0 || !mat.rows().is_multiple_of(p) {
        return Err(Error::FoldRows { rows: mat.rows(), p });
    }
    Tensor3::new(mat.rows() / p, mat.cols(), p, mat.as_slice().to_vec())
}
