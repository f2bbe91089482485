//! The T-product `A ∗ B = bcirc⁻¹(bcirc(A)·bcirc(B))` and the algebra
//! built on it.
//!
//! Products and inverses are evaluated in the Fourier domain: after the
//! mode-3 DFT the T-product is a slice-wise complex matrix product. The
//! literal block-circulant form is kept as [`tprod_direct`] for
//! differential testing.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::circulant::{bcirc, fold, unfold};
use crate::error::{Error, Result};
use crate::spectral::{dft_mode3, half_len, idft_mode3, slice_svds, ComplexMatrix, SpectralForm};
use crate::tensor::Tensor3;

/// A transformed slice is singular when its smallest singular value is at
/// most this fraction of the largest singular value over all slices.
pub const SINGULAR_REL_TOL: f64 = 1e-12;

fn check_conforming(a: &Tensor3, b: &Tensor3) -> Result<()> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch {
            axes: "inner dimension (left mode 2 vs right mode 1)",
            left: a.cols(),
            right: b.rows(),
        });
    }
    if a.tubes() != b.tubes() {
        return Err(Error::DimensionMismatch {
            axes: "tube length (mode 3)",
            left: a.tubes(),
            right: b.tubes(),
        });
    }
    Ok(())
}

/// Applies `f` to the independent half of a spectrum and rebuilds the
/// full conjugate-symmetric form.
fn map_half<F>(s: &SpectralForm, f: F) -> Result<SpectralForm>
where
    F: Fn(usize, &ComplexMatrix) -> ComplexMatrix + Sync,
{
    let p = s.dims().2;
    let half = (0..half_len(p)).into_par_iter().map(|k| f(k, s.slice(k))).collect();
    SpectralForm::from_half_spectrum(half, p)
}

/// T-product of an `m x s x p` and an `s x n x p` tensor.
pub fn tprod(a: &Tensor3, b: &Tensor3) -> Result<Tensor3> {
    check_conforming(a, b)?;
    let fa = dft_mode3(a);
    let fb = dft_mode3(b);
    let prod = map_half(&fa, |k, da| da.matmul(fb.slice(k)))?;
    idft_mode3(&prod)
}

/// `fold(bcirc(a) · unfold(b))`, the literal definition. Allocates the
/// full block-circulant matrix; use only for checking [`tprod`].
pub fn tprod_direct(a: &Tensor3, b: &Tensor3) -> Result<Tensor3> {
    check_conforming(a, b)?;
    fold(&bcirc(a).matrix().matmul(&unfold(b)), a.tubes())
}

/// Whether `qᵀ ∗ q` and `q ∗ qᵀ` are both within `tol` (Frobenius) of the
/// identity tensor.
pub fn is_orthogonal(q: &Tensor3, tol: f64) -> Result<bool> {
    let (m, n, p) = q.dims();
    if m != n {
        return Err(Error::NotSquare { m, n });
    }
    let id = Tensor3::identity(n, p);
    let qt = q.transpose();
    Ok(tprod(&qt, q)?.distance(&id) <= tol && tprod(q, &qt)?.distance(&id) <= tol)
}

/// Deterministic random orthogonal `n x n x p` tensor.
///
/// Each independent Fourier slice is an orthonormalized Gaussian matrix
/// (real for the self-conjugate slices); the remaining slices are the
/// conjugates, so the inverse transform is real and orthogonal.
pub fn random_orthogonal(n: usize, p: usize, seed: u64) -> Tensor3 {
    assert!(n >= 1 && p >= 1, "random_orthogonal needs n, p >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half: Vec<ComplexMatrix> = (0..half_len(p))
        .map(|k| {
            let real = k == 0 || 2 * k == p;
            let entries = (0..n * n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = if real { 0.0 } else { rng.sample(StandardNormal) };
                    Complex64::new(re, im)
                })
                .collect();
            orthonormalize_columns(ComplexMatrix::from_vec(n, n, entries))
        })
        .collect();
    let spectrum = SpectralForm::from_half_spectrum(half, p).expect("half spectrum has p/2+1 slices");
    idft_mode3(&spectrum).expect("conjugate-symmetric spectrum")
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
fn orthonormalize_columns(a: ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (a.rows(), a.cols());
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(cols);
    for c in 0..cols {
        let mut v = a.column(c);
        for _ in 0..2 {
            for b in &basis {
                let proj: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= proj * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0, "degenerate gaussian draw");
        basis.push(v.into_iter().map(|z| z / norm).collect());
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for (c, col) in basis.iter().enumerate() {
        out.set_column(c, col);
    }
    out
}

/// `A⁻¹` with `A ∗ A⁻¹ = A⁻¹ ∗ A = I`. Fails with the 1-based index of the
/// first singular transformed slice.
pub fn tinverse(a: &Tensor3) -> Result<Tensor3> {
    let (m, n, _) = a.dims();
    if m != n {
        return Err(Error::NotSquare { m, n });
    }
    let spectrum = dft_mode3(a);
    let svds = slice_svds(&spectrum)?;
    let largest = svds.iter().map(|f| f.sigma[0]).fold(0.0, f64::max);
    for (k, f) in svds.iter().enumerate() {
        let sigma_min = *f.sigma.last().expect("n >= 1");
        if sigma_min <= SINGULAR_REL_TOL * largest {
            return Err(Error::SingularSlice { k: k + 1, sigma_min });
        }
    }
    let inv = map_half(&spectrum, |k, _| {
        let f = &svds[k];
        let mut v_scaled = f.v.clone();
        for r in 0..n {
            for c in 0..n {
                v_scaled[(r, c)] /= f.sigma[c];
            }
        }
        v_scaled.matmul(&f.u.adjoint())
    })?;
    idft_mode3(&inv)
}
