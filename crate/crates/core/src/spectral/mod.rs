//! The Fourier side of the construction: `Δ(A)` along mode 3, complex SVDs
//! of its slices, and the inverse transform back to real tensors.

mod jacobi;
mod matrix;
mod transform;

use rayon::prelude::*;

pub use jacobi::{complex_svd, SliceSvd, MAX_SWEEPS};
pub use matrix::ComplexMatrix;
pub use transform::{dft_mode3, half_len, idft_mode3, SpectralForm, IMAG_RESIDUE_TOL};

use crate::error::Result;

/// SVDs of all `p` slices of a conjugate-symmetric spectrum. Only the first
/// `p/2 + 1` are factored; the rest are conjugates of their mirrors, which
/// keeps the singular values exactly symmetric.
pub fn slice_svds(s: &SpectralForm) -> Result<Vec<SliceSvd>> {
    let p = s.dims().2;
    let mut out: Vec<SliceSvd> = s.slices()[..half_len(p)]
        .par_iter()
        .map(complex_svd)
        .collect::<Result<_>>()?;
    for k in half_len(p)..p {
        let mirrored = out[p - k].conj();
        out.push(mirrored);
    }
    Ok(out)
}
