//! T-product algebra for third-order real tensors.
//!
//! The crate covers dense `m x n x p` tensors ([`Tensor3`]), the T-product
//! and its inverse/orthogonality notions ([`tprod`]), the mode-3 Fourier
//! transform with per-slice complex SVDs ([`spectral`]) and, on top of
//! those, the singular-value mapping `S(A)`, the T-SVD `A = U ∗ S ∗ Vᵀ`,
//! singular values, T-rank, tubal rank and the optimal T-rank-one
//! approximation ([`kmsvd`]).

pub mod circulant;
pub mod error;
pub mod io;
pub mod kmsvd;
pub mod spectral;
pub mod tensor;
pub mod tprod;
pub mod verify;

pub use circulant::{bcirc, bcirc_inverse, fold, unfold, BlockCirculantMatrix};
pub use error::{Error, Result};
pub use kmsvd::{
    best_trank_one, km_equal, km_mapping, sigma1_upper_bound_check, singular_values, truncate_trank, truncate_tubal,
    tsvd, RankReport, TSvd,
};
pub use spectral::{complex_svd, dft_mode3, idft_mode3, ComplexMatrix, SliceSvd, SpectralForm};
pub use tensor::{Matrix, Tensor3};
pub use tprod::{is_orthogonal, random_orthogonal, tinverse, tprod, tprod_direct};
