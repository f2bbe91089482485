//! The singular-value mapping and everything derived from it.
//!
//! `S(A)` is obtained by transforming `A` along its tubes, replacing each
//! slice `Δ^(k)` by the diagonal of its singular values (non-increasing)
//! and transforming back. The result is real and f-diagonal, and together
//! with the inverse transforms of the singular vector slices it gives the
//! T-SVD `A = U ∗ S ∗ Vᵀ`.
//!
//! The absolute values of the diagonal entries of `S` are the singular
//! values of `A`; their count above a threshold is the T-rank. The tube
//! norms `λ_i = ‖S(i,i,:)‖` are the T-singular values and their count is
//! the tubal rank.

use crate::error::{Error, Result};
use crate::spectral::{dft_mode3, half_len, idft_mode3, slice_svds, ComplexMatrix, SliceSvd, SpectralForm};
use crate::tensor::Tensor3;
use crate::tprod::tprod;

/// Factorization `A = U ∗ S ∗ Vᵀ` with orthogonal `U`, `V` and f-diagonal `S = S(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TSvd {
    pub u: Tensor3,
    pub s: Tensor3,
    pub v: Tensor3,
}

impl TSvd {
    pub fn reconstruct(&self) -> Result<Tensor3> {
        self.product_with(&self.s)
    }

    /// `U ∗ core ∗ Vᵀ` for a replacement middle factor of the same shape as `S`.
    fn product_with(&self, core: &Tensor3) -> Result<Tensor3> {
        tprod(&self.u, &tprod(core, &self.v.transpose())?)
    }
}

/// Singular values, T-singular values and the ranks they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    /// All `p · min(m, n)` values `|S(i,i,k)|`, non-increasing.
    pub singular_values: Vec<f64>,
    /// `λ_i` for `i = 1..min(m, n)`, non-increasing.
    pub t_singular_values: Vec<f64>,
    pub t_rank: usize,
    pub tubal_rank: usize,
    /// Values strictly above this count as nonzero.
    pub threshold: f64,
}

impl RankReport {
    /// Builds the report from an f-diagonal `S(A)`. With `tol = None` the
    /// threshold is `ε · max(m, n) · p · σ₁`.
    pub fn from_km(s: &Tensor3, tol: Option<f64>) -> Self {
        let (m, n, p) = s.dims();
        let d = m.min(n);
        let mut singular_values: Vec<f64> = (0..p)
            .flat_map(|k| (0..d).map(move |i| (i, k)))
            .map(|(i, k)| s.get(i, i, k).abs())
            .collect();
        singular_values.sort_by(|a, b| b.total_cmp(a));

        let mut t_singular_values: Vec<f64> = (0..d)
            .map(|i| (0..p).map(|k| s.get(i, i, k).powi(2)).sum::<f64>().sqrt())
            .collect();
        t_singular_values.sort_by(|a, b| b.total_cmp(a));

        let sigma1 = singular_values[0];
        let threshold = tol.unwrap_or(f64::EPSILON * m.max(n) as f64 * p as f64 * sigma1);
        let t_rank = singular_values.iter().filter(|&&x| x > threshold).count();
        let tubal_rank = t_singular_values.iter().filter(|&&x| x > threshold).count();
        Self {
            singular_values,
            t_singular_values,
            t_rank,
            tubal_rank,
            threshold,
        }
    }

    pub fn sigma1(&self) -> f64 {
        self.singular_values[0]
    }
}

/// Real f-diagonal tensor whose transformed slices are `diag(Σ^(k))`.
fn diagonal_from_svds(svds: &[SliceSvd], m: usize, n: usize) -> Result<Tensor3> {
    let p = svds.len();
    let half = svds[..half_len(p)]
        .iter()
        .map(|f| ComplexMatrix::from_diagonal(m, n, &f.sigma))
        .collect();
    idft_mode3(&SpectralForm::from_half_spectrum(half, p)?)
}

fn tensor_from_factors(svds: &[SliceSvd], pick: impl Fn(&SliceSvd) -> &ComplexMatrix) -> Result<Tensor3> {
    let p = svds.len();
    let half = svds[..half_len(p)].iter().map(|f| pick(f).clone()).collect();
    idft_mode3(&SpectralForm::from_half_spectrum(half, p)?)
}

/// `S(A)`, the singular-value mapping.
pub fn km_mapping(a: &Tensor3) -> Result<Tensor3> {
    let (m, n, _) = a.dims();
    diagonal_from_svds(&slice_svds(&dft_mode3(a))?, m, n)
}

/// Full T-SVD with `s = km_mapping(a)`.
pub fn tsvd(a: &Tensor3) -> Result<TSvd> {
    let (m, n, _) = a.dims();
    let svds = slice_svds(&dft_mode3(a))?;
    Ok(TSvd {
        u: tensor_from_factors(&svds, |f| &f.u)?,
        s: diagonal_from_svds(&svds, m, n)?,
        v: tensor_from_factors(&svds, |f| &f.v)?,
    })
}

/// Rank report of `a`; `tol = None` selects the default relative threshold.
pub fn singular_values(a: &Tensor3, tol: Option<f64>) -> Result<RankReport> {
    Ok(RankReport::from_km(&km_mapping(a)?, tol))
}

/// `σ₁(A) = S(1,1,1)`.
pub fn sigma1(a: &Tensor3) -> Result<f64> {
    Ok(km_mapping(a)?.get(0, 0, 0))
}

/// 0-based `(i, k)` positions of the `count` largest `|S(i,i,k)|`. Ties are
/// broken by ascending `(k, i)`.
pub fn leading_locations(s: &Tensor3, count: usize) -> Vec<(usize, usize)> {
    let (m, n, p) = s.dims();
    let mut cells: Vec<(f64, usize, usize)> = (0..p)
        .flat_map(|k| (0..m.min(n)).map(move |i| (k, i)))
        .map(|(k, i)| (s.get(i, i, k).abs(), k, i))
        .collect();
    cells.sort_by(|a, b| b.0.total_cmp(&a.0).then((a.1, a.2).cmp(&(b.1, b.2))));
    cells.into_iter().take(count).map(|(_, k, i)| (i, k)).collect()
}

/// `A_s = U ∗ S_s ∗ Vᵀ` where `S_s` keeps only the entries of `S` holding
/// the `s` largest singular values.
pub fn truncate_trank(f: &TSvd, s: usize) -> Result<Tensor3> {
    let (m, n, p) = f.s.dims();
    let max = p * m.min(n);
    if s == 0 || s > max {
        return Err(Error::RankOutOfRange { s, max });
    }
    let mut kept = Tensor3::zeros(m, n, p);
    for (i, k) in leading_locations(&f.s, s) {
        kept.set(i, i, k, f.s.get(i, i, k));
    }
    f.product_with(&kept)
}

/// Keeps the first `r` diagonal tubes of `S`; the tubal-rank-`r` truncation.
pub fn truncate_tubal(f: &TSvd, r: usize) -> Result<Tensor3> {
    let (m, n, p) = f.s.dims();
    let max = m.min(n);
    if r > max {
        return Err(Error::RankOutOfRange { s: r, max });
    }
    let mut kept = Tensor3::zeros(m, n, p);
    for k in 0..p {
        for i in 0..r {
            kept.set(i, i, k, f.s.get(i, i, k));
        }
    }
    f.product_with(&kept)
}

/// The best approximation of `a` in Frobenius norm among tensors of T-rank one.
pub fn best_trank_one(a: &Tensor3) -> Result<Tensor3> {
    truncate_trank(&tsvd(a)?, 1)
}

/// Checks `σ₁(a) ≥ max |a_ijk|` with slack `1e-10 · (1 + σ₁)`.
pub fn sigma1_upper_bound_check(a: &Tensor3) -> Result<bool> {
    let s1 = sigma1(a)?;
    Ok(s1 + 1e-10 * (1.0 + s1) >= a.max_abs())
}

/// Whether `‖S(a) − S(b)‖_F ≤ tol · (1 + ‖S(a)‖_F)`.
pub fn km_equal(a: &Tensor3, b: &Tensor3, tol: f64) -> Result<bool> {
    if a.dims() != b.dims() {
        let (left, right) = (a.dims(), b.dims());
        let (axes, l, r) = if left.0 != right.0 {
            ("mode 1", left.0, right.0)
        } else if left.1 != right.1 {
            ("mode 2", left.1, right.1)
        } else {
            ("mode 3", left.2, right.2)
        };
        return Err(Error::DimensionMismatch {
            axes,
            left: l,
            right: r,
        });
    }
    let sa = km_mapping(a)?;
    let sb = km_mapping(b)?;
    Ok(sa.distance(&sb) <= tol * (1.0 + sa.frobenius_norm()))
}
