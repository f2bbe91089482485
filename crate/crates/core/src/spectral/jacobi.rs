//! One-sided (Hestenes) Jacobi SVD for dense complex matrices.
//!
//! Columns of a working copy of the input are rotated pairwise until they
//! are mutually orthogonal; the same unitary rotations accumulate into `V`.
//! Column norms are then the singular values and the normalized columns
//! form the leading part of `U`. Wide inputs are handled through their
//! adjoint.

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Sweep cap before reporting non-convergence.
pub const MAX_SWEEPS: usize = 60;

/// A pair of columns is considered orthogonal once
/// `|w_pᴴ w_q| ≤ ORTHO_TOL · ‖w_p‖ ‖w_q‖`.
const ORTHO_TOL: f64 = f64::EPSILON;

/// Full SVD `D = U · diag(sigma) · Vᴴ` of an `m x n` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSvd {
    /// `m x m` unitary.
    pub u: ComplexMatrix,
    /// `min(m, n)` values, non-increasing.
    pub sigma: Vec<f64>,
    /// `n x n` unitary.
    pub v: ComplexMatrix,
}

impl SliceSvd {
    /// `U · diag(sigma) · Vᴴ`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let sigma = ComplexMatrix::from_diagonal(self.u.rows(), self.v.rows(), &self.sigma);
        self.u.matmul(&sigma).matmul(&self.v.adjoint())
    }

    /// Factors with conjugated entries; the SVD of `conj(D)`.
    pub fn conj(&self) -> Self {
        Self {
            u: self.u.conj(),
            sigma: self.sigma.clone(),
            v: self.v.conj(),
        }
    }
}

pub fn complex_svd(d: &ComplexMatrix) -> Result<SliceSvd> {
    if !d.is_finite() {
        return Err(Error::NonFiniteMatrix);
    }
    let (mut u, sigma, mut v) = if d.rows() >= d.cols() {
        tall_svd(d)?
    } else {
        let (u_adj, sigma, v_adj) = tall_svd(&d.adjoint())?;
        (v_adj, sigma, u_adj)
    };
    normalize_phases(&mut u, &mut v, sigma.len());
    Ok(SliceSvd { u, sigma, v })
}

/// SVD of an `m x n` matrix with `m ≥ n`.
fn tall_svd(a: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>, ComplexMatrix)> {
    let (m, n) = (a.rows(), a.cols());
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|c| a.column(c)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|c| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[c] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    let mut converged = false;
    let mut off_norm = 0.0;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        let mut off2 = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                let gamma = inner(&w[p], &w[q]);
                let g = gamma.norm();
                off2 += g * g;
                if g == 0.0 || g <= ORTHO_TOL * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        off_norm = off2.sqrt();
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off_norm,
        });
    }

    let norms: Vec<f64> = w.iter().map(|col| norm_sqr(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let cutoff = sigma.first().copied().unwrap_or(0.0) * (m.max(n) as f64) * f64::EPSILON;

    let mut u_cols: Vec<Option<Vec<Complex64>>> = order
        .iter()
        .map(|&j| (norms[j] > cutoff && norms[j] > 0.0).then(|| w[j].iter().map(|z| z / norms[j]).collect()))
        .collect();
    u_cols.resize(m, None);
    let u_cols = complete_basis(u_cols, m);

    let mut u = ComplexMatrix::zeros(m, m);
    for (c, col) in u_cols.iter().enumerate() {
        u.set_column(c, col);
    }
    let mut v_out = ComplexMatrix::zeros(n, n);
    for (c, &j) in order.iter().enumerate() {
        v_out.set_column(c, &v[j]);
    }
    Ok((u, sigma, v_out))
}

/// Applies `[w_p, w_q] ← [w_p, w_q] · [[c, s·e], [−s·ē, c]]` where `e` is the
/// unit phase of `w_pᴴ w_q`.
fn rotate(cols: &mut [Vec<Complex64>], p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (head, tail) = cols.split_at_mut(q);
    let (wp, wq) = (&mut head[p], &mut tail[0]);
    let se = phase * s;
    let se_conj = phase.conj() * s;
    for (x, y) in wp.iter_mut().zip(wq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = a * c - se_conj * b;
        *y = se * a + b * c;
    }
}

/// Fills the empty slots with unit vectors orthogonal to all present
/// columns, picking at each step the standard basis vector with the
/// largest residual after two rounds of Gram-Schmidt.
fn complete_basis(mut cols: Vec<Option<Vec<Complex64>>>, m: usize) -> Vec<Vec<Complex64>> {
    for slot in 0..cols.len() {
        if cols[slot].is_some() {
            continue;
        }
        let basis: Vec<&Vec<Complex64>> = cols.iter().flatten().collect();
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for e in 0..m {
            let mut cand = vec![Complex64::new(0.0, 0.0); m];
            cand[e] = Complex64::new(1.0, 0.0);
            for _ in 0..2 {
                for b in &basis {
                    let proj = inner(b, &cand);
                    for (x, y) in cand.iter_mut().zip(b.iter()) {
                        *x -= proj * y;
                    }
                }
            }
            let norm = norm_sqr(&cand).sqrt();
            if best.as_ref().is_none_or(|(bn, _)| norm > *bn) {
                best = Some((norm, cand));
            }
        }
        let (norm, cand) = best.expect("basis completion requires m > 0");
        cols[slot] = Some(cand.into_iter().map(|z| z / norm).collect());
    }
    cols.into_iter().map(|c| c.expect("slot filled")).collect()
}

/// Rotates each left singular vector so its first nonzero entry is real and
/// nonnegative, applying the same phase to the paired right vector.
fn normalize_phases(u: &mut ComplexMatrix, v: &mut ComplexMatrix, paired: usize) {
    for c in 0..u.cols() {
        let Some(lead) = (0..u.rows()).map(|r| u[(r, c)]).find(|z| z.norm() > 1e-12) else {
            continue;
        };
        let rot = (lead / lead.norm()).conj();
        for r in 0..u.rows() {
            u[(r, c)] *= rot;
        }
        if c < paired {
            for r in 0..v.rows() {
                v[(r, c)] *= rot;
            }
        }
    }
}

#[inline]
fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[inline]
fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}
