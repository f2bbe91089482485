use num_complex::Complex64;
use rustfft::FftPlanner;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tensor::Tensor3;

/// Relative bound on the imaginary residue accepted by [`idft_mode3`].
pub const IMAG_RESIDUE_TOL: f64 = 1e-8;

/// The frontal slices `Δ^(1..p)` of a tensor after the DFT along mode 3.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralForm {
    m: usize,
    n: usize,
    slices: Vec<ComplexMatrix>,
}

/// Number of slices that determine a conjugate-symmetric spectrum of length `p`.
pub fn half_len(p: usize) -> usize {
    p / 2 + 1
}

impl SpectralForm {
    pub fn new(slices: Vec<ComplexMatrix>) -> Result<Self> {
        let first = slices.first().ok_or(Error::ZeroDimension { m: 0, n: 0, p: 0 })?;
        let (m, n) = (first.rows(), first.cols());
        if m == 0 || n == 0 {
            return Err(Error::ZeroDimension { m, n, p: slices.len() });
        }
        for s in &slices {
            if s.rows() != m {
                return Err(Error::DimensionMismatch {
                    axes: "slice rows",
                    left: m,
                    right: s.rows(),
                });
            }
            if s.cols() != n {
                return Err(Error::DimensionMismatch {
                    axes: "slice cols",
                    left: n,
                    right: s.cols(),
                });
            }
            if !s.is_finite() {
                return Err(Error::Format("spectral slice has non-finite entries".into()));
            }
        }
        Ok(Self { m, n, slices })
    }

    /// Completes a spectrum from its first `p/2 + 1` slices: slice `p − k`
    /// is the conjugate of slice `k` (0-based).
    pub fn from_half_spectrum(half: Vec<ComplexMatrix>, p: usize) -> Result<Self> {
        if half.len() != half_len(p) {
            return Err(Error::DimensionMismatch {
                axes: "half spectrum length vs p/2+1",
                left: half.len(),
                right: half_len(p),
            });
        }
        let mut slices = half;
        for k in half_len(p)..p {
            let mirrored = slices[p - k].conj();
            slices.push(mirrored);
        }
        Self::new(slices)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.m, self.n, self.slices.len())
    }

    pub fn slices(&self) -> &[ComplexMatrix] {
        &self.slices
    }

    pub fn slice(&self, k: usize) -> &ComplexMatrix {
        &self.slices[k]
    }

    pub fn into_slices(self) -> Vec<ComplexMatrix> {
        self.slices
    }

    /// Largest entrywise gap `|Δ^(p−k) − conj(Δ^(k))|`, which also covers the
    /// realness of the self-conjugate slices.
    pub fn symmetry_defect(&self) -> f64 {
        let p = self.slices.len();
        let mut worst = 0.0_f64;
        for k in 0..p {
            let mirror = (p - k) % p;
            for (a, b) in self.slices[k].as_slice().iter().zip(self.slices[mirror].as_slice()) {
                worst = worst.max((a - b.conj()).norm());
            }
        }
        worst
    }
}

/// `Δ^(k)(i,j) = Σ_l ω^((k−1)(l−1)) a_ijl` with `ω = exp(−2πi/p)`, unnormalized.
/// The output is made exactly conjugate symmetric.
pub fn dft_mode3(a: &Tensor3) -> SpectralForm {
    let (m, n, p) = a.dims();
    let mn = m * n;
    let fft = FftPlanner::<f64>::new().plan_fft_forward(p);
    let mut spectrum = vec![Complex64::new(0.0, 0.0); mn * p];
    let mut tube = vec![Complex64::new(0.0, 0.0); p];
    let data = a.as_slice();
    for e in 0..mn {
        for (l, z) in tube.iter_mut().enumerate() {
            *z = Complex64::new(data[l * mn + e], 0.0);
        }
        fft.process(&mut tube);
        for (k, z) in tube.iter().enumerate() {
            spectrum[k * mn + e] = *z;
        }
    }

    let mut half: Vec<ComplexMatrix> = (0..half_len(p))
        .map(|k| ComplexMatrix::from_vec(m, n, spectrum[k * mn..(k + 1) * mn].to_vec()))
        .collect();
    half[0].as_mut_slice().iter_mut().for_each(|z| z.im = 0.0);
    if p % 2 == 0 && p > 1 {
        half[p / 2].as_mut_slice().iter_mut().for_each(|z| z.im = 0.0);
    }
    SpectralForm::from_half_spectrum(half, p).expect("transform of a valid tensor")
}

/// Inverse of [`dft_mode3`], carrying the `1/p` factor. Fails when the
/// result has an imaginary part larger than `1e-8 · (1 + max modulus)`.
pub fn idft_mode3(s: &SpectralForm) -> Result<Tensor3> {
    let (m, n, p) = s.dims();
    let mn = m * n;
    let ifft = FftPlanner::<f64>::new().plan_fft_inverse(p);
    let scale = 1.0 / p as f64;
    let mut out = vec![0.0; mn * p];
    let mut tube = vec![Complex64::new(0.0, 0.0); p];
    let mut residue = 0.0_f64;
    let mut modulus = 0.0_f64;
    for e in 0..mn {
        for (l, z) in tube.iter_mut().enumerate() {
            *z = s.slices[l].as_slice()[e];
        }
        ifft.process(&mut tube);
        for (k, z) in tube.iter().enumerate() {
            let z = z * scale;
            residue = residue.max(z.im.abs());
            modulus = modulus.max(z.norm());
            out[k * mn + e] = z.re;
        }
    }
    let limit = IMAG_RESIDUE_TOL * (1.0 + modulus);
    if residue > limit {
        return Err(Error::ImaginaryResidue { residue, limit });
    }
    Tensor3::new(m, n, p, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// O(p²) literal sum of the forward kernel.
    fn literal_dft(a: &Tensor3) -> Vec<ComplexMatrix> {
        let (m, n, p) = a.dims();
        (0..p)
            .map(|k| {
                let mut d = ComplexMatrix::zeros(m, n);
                for i in 0..m {
                    for j in 0..n {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for l in 0..p {
                            let angle = -2.0 * PI * ((k * l) % p) as f64 / p as f64;
                            acc += Complex64::from_polar(1.0, angle) * a.get(i, j, l);
                        }
                        d[(i, j)] = acc;
                    }
                }
                d
            })
            .collect()
    }

    #[test]
    fn p1_is_identity() {
        let t = Tensor3::new(2, 2, 1, vec![1.0, -2.0, 3.5, 4.0]).unwrap();
        let s = dft_mode3(&t);
        assert_eq!(s.slice(0), &ComplexMatrix::from_real(2, 2, t.as_slice()));
    }

    #[test]
    fn delta_tube_has_flat_spectrum() {
        let t = Tensor3::new(1, 1, 3, vec![1.0, 0.0, 0.0]).unwrap();
        let s = dft_mode3(&t);
        for k in 0..3 {
            assert!((s.slice(k)[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn matches_literal_sum_and_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for p in [1, 2, 3, 4, 5, 7] {
            let t = Tensor3::random_normal(3, 3, p, &mut rng);
            let s = dft_mode3(&t);
            let oracle = literal_dft(&t);
            for (got, want) in s.slices().iter().zip(&oracle) {
                assert!(got.sub(want).frobenius_norm() <= 1e-12 * (1.0 + want.frobenius_norm()));
            }
            assert!(s.symmetry_defect() <= 1e-12);
        }
    }

    #[test]
    fn parseval() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let t = Tensor3::random_normal(4, 2, 6, &mut rng);
        let s = dft_mode3(&t);
        let energy: f64 = s.slices().iter().map(|d| d.frobenius_norm().powi(2)).sum();
        let expected = 6.0 * t.frobenius_norm().powi(2);
        assert!((energy - expected).abs() <= 1e-9 * expected);
    }

    #[test]
    fn round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for p in [1, 2, 5, 8] {
            let t = Tensor3::random_normal(3, 4, p, &mut rng);
            let back = idft_mode3(&dft_mode3(&t)).unwrap();
            assert!(back.distance(&t) <= 1e-12 * t.frobenius_norm());
        }
    }

    #[test]
    fn constant_spectrum_inverts_to_delta() {
        let mtx = ComplexMatrix::from_real(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let s = SpectralForm::new(vec![mtx.clone(); 4]).unwrap();
        let t = idft_mode3(&s).unwrap();
        for (idx, v) in t.as_slice().iter().enumerate() {
            let want = if idx < 4 { (idx + 1) as f64 } else { 0.0 };
            assert!((v - want).abs() < 1e-15);
        }
    }

    #[test]
    fn broken_symmetry_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let t = Tensor3::random_normal(2, 2, 3, &mut rng);
        let mut slices = dft_mode3(&t).into_slices();
        slices[1][(0, 1)] += Complex64::new(0.0, 1e-3);
        let broken = SpectralForm::new(slices).unwrap();
        assert!(matches!(idft_mode3(&broken), Err(Error::ImaginaryResidue { .. })));
    }

    #[test]
    fn half_spectrum_length_checked() {
        let half = vec![ComplexMatrix::zeros(1, 1); 2];
        assert!(SpectralForm::from_half_spectrum(half.clone(), 3).is_ok());
        assert!(SpectralForm::from_half_spectrum(half, 4).is_err());
    }
}
