//! Invariant checks run against a concrete tensor.
//!
//! Deterministic checks (reconstruction, σ₁ bound, energy) always run;
//! orthogonal-equivalence invariance and σ₁ subadditivity are sampled
//! `trials` times from a seeded generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kmsvd::{km_mapping, tsvd, RankReport};
use crate::tensor::Tensor3;
use crate::tprod::{is_orthogonal, random_orthogonal, tprod};

pub const RECONSTRUCTION_TOL: f64 = 1e-9;
pub const INVARIANCE_TOL: f64 = 1e-8;
pub const SUBADDITIVITY_SLACK: f64 = 1e-9;
pub const ENERGY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed value of the checked quantity.
    pub worst: f64,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<PropertyCheck>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &'static str, worst: f64, limit: f64) -> PropertyCheck {
    PropertyCheck {
        name,
        passed: worst <= limit,
        worst,
        limit,
    }
}

pub fn run_suite(a: &Tensor3, seed: u64, trials: usize) -> Result<VerifyReport> {
    let (m, n, p) = a.dims();
    let norm = a.frobenius_norm();
    let f = tsvd(a)?;
    let report = RankReport::from_km(&f.s, None);
    let sigma1 = report.sigma1();
    let mut checks = Vec::new();

    let residual = f.reconstruct()?.distance(a);
    checks.push(check(
        "reconstruction",
        residual,
        RECONSTRUCTION_TOL * norm.max(f64::MIN_POSITIVE),
    ));

    let factors_ok = is_orthogonal(&f.u, RECONSTRUCTION_TOL)? && is_orthogonal(&f.v, RECONSTRUCTION_TOL)?;
    checks.push(check("orthogonal_factors", if factors_ok { 0.0 } else { 1.0 }, 0.0));

    let off = f.s.off_diagonal_max();
    checks.push(check("f_diagonal", off, 1e-10 * f.s.frobenius_norm()));

    // positive when the bound is violated
    checks.push(check("sigma1_bound", a.max_abs() - sigma1, 1e-10 * (1.0 + sigma1)));

    let energy: f64 = report.singular_values.iter().map(|s| s * s).sum();
    let energy_gap = (energy - norm * norm).abs();
    checks.push(check(
        "energy",
        energy_gap,
        ENERGY_TOL * (norm * norm).max(f64::MIN_POSITIVE),
    ));

    if trials > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base_scale = 1.0 + f.s.frobenius_norm();
        let mut worst_invariance = 0.0_f64;
        let mut worst_subadd = f64::NEG_INFINITY;
        for _ in 0..trials {
            let y = random_orthogonal(m, p, rng.random());
            let z = random_orthogonal(n, p, rng.random());
            let b = tprod(&tprod(&y, a)?, &z.transpose())?;
            worst_invariance = worst_invariance.max(km_mapping(&b)?.distance(&f.s) / base_scale);

            let partner = Tensor3::random_normal(m, n, p, &mut rng).scale(norm.max(1.0) / (m * n * p) as f64);
            let s_partner = km_mapping(&partner)?.get(0, 0, 0);
            let s_sum = km_mapping(&(a + &partner))?.get(0, 0, 0);
            worst_subadd = worst_subadd.max(s_sum - sigma1 - s_partner);
        }
        checks.push(check("orthogonal_invariance", worst_invariance, INVARIANCE_TOL));
        checks.push(check("subadditivity", worst_subadd, SUBADDITIVITY_SLACK));
    }

    Ok(VerifyReport { checks })
}
