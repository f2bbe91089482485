use std::path::{Path, PathBuf};

use tsvdkit_core::verify::run_suite;
use tsvdkit_core::{io, singular_values, tprod, truncate_trank, tsvd, Error, Tensor3};

use crate::report::{dims, real, reals, Report};

/// Process exit status: 2 for usage and input problems, 3 for numerical failures.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. }
            | Error::ImaginaryResidue { .. }
            | Error::SingularSlice { .. }
            | Error::NonFiniteMatrix => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

pub type Outcome = Result<String, Failure>;

fn relative(residual: f64, norm: f64) -> f64 {
    if norm > 0.0 {
        residual / norm
    } else {
        residual
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut os = prefix.as_os_str().to_owned();
    os.push(suffix);
    PathBuf::from(os)
}

pub fn tsvd_cmd(input: &Path, prefix: &Path) -> Outcome {
    let a = io::read(input)?;
    let f = tsvd(&a)?;
    let residual = relative(f.reconstruct()?.distance(&a), a.frobenius_norm());
    let paths = [".u", ".s", ".v"].map(|s| with_suffix(prefix, s));
    io::write(&paths[0], &f.u)?;
    io::write(&paths[1], &f.s)?;
    io::write(&paths[2], &f.v)?;

    let mut r = Report::default();
    r.line("dims", dims(a.dims()))
        .line("u", paths[0].display())
        .line("s", paths[1].display())
        .line("v", paths[2].display())
        .line("residual", real(residual));
    Ok(r.into_string())
}

pub fn rank_cmd(input: &Path, tol: Option<f64>) -> Outcome {
    if let Some(t) = tol {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Failure {
                code: 2,
                message: format!("--tol must be a finite nonnegative number, got {t}"),
            });
        }
    }
    let a = io::read(input)?;
    let report = singular_values(&a, tol)?;
    let mut r = Report::default();
    r.line("dims", dims(a.dims()))
        .line("sigma", reals(&report.singular_values))
        .line("lambda", reals(&report.t_singular_values))
        .line("t_rank", report.t_rank)
        .line("tubal_rank", report.tubal_rank)
        .line("tol", real(report.threshold));
    Ok(r.into_string())
}

pub fn approx_cmd(input: &Path, rank: usize, out: &Path) -> Outcome {
    let a = io::read(input)?;
    let f = tsvd(&a)?;
    let approx = truncate_trank(&f, rank)?;
    io::write(out, &approx)?;
    let mut r = Report::default();
    r.line("mode", "trank")
        .line("rank", rank)
        .line("out", out.display())
        .line("residual", real(a.distance(&approx)));
    Ok(r.into_string())
}

pub fn tprod_cmd(left: &Path, right: &Path, out: &Path) -> Outcome {
    let a = io::read(left)?;
    let b = io::read(right)?;
    let c = tprod(&a, &b)?;
    io::write(out, &c)?;
    let mut r = Report::default();
    r.line("dims", dims(c.dims())).line("out", out.display());
    Ok(r.into_string())
}

/// Runs the invariant suite. The flag is false when any property failed.
pub fn verify_cmd(input: &Path, seed: u64, trials: usize) -> Result<(String, bool), Failure> {
    let a: Tensor3 = io::read(input)?;
    let suite = run_suite(&a, seed, trials)?;
    let mut r = Report::default();
    r.line("seed", seed).line("trials", trials);
    for c in &suite.checks {
        let status = if c.passed { "pass" } else { "fail" };
        r.line(
            c.name,
            format!("{status} worst={} limit={}", real(c.worst), real(c.limit)),
        );
    }
    r.line("result", if suite.all_passed() { "pass" } else { "fail" });
    Ok((r.into_string(), suite.all_passed()))
}
