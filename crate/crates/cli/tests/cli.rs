use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;
use tsvdkit_core::{io, tprod, Tensor3};

fn tsvdkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsvdkit"))
        .args(args)
        .output()
        .expect("failed to launch tsvdkit")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Value of `key = value` in a report.
fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("missing {key} in:\n{report}"))
        .to_string()
}

fn real_field(report: &str, key: &str) -> f64 {
    field(report, key).parse().unwrap()
}

fn real_list(text: &str) -> Vec<f64> {
    text.trim_start_matches('[')
        .trim_end_matches(']')
        .split(", ")
        .map(|x| x.parse().unwrap())
        .collect()
}

fn write_tensor(dir: &TempDir, name: &str, t: &Tensor3) -> PathBuf {
    let path = dir.path().join(name);
    io::write(&path, t).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixture() -> Tensor3 {
    let mut a = Tensor3::zeros(3, 3, 3);
    a.set(1, 1, 0, 6.0);
    a.set(0, 0, 1, 5.0);
    a.set(2, 2, 1, 9.0);
    a.set(2, 2, 2, 9.0);
    a
}

fn random(m: usize, n: usize, p: usize, seed: u64) -> Tensor3 {
    Tensor3::random_normal(m, n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}

#[test]
fn tsvd_writes_factors_matching_the_worked_example() {
    let dir = TempDir::new().unwrap();
    let input = write_tensor(&dir, "a.json", &fixture());
    let prefix = dir.path().join("out");
    let out = tsvdkit(&["tsvd", s(&input), "--out", s(&prefix)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout(&out);

    let sfile = io::read(field(&report, "s")).unwrap();
    let mut expected = Tensor3::zeros(3, 3, 3);
    expected.set(0, 0, 0, 12.0);
    expected.set(1, 1, 0, 6.0);
    expected.set(2, 2, 0, 5.0);
    expected.set(0, 0, 1, 3.0);
    expected.set(0, 0, 2, 3.0);
    assert!(sfile.distance(&expected) <= 1e-9);

    // factors re-read from disk reproduce the input within the printed residual
    let u = io::read(field(&report, "u")).unwrap();
    let v = io::read(field(&report, "v")).unwrap();
    let rebuilt = tprod(&u, &tprod(&sfile, &v.transpose()).unwrap()).unwrap();
    let a = fixture();
    let printed = real_field(&report, "residual");
    assert!(rebuilt.distance(&a) / a.frobenius_norm() <= printed + 1e-15);
    assert!(printed <= 1e-9);
}

#[test]
fn tsvd_of_zero_tensor() {
    let dir = TempDir::new().unwrap();
    let input = write_tensor(&dir, "z.json", &Tensor3::zeros(2, 3, 2));
    let prefix = dir.path().join("z");
    let out = tsvdkit(&["tsvd", s(&input), "--out", s(&prefix)]);
    assert!(out.status.success());
    let report = stdout(&out);
    assert_eq!(real_field(&report, "residual"), 0.0);
    assert_eq!(io::read(dir.path().join("z.s")).unwrap(), Tensor3::zeros(2, 3, 2));
}

#[test]
fn malformed_input_exits_2_with_location() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\"dims\": [1, 1, 1],\n\"data\": [1.0,,]}").unwrap();
    let out = tsvdkit(&["tsvd", s(&path), "--out", s(&dir.path().join("x"))]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");

    std::fs::write(&path, r#"{"dims": [2, 2, 1], "data": [1, 2, 3]}"#).unwrap();
    let out = tsvdkit(&["rank", s(&path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected 4 entries"));

    let out = tsvdkit(&["rank", s(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rank_reports() {
    let dir = TempDir::new().unwrap();
    let input = write_tensor(&dir, "a.json", &fixture());
    let out = tsvdkit(&["rank", s(&input)]);
    assert!(out.status.success());
    let report = stdout(&out);
    assert_eq!(field(&report, "t_rank"), "5");
    assert_eq!(field(&report, "tubal_rank"), "3");
    assert!(real_field(&report, "tol") > 0.0);
    let sigma = real_list(&field(&report, "sigma"));
    let want = [12.0, 6.0, 5.0, 3.0, 3.0, 0.0, 0.0, 0.0, 0.0];
    assert_eq!(sigma.len(), want.len());
    assert!(sigma.iter().zip(want).all(|(x, w)| (x - w).abs() <= 1e-9), "{sigma:?}");
    let lambda = real_list(&field(&report, "lambda"));
    assert!((lambda[0] - 162f64.sqrt()).abs() <= 1e-9 && (lambda[1] - 6.0).abs() <= 1e-9);

    let single = write_tensor(&dir, "one.json", &Tensor3::single_entry(2, 4, 3, (1, 3, 2), -7.0));
    let report = stdout(&tsvdkit(&["rank", s(&single)]));
    assert_eq!(field(&report, "t_rank"), "1");
    assert_eq!(field(&report, "tubal_rank"), "1");

    let zero = write_tensor(&dir, "zero.json", &Tensor3::zeros(3, 2, 2));
    let report = stdout(&tsvdkit(&["rank", s(&zero)]));
    assert_eq!(field(&report, "t_rank"), "0");
    assert_eq!(field(&report, "tubal_rank"), "0");

    // an explicit tolerance is echoed back and applied
    let report = stdout(&tsvdkit(&["rank", s(&input), "--tol", "4"]));
    assert_eq!(real_field(&report, "tol"), 4.0);
    assert_eq!(field(&report, "t_rank"), "3");

    assert_eq!(tsvdkit(&["rank", s(&input), "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn approx_residuals() {
    let dir = TempDir::new().unwrap();
    let input = write_tensor(&dir, "a.json", &fixture());
    let out_path = dir.path().join("a1.json");
    let out = tsvdkit(&[
        "approx",
        s(&input),
        "--rank",
        "1",
        "--mode",
        "trank",
        "--out",
        s(&out_path),
    ]);
    assert!(out.status.success());
    let report = stdout(&out);
    let residual = real_field(&report, "residual");
    assert!((residual - 79f64.sqrt()).abs() <= 1e-8 * 79f64.sqrt());
    let a1 = io::read(&out_path).unwrap();
    assert!((a1.distance(&fixture()) - residual).abs() <= 1e-12);

    let out = tsvdkit(&["approx", s(&input), "--rank", "9", "--out", s(&out_path)]);
    assert!(out.status.success());
    assert!(real_field(&stdout(&out), "residual") <= 1e-9 * fixture().frobenius_norm());

    let out = tsvdkit(&["approx", s(&input), "--rank", "0", "--out", s(&out_path)]);
    assert_eq!(out.status.code(), Some(2));
    let out = tsvdkit(&["approx", s(&input), "--rank", "10", "--out", s(&out_path)]);
    assert_eq!(out.status.code(), Some(2));
    let out = tsvdkit(&[
        "approx",
        s(&input),
        "--rank",
        "1",
        "--mode",
        "tubal",
        "--out",
        s(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn approx_residual_matches_singular_value_tail() {
    let dir = TempDir::new().unwrap();
    let a = random(4, 3, 5, 77);
    let input = write_tensor(&dir, "a.json", &a);
    let sigma: Vec<f64> = tsvdkit_core::singular_values(&a, None).unwrap().singular_values;
    for rank in [1usize, 4, 9, 15] {
        let out_path = dir.path().join(format!("a{rank}.json"));
        let out = tsvdkit(&["approx", s(&input), "--rank", &rank.to_string(), "--out", s(&out_path)]);
        assert!(out.status.success());
        let residual = real_field(&stdout(&out), "residual");
        let tail = sigma[rank..].iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((residual - tail).abs() <= 1e-8 * tail.max(1e-300) + 1e-12 * a.frobenius_norm());
    }
}

#[test]
fn verify_suite() {
    let dir = TempDir::new().unwrap();
    let input = write_tensor(&dir, "a.json", &random(4, 5, 3, 5));
    let out = tsvdkit(&["verify", s(&input), "--seed", "9", "--trials", "20"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report = stdout(&out);
    for key in [
        "reconstruction",
        "sigma1_bound",
        "energy",
        "orthogonal_invariance",
        "subadditivity",
    ] {
        assert!(field(&report, key).starts_with("pass"), "{key}: {report}");
    }
    assert_eq!(field(&report, "result"), "pass");

    let again = stdout(&tsvdkit(&["verify", s(&input), "--seed", "9", "--trials", "20"]));
    assert_eq!(report, again);

    let out = tsvdkit(&["verify", s(&input), "--trials", "0"]);
    assert!(out.status.success());
    let report = stdout(&out);
    assert!(!report.contains("orthogonal_invariance"));
    assert_eq!(field(&report, "result"), "pass");
}

#[test]
fn tprod_command() {
    let dir = TempDir::new().unwrap();
    let a = random(2, 3, 4, 1);
    let b = random(3, 2, 4, 2);
    let pa = write_tensor(&dir, "a.json", &a);
    let pb = write_tensor(&dir, "b.json", &b);
    let pc = dir.path().join("c.json");
    let out = tsvdkit(&["tprod", s(&pa), s(&pb), "--out", s(&pc)]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "dims"), "[2, 2, 4]");
    assert_eq!(io::read(&pc).unwrap(), tprod(&a, &b).unwrap());

    let out = tsvdkit(&["tprod", s(&pa), s(&pa), "--out", s(&pc)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inner dimension"));
}

#[test]
fn thread_cap_does_not_change_results() {
    let dir = TempDir::new().unwrap();
    let input = write_tensor(&dir, "a.json", &random(5, 4, 6, 3));
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_tsvdkit"))
            .args(["rank", s(&input)])
            .env("TSVDKIT_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        stdout(&out)
    };
    assert_eq!(run("1"), run("0"));
    assert_eq!(run("3"), run("1"));

    let out = Command::new(env!("CARGO_BIN_EXE_tsvdkit"))
        .args(["rank", s(&input)])
        .env("TSVDKIT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tsvdkit(&[]).status.code(), Some(2));
    assert_eq!(tsvdkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        tsvdkit(&["approx", "x.json", "--rank", "two", "--out", "y"])
            .status
            .code(),
        Some(2)
    );
}
