use std::process::Command;

fn ffhyper(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ffhyper"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn value(stdout: &str) -> &str {
    stdout.lines().last().unwrap_or("")
}

#[test]
fn eval_examples() {
    let (code, out, _) = ffhyper(&[
        "eval", "pg", "--p", "5", "--r", "1", "--a", "1/4,3/4", "--b", "0,0", "--t", "2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&out), "0");
    assert!(out.contains("precision: N="));

    let (_, out, _) = ffhyper(&["eval", "binomial", "--p", "5", "--A", "phi", "--B", "eps"]);
    assert_eq!(value(&out), "-1/5");

    let (_, out, _) = ffhyper(&["eval", "charsum", "--p", "7", "--x", "1"]);
    assert_eq!(value(&out), "-1");

    let (_, out, _) = ffhyper(&[
        "eval", "greene-f", "--p", "13", "--upper", "phi,phi", "--lower", "eps", "--x", "-1",
    ]);
    assert!(!value(&out).is_empty());

    let (_, out, _) = ffhyper(&[
        "eval", "gauss", "--p", "5", "--chi", "phi", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["field"], "F_5 (p=5, r=1)");
}

#[test]
fn eval_rejects_bad_input() {
    let (code, _, err) = ffhyper(&["eval", "binomial", "--p", "7", "--A", "chi4", "--B", "eps"]);
    assert_ne!(code, 0);
    assert!(err.contains("chi4"));
    let (code, _, _) = ffhyper(&["eval", "pg", "--p", "9", "--a", "1/2", "--t", "1"]);
    assert_ne!(code, 0);
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = ffhyper(&["verify", "--ids", "MT5_G", "--primes", "7..7", "--out", d]);
    assert_eq!(code, 0);
    assert!(out.contains("holds"));
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let report = ffhyper::theorems::Report::from_json(&json).unwrap();
    assert_eq!(report.results.len(), 1);
    assert_eq!(report.results[0].lhs, "0");
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("id,p,r,x,status,lhs,rhs,N"));
}

#[test]
fn verify_uses_env_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ffhyper"))
        .args(["verify", "--ids", "MT1", "--primes", "3..13", "--jobs", "2"])
        .env("FFHYPER_OUT", dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("report.json").exists());
}

#[test]
fn table_spv1() {
    let (code, out, _) = ffhyper(&[
        "table", "--id", "SPV1", "--primes", "3..50", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let mut rows = csv::Reader::from_reader(out.as_bytes());
    for rec in rows.records() {
        let rec = rec.unwrap();
        let p: u64 = rec[1].parse().unwrap();
        if matches!(p % 8, 5 | 7) {
            assert_eq!(&rec[5], "0", "p = {p}");
            assert_eq!(&rec[4], "holds");
        } else {
            assert_eq!(&rec[4], "reported");
        }
    }
    let (_, out, _) = ffhyper(&["table", "--id", "SPV1", "--primes", "11..11"]);
    assert!(out.contains("reported") && out.contains("no claim"));
    let (code, _, _) = ffhyper(&["table", "--id", "MT1"]);
    assert_ne!(code, 0);
}
