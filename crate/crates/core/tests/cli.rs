//! The command-line binary: exit codes, files and output.

use std::path::Path;
use std::process::{Command, Output};

fn hyperwron(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperwron")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

const SQUARES: &str = "poly m=2 deg=1\n1 [1,0]\n1 [0,1]\npoly m=2 deg=1\n2 [1,0]\n-1 [0,1]\n";

fn certificate(dir: &Path) -> String {
    let squares = write(dir, "squares.poly", SQUARES);
    let out_dir = dir.to_str().unwrap();
    let o = hyperwron(&[
        "sos2wron",
        &squares,
        "--weights",
        "1 9/4",
        "--out-dir",
        out_dir,
        "--name",
        "cert",
        "--samples",
        "500",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    dir.join("cert.manifest").to_str().unwrap().to_string()
}

#[test]
fn sos2wron_then_verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = certificate(dir.path());
    let o = hyperwron(&["verify", &manifest]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("CHECK identity: PASS"));
    assert!(text.contains("seed: 0") && text.contains("samples: 500"), "{text}");
    assert!(text.contains("RESULT: PASS"));
}

#[test]
fn verify_is_reproducible_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = certificate(dir.path());
    let a = hyperwron(&["verify", &manifest, "--seed", "5", "--exact-psd", "--psd-points", "50"]);
    let b = Command::new(env!("CARGO_BIN_EXE_hyperwron"))
        .args(["verify", &manifest, "--seed", "5", "--exact-psd", "--psd-points", "50"])
        .env("HYPERWRON_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("CHECK bezoutian-psd: SAMPLED-OK"));
}

#[test]
fn tampered_claim_fails_identity() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = certificate(dir.path());
    let claim = dir.path().join("cert.claim.poly");
    let text = std::fs::read_to_string(&claim).unwrap();
    let tampered: Vec<String> =
        text.lines().map(|l| if l.trim_end().ends_with("[0,2]") { "11 [0,2]".into() } else { l.to_string() }).collect();
    std::fs::write(&claim, tampered.join("\n")).unwrap();
    let report = dir.path().join("report.txt");
    let o = hyperwron(&["verify", &manifest, "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("CHECK identity: FAIL"));
    assert_eq!(std::fs::read_to_string(report).unwrap(), stdout(&o));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hyperwron(&["verify", dir.path().join("missing.manifest").to_str().unwrap()]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.manifest", "type: hyperwron\nthis line is wrong\n");
    assert_eq!(hyperwron(&["verify", &bad]).status.code(), Some(2));
    assert_eq!(hyperwron(&["gate", "--m-range", "9..3"]).status.code(), Some(2));
    assert_eq!(hyperwron(&["no-such-command"]).status.code(), Some(2));
    let squares = write(dir.path(), "sq.poly", SQUARES);
    // 2 is not a rational square and four-square splitting is off
    let o = hyperwron(&["sos2wron", &squares, "--weights", "2 1", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("four-square"));
    assert_eq!(hyperwron(&["--help"]).status.code(), Some(0));
}

#[test]
fn escalation_maps_to_exit_three() {
    assert_eq!(hyperwron::Error::Escalation("primes disagree".into()).exit_code(), 3);
}

#[test]
fn four_square_weights_verify() {
    let dir = tempfile::tempdir().unwrap();
    let squares = write(dir.path(), "sq.poly", SQUARES);
    let out_dir = dir.path().to_str().unwrap();
    let o =
        hyperwron(&["sos2wron", &squares, "--weights", "2 7/3", "--four-square", "--out-dir", out_dir, "--name", "fs"]);
    assert_eq!(o.status.code(), Some(0));
    let v = hyperwron(&["verify", dir.path().join("fs.manifest").to_str().unwrap(), "--samples", "300"]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
}

#[test]
fn gate_tsv_table() {
    let o = hyperwron(&["gate", "--m-range", "4..5", "--y-range", "2..4", "--tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m\t2y\tlhs\targmax\tmax_rhs\tmargin\tverdict\tnote");
    assert!(lines.contains(&"4\t8\t165\t(d=3,k=2)\t164\t1\ttrue"));
    assert!(lines.contains(&"5\t4\t70\t(d=3,k=1)\t70\t0\tfalse"));
    let rows = hyperwron(&["gate", "--m-range", "4", "--y-range", "4", "--rows"]);
    assert!(stdout(&rows).contains("(d=5,k=1)"));
    let bez = hyperwron(&["gate", "--bezoutian", "--m-range", "7", "--y-range", "2", "--tsv"]);
    assert!(stdout(&bez).lines().nth(1).unwrap().ends_with("true"));
}

#[test]
fn hyperbolic_check_refutes_sum_of_squares() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.poly", "poly m=2 deg=2\n1 [2,0]\n1 [0,2]\n");
    let o = hyperwron(&["hyperbolic", "check", "--p", &p, "--e", "1 0"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("refuted") && text.contains("witness confirmed: true"), "{text}");
    let q = write(dir.path(), "q.poly", "poly m=2 deg=2\n1 [1,1]\n");
    assert_eq!(hyperwron(&["hyperbolic", "check", "--p", &q, "--e", "1 1"]).status.code(), Some(0));
    let sampled =
        hyperwron(&["hyperbolic", "check", "--p", &q, "--e", "1 1", "--strategy", "sampled", "--samples", "30"]);
    assert_eq!(sampled.status.code(), Some(0));
    assert!(stdout(&sampled).contains("sampled (30 directions"));
}

#[test]
fn bezout_matrix_output() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "p.poly", "poly m=2 deg=2\n1 [1,1]\n");
    let o = hyperwron(&["bezout", "--p", &p, "--u", "1 1", "--v", "1 1", "--at", "1 2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("5\t3\n3\t2\n"), "{text}");
    assert!(text.contains("psd: true"));
    let sym = hyperwron(&["bezout", "--p", &p, "--u", "1 1", "--v", "1 1"]);
    assert!(stdout(&sym).contains("B[1][1] = 2"), "{}", stdout(&sym));
}

#[test]
fn example_restriction_check() {
    let o = hyperwron(&["example", "--check", "restriction"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("CHECK restriction: PASS"));
}
