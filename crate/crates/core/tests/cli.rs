use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn layerset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layerset")).args(args).output().expect("spawn layerset")
}

fn fig1() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/fig1.setl").display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_four_disks() {
    let out = layerset(&["eval", &fig1(), "--probe", "0,0", "--probe", "3,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("count(S1, S2, S3, S4) at (0,0) = 4"), "{text}");
    assert!(text.contains("union(S1, S2, S3, S4) at (3,3) = 0"), "{text}");
    assert!(text.contains("exactly(4; S1, S2, S3, S4) at (0,0) = 1"), "{text}");

    let whitney = layerset(&["eval", &fig1(), "--probe", "0,0", "--probe", "3,3", "--backend", "whitney"]);
    assert_eq!(stdout(&whitney), text);
}

#[test]
fn malformed_program_exits_2_with_span() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.setl");
    fs::write(&path, "universe plane;\nset A = disk(0, 0, -1);\n").unwrap();
    let out = layerset(&["eval", path.to_str().unwrap(), "--probe", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.setl:2:"), "{err}");
    assert!(err.contains('^'), "{err}");

    let missing = layerset(&["eval", "/nonexistent/x.setl", "--probe", "1"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_probe = layerset(&["eval", &fig1(), "--probe", "zero"]);
    assert_eq!(bad_probe.status.code(), Some(2));
}

#[test]
fn primes_report_and_range() {
    let out = layerset(&["primes", "100"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "N = 100\nformula: 25\nsieve:   25\nmatch\n");
    assert_eq!(layerset(&["primes", "1"]).status.code(), Some(2));
    assert_eq!(layerset(&["primes", "1000001"]).status.code(), Some(2));
}

#[test]
fn raster_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("h.pgm");
    let out = layerset(&[
        "raster", &fig1(), "--query", "exactly(4; S1, S2, S3, S4)", "--size", "30x20", "-o", pgm.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&pgm).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("P2"));
    assert_eq!(lines.next(), Some("30 20"));
    assert_eq!(lines.next(), Some("1"));
    let samples: Vec<i64> = lines.flat_map(|l| l.split_whitespace().map(|v| v.parse().unwrap())).collect();
    assert_eq!(samples.len(), 600);
    assert!(samples.iter().all(|&v| v == 0 || v == 1));
    assert!(samples.contains(&1));

    let p5 = dir.path().join("c.pgm");
    let out = layerset(&["raster", &fig1(), "--size", "16x8", "--binary", "-o", p5.to_str().unwrap()]);
    assert!(out.status.success());
    let bytes = fs::read(&p5).unwrap();
    assert!(bytes.starts_with(b"P5\n16 8\n4\n"));
    assert_eq!(bytes.len(), b"P5\n16 8\n4\n".len() + 128);

    let csv = dir.path().join("c.csv");
    let out = layerset(&["raster", &fig1(), "--size", "16x8", "--format", "csv", "-o", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().all(|l| l.split(',').count() == 16));
    assert!(!text.contains('\r'));
}

#[test]
fn raster_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let real = dir.path().join("r.setl");
    fs::write(&real, "universe real; set A = interval[0, 1]; query union(A);").unwrap();
    let out_path = dir.path().join("o.pgm");
    let o = out_path.to_str().unwrap();
    assert_eq!(layerset(&["raster", real.to_str().unwrap(), "-o", o]).status.code(), Some(2));
    assert_eq!(layerset(&["raster", &fig1(), "--size", "0x5", "-o", o]).status.code(), Some(2));
    assert_eq!(layerset(&["raster", &fig1(), "--region", "1,1,0,0", "-o", o]).status.code(), Some(2));
    assert_eq!(layerset(&["raster", &fig1(), "--query", "union(S9)", "-o", o]).status.code(), Some(2));
    let unwritable = layerset(&["raster", &fig1(), "--size", "4x4", "-o", "/nonexistent/dir/x.pgm"]);
    assert_eq!(unwritable.status.code(), Some(2));
}

#[test]
fn bench_small_rows() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = layerset(&[
        "bench", "--n-max", "3", "--probes", "4", "--seed", "9", "--sample-ms", "1", "--csv", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,bform_calls,whitney_terms,bform_ns,whitney_ns,agree");
    assert!(lines[2].starts_with("2,2,3,"));
    assert!(lines[3].starts_with("3,3,7,"));
    assert!(lines[1..].iter().all(|l| l.ends_with(",true")));
    assert_eq!(layerset(&["bench", "--n-max", "25"]).status.code(), Some(2));
}

#[test]
fn check_lists_suites() {
    let out = layerset(&["check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for suite in ["splitting", "partition", "epsilon-independence", "border-tables"] {
        assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(suite)), "{text}");
    }
}
