use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hamforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamforms"))
        .args(args)
        .env_remove("HAMFORMS_FIXTURES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/v1")
}

#[test]
fn betti_table_ham0_weight_10() {
    let o = hamforms(&["betti", "--variant", "ham0", "--weight", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "C^k(ham0)_10\nk     |   2   3   4   5   6\ndim   |   1   3   9  12   4\nrank  |   0   1   2   7   4\nBetti |   0   0   0   1   0\n"
    );
}

#[test]
fn betti_report_is_key_value() {
    let o = hamforms(&[
        "betti",
        "--variant",
        "ham0",
        "--weight",
        "10",
        "--format",
        "report",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("degree.5.betti=1\n"));
    assert!(s.contains("degree.5.rank_in=7\n"));
    assert!(s.lines().all(|l| l.contains('=')));
}

#[test]
fn betti_weight_2_is_acyclic() {
    let o = hamforms(&[
        "betti",
        "--variant",
        "ham",
        "--weight",
        "2",
        "--format",
        "report",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let betti: Vec<&str> = s.lines().filter(|l| l.contains(".betti=")).collect();
    assert!(!betti.is_empty());
    assert!(betti.iter().all(|l| l.ends_with("=0")), "{s}");
}

#[test]
fn betti_is_deterministic() {
    let args = [
        "betti",
        "--variant",
        "ham",
        "--weight",
        "4",
        "--degrees",
        "0..8",
    ];
    assert_eq!(stdout(&hamforms(&args)), stdout(&hamforms(&args)));
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["betti", "--weight", "3"][..],
        &["betti", "--weight", "0"],
        &["betti", "--degrees", "5..2"],
        &["betti", "--variant", "gl"],
        &["frobnicate"],
        &[],
    ] {
        let o = hamforms(args);
        assert_eq!(o.status.code(), Some(64), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(hamforms(&["--help"]).status.code(), Some(0));
}

#[test]
fn gb_of_reference_matrix() {
    let m = fixture_dir().join("M.txt");
    let o = hamforms(&["gb", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.starts_with("vars y1..y12\n"));
    assert_eq!(s.lines().count(), 8);
    assert!(s.contains("18*y6+9*y8+15*y10-30*y11+140*y12\n"), "{s}");
}

#[test]
fn gb_of_zero_matrix_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("z.txt");
    std::fs::write(&p, "2 3\n0 0 0\n0 0 0\n").unwrap();
    let o = hamforms(&["gb", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "vars y1..y2\n");
}

#[test]
fn gb_parse_error_names_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.txt");
    std::fs::write(&p, "2 2\n1 2\n3 x\n").unwrap();
    let o = hamforms(&["gb", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("bad.txt") && e.contains("line 3"), "{e}");
}

#[test]
fn complex_prints_differentials() {
    let o = hamforms(&[
        "complex",
        "--variant",
        "ham0",
        "--weight",
        "10",
        "--degrees",
        "2..3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("C^2 weight=10 dim=1"), "{s}");
    assert!(s.contains("d_2\n3 1\n"), "{s}");
}

#[test]
fn kontsevich_check_with_self_test_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.txt");
    let o = hamforms(&[
        "kontsevich-check",
        "--self-test",
        "--emit-certificate",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("verdict=true\n"));
    assert!(s.contains("augmented_rank=10\n") && s.contains("image_rank=9\n"));
    assert!(s.contains("self_test=reversed order agrees"));
    let written = std::fs::read_to_string(&cert).unwrap();
    let residual = written
        .lines()
        .find_map(|l| l.strip_prefix("residual="))
        .unwrap();
    assert_eq!(residual.split(' ').count(), 14);
    assert!(residual.split(' ').any(|x| x != "0"));
}

#[test]
fn verify_paper_with_builtin_and_directory_fixtures() {
    let o = hamforms(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("w10: ok GB_k/e"));
    assert!(stdout(&o).contains("w8: ok NF(hbar)"));

    let o = hamforms(&[
        "verify-paper",
        "--fixtures",
        fixture_dir().to_str().unwrap(),
        "--only",
        "w8",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(!stdout(&o).contains("w10:"));

    let o = Command::new(env!("CARGO_BIN_EXE_hamforms"))
        .args(["verify-paper", "--only", "w10"])
        .env("HAMFORMS_FIXTURES", fixture_dir())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("w8:"));
}

fn copy_fixtures(to: &Path) {
    for entry in std::fs::read_dir(fixture_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, to.join(p.file_name().unwrap())).unwrap();
    }
}

fn sha256_hex(path: &Path) -> String {
    let o = Command::new("sha256sum").arg(path).output().unwrap();
    String::from_utf8(o.stdout)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .to_string()
}

#[test]
fn corrupted_entry_exits_1_and_names_it() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixtures(dir.path());
    let n = dir.path().join("N.txt");
    let text = std::fs::read_to_string(&n).unwrap();
    // Row 4 reads 0 0 0 42 7 ...; turn the 42 into 41.
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    assert!(lines[4].starts_with("0 0 0 42 7 "));
    lines[4] = lines[4].replacen("42", "41", 1);
    std::fs::write(&n, lines.join("\n") + "\n").unwrap();

    // Without a fresh checksum the manifest check fails first.
    let o = hamforms(&["verify-paper", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stderr(&o).contains("N.txt") && stderr(&o).contains("checksum"),
        "{}",
        stderr(&o)
    );

    let sums = dir.path().join("SHA256SUMS");
    let fresh = sha256_hex(&n);
    let manifest: String = std::fs::read_to_string(&sums)
        .unwrap()
        .lines()
        .map(|l| {
            if l.ends_with(" N.txt") {
                format!("{fresh}  N.txt\n")
            } else {
                format!("{l}\n")
            }
        })
        .collect();
    std::fs::write(&sums, manifest).unwrap();

    let o = hamforms(&["verify-paper", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let e = stderr(&o);
    assert!(e.contains("N row 4 column 4"), "{e}");
    assert!(e.contains("expected 42, got 41"), "{e}");
}
