use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use tropfactor::pipeline::{Certificate, Status};
use tropfactor::polygon::{tropism_intersection, Tropicalization};
use tropfactor::parse_poly;

const R: &str = "2*x*y + x^2*y + 9*x*y^2 + 7*x^3*y + x^4*y + 9*x^3*y^2";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropfactor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn worked_pair(dir: &TempDir) -> (PathBuf, PathBuf) {
    let f = write(dir, "f.poly", &format!("({R})*(5*y^4 + 5*y^5 + 0.3*x - 1.7*x*y^3 + 2*x^5*y)"));
    let g = write(dir, "g.poly", &format!("({R})*(5*y^5 + 0.8*x^3 - 1.1*x^2*y^7 + x^9*y)"));
    (f, g)
}

#[test]
fn analyze_worked_pair() {
    let dir = TempDir::new().unwrap();
    let (f, g) = worked_pair(&dir);
    let out = run(&["analyze", s(&f), s(&g)]);
    assert_eq!(code(&out), 0);
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("status: FactorLikely"));
    assert!(report.contains("(1, 0): X = t^1, Y = -0.2222222222 + (-0.1111111111) t^1"), "{report}");
}

#[test]
fn analyze_disjoint_fans() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.poly", "x^2 + y^2 + x^3*y^3");
    let g = write(&dir, "g.poly", "1 + x*y^3 + x^3*y");
    let out = run(&["analyze", s(&f), s(&g)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout).unwrap().contains("status: NoTropism"));
}

#[test]
fn input_errors_exit_two_and_write_nothing() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.poly", "");
    let good = write(&dir, "good.poly", "1 + x + y");
    let bad = write(&dir, "bad.poly", "1 + x^^2");
    let report = dir.path().join("report.txt");
    let out = run(&["analyze", s(&empty), s(&good), "--out", s(&report)]);
    assert_eq!(code(&out), 2);
    assert!(!report.exists());

    let out = run(&["analyze", s(&good), s(&bad)]);
    assert_eq!(code(&out), 2);
    let message = String::from_utf8(out.stderr).unwrap();
    assert!(message.contains("bad.poly") && message.contains("position 6"), "{message}");

    let missing = dir.path().join("missing.poly");
    assert_eq!(code(&run(&["analyze", s(&missing), s(&good)])), 2);
    assert_eq!(code(&run(&["analyze", s(&good), s(&good), "--tolerance-rank", "-1"])), 2);

    let svg = dir.path().join("plot.svg");
    assert_eq!(code(&run(&["plot", s(&bad), "--out", s(&svg)])), 2);
    assert!(!svg.exists());

    let prefix = dir.path().join("inst");
    assert_eq!(code(&run(&["gen", "--deg-factor", "0", "--out", s(&prefix)])), 2);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 3);
}

#[test]
fn structured_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let (f, g) = worked_pair(&dir);
    let path = dir.path().join("cert.json");
    let out = run(&["analyze", s(&f), s(&g), "--format", "structured", "--out", s(&path)]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    let cert: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(cert.status, Status::FactorLikely);
    assert_eq!(serde_json::to_string_pretty(&cert).unwrap() + "\n", text);
    let again: Certificate = serde_json::from_str(&serde_json::to_string(&cert).unwrap()).unwrap();
    assert_eq!(again, cert);
}

#[test]
fn generated_instances() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for prefix in [&a, &b] {
        let out = run(&["gen", "--deg-factor", "5", "--deg-cofactor", "10", "--seed", "7", "--out", s(prefix)]);
        assert_eq!(code(&out), 0);
    }
    for suffix in ["_f.poly", "_g.poly", "_truth.json"] {
        let x = fs::read(format!("{}{suffix}", a.display())).unwrap();
        let y = fs::read(format!("{}{suffix}", b.display())).unwrap();
        assert_eq!(x, y, "{suffix}");
    }
    let (f, g) = (format!("{}_f.poly", a.display()), format!("{}_g.poly", a.display()));
    assert_eq!(code(&run(&["analyze", &f, &g])), 0);

    let c = dir.path().join("c");
    let out = run(&["gen", "--unplanted", "--sparsity", "0.3", "--seed", "7", "--out", s(&c)]);
    assert_eq!(code(&out), 0);
    let (f, g) = (format!("{}_f.poly", c.display()), format!("{}_g.poly", c.display()));
    assert_eq!(code(&run(&["analyze", &f, &g])), 1);
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!(r#"class="{class}""#)).count()
}

#[test]
fn plots() {
    let dir = TempDir::new().unwrap();
    let six = write(&dir, "six.poly", "x^3*y + x^2*y^3 + x^5*y^3 + x^4*y^5 + x^2*y^7 + x^3*y^7");
    let svg = dir.path().join("six.svg");
    assert_eq!(code(&run(&["plot", s(&six), "--what", "both", "--out", s(&svg)])), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(count(&text, "support"), 6);
    assert_eq!(count(&text, "ray"), 5);

    let mono = write(&dir, "mono.poly", "7*x^2*y^3");
    assert_eq!(code(&run(&["plot", s(&mono), "--what", "fan", "--out", s(&svg)])), 0);
    assert_eq!(count(&fs::read_to_string(&svg).unwrap(), "ray"), 0);

    let (f, g) = worked_pair(&dir);
    assert_eq!(code(&run(&["plot", s(&f), s(&g), "--what", "fan", "--out", s(&svg)])), 0);
    let pf = parse_poly(&fs::read_to_string(&f).unwrap()).unwrap();
    let pg = parse_poly(&fs::read_to_string(&g).unwrap()).unwrap();
    let common = tropism_intersection(&Tropicalization::of(&pf), &Tropicalization::of(&pg));
    assert_eq!(count(&fs::read_to_string(&svg).unwrap(), "common-ray"), common.len());
}

#[test]
fn amoeba_demo() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("amoeba.svg");
    assert_eq!(code(&run(&["demo-amoeba", "--out", s(&svg)])), 0);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(count(&text, "tentacle"), 3);
    assert!(count(&text, "sample") > 10_000);
    assert!(!text.contains("NaN") && !text.contains("inf"));
}
