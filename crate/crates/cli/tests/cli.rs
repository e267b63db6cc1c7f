use std::path::Path;
use std::process::{Command, Output};

use orbihom_cli::document::{parse_block, ResultDocument};

fn orbihom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbihom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn block(o: &Output) -> Vec<(String, String)> {
    parse_block(&stdout(o))
}

fn value(o: &Output, key: &str) -> String {
    block(o)
        .into_iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("missing key {key} in\n{}", stdout(o)))
        .1
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn validate_counts_simplex_classes() {
    let dir = tempfile::tempdir().unwrap();
    let file = orbihom(&["example", "football:2,3"]);
    assert!(file.status.success());
    let path = write(dir.path(), "football.txt", &stdout(&file));
    let o = orbihom(&["validate", &path]);
    assert_eq!(o.status.code(), Some(0));
    // two singular poles over a regular square: 4 ring edges, 8 spokes, 8 triangles
    assert_eq!(value(&o, "counts.0"), "4,0,2");
    assert_eq!(value(&o, "counts.1"), "4,8,0");
    assert_eq!(value(&o, "counts.2"), "0,8,0");
    assert_eq!(value(&o, "divisibly_weighted"), "true");
}

#[test]
fn validate_reports_non_divisible_chain() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.txt", "vertex a 2\nvertex b 3\nsimplex a b\n");
    let o = orbihom(&["validate", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(value(&o, "valid"), "false");
    assert!(value(&o, "error").contains("[a,b]"));
}

#[test]
fn parse_errors_exit_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    assert_eq!(orbihom(&["validate", &empty]).status.code(), Some(2));
    let typo = write(dir.path(), "typo.txt", "vertex a 1\nsimplex a b\n");
    let o = orbihom(&["homology", &typo]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(orbihom(&["homology", "no/such/file"]).status.code(), Some(2));
    assert_eq!(orbihom(&["example", "sphere:2,3"]).status.code(), Some(2));
    assert_eq!(orbihom(&["homology", "teardrop:3", "--theory", "xt"]).status.code(), Some(2));
}

#[test]
fn teardrop_st_homology() {
    let o = orbihom(&["example", "teardrop:3", "--theory", "st"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("h_0 = Z/3\n"));
    assert_eq!(value(&o, "h.0.torsion"), "3");
    assert_eq!(value(&o, "h.1.rank"), "0");
    assert_eq!(value(&o, "h.2.rank"), "1");
}

#[test]
fn sphere_degree_zero_and_two() {
    let o = orbihom(&["example", "sphere:6,12,27,36,108", "--theory", "st"]);
    assert!(o.status.success());
    assert_eq!(value(&o, "h.0.torsion"), "3");
    assert_eq!(value(&o, "h.1.rank"), "4");
    assert_eq!(value(&o, "h.2.rank"), "1");
}

#[test]
fn extreme_stages_match_wt_and_st() {
    for (stage, plain) in [("st-stage=0", "wt"), ("st-stage=inf", "st")] {
        for input in ["football:4,6", "triangle:2,3,5"] {
            let a = orbihom(&["homology", input, "--theory", stage, "--format", "json"]);
            let b = orbihom(&["homology", input, "--theory", plain, "--format", "json"]);
            assert!(a.status.success());
            assert_eq!(a.stdout, b.stdout, "{input} {stage}");
        }
    }
}

#[test]
fn intermediate_stage_differs_from_both() {
    // Σ³K of football(2,4) keeps only the weight-2 pole
    let st3 = orbihom(&["homology", "football:2,4", "--theory", "st-stage=3"]);
    assert_eq!(value(&st3, "theory"), "st-stage=3");
    assert_eq!(value(&st3, "h.0.rank"), "0");
    assert_eq!(value(&st3, "h.0.torsion"), "2");
}

#[test]
fn json_documents_round_trip() {
    let o = orbihom(&["homology", "football:4,6", "--theory", "st", "--witnesses", "--format", "json"]);
    assert!(o.status.success());
    let doc: ResultDocument = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", stdout(&o));
    let w = doc.witnesses.as_ref().unwrap();
    assert_eq!(w[1].generators.len(), 2);
    assert_eq!(w[1].generators[0].order.as_deref(), Some("2"));
    assert_eq!(w[1].generators[1].order, None);
    assert_eq!(doc.groups[1].text, "Z + Z/2");
}

#[test]
fn coefficient_rings() {
    let f3 = orbihom(&["homology", "teardrop:3", "--theory", "st", "--coeff", "Fp=3"]);
    assert_eq!(value(&f3, "coefficients"), "Fp=3");
    assert_eq!(value(&f3, "h.0.torsion"), "3");
    let f2 = orbihom(&["homology", "teardrop:3", "--theory", "st", "--coeff", "Fp=2"]);
    assert_eq!(value(&f2, "h.0.torsion"), "");
    let q = orbihom(&["homology", "football:4,6", "--theory", "st", "--coeff", "Q"]);
    assert_eq!(value(&q, "h.1.rank"), "1");
    assert_eq!(value(&q, "h.1.torsion"), "");
    assert_eq!(orbihom(&["homology", "teardrop:3", "--coeff", "Fp=4"]).status.code(), Some(2));
    let w = orbihom(&["homology", "teardrop:3", "--coeff", "Q", "--witnesses"]);
    assert_eq!(w.status.code(), Some(2));
}

#[test]
fn subdivide_semi_regular_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "edge.txt", "vertex a 1\nvertex b 5\nsimplex a b\n");
    let o = orbihom(&["subdivide", &path]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("vertex a 1\n"));
    assert!(text.contains("vertex b 5\n"));
    assert!(text.contains("vertex b(a,b) 1\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("simplex")).count(), 2);
    assert!(!text.contains("weight"));
}

#[test]
fn subdivide_twice_with_checks() {
    let dir = tempfile::tempdir().unwrap();
    let src = write(dir.path(), "t.txt", &stdout(&orbihom(&["example", "teardrop:4"])));
    let out = dir.path().join("sd2.txt");
    let o = orbihom(&["subdivide", &src, "--times", "2", "--check", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let log = String::from_utf8_lossy(&o.stderr);
    assert_eq!(log.matches("chain identity ok").count(), 4);
    let h = orbihom(&["homology", out.to_str().unwrap(), "--theory", "st"]);
    assert_eq!(value(&h, "h.0.torsion"), "4");
    assert_eq!(value(&h, "h.2.rank"), "1");
    assert_eq!(orbihom(&["subdivide", &src, "--times", "0"]).status.code(), Some(2));
}

#[test]
fn subdivide_refuses_explicit_weights() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "x.txt", "vertex a 2\nvertex b 3\nsimplex a b\nweight a b = 6\n");
    assert_eq!(orbihom(&["subdivide", &path]).status.code(), Some(1));
}

#[test]
fn products() {
    let dir = tempfile::tempdir().unwrap();
    let unit = write(dir.path(), "i.txt", "vertex a 1\nvertex b 1\nsimplex a b\n");
    let o = orbihom(&["product", &unit, &unit]);
    assert!(o.status.success());
    let square = write(dir.path(), "sq.txt", &stdout(&o));
    let h = orbihom(&["homology", &square]);
    assert_eq!(value(&h, "dims"), "3");
    assert_eq!(value(&h, "h.0.rank"), "1");
    assert_eq!(value(&h, "h.1.rank"), "0");
    assert_eq!(value(&h, "h.2.rank"), "0");

    let e2 = write(dir.path(), "e2.txt", "vertex a 1\nvertex b 2\nsimplex a b\n");
    let e3 = write(dir.path(), "e3.txt", "vertex c 1\nvertex d 3\nsimplex c d\n");
    let o = orbihom(&["product", &e2, &e3]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("vertex") && l.ends_with(" 6")));

    let tear = write(dir.path(), "t.txt", &stdout(&orbihom(&["example", "teardrop:5"])));
    let point = write(dir.path(), "p.txt", "vertex p 1\n");
    let prod = write(dir.path(), "tp.txt", &stdout(&orbihom(&["product", &tear, &point])));
    for theory in ["wt", "st"] {
        let a = orbihom(&["homology", &tear, "--theory", theory]);
        let b = orbihom(&["homology", &prod, "--theory", theory]);
        let groups = |o: &Output| {
            block(o)
                .into_iter()
                .filter(|(k, _)| k.starts_with("h."))
                .collect::<Vec<_>>()
        };
        assert_eq!(groups(&a), groups(&b), "{theory}");
    }
}

#[test]
fn verify_reports_and_determinism() {
    let o = orbihom(&["verify", "--suite", "euler", "--cases", "100"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("100/100"));
    let a = orbihom(&["verify", "--suite", "all", "--seed", "42"]);
    let b = orbihom(&["verify", "--suite", "all", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().filter(|l| l.starts_with("PASS")).count(), 4);
    assert_eq!(orbihom(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn thread_cap_from_environment() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_orbihom"))
            .args(["verify", "--suite", "simplex", "--cases", "20"])
            .env("ORBIHOM_THREADS", v)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(one.stdout, run("3").stdout);
    assert_eq!(run("0").status.code(), Some(2));
}

#[test]
fn example_round_trips_through_validate() {
    let dir = tempfile::tempdir().unwrap();
    for spec in ["interval2:2", "disk:4,6", "surface:g=1;k=2,3"] {
        let text = stdout(&orbihom(&["example", spec]));
        let path = write(dir.path(), "k.txt", &text);
        assert_eq!(orbihom(&["validate", &path]).status.code(), Some(0), "{spec}");
        let a = orbihom(&["homology", &path, "--theory", "st"]);
        let b = orbihom(&["homology", spec, "--theory", "st"]);
        let groups = |o: &Output| block(o).into_iter().filter(|(k, _)| k.starts_with("h.")).collect::<Vec<_>>();
        assert_eq!(groups(&a), groups(&b), "{spec}");
    }
}
