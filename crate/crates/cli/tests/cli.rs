use std::path::PathBuf;
use std::process::{Command, Output};

use cosheaf::{fixtures, Cosheaf, Field, Matrix, Simplex};
use cosheaf_cli::formats::{emit_complex, emit_cosheaf, parse_complex, parse_cosheaf, parse_matching};
use cosheaf_cli::Report;
use proptest::prelude::*;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.display().to_string()
}

fn cosheaf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosheaf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Report {
    let out = cosheaf(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

#[test]
fn homology_of_circle() {
    let r = report(&["homology", "--complex", &data("circle.cplx")]);
    assert_eq!(r.homology, Some(vec![1, 1]));
    assert_eq!(r.field, 2);
    assert_eq!(r.inputs.len(), 1);
}

#[test]
fn morse_on_circle() {
    let r = report(&["morse", "--complex", &data("circle.cplx"), "--auto-matching"]);
    assert_eq!(r.critical_cells.as_ref().map(|c| c.iter().sum::<usize>()), Some(2));
    assert_eq!(r.morse_homology, Some(vec![1, 1]));
    assert_eq!(r.verdicts.get("quasi_isomorphic"), Some(&true));
}

#[test]
fn morse_with_matching_file_and_cosheaf_file() {
    let r = report(&[
        "morse",
        "--complex",
        &data("circle.cplx"),
        "--cosheaf",
        &data("circle.cosheaf"),
        "--matching",
        &data("circle.match"),
        "--seed",
        "3",
    ]);
    assert_eq!(r.field, 3);
    assert_eq!(r.critical_cells, Some(vec![1, 1]));
    assert!(r.passed());
}

#[test]
fn morse_mv_on_circle_split() {
    let r = report(&[
        "morse-mv",
        "--complex",
        &data("circle.cplx"),
        "--left",
        &data("circle_left.cplx"),
        "--right",
        &data("circle_right.cplx"),
        "--auto-matching",
        "--seed",
        "9",
    ]);
    assert!(r.verdicts.iter().filter(|(k, _)| k.starts_with("ses_exact")).all(|(_, &v)| v));
    assert_eq!(r.verdicts.get("les_isomorphic"), Some(&true));
    assert_eq!(r.les.len(), 2);
}

#[test]
fn mv_and_compare_on_sphere() {
    let args = [
        "--complex".to_string(),
        data("sphere.cplx"),
        "--left".into(),
        data("sphere_upper.cplx"),
        "--right".into(),
        data("sphere_lower.cplx"),
    ];
    let with = |cmd: &str| {
        let mut v = vec![cmd];
        v.extend(args.iter().map(String::as_str));
        report(&v)
    };
    let mv = with("mv");
    assert_eq!(mv.verdicts.get("les_exact"), Some(&true));
    let delta = mv.les[0].rows.iter().find(|r| r.node == "H_2(right)").unwrap();
    assert_eq!((delta.map.as_deref(), delta.rank), (Some("delta"), Some(1)));
    assert!(with("compare").passed());
    assert!(with("validate").passed());
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = [
        "morse-mv",
        "--complex",
        &data("sphere.cplx"),
        "--left",
        &data("sphere_upper.cplx"),
        "--right",
        &data("sphere_lower.cplx"),
        "--auto-matching",
        "--field",
        "5",
        "--seed",
        "11",
        "--report",
        path.to_str().unwrap(),
    ];
    assert_eq!(cosheaf(&args).status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(cosheaf(&args).status.code(), Some(0));
    let second = std::fs::read_to_string(&path).unwrap();
    let a = Report::from_json(&first).unwrap();
    let b = Report::from_json(&second).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
    assert_eq!(Report::from_json(&a.to_json()).unwrap(), a);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cplx");
    std::fs::write(&bad, "0 1\n1 1\n").unwrap();
    let out = cosheaf(&["homology", "--complex", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains(&format!("{}:2:", bad.display())), "{err}");

    let out = cosheaf(&["homology", "--complex", &data("circle.cplx"), "--field", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cosheaf(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    let out = cosheaf(&[
        "mv",
        "--complex",
        &data("circle.cplx"),
        "--left",
        &data("circle_left.cplx"),
        "--right",
        &data("circle_left.cplx"),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let matching = dir.path().join("m");
    std::fs::write(&matching, "pair 0 0 1\npair 1 1 2\npair 2 0 2\n").unwrap();
    let out = cosheaf(&["morse", "--complex", &data("circle.cplx"), "--matching", matching.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not acyclic"));
    let out = cosheaf(&["validate", "--complex", &data("circle.cplx"), "--matching", matching.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_cosheaf_names_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let k = fixtures::triangle();
    let f = Field::new(3).unwrap();
    let c = Cosheaf::constant(&k, 1, f);
    let text = emit_cosheaf(&c).replace("map 0 1 2 -> 0 1 : 1", "map 0 1 2 -> 0 1 : 2");
    let path = dir.path().join("c");
    std::fs::write(&path, text).unwrap();
    let cx = dir.path().join("k");
    std::fs::write(&cx, emit_complex(&k)).unwrap();
    let out = cosheaf(&["validate", "--complex", cx.to_str().unwrap(), "--cosheaf", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("square"));
}

#[test]
fn golden_circle_cosheaf() {
    let k = fixtures::circle();
    let f = Field::new(3).unwrap();
    let s = |v: &[u32]| Simplex::new(v.to_vec()).unwrap();
    let stalks = k.iter().map(|x| (x.clone(), 1)).collect();
    let entry = |e: i64| Matrix::from_rows(f, &[[e]]);
    let maps = [
        (s(&[0, 1]), s(&[0]), 1),
        (s(&[0, 1]), s(&[1]), 2),
        (s(&[0, 2]), s(&[0]), 2),
        (s(&[0, 2]), s(&[2]), 1),
        (s(&[1, 2]), s(&[1]), 1),
        (s(&[1, 2]), s(&[2]), 1),
    ]
    .into_iter()
    .map(|(a, b, e)| ((a, b), entry(e)))
    .collect();
    let c = Cosheaf::new(k.clone(), f, stalks, maps).unwrap();
    let golden = std::fs::read_to_string(data("circle.cosheaf")).unwrap();
    assert_eq!(emit_cosheaf(&c), golden);
    assert_eq!(parse_cosheaf(&golden, &k).unwrap(), c);
    let complex = std::fs::read_to_string(data("circle.cplx")).unwrap();
    assert_eq!(parse_complex(&complex).unwrap(), k);
}

proptest! {
    #[test]
    fn parsers_never_panic(text in "\\PC{0,200}") {
        let k = fixtures::triangle();
        let _ = parse_complex(&text);
        let _ = parse_cosheaf(&text, &k);
        let _ = parse_matching(&text);
    }

    #[test]
    fn token_soup_never_panics(tokens in proptest::collection::vec(
        prop_oneof![
            Just("field".to_string()), Just("stalk".to_string()), Just("map".to_string()),
            Just("pair".to_string()), Just("->".to_string()), Just(":".to_string()),
            Just("<".to_string()), Just("\n".to_string()), Just("#".to_string()),
            (0u32..6).prop_map(|n| n.to_string()),
        ],
        0..60,
    )) {
        let text = tokens.join(" ");
        let k = fixtures::sphere();
        if let Err(e) = parse_complex(&text) { prop_assert!(e.line >= 1); }
        let _ = parse_cosheaf(&text, &k);
        if let Err(e) = parse_matching(&text) { prop_assert!(e.line >= 1); }
    }
}
