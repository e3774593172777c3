mod common;

use common::*;
use serde_json::Value;

fn code(args: &[&str]) -> i32 {
    fpa(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&fpa(&all))).unwrap()
}

#[test]
fn parse_prints_canonical_form() {
    let out = fpa(&["parse", "fixtures/example1.fpa"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "gens x y;\nodd x y;\nrel x^2;\nrel y*x*y;\nschema x*y^(2*i+1)*x = 0 for i >= 1;\n"
    );
}

#[test]
fn even_part_of_the_example() {
    let out = fpa(&[
        "even-part",
        "fixtures/example1.fpa",
        "--max-deg",
        "8",
        "--simplify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        presentation_part(&stdout(&out)),
        "gens y12 y21 y22;\nrel y12^2;\nrel y21*y12;\nrel y21^2;\nrel y21*y22;\nrel y22*y12;\n"
    );
}

#[test]
fn member_exit_codes() {
    let elem = ["--element", "x*y^3*x", "--max-deg", "10"];
    let with = |extra: &[&str]| {
        let mut a = vec!["member", "fixtures/example1.fpa"];
        a.extend(elem);
        a.extend(extra);
        code(&a)
    };
    assert_eq!(with(&[]), 0);
    assert_eq!(with(&["--no-schemas"]), 1);
    let v = json(&[
        "member",
        "fixtures/example1.fpa",
        "--element",
        "x*y^3*x",
        "--no-schemas",
    ]);
    assert_eq!(v["verdict"], "non-member-up-to-degree");
    // inhomogeneous and irreducible: no verdict either way
    assert_eq!(
        code(&["member", "fixtures/mat2.fpa", "--element", "e", "--max-deg", "4"]),
        3
    );
    assert_eq!(code(&["member", "fixtures/mat2.fpa", "--element", "a*b - e"]), 0);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(code(&["hilbert", "missing.fpa"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
    assert_eq!(code(&["hilbert", "fixtures/free2.fpa", "--max-deg", "0"]), 2);
    assert_eq!(code(&["member", "fixtures/free2.fpa", "--element", "z"]), 2);
    assert_eq!(code(&["peirce", "fixtures/example1.fpa"]), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fpa");
    std::fs::write(&bad, "gens x; rel x*q;").unwrap();
    assert_eq!(code(&["parse", bad.to_str().unwrap()]), 2);
    let nowhere = dir.path().join("no/such/dir/out.txt");
    assert_eq!(
        code(&[
            "parse",
            "fixtures/free2.fpa",
            "--output",
            nowhere.to_str().unwrap()
        ]),
        2
    );
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn hilbert_json_layout() {
    let v = json(&["hilbert", "fixtures/example1.fpa", "--max-deg", "3"]);
    assert_eq!(
        serde_json::to_string(&v).unwrap(),
        r#"{"dims":["1","2","3","4"],"exact":true,"degree_bound":"3","complete":true}"#
    );
    let free = json(&["hilbert", "fixtures/free2.fpa", "--max-deg", "4"]);
    assert_eq!(free["dims"], serde_json::json!(["1", "2", "4", "8", "16"]));
}

#[test]
fn verify_equiv_reports_a_table() {
    let out = fpa(&[
        "verify-equiv",
        "fixtures/example1.fpa",
        "fixtures/example1_a0.fpa",
        "--ratio",
        "2",
        "--max-deg",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("degree first(ratio*d) second(d)\n"));
    assert!(text.ends_with("verdict: consistent-up-to-degree\n"));
    assert_eq!(
        code(&[
            "verify-equiv",
            "fixtures/free2.fpa",
            "fixtures/example1_a0.fpa",
            "--max-deg",
            "3"
        ]),
        1
    );
}

#[test]
fn check_map_verdicts() {
    let ok = [
        "check-map",
        "fixtures/example1_a0.fpa",
        "fixtures/example1.fpa",
        "--max-deg",
        "12",
        "--map",
        "a = x*y, b = y^2, c = y*x",
    ];
    assert_eq!(code(&ok), 0);
    let mut bad = ok;
    bad[6] = "a = x, b = y, c = y";
    assert_eq!(code(&bad), 1);
    let mut high = ok;
    high[4] = "3";
    assert_eq!(code(&high), 3);
}

#[test]
fn peirce_on_the_matrix_fixture() {
    let out = fpa(&["peirce", "fixtures/mat2.fpa", "--simplify"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("# hilbert: [1, 0, 0, 0, 0]"), "{text}");
    assert!(text.contains("# e_Y - 1: member"), "{text}");
    assert_eq!(presentation_part(&text), "gens;\n");
}

#[test]
fn unverified_witnesses_exit_3_unless_forced() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("partial.fpa");
    let text = std::fs::read_to_string(fixture_path("mat2.fpa"))
        .unwrap()
        .replace("witness e: 1 = e + b*e*a;", "witness e: 1 = e;");
    std::fs::write(&path, text).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(code(&["peirce", p, "--simplify"]), 3);
    let forced = fpa(&["peirce", p, "--simplify", "--force", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&forced)).unwrap();
    assert!(v["verdict"].as_str().unwrap().starts_with("inconclusive"));
}

#[test]
fn simplify_and_gb() {
    let out = fpa(&["simplify", "fixtures/mat2.fpa"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dimension-preserved (4)"));
    let gb = json(&["gb", "fixtures/example1.fpa", "--max-deg", "6"]);
    let lhs: Vec<&str> = gb["rules"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["lhs"].as_str().unwrap())
        .collect();
    assert_eq!(lhs, ["x^2", "y*x*y", "x*y^3*x"]);
    assert_eq!(gb["complete"], true);
}

#[test]
fn precedence_does_not_change_dimensions() {
    let a = json(&["hilbert", "fixtures/example1.fpa", "--max-deg", "8"]);
    let b = json(&[
        "hilbert",
        "fixtures/example1.fpa",
        "--max-deg",
        "8",
        "--precedence",
        "y,x",
    ]);
    assert_eq!(a["dims"], b["dims"]);
    assert_eq!(code(&["gb", "fixtures/free2.fpa", "--precedence", "x,q"]), 2);
}

#[test]
fn output_is_deterministic_and_writable() {
    let dir = tempfile::tempdir().unwrap();
    let args = |f: &str| {
        vec![
            "even-part".to_string(),
            "fixtures/example1.fpa".into(),
            "--simplify".into(),
            "--format".into(),
            "json".into(),
            "--output".into(),
            dir.path().join(f).to_str().unwrap().to_string(),
        ]
    };
    for f in ["one.json", "two.json"] {
        let a = args(f);
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        assert_eq!(code(&a), 0);
    }
    let one = std::fs::read(dir.path().join("one.json")).unwrap();
    assert_eq!(one, std::fs::read(dir.path().join("two.json")).unwrap());
    let v: Value = serde_json::from_slice(&one).unwrap();
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["presentation", "hilbert", "verdict", "degree_bound", "complete"]
    );
}
