use std::path::{Path, PathBuf};
use std::process::Command;

use intcat_cli::commands::{generate, representable_cmd, RepMethod};
use intcat_cli::document::{emit, parse};
use intcat_cli::goldens::{check, manifest};
use intcat_cli::resolve::{resolve, Instance, Presheaf};
use intcat_cli::CliError;
use intcat_core::cosmos::Cosmos;
use intcat_testkit::fixtures::{p1, p2, p3};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load(name: &str) -> (String, Instance) {
    let text = std::fs::read_to_string(fixtures().join(format!("{name}.json"))).unwrap();
    let inst = resolve(&parse(&text).unwrap()).unwrap();
    (text, inst)
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_intcat"))
        .arg("--fixtures")
        .arg(fixtures())
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn fixtures_are_canonical() {
    for name in ["P1", "P2", "P3"] {
        let (text, _) = load(name);
        assert_eq!(emit(&parse(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn fixture_documents_match_the_coded_fixtures() {
    let (_, i1) = load("P1");
    let f = p1();
    assert_eq!(i1.vcategories["C"], f.cat);
    let pre = |n: &str| match &i1.presheaves[n] {
        Presheaf::Contravariant(p) => p.clone(),
        Presheaf::Covariant(_) => panic!("{n} is covariant"),
    };
    assert_eq!(pre("F0"), f.f0);
    assert_eq!(pre("F1"), f.f1);

    let (_, i2) = load("P2");
    assert_eq!(i2.internal["A"].cat, p2().cat);

    let (_, i3) = load("P3");
    let f = p3();
    assert_eq!(i3.vcategories["C"], f.cat);
    assert_eq!(i3.vfunctors["G"], f.diagram);
    match &i3.presheaves["W"] {
        Presheaf::Covariant(w) => assert_eq!(w, &f.weight),
        Presheaf::Contravariant(_) => panic!("the weight is covariant"),
    }
}

#[test]
fn goldens_are_byte_identical() {
    let cases = manifest(&fixtures()).unwrap();
    assert!(cases.len() >= 15);
    let bin = Path::new(env!("CARGO_BIN_EXE_intcat"));
    let failures: Vec<String> = cases
        .iter()
        .filter_map(|c| check(bin, &fixtures(), c).err())
        .collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["weighted-limit", "P3"]);
    let b = run(&["weighted-limit", "P3"]);
    assert_eq!(a, b);
}

#[test]
fn parse_errors_carry_position_and_path() {
    match parse("{\n  \"cosmos\": \"finset\",\n  \"objects\": {\"X\": {\"elements\": [1]}}\n}") {
        Err(CliError::Parse { line, path, .. }) => {
            assert_eq!(line, 3);
            assert!(path.starts_with("objects.X"), "{path}");
        }
        other => panic!("{other:?}"),
    }
    match parse("{\"cosmos\": \"finset\", \"bogus\": {}}") {
        Err(CliError::Parse { message, .. }) => assert!(message.contains("bogus"), "{message}"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse("{\"cosmos\": \"posets\"}"),
        Err(CliError::Parse { .. })
    ));
    assert!(matches!(
        parse("{\"cosmos\": "),
        Err(CliError::Parse { .. })
    ));
}

#[test]
fn bad_references_and_invalid_entities_are_rejected() {
    let unresolved = r#"{"cosmos": "finset", "vcategories": {"C": {"builtin": "unit"}},
        "presheaves": {"F": {"base": "D", "representable": "0"}}}"#;
    match resolve(&parse(unresolved).unwrap()) {
        Err(CliError::Unresolved { path, name }) => {
            assert_eq!(path, "presheaves.F.base");
            assert_eq!(name, "D");
        }
        other => panic!("{other:?}"),
    }
    let not_a_function = r#"{"cosmos": "finset", "objects": {"X": {"elements": ["a", "b"]}},
        "maps": {"f": {"dom": "X", "cod": "X", "on": {"a": "b"}}}}"#;
    assert!(matches!(
        resolve(&parse(not_a_function).unwrap()),
        Err(CliError::Invalid { .. })
    ));
    let not_associative = r#"{"cosmos": "fincat", "objects": {"M": {"objects": ["o"],
        "morphisms": [{"name": "1", "src": "o", "tgt": "o"}, {"name": "a", "src": "o", "tgt": "o"},
                      {"name": "b", "src": "o", "tgt": "o"}],
        "identities": {"o": "1"}, "composition": {"a;a": "b", "a;b": "a", "b;a": "b", "b;b": "b"}}}}"#;
    assert!(matches!(
        resolve(&parse(not_associative).unwrap()),
        Err(CliError::Invalid { .. })
    ));
    let dup = r#"{"cosmos": "finset", "objects": {"X": {"elements": ["a", "a"]}}}"#;
    assert!(matches!(
        resolve(&parse(dup).unwrap()),
        Err(CliError::Invalid { .. })
    ));
}

#[test]
fn exit_codes_follow_the_contract() {
    assert_eq!(run(&["check", "--problem", "rep:F0at1", "P1"]).0, 0);
    assert_eq!(
        run(&["check", "--problem", "rep:F1", "--search", "P1"]).0,
        1
    );
    assert_eq!(run(&["weighted-limit", "--problem", "x", "P3"]).0, 0);
    assert_eq!(run(&["weighted-limit", "--problem", "top", "P3"]).0, 1);
    let (code, _, err) = run(&["check", "--problem", "nope", "P1"]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
    assert_eq!(run(&["validate", "P4"]).0, 2);
    assert_eq!(run(&["representable", "P2"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);

    let dir = std::env::temp_dir().join(format!("intcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"cosmos\": \"finset\", \"objects\": {\"X\": 3}}").unwrap();
    let (code, _, err) = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn single_routes_that_do_not_apply_exit_two() {
    let doc = r#"{"cosmos": "fincat",
        "objects": {"D": {"objects": ["o"], "morphisms": [{"name": "1", "src": "o", "tgt": "o"},
            {"name": "v", "src": "o", "tgt": "o"}], "identities": {"o": "1"}, "composition": {"v;v": "v"}}},
        "vcategories": {"U": {"builtin": "unit"}},
        "presheaves": {"F": {"base": "U", "constant": "D"}},
        "problems": {"F": {"kind": "representability", "presheaf": "F"}}}"#;
    let inst = resolve(&parse(doc).unwrap()).unwrap();
    let out = representable_cmd(&inst, &[], RepMethod::UndTensors, false).unwrap();
    assert_eq!(out.exit, 2);
    let all = representable_cmd(&inst, &[], RepMethod::All, false).unwrap();
    assert_ne!(all.exit, 2, "{}", all.report);
}

#[test]
fn generated_documents_resolve_and_round_trip() {
    for cosmos in [Cosmos::FinSet, Cosmos::FinCat] {
        for seed in 0..12 {
            let doc = generate(seed, cosmos, 3, 4).unwrap();
            let text = emit(&doc);
            assert_eq!(
                text,
                emit(&generate(seed, cosmos, 3, 4).unwrap()),
                "deterministic"
            );
            let back = parse(&text).unwrap();
            assert_eq!(back, doc);
            let inst = resolve(&back).unwrap();
            assert!(inst.problems.len() >= 2);
            assert_eq!(inst.vfunctors["G"].source, inst.vcategories["I"]);
        }
    }
    assert!(generate(0, Cosmos::FinSet, 5, 4).is_err());
}
