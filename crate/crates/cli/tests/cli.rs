use std::fs;
use std::path::Path;

use baric_cli::run;

fn baric(dir: &Path, args: &[&str]) -> (i32, String) {
    let mut argv = vec!["baric".to_owned()];
    argv.extend(args.iter().map(|a| {
        if a.ends_with(".json") && !a.starts_with('/') {
            dir.join(a).display().to_string()
        } else {
            a.to_string()
        }
    }));
    let out = run(argv);
    (out.code, out.output)
}

fn value<'a>(output: &'a str, key: &str) -> Option<&'a str> {
    output.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

const D2_F2: &str = r#"{"field": {"kind": "prime", "p": 2}, "dim": 2,
  "mul": [[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]], "weight": ["1","0"]}"#;

#[test]
fn kpow_then_check_is_associative() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = baric(dir.path(), &["kpow", "3", "--field", "q", "-o", "k3.json"]);
    assert_eq!(code, 0);
    let (code, out) = baric(dir.path(), &["check", "k3.json"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "associative"), Some("true"));
    assert_eq!(value(&out, "commutative"), Some("false"));
    assert_eq!(value(&out, "center_dim"), Some("0"));
    for line in out.lines() {
        assert!(line.contains('='), "{line}");
    }
}

#[test]
fn verify_single_suite() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out) = baric(
        dir.path(),
        &["verify", "--props", "P4.1", "--field", "p3", "--maxdim", "3", "--trials", "100", "--seed", "1"],
    );
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("P4.1 trials=100 failures=0 seed=1\n"), "{out}");
    let (code, out) = baric(dir.path(), &["verify", "--props", "P4.1", "--field", "q"]);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn bowtie_commands_on_d2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("d2.json"), D2_F2).unwrap();
    assert_eq!(baric(dir.path(), &["bowtie", "d2.json", "d2.json", "-o", "dd.json"]).0, 0);

    let (code, out) = baric(dir.path(), &["decompose", "dd.json"]);
    assert_eq!((code, value(&out, "result")), (0, Some("indecomposable")));

    let (code, out) = baric(dir.path(), &["bijection", "dd.json"]);
    assert_eq!(code, 0);
    assert_eq!((value(&out, "pairs"), value(&out, "bowtie_ideals")), (Some("4"), Some("4")));

    let (_, out) = baric(dir.path(), &["weights", "dd.json"]);
    assert_eq!(value(&out, "count"), Some("1"));
    assert_eq!(value(&out, "weight"), Some("1,0,1,0"));

    let (_, out) = baric(dir.path(), &["ideal", "dd.json", "--gens", "0,1,0,0"]);
    assert_eq!(value(&out, "sidedness"), Some("two_sided"));
    assert_eq!(value(&out, "basis"), Some("0,1,0,0"));
    let (_, out) = baric(dir.path(), &["ideal", "dd.json", "--gens", "1,0,0,0", "--side", "right"]);
    assert_eq!(value(&out, "sidedness"), Some("right"));

    fs::write(dir.path().join("i.json"), r#"{"vectors": [["0","1","0","0"]]}"#).unwrap();
    let (code, out) = baric(dir.path(), &["project", "dd.json", "--ideal", "i.json"]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "i1"), Some("0,1"));
    assert_eq!(value(&out, "i1_is_ideal"), Some("true"));
    assert_eq!(value(&out, "i2"), Some("0"));

    let (code, out) = baric(dir.path(), &["bijection", "d2.json"]);
    assert_eq!(code, 2);
    assert!(out.starts_with("error="));
}

#[test]
fn idempotents_and_classification() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("d2.json"), D2_F2).unwrap();
    let (_, out) = baric(dir.path(), &["idempotents", "d2.json"]);
    assert_eq!(value(&out, "count"), Some("1"));
    assert_eq!(value(&out, "idempotent"), Some("1,0"));
    let (_, out) = baric(dir.path(), &["classify", "d2.json"]);
    assert_eq!(value(&out, "scalar_action"), Some("false"));

    baric(dir.path(), &["kpow", "2", "--field", "q", "-o", "k2.json"]);
    let (_, out) = baric(dir.path(), &["classify", "k2.json"]);
    assert_eq!(value(&out, "verified"), Some("true"));
    assert_eq!(value(&out, "isomorphic_to"), Some("K^2"));

    baric(dir.path(), &["kpow", "2", "--field", "p2", "-o", "k2f2.json"]);
    let (code, out) = baric(dir.path(), &["classify", "k2f2.json"]);
    assert_eq!(code, 0);
    assert!(value(&out, "normalization").unwrap().starts_with("obstructed"), "{out}");
}

#[test]
fn bad_documents_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), D2_F2.replace(r#"["1","0"]"#, r#"["0","0"]"#)).unwrap();
    let (code, out) = baric(dir.path(), &["check", "bad.json"]);
    assert_eq!(code, 2);
    assert!(out.contains("weight"), "{out}");
    fs::write(dir.path().join("broken.json"), "{\"dim\": }").unwrap();
    let (code, out) = baric(dir.path(), &["check", "broken.json"]);
    assert_eq!(code, 2);
    assert!(out.contains("line 1"), "{out}");
}
