//! The `hax` binary and the document layer driven from outside the crate.

use std::path::Path;
use std::process::{Command, Output};

use hax::catalog;
use hax::doc::{Document, Object};
use hax::exactla::Field;

fn hax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hax")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn every_catalog_entry_instantiates() {
    for e in catalog::list() {
        let doc = catalog::instantiate(e.name).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        assert_eq!(doc.field, e.field);
        assert!(!doc.objects.is_empty());
    }
}

#[test]
fn catalog_list_names_every_entry() {
    let o = hax(&["catalog", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for e in catalog::list() {
        assert!(text.contains(e.name), "{} missing from `catalog list`", e.name);
    }
}

#[test]
fn built_algebroid_file_validates() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("alg.hax");
    let o = hax(&["build", "algebroid", "catalog:h4-dual-numbers", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = Document::load(&out).unwrap();
    assert!(doc.objects.iter().any(|(_, o)| matches!(o, Object::HopfAlgebroid(_))));
    let o = hax(&["validate", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let o = hax(&["check", "plus-minus", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn twist_output_carries_the_twisted_algebroid() {
    let o = hax(&["build", "twist", "catalog:inner-M2-kZ2", "--object", "inner-gauged"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = Document::parse(&stdout(&o)).unwrap();
    let names: Vec<&str> = doc.objects.iter().map(|(n, _)| n.as_str()).collect();
    assert!(names.iter().any(|n| n.ends_with(".twisted")), "{names:?}");
    assert!(names.iter().any(|n| n.ends_with(".sigma-tilde")), "{names:?}");
}

#[test]
fn json_report_lists_checks() {
    let o = hax(&["--format", "json", "check", "sigma-identities", "catalog:coboundary-S3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] == "pass"), "{v}");
}

#[test]
fn search_writes_valid_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("found.hax");
    let o = hax(&["search", "galois-objects", "catalog:group-kZ2", "--max-params", "1", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc = Document::load(&out).unwrap();
    let pairs = doc.objects.iter().filter(|(_, o)| matches!(o, Object::CocyclePair(_))).count();
    assert_eq!(pairs, 6);
    assert!(catalog::validate_document(&doc).passed());
}

#[test]
fn cyclotomic_documents_need_their_field() {
    let text = catalog::shipped_text("weyl-crossproduct").unwrap();
    let doc = Document::parse(text).unwrap();
    assert_eq!(doc.field, Field::Cyclotomic(4));
    assert!(Document::parse_opts(text, None, Some(Field::Rational)).is_err());
}

#[test]
fn missing_file_is_a_usage_error() {
    assert!(!Path::new("/nonexistent/file.hax").exists());
    let o = hax(&["validate", "/nonexistent/file.hax"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_catalog_entry_is_an_error() {
    let o = hax(&["validate", "catalog:no-such-entry"]);
    assert_ne!(o.status.code(), Some(0));
}
