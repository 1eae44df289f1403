use std::ffi::{CStr, CString};
use std::ptr;

use hax_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    hax_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hax_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn catalog_round_trip_through_handles() {
    unsafe {
        let n = hax_catalog_count();
        assert!(n >= 10);
        for i in 0..n {
            let mut name = ptr::null_mut();
            assert_eq!(hax_catalog_name(i, &mut name), HaxStatus::Ok);
            let name = CString::new(take(name)).unwrap();
            let mut doc = ptr::null_mut();
            assert_eq!(hax_catalog_load(name.as_ptr(), &mut doc), HaxStatus::Ok);
            let mut text = ptr::null_mut();
            assert_eq!(hax_document_emit(doc, &mut text), HaxStatus::Ok);
            let text = CString::new(take(text)).unwrap();
            let mut again = ptr::null_mut();
            assert_eq!(hax_document_parse(text.as_ptr(), &mut again), HaxStatus::Ok);
            assert_eq!(hax_document_object_count(doc), hax_document_object_count(again));
            hax_document_free(doc);
            hax_document_free(again);
        }
        let mut name = ptr::null_mut();
        assert_eq!(hax_catalog_name(n, &mut name), HaxStatus::OutOfRange);
    }
}

#[test]
fn validation_reports_json() {
    unsafe {
        let name = CString::new("sweedler-H4").unwrap();
        let mut doc = ptr::null_mut();
        assert_eq!(hax_catalog_load(name.as_ptr(), &mut doc), HaxStatus::Ok);
        let mut report = ptr::null_mut();
        assert_eq!(hax_document_validate(doc, &mut report), HaxStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
        let (mut oname, mut kind) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(hax_document_object(doc, 0, &mut oname, &mut kind), HaxStatus::Ok);
        assert_eq!((take(oname).as_str(), take(kind).as_str()), ("H4", "hopf"));
        hax_document_free(doc);
    }
}

#[test]
fn corrupted_document_fails_checks() {
    let text = hax::catalog::shipped_text("group-kZ2").unwrap().replace("g g -> 1 : 1", "g g -> g : 1");
    let text = CString::new(text).unwrap();
    unsafe {
        let mut doc = ptr::null_mut();
        assert_eq!(hax_document_parse(text.as_ptr(), &mut doc), HaxStatus::Ok);
        assert_eq!(hax_document_validate(doc, ptr::null_mut()), HaxStatus::ChecksFailed);
        assert!(last_error().contains("antipode"), "{}", last_error());
        hax_document_free(doc);
    }
}

#[test]
fn errors_are_codes_with_messages() {
    unsafe {
        let mut doc = ptr::null_mut();
        let bad = CString::new("hax 1\nhopf h {\n  dim 1\n  unit {\n    -> e0 : 1/0\n  }\n}\n").unwrap();
        assert_eq!(hax_document_parse(bad.as_ptr(), &mut doc), HaxStatus::ParseError);
        assert!(last_error().starts_with("5:"), "{}", last_error());
        assert!(doc.is_null());
        let name = CString::new("no-such-entry").unwrap();
        assert_eq!(hax_catalog_load(name.as_ptr(), &mut doc), HaxStatus::UnknownEntry);
        assert_eq!(hax_document_emit(ptr::null(), &mut ptr::null_mut()), HaxStatus::NullArgument);
        hax_document_free(ptr::null_mut());
        hax_string_free(ptr::null_mut());
    }
}

#[test]
fn cli_exit_codes() {
    let args: Vec<CString> = ["validate", "catalog:group-kS3"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let argv: Vec<*const std::ffi::c_char> = args.iter().map(|a| a.as_ptr()).collect();
    unsafe {
        let (mut out, mut err) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(hax_cli_run(argv.len() as i32, argv.as_ptr(), &mut out, &mut err), 0);
        assert!(take(out).contains("0 failed"));
        take(err);
        let bogus = CString::new("bogus").unwrap();
        let argv = [bogus.as_ptr()];
        assert_eq!(hax_cli_run(1, argv.as_ptr(), ptr::null_mut(), ptr::null_mut()), 2);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hax.h")).unwrap();
    for f in [
        "hax_last_error",
        "hax_document_parse",
        "hax_catalog_load",
        "hax_catalog_count",
        "hax_catalog_name",
        "hax_document_free",
        "hax_string_free",
        "hax_document_object_count",
        "hax_document_object",
        "hax_document_emit",
        "hax_document_validate",
        "hax_cli_run",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct HaxDocument HaxDocument;"));
}

#[test]
fn header_compiles_as_c() {
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", "-"])
        .stdin(std::process::Stdio::piped())
        .spawn()
        .and_then(|mut child| {
            use std::io::Write;
            let src = format!("#include \"{}/include/hax.h\"\nint main(void) {{ return (int)hax_catalog_count() * 0; }}\n", env!("CARGO_MANIFEST_DIR"));
            child.stdin.take().unwrap().write_all(src.as_bytes())?;
            child.wait()
        })
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(status.success());
}
