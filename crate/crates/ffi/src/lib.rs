//! C ABI over the hax engine. Documents are opaque handles; every call
//! returns a `HaxStatus` and leaves a message for `hax_last_error` on
//! failure. Strings handed out by the library are freed with
//! `hax_string_free`, documents with `hax_document_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hax::catalog;
use hax::doc::Document;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HaxStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownEntry = 4,
    ChecksFailed = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// A parsed document.
pub struct HaxDocument {
    doc: Document,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn guard(f: impl FnOnce() -> Result<HaxStatus, (HaxStatus, String)>) -> HaxStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            HaxStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (HaxStatus, String)> {
    if p.is_null() {
        return Err((HaxStatus::NullArgument, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HaxStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn check_out<T>(p: *mut T) -> Result<(), (HaxStatus, String)> {
    if p.is_null() {
        Err((HaxStatus::NullArgument, "null output pointer".into()))
    } else {
        Ok(())
    }
}

/// Message describing the last failed call on this thread; empty after a
/// success. Owned by the library and valid until the next call.
#[no_mangle]
pub extern "C" fn hax_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `.hax` text into a new document.
///
/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hax_document_parse(text: *const c_char, out: *mut *mut HaxDocument) -> HaxStatus {
    guard(|| {
        check_out(out)?;
        let text = read_str(text)?;
        let doc = Document::parse(text).map_err(|e| (HaxStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(HaxDocument { doc }));
        Ok(HaxStatus::Ok)
    })
}

/// Loads a shipped catalog entry.
///
/// # Safety
/// `name` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hax_catalog_load(name: *const c_char, out: *mut *mut HaxDocument) -> HaxStatus {
    guard(|| {
        check_out(out)?;
        let name = read_str(name)?;
        let entry = catalog::entry(name).map_err(|e| (HaxStatus::UnknownEntry, e.to_string()))?;
        let doc = catalog::parse_shipped(&entry).map_err(|e| (HaxStatus::ParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(HaxDocument { doc }));
        Ok(HaxStatus::Ok)
    })
}

/// Number of catalog entries.
#[no_mangle]
pub extern "C" fn hax_catalog_count() -> usize {
    catalog::list().len()
}

/// Name of catalog entry `index`, as a new string.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hax_catalog_name(index: usize, out: *mut *mut c_char) -> HaxStatus {
    guard(|| {
        check_out(out)?;
        let list = catalog::list();
        let e = list.get(index).ok_or((HaxStatus::OutOfRange, format!("catalog has {} entries", list.len())))?;
        *out = to_c(e.name.to_string());
        Ok(HaxStatus::Ok)
    })
}

/// # Safety
/// `doc` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hax_document_free(doc: *mut HaxDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// # Safety
/// `s` must be a string returned by this library, or null.
#[no_mangle]
pub unsafe extern "C" fn hax_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of objects in the document, or 0 for a null handle.
///
/// # Safety
/// `doc` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hax_document_object_count(doc: *const HaxDocument) -> usize {
    doc.as_ref().map_or(0, |d| d.doc.objects.len())
}

/// Name and kind of object `index` as new strings.
///
/// # Safety
/// `doc` must be a live handle; `name` and `kind` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hax_document_object(
    doc: *const HaxDocument,
    index: usize,
    name: *mut *mut c_char,
    kind: *mut *mut c_char,
) -> HaxStatus {
    guard(|| {
        check_out(name)?;
        check_out(kind)?;
        let d = doc.as_ref().ok_or((HaxStatus::NullArgument, "null document".into()))?;
        let (n, o) = d.doc.objects.get(index).ok_or((HaxStatus::OutOfRange, format!("document has {} objects", d.doc.objects.len())))?;
        *name = to_c(n.clone());
        *kind = to_c(o.kind().to_string());
        Ok(HaxStatus::Ok)
    })
}

/// Canonical `.hax` text of the document, as a new string.
///
/// # Safety
/// `doc` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hax_document_emit(doc: *const HaxDocument, out: *mut *mut c_char) -> HaxStatus {
    guard(|| {
        check_out(out)?;
        let d = doc.as_ref().ok_or((HaxStatus::NullArgument, "null document".into()))?;
        *out = to_c(d.doc.emit());
        Ok(HaxStatus::Ok)
    })
}

/// Runs every object's validator. The JSON report is stored in `report`
/// (may be null); the status is `ChecksFailed` when any check fails.
///
/// # Safety
/// `doc` must be a live handle; `report` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn hax_document_validate(doc: *const HaxDocument, report: *mut *mut c_char) -> HaxStatus {
    guard(|| {
        let d = doc.as_ref().ok_or((HaxStatus::NullArgument, "null document".into()))?;
        let r = catalog::validate_document(&d.doc).sorted();
        if !report.is_null() {
            *report = to_c(r.to_json());
        }
        if r.passed() {
            Ok(HaxStatus::Ok)
        } else {
            Err((HaxStatus::ChecksFailed, format!("failed: {}", r.failure_ids())))
        }
    })
}

/// Runs the command-line front end on `argv` (without the program name)
/// and returns its exit code; stdout and stderr text are stored as new
/// strings in `out` and `err` when those are non-null.
///
/// # Safety
/// `argv` must hold `argc` valid C strings; `out` and `err` valid pointers or null.
#[no_mangle]
pub unsafe extern "C" fn hax_cli_run(argc: c_int, argv: *const *const c_char, out: *mut *mut c_char, err: *mut *mut c_char) -> c_int {
    let mut args = vec!["hax".to_string()];
    if argc > 0 {
        if argv.is_null() {
            set_error("null argv");
            return 2;
        }
        for k in 0..argc as usize {
            match read_str(*argv.add(k)) {
                Ok(s) => args.push(s.to_string()),
                Err((_, m)) => {
                    set_error(m);
                    return 2;
                }
            }
        }
    }
    let (mut o, mut e) = (Vec::new(), Vec::new());
    let code = catch_unwind(AssertUnwindSafe(|| hax::cli::run(args, &mut o, &mut e))).unwrap_or_else(|_| {
        set_error("internal panic");
        1
    });
    if !out.is_null() {
        *out = to_c(String::from_utf8_lossy(&o).into_owned());
    }
    if !err.is_null() {
        *err = to_c(String::from_utf8_lossy(&e).into_owned());
    }
    code
}
