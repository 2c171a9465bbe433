use std::ffi::{CStr, CString};
use std::ptr;

use conelab_ffi::*;

fn corpus(path: &str) -> Vec<u8> {
    std::fs::read(format!("{}/../core/corpus/{path}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn load(path: &str) -> *mut ConelabLibrary {
    let bytes = corpus(path);
    let mut lib = ptr::null_mut();
    let status = unsafe { conelab_library_load(bytes.as_ptr(), bytes.len(), false, &mut lib) };
    assert_eq!(status, ConelabStatus::Ok, "{}", last_error());
    assert!(!lib.is_null());
    lib
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(conelab_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(conelab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn whi_and_counts() {
    let lib = load("double_categories/htilde_of_walking_iso.catj");
    let mut whi = false;
    assert_eq!(unsafe { conelab_is_whi(lib, ptr::null(), &mut whi) }, ConelabStatus::Ok);
    assert!(whi);
    let mut counts = ConelabCounts::default();
    let name = CString::new("Htilde(walking_iso)").unwrap();
    assert_eq!(unsafe { conelab_double_category_counts(lib, name.as_ptr(), &mut counts) }, ConelabStatus::Ok);
    assert_eq!(counts, ConelabCounts { objects: 2, horizontals: 4, verticals: 4, squares: 16 });
    unsafe { conelab_library_free(lib) };

    let lib = load("double_categories/h_of_walking_iso.catj");
    assert_eq!(unsafe { conelab_is_whi(lib, ptr::null(), &mut whi) }, ConelabStatus::Ok);
    assert!(!whi);
    unsafe { conelab_library_free(lib) };
}

#[test]
fn whi_from_a_two_category() {
    let lib = load("two_categories/adjoint_equivalence.catj");
    let mut whi = false;
    assert_eq!(unsafe { conelab_is_whi_htilde(lib, ptr::null(), &mut whi) }, ConelabStatus::Ok);
    assert!(whi);
    unsafe { conelab_library_free(lib) };
}

#[test]
fn functor_checks() {
    let lib = load("double_functors/htilde_inclusion_of_walking_iso.catj");
    let (mut biequiv, mut trivfib) = (false, true);
    assert_eq!(unsafe { conelab_is_double_biequivalence(lib, ptr::null(), &mut biequiv) }, ConelabStatus::Ok);
    assert_eq!(unsafe { conelab_is_trivial_fibration(lib, ptr::null(), &mut trivfib) }, ConelabStatus::Ok);
    assert!(biequiv && !trivfib);
    unsafe { conelab_library_free(lib) };

    let lib = load("diagrams/point_source_of_arrow.catj");
    let mut b = true;
    assert_eq!(unsafe { conelab_is_biequivalence(lib, ptr::null(), &mut b) }, ConelabStatus::Ok);
    assert!(!b);
    unsafe { conelab_library_free(lib) };
}

#[test]
fn limits_after_adding_cones() {
    let lib = load("diagrams/empty_in_arrow.catj");
    for path in ["cones/empty_in_arrow.catj", "cones/empty_in_arrow.non_limit.catj"] {
        let bytes = corpus(path);
        assert_eq!(unsafe { conelab_library_add(lib, bytes.as_ptr(), bytes.len(), false) }, ConelabStatus::Ok);
    }
    let mut v = ConelabLimitVerdicts::default();
    let name = CString::new("non_limit").unwrap();
    assert_eq!(unsafe { conelab_check_limit(lib, name.as_ptr(), 0, &mut v) }, ConelabStatus::Ok);
    assert_eq!(v, ConelabLimitVerdicts { oracle: false, h: false, htilde: false });
    // The empty cone at the target of the arrow is a limit.
    let name = CString::new("cone1").unwrap();
    assert_eq!(unsafe { conelab_check_limit(lib, name.as_ptr(), 0, &mut v) }, ConelabStatus::Ok);
    assert_eq!(v, ConelabLimitVerdicts { oracle: true, h: true, htilde: true });
    unsafe { conelab_library_free(lib) };
}

#[test]
fn segal_and_budget() {
    let lib = load("double_categories/h_of_arrow.catj");
    let (mut h, mut v) = (false, false);
    assert_eq!(unsafe { conelab_segal(lib, ptr::null(), 3, 3, 0, &mut h, &mut v) }, ConelabStatus::Ok);
    assert!(h && v);
    assert_eq!(unsafe { conelab_segal(lib, ptr::null(), 3, 3, 5, &mut h, &mut v) }, ConelabStatus::BudgetExceeded);
    assert!(last_error().contains("budget"));
    unsafe { conelab_library_free(lib) };
}

#[test]
fn errors_have_codes_and_messages() {
    let mut lib = ptr::null_mut();
    for (path, status) in [
        ("broken/syntax_error.catj", ConelabStatus::Syntax),
        ("broken/broken_interchange.catj", ConelabStatus::Semantic),
        ("broken/out_of_range.catj", ConelabStatus::Semantic),
    ] {
        let bytes = corpus(path);
        assert_eq!(unsafe { conelab_library_load(bytes.as_ptr(), bytes.len(), false, &mut lib) }, status, "{path}");
        assert!(lib.is_null());
        assert!(!last_error().is_empty());
    }
    let bytes = corpus("broken/unknown_key.catj");
    assert_eq!(unsafe { conelab_library_load(bytes.as_ptr(), bytes.len(), true, &mut lib) }, ConelabStatus::Ok);
    assert!(last_error().is_empty());

    let mut out = false;
    let missing = CString::new("nope").unwrap();
    assert_eq!(unsafe { conelab_is_whi(lib, missing.as_ptr(), &mut out) }, ConelabStatus::NotFound);
    assert_eq!(unsafe { conelab_is_whi(lib, ptr::null(), &mut out) }, ConelabStatus::NotFound);
    assert_eq!(unsafe { conelab_is_whi(ptr::null(), ptr::null(), &mut out) }, ConelabStatus::NullArgument);
    assert_eq!(unsafe { conelab_is_whi(lib, ptr::null(), ptr::null_mut()) }, ConelabStatus::NotFound);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { conelab_is_whi(lib, bad.as_ptr().cast(), &mut out) }, ConelabStatus::BadString);
    assert_eq!(unsafe { conelab_library_load(ptr::null(), 3, false, &mut lib) }, ConelabStatus::NullArgument);
    unsafe { conelab_library_free(lib) };
    unsafe { conelab_library_free(ptr::null_mut()) };
}

#[test]
fn failed_add_leaves_the_library_unchanged() {
    let lib = load("diagrams/point_source_of_arrow.catj");
    let dup = corpus("diagrams/point_source_of_arrow.catj");
    assert_eq!(unsafe { conelab_library_add(lib, dup.as_ptr(), dup.len(), false) }, ConelabStatus::Semantic);
    let cones = corpus("cones/point_source_of_arrow.catj");
    assert_eq!(unsafe { conelab_library_add(lib, cones.as_ptr(), cones.len(), false) }, ConelabStatus::Ok);
    unsafe { conelab_library_free(lib) };
}

#[test]
fn command_line_through_the_abi() {
    let dir = format!("{}/../core", env!("CARGO_MANIFEST_DIR"));
    let args: Vec<CString> = [
        "whi",
        "--input",
        &format!("{dir}/corpus/double_categories/htilde_of_walking_iso.catj"),
        "--json",
        "--deterministic",
    ]
    .iter()
    .map(|s| CString::new(*s).unwrap())
    .collect();
    let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
    let mut out = ptr::null_mut();
    let code = unsafe { conelab_cli_run(ptrs.len(), ptrs.as_ptr(), &mut out) };
    assert_eq!(code, 0);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
    unsafe { conelab_string_free(out) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["verdict"], "pass");

    let bogus = CString::new("frobnicate").unwrap();
    let code = unsafe { conelab_cli_run(1, &bogus.as_ptr(), &mut out) };
    assert_eq!(code, 2);
    unsafe { conelab_string_free(out) };
}
