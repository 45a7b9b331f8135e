use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use clexp_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    clexp_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(clexp_last_error()).to_str().unwrap().to_owned()
}

#[test]
fn group_and_partition_round_trip() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(clexp_group_from_spec(cstr("name:Frob21").as_ptr(), &mut g), ClexpStatus::Ok);
        let mut order = 0u64;
        let mut degree = 0usize;
        assert_eq!(clexp_group_order(g, &mut order), ClexpStatus::Ok);
        assert_eq!(clexp_group_degree(g, &mut degree), ClexpStatus::Ok);
        assert_eq!((order, degree), (21, 7));

        let mut p = ptr::null_mut();
        assert_eq!(clexp_partition_new(g, &mut p), ClexpStatus::Ok);
        let mut k = 0usize;
        assert_eq!(clexp_partition_num_classes(p, &mut k), ClexpStatus::Ok);
        assert_eq!(k, 5);
        let (mut name, mut size, mut ord) = (ptr::null_mut(), 0u64, 0u64);
        assert_eq!(clexp_partition_class(p, 1, &mut name, &mut size, &mut ord), ClexpStatus::Ok);
        assert_eq!((take(name), size, ord), ("3A".to_string(), 7, 3));

        let mut dk = ptr::null_mut();
        assert_eq!(clexp_partition_dk(p, cstr("3A,7A").as_ptr(), &mut dk), ClexpStatus::Ok);
        assert_eq!(take(dk), "3A,3B,7A,7B");

        let (mut sq, mut holds) = (ptr::null_mut(), false);
        assert_eq!(clexp_partition_square(p, cstr("3A,7A").as_ptr(), &mut sq, &mut holds), ClexpStatus::Ok);
        assert!(holds);
        assert!(!take(sq).split(',').any(|c| c == "1A"));

        let (mut span, mut soluble) = (0u64, false);
        assert_eq!(clexp_partition_span(p, cstr("3A,7A").as_ptr(), &mut span, &mut soluble), ClexpStatus::Ok);
        assert_eq!((span, soluble), (21, true));

        clexp_partition_free(p);
        clexp_group_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(clexp_group_from_spec(cstr("psl2:6").as_ptr(), &mut g), ClexpStatus::InvalidSpec);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(clexp_group_from_spec(ptr::null(), &mut g), ClexpStatus::NullPointer);
        assert_eq!(clexp_group_from_spec(cstr("alt:5").as_ptr(), ptr::null_mut()), ClexpStatus::NullPointer);

        assert_eq!(clexp_group_from_spec(cstr("alt:5").as_ptr(), &mut g), ClexpStatus::Ok);
        let mut member = false;
        assert_eq!(clexp_group_contains(g, cstr("(1,2)").as_ptr(), &mut member), ClexpStatus::Ok);
        assert!(!member);
        assert_eq!(clexp_group_contains(g, cstr("(1,2,3)").as_ptr(), &mut member), ClexpStatus::Ok);
        assert!(member);

        let mut p = ptr::null_mut();
        assert_eq!(clexp_partition_new(g, &mut p), ClexpStatus::Ok);
        let mut dk = ptr::null_mut();
        assert_eq!(clexp_partition_dk(p, cstr("9Z").as_ptr(), &mut dk), ClexpStatus::UnknownClass);
        assert!(last_error().contains("9Z"));
        let (mut name, mut size, mut ord) = (ptr::null_mut(), 0u64, 0u64);
        assert_eq!(clexp_partition_class(p, 99, &mut name, &mut size, &mut ord), ClexpStatus::UnknownClass);
        assert_eq!(clexp_partition_num_classes(ptr::null(), &mut 0), ClexpStatus::NullPointer);
        clexp_partition_free(p);
        clexp_group_free(g);
        clexp_group_free(ptr::null_mut());
        clexp_string_free(ptr::null_mut());
    }
}

#[test]
fn cap_exceeded_is_reported() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(clexp_group_from_spec(cstr("sym:13").as_ptr(), &mut g), ClexpStatus::Ok);
        let mut order = 0u64;
        assert_eq!(clexp_group_order(g, &mut order), ClexpStatus::Ok);
        assert_eq!(order, 6_227_020_800);
        let mut p = ptr::null_mut();
        assert_eq!(clexp_partition_new(g, &mut p), ClexpStatus::CapExceeded);
        clexp_group_free(g);
    }
}

#[test]
fn run_check_returns_json() {
    unsafe {
        let (mut json, mut passed) = (ptr::null_mut(), false);
        assert_eq!(clexp_run_check(cstr("example-1.3").as_ptr(), 1, &mut json, &mut passed), ClexpStatus::Ok);
        assert!(passed);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["id"], "example-1.3");
        assert_eq!(v["status"], "pass");
        assert_eq!(
            clexp_run_check(cstr("no-such-check").as_ptr(), 1, &mut json, &mut passed),
            ClexpStatus::InvalidArgument
        );
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(clexp_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/clexp.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 14);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
}

/// Compiles `tests/c/smoke.c` against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let lib = exe.parent().unwrap().join("libclexp_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: needs cc and {}", lib.display());
        return;
    }
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("clexp_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "cc failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).contains("order=60 classes=5 dk=5A,5B"));
}
