use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use gic_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { gic_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(gic_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn run_of(spec: &str) -> (*mut GicDatum, *mut GicRun) {
    let spec = CString::new(spec).unwrap();
    let mut d = ptr::null_mut();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(
            gic_datum_from_gl(spec.as_ptr(), gic_conventions_default(), &mut d),
            GicStatus::Ok
        );
        assert_eq!(gic_run(d, &mut r), GicStatus::Ok);
    }
    (d, r)
}

#[test]
fn rank_one_matrix_through_handles() {
    let (d, r) = run_of("glq:0,1;n=1");
    let mut size = 0usize;
    let mut dim = 0usize;
    unsafe {
        assert_eq!(gic_datum_dim(d, &mut dim), GicStatus::Ok);
        assert_eq!(gic_run_size(r, 1, &mut size), GicStatus::Ok);
    }
    assert_eq!((dim, size), (2, 2));
    let mut f = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut s = ptr::null_mut();
            assert_eq!(
                unsafe { gic_run_f_entry(r, 1, i, j, &mut s) },
                GicStatus::Ok
            );
            f.push(take(s));
        }
    }
    assert_eq!(f, ["1", "v", "0", "1"]);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gic_run_label(r, 1, 0, &mut s) }, GicStatus::Ok);
    assert_eq!(take(s), "[0:1]:triv");
    unsafe {
        gic_run_free(r);
        gic_datum_free(d);
    }
}

#[test]
fn json_and_csv_exports() {
    let (d, r) = run_of("glq:0,0,1;n=1");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gic_run_to_json(r, 0, 1, &mut s) }, GicStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(json["gradings"][0]["f_matrix"][0][1], "v^2");
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { gic_run_to_csv(r, -1, 0, &mut s) }, GicStatus::Ok);
    assert!(take(s).starts_with("matrix,f,-1"));
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { gic_run_to_csv(r, 5, 0, &mut s) },
        GicStatus::OutOfRange
    );
    assert!(last_error().contains("n=5"));
    unsafe {
        gic_run_free(r);
        gic_datum_free(d);
    }
}

#[test]
fn errors_are_reported() {
    let mut d = ptr::null_mut();
    let bad = CString::new("glq:0,x;n=1").unwrap();
    assert_eq!(
        unsafe { gic_datum_from_gl(bad.as_ptr(), gic_conventions_default(), &mut d) },
        GicStatus::ParseError
    );
    assert!(!last_error().is_empty());
    assert_eq!(
        unsafe { gic_datum_from_gl(ptr::null(), gic_conventions_default(), &mut d) },
        GicStatus::NullPointer
    );
    let conv = GicConventions {
        sign: 7,
        flag_order: 0,
    };
    let ok = CString::new("glq:0,1;n=1").unwrap();
    assert_eq!(
        unsafe { gic_datum_from_gl(ok.as_ptr(), conv, &mut d) },
        GicStatus::OutOfRange
    );
    let json = CString::new("{not json").unwrap();
    assert_eq!(
        unsafe { gic_datum_from_json(json.as_ptr(), gic_conventions_default(), &mut d) },
        GicStatus::ParseError
    );
    let (_, r) = run_of("glq:0,1;n=1");
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { gic_run_f_entry(r, 1, 9, 0, &mut s) },
        GicStatus::OutOfRange
    );
    unsafe { gic_run_free(r) };
}

#[test]
fn json_datum_loads() {
    let text = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/sp4.json"),
    )
    .unwrap();
    let json = CString::new(text).unwrap();
    let mut d = ptr::null_mut();
    let mut r = ptr::null_mut();
    let mut size = 0;
    unsafe {
        assert_eq!(
            gic_datum_from_json(json.as_ptr(), gic_conventions_default(), &mut d),
            GicStatus::Ok
        );
        assert_eq!(gic_run(d, &mut r), GicStatus::Ok);
        assert_eq!(gic_run_size(r, -2, &mut size), GicStatus::Ok);
        gic_run_free(r);
        gic_datum_free(d);
    }
    assert_eq!(size, 4);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(gic_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// The generated header compiles as C, if a compiler is available.
#[test]
fn header_compiles() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/gic.h");
    assert!(header.exists(), "build script did not write the header");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in [
        "gic_datum_from_gl",
        "gic_run_f_entry",
        "gic_string_free",
        "gic_last_error_message",
    ] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let status = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .status();
    match status {
        Ok(s) => assert!(s.success(), "cc rejected the header"),
        Err(_) => eprintln!("no C compiler found; syntax check skipped"),
    }
}

/// Links the C smoke program against the static library and runs it.
#[test]
fn c_program_links_and_runs() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let lib = profile_dir.join("libgic_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; link test skipped", lib.display());
        return;
    }
    let out = std::env::temp_dir().join(format!("gic_smoke_{}", std::process::id()));
    let compiled = Command::new("cc")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status();
    match compiled {
        Ok(s) if s.success() => {}
        Ok(_) => panic!("linking the C program failed"),
        Err(_) => {
            eprintln!("no C compiler found; link test skipped");
            return;
        }
    }
    let run = Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "v");
}
