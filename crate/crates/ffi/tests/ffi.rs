use std::ffi::{c_char, CStr, CString};
use std::ptr;

use supergeom_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sg_last_error()) }.to_str().unwrap().to_owned()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    sg_string_free(s);
    out
}

unsafe fn setting(ty: &str, space: &str) -> *mut SgSetting {
    let mut s = ptr::null_mut();
    assert_eq!(sg_setting_new(c(ty).as_ptr(), c(space).as_ptr(), &mut s), SgStatus::Ok, "{}", last_error());
    s
}

unsafe fn poly(s: *const SgSetting, src: &str) -> *mut SgPoly {
    let mut p = ptr::null_mut();
    assert_eq!(sg_poly_parse(s, c(src).as_ptr(), &mut p), SgStatus::Ok, "{}", last_error());
    p
}

#[test]
fn polynomials_and_invariants() {
    unsafe {
        let s = setting("gl(2|1)", "additive");
        let mut dim = 0;
        assert_eq!(sg_setting_dim(s, &mut dim), SgStatus::Ok);
        assert_eq!(dim, 3);

        let mut t = ptr::null_mut();
        assert_eq!(sg_t_element(s, &mut t), SgStatus::Ok);
        let mut text = ptr::null_mut();
        assert_eq!(sg_poly_to_string(t, &mut text), SgStatus::Ok);
        assert!(take(text).contains("Y1"));

        let mut member = false;
        assert_eq!(sg_is_supersymmetric(s, t, true, &mut member), SgStatus::Ok);
        assert!(member);
        let p = poly(s, "X1^2 + X2^2 - Y1^2");
        assert_eq!(sg_is_supersymmetric(s, p, false, &mut member), SgStatus::Ok);
        assert!(member);
        let q = poly(s, "X1 + X2");
        assert_eq!(sg_is_supersymmetric(s, q, false, &mut member), SgStatus::Ok);
        assert!(!member);

        let mut e = ptr::null_mut();
        assert_eq!(sg_ev(s, t, &mut e), SgStatus::Ok);
        assert_eq!(sg_poly_to_string(e, &mut text), SgStatus::Ok);
        assert_eq!(take(text), "0");

        let mut v = ptr::null_mut();
        assert_eq!(sg_poly_eval(s, p, c(r#"["1/2", 1, 1]"#).as_ptr(), &mut v), SgStatus::Ok);
        assert_eq!(take(v), "1/4");

        for h in [t, p, q, e] {
            sg_poly_free(h);
        }
        sg_setting_free(s);
    }
}

#[test]
fn groupoid_calls() {
    unsafe {
        let s = setting("gl(2|2)", "additive");
        let mut a = 0;
        assert_eq!(sg_atyp(s, c(r#"{"eps": [1, 0], "delta": [-1, 0]}"#).as_ptr(), &mut a), SgStatus::Ok);
        assert_eq!(a, 2);
        let mut eq = false;
        assert_eq!(sg_equivalent(s, c("[1,0,-1,0]").as_ptr(), c("[3,0,-3,0]").as_ptr(), &mut eq), SgStatus::Ok);
        assert!(eq);
        assert_eq!(sg_equivalent(s, c("[1,2,5,7]").as_ptr(), c("[1,2,5,8]").as_ptr(), &mut eq), SgStatus::Ok);
        assert!(!eq);
        assert_eq!(sg_atyp(s, c("[1,2]").as_ptr(), &mut a), SgStatus::DomainError);
        assert!(last_error().contains("dimension"));
        sg_setting_free(s);
    }
}

#[test]
fn ideals() {
    unsafe {
        let s = setting("gl(1|1)", "additive");
        let mut i = ptr::null_mut();
        assert_eq!(sg_ideal_new(s, c(r#"["X1^2 - Y1^2", "X1 + Y1"]"#).as_ptr(), &mut i), SgStatus::Ok);
        let mut gb = ptr::null_mut();
        assert_eq!(sg_ideal_groebner(i, &mut gb), SgStatus::Ok);
        assert_eq!(take(gb), r#"["X1 + Y1"]"#);
        let p = poly(s, "X1^3 + Y1^3");
        let mut member = false;
        assert_eq!(sg_ideal_contains(i, p, &mut member), SgStatus::Ok);
        assert!(member);
        sg_poly_free(p);
        sg_ideal_free(i);
        sg_setting_free(s);
    }
}

#[test]
fn cli_bridge() {
    unsafe {
        let mut json = ptr::null_mut();
        let mut code = -1;
        let args = c(r#"["--type", "q(3)", "describe"]"#);
        assert_eq!(sg_cli_run(args.as_ptr(), &mut json, &mut code), SgStatus::Ok);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["weyl_order"], 6);

        let args = c(r#"["--type", "gl(2|1)", "atyp", "--point", "[1]"]"#);
        assert_eq!(sg_cli_run(args.as_ptr(), &mut json, &mut code), SgStatus::Ok);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert!(v.get("error").is_some());

        let args = c(r#"["--type", "gl(2|1)", "atyp", "[1]"]"#);
        assert_eq!(sg_cli_run(args.as_ptr(), &mut json, &mut code), SgStatus::Ok);
        assert_eq!(code, 1);
        assert!(take(json).contains("Usage"));

        assert_eq!(sg_cli_run(c("{}").as_ptr(), &mut json, &mut code), SgStatus::InvalidArgument);
    }
}

#[test]
fn errors_and_null_handling() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(sg_setting_new(c("gl(2|").as_ptr(), c("additive").as_ptr(), &mut s), SgStatus::DomainError);
        assert_eq!(sg_setting_new(c("gl(1|1)").as_ptr(), c("sphere").as_ptr(), &mut s), SgStatus::InvalidArgument);
        assert!(!last_error().is_empty());
        assert!(s.is_null());
        assert_eq!(sg_setting_new(c("p(3)").as_ptr(), c("additive").as_ptr(), &mut s), SgStatus::DomainError);
        assert_eq!(sg_setting_new(ptr::null(), c("additive").as_ptr(), &mut s), SgStatus::NullPointer);
        assert_eq!(
            sg_setting_new(c("gl(1|1)").as_ptr(), c("additive").as_ptr(), ptr::null_mut()),
            SgStatus::NullPointer
        );

        let ok = setting("gl(1|1)", "additive");
        assert!(last_error().is_empty());
        let mut p = ptr::null_mut();
        assert_eq!(sg_poly_parse(ok, c("X1 +* 2").as_ptr(), &mut p), SgStatus::InvalidArgument);
        assert_eq!(sg_poly_parse(ptr::null(), c("X1").as_ptr(), &mut p), SgStatus::NullPointer);
        let mut e = ptr::null_mut();
        let x = poly(ok, "X1");
        assert_eq!(sg_ev(ok, x, &mut e), SgStatus::DomainError);
        assert!(last_error().contains("rank"));
        let mut v = ptr::null_mut();
        assert_eq!(sg_poly_eval(ok, x, c("not json").as_ptr(), &mut v), SgStatus::InvalidArgument);

        sg_poly_free(x);
        sg_setting_free(ok);
        sg_setting_free(ptr::null_mut());
        sg_poly_free(ptr::null_mut());
        sg_string_free(ptr::null_mut());
        assert!(!CStr::from_ptr(sg_version()).to_bytes().is_empty());
    }
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/supergeom.h")).unwrap();
    for name in [
        "sg_last_error",
        "sg_string_free",
        "sg_setting_new",
        "sg_poly_parse",
        "sg_is_supersymmetric",
        "sg_equivalent",
        "sg_ideal_groebner",
        "sg_cli_run",
        "SG_STATUS_BUDGET_EXCEEDED = 3",
    ] {
        assert!(header.contains(name), "{name}");
    }
}

/// Compiles and runs a C client against the static library, when a C
/// compiler is on the path.
#[test]
fn c_client() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if std::process::Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let dir = env!("CARGO_MANIFEST_DIR");
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib = [deps.join("libsupergeom_ffi.a"), deps.parent().unwrap().join("libsupergeom_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .expect("static library next to the test binary");
    let out = std::env::temp_dir().join(format!("supergeom_smoke_{}", std::process::id()));
    let status = std::process::Command::new(&cc)
        .arg(format!("{dir}/tests/c/smoke.c"))
        .arg(format!("-I{dir}/include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = std::process::Command::new(&out).output().unwrap();
    let _ = std::fs::remove_file(&out);
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("T = "));
}
