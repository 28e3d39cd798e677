use std::ffi::{CStr, CString};
use std::ptr;

use apacket_ffi::*;

fn last_error() -> String {
    unsafe {
        CStr::from_ptr(ap_last_error_message())
            .to_string_lossy()
            .into_owned()
    }
}

fn builtin(name: &str) -> *mut ApParam {
    let name = CString::new(name).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ap_param_builtin(name.as_ptr(), &mut p) }, AP_OK);
    assert!(!p.is_null());
    p
}

#[test]
fn s8_size_and_decide() {
    let p = builtin("moeglin-s8");
    let mut n = 0usize;
    assert_eq!(unsafe { ap_param_block_count(p, &mut n) }, AP_OK);
    assert_eq!(n, 3);
    let mut size = 0u64;
    assert_eq!(unsafe { ap_packet_size(p, &mut size) }, AP_OK);
    assert_eq!(size, 1651);

    let l = [1u32, 10, 12];
    let eta = [1i8, -1, 1];
    let mut v = -1;
    assert_eq!(
        unsafe { ap_decide(p, l.as_ptr(), eta.as_ptr(), 3, &mut v) },
        AP_OK
    );
    assert!(v == 0 || v == 1);

    let bad = [9u32, 0, 0];
    assert_eq!(
        unsafe { ap_decide(p, bad.as_ptr(), eta.as_ptr(), 3, &mut v) },
        AP_ERR_INVALID
    );
    assert!(last_error().contains("out of range"));
    let bad_eta = [1i8, 0, 1];
    assert_eq!(
        unsafe { ap_decide(p, l.as_ptr(), bad_eta.as_ptr(), 3, &mut v) },
        AP_ERR_INVALID
    );
    unsafe { ap_param_free(p) };
}

#[test]
fn json_handles() {
    let json = CString::new(r#"{"blocks":[{"rho":"1","A":2,"B":2,"zeta":1}]}"#).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { ap_param_from_json(json.as_ptr(), &mut p) }, AP_OK);
    let mut size = 0u64;
    assert_eq!(unsafe { ap_packet_size(p, &mut size) }, AP_OK);
    assert_eq!(size, 1);
    assert_eq!(last_error(), "");
    unsafe { ap_param_free(p) };

    let broken = CString::new("{").unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { ap_param_from_json(broken.as_ptr(), &mut q) },
        AP_ERR_PARSE
    );
    assert!(q.is_null());
    assert!(!last_error().is_empty());
}

#[test]
fn null_pointers() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { ap_param_from_json(ptr::null(), &mut p) },
        AP_ERR_NULL
    );
    let mut n = 0usize;
    assert_eq!(
        unsafe { ap_param_block_count(ptr::null(), &mut n) },
        AP_ERR_NULL
    );
    let mut v = 0;
    assert_eq!(
        unsafe { ap_decide(ptr::null(), ptr::null(), ptr::null(), 0, &mut v) },
        AP_ERR_NULL
    );
    unsafe { ap_param_free(ptr::null_mut()) };
    let name = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { ap_param_builtin(name.as_ptr(), &mut p) },
        AP_ERR_PARSE
    );
}

#[test]
fn header_lists_every_export() {
    let header = include_str!("../include/apacket.h");
    for f in [
        "ap_param_from_json",
        "ap_param_builtin",
        "ap_param_free",
        "ap_param_block_count",
        "ap_decide",
        "ap_packet_size",
        "ap_last_error_message",
        "AP_ERR_PANIC",
        "typedef struct ApParam ApParam",
    ] {
        assert!(header.contains(f), "{f} missing from header");
    }
}
