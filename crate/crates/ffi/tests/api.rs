use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use legsurg_ffi::*;

const UNKNOT: &str = r#"{"version":1,"components":[{"id":"K","coefficient":"-5/3","knot":{"front":["L",1,"R",1]}}]}"#;

fn last_error() -> String {
    let p = lsg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn load(json: &str) -> *mut LsgDiagram {
    let text = CString::new(json).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { lsg_diagram_from_json(text.as_ptr(), &mut d) },
        LsgStatus::Ok
    );
    d
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { lsg_string_free(p) };
    s
}

#[test]
fn diagram_round_trip() {
    let d = load(UNKNOT);
    let mut n = 0usize;
    let mut count = 0u64;
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(lsg_diagram_component_count(d, &mut n), LsgStatus::Ok);
        assert_eq!(lsg_diagram_conversion_count(d, &mut count), LsgStatus::Ok);
        assert_eq!(lsg_diagram_homology(d, &mut h), LsgStatus::Ok);
    }
    assert_eq!((n, count), (1, 4));
    assert_eq!(take_string(h), "Z/8");
    assert!(lsg_last_error_message().is_null());

    let mut conv = ptr::null_mut();
    let policy = CString::new("all-positive").unwrap();
    unsafe {
        assert_eq!(lsg_convert(d, policy.as_ptr(), &mut conv), LsgStatus::Ok);
        let mut len = 0usize;
        assert_eq!(
            lsg_conversion_instruction_count(conv, &mut len),
            LsgStatus::Ok
        );
        assert_eq!(len, 2);
        let mut ins = LsgInstruction {
            parent: 9,
            coefficient: 0,
            level: 9,
            tb_local: 0,
            rot_choice: 0,
            chain: 0,
        };
        assert_eq!(lsg_conversion_instruction(conv, 1, &mut ins), LsgStatus::Ok);
        assert_eq!(
            ins,
            LsgInstruction {
                parent: 0,
                coefficient: -1,
                level: 1,
                tb_local: -2,
                rot_choice: 1,
                chain: 1,
            }
        );
        assert_eq!(
            lsg_conversion_instruction(conv, 2, &mut ins),
            LsgStatus::IndexOutOfRange
        );

        let mut passed = 0;
        assert_eq!(lsg_conversion_verify(conv, &mut passed), LsgStatus::Ok);
        assert_eq!(passed, 1);

        let mut json = ptr::null_mut();
        assert_eq!(lsg_conversion_to_json(conv, &mut json), LsgStatus::Ok);
        let text = take_string(json);
        let tampered =
            CString::new(text.replace("\"tight_count\":4", "\"tight_count\":5")).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(
            lsg_conversion_from_json(tampered.as_ptr(), &mut back),
            LsgStatus::Ok
        );
        assert_eq!(lsg_conversion_verify(back, &mut passed), LsgStatus::Ok);
        assert_eq!(passed, 0);
        lsg_conversion_free(back);
        lsg_conversion_free(conv);
        lsg_diagram_free(d);
    }
}

#[test]
fn errors_are_reported() {
    let mut d = ptr::null_mut();
    let bad = CString::new(r#"{"version":1,"components":[{"id":"K","coefficient":"5/0","knot":{"tb":-1,"rot":0,"type":"unknot"}}]}"#).unwrap();
    assert_eq!(
        unsafe { lsg_diagram_from_json(bad.as_ptr(), &mut d) },
        LsgStatus::ParseError
    );
    assert!(d.is_null());
    assert!(last_error().contains("zero denominator"));

    let unrealizable = CString::new(r#"{"version":1,"components":[{"id":"K","coefficient":"-1","knot":{"tb":-1,"rot":2,"type":"unknot"}}]}"#).unwrap();
    assert_eq!(
        unsafe { lsg_diagram_from_json(unrealizable.as_ptr(), &mut d) },
        LsgStatus::InvalidInput
    );
    assert_eq!(
        unsafe { lsg_diagram_from_json(ptr::null(), &mut d) },
        LsgStatus::NullPointer
    );
    assert_eq!(
        unsafe { lsg_diagram_from_json(bad.as_ptr(), ptr::null_mut()) },
        LsgStatus::NullPointer
    );

    let d = load(UNKNOT);
    let mut conv = ptr::null_mut();
    let policy = CString::new("tuple=5,5").unwrap();
    assert_eq!(
        unsafe { lsg_convert(d, policy.as_ptr(), &mut conv) },
        LsgStatus::InvalidInput
    );
    assert!(conv.is_null());
    unsafe { lsg_diagram_free(d) };
}

#[test]
fn free_functions_ignore_null() {
    unsafe {
        lsg_diagram_free(ptr::null_mut());
        lsg_conversion_free(ptr::null_mut());
        lsg_string_free(ptr::null_mut());
    }
}

#[test]
fn arithmetic_entry_points() {
    let mut buf = [0i64; 8];
    let mut len = 0usize;
    unsafe {
        assert_eq!(
            lsg_neg_cf(-7, 5, buf.as_mut_ptr(), buf.len(), &mut len),
            LsgStatus::Ok
        );
        assert_eq!(&buf[..len], &[-2, -2, -3]);
        assert_eq!(
            lsg_neg_cf(-7, 5, buf.as_mut_ptr(), 2, &mut len),
            LsgStatus::BufferTooSmall
        );
        assert_eq!(len, 3);
        assert_eq!(
            lsg_neg_cf(-7, 0, buf.as_mut_ptr(), 8, &mut len),
            LsgStatus::InvalidInput
        );
        assert_eq!(
            lsg_neg_cf(7, 5, buf.as_mut_ptr(), 8, &mut len),
            LsgStatus::InvalidInput
        );

        let rs = [-3i64, -3];
        let mut m = [0i64; 4];
        assert_eq!(
            lsg_chain_matrix(rs.as_ptr(), rs.len(), m.as_mut_ptr()),
            LsgStatus::Ok
        );
        assert_eq!(m, [5, 2, -3, -1]);
        let (mut num, mut den) = (0, 0);
        assert_eq!(
            lsg_boundary_slope(rs.as_ptr(), rs.len(), &mut num, &mut den),
            LsgStatus::Ok
        );
        assert_eq!((num, den), (-5, 2));
        let mut count = 0u64;
        assert_eq!(
            lsg_tight_count(rs.as_ptr(), rs.len(), &mut count),
            LsgStatus::Ok
        );
        assert_eq!(count, 4);
        assert_eq!(
            lsg_tight_count(ptr::null(), 0, &mut count),
            LsgStatus::InvalidInput
        );
        assert_eq!(
            lsg_tight_count(ptr::null(), 2, &mut count),
            LsgStatus::NullPointer
        );
        let big = [i64::MIN];
        assert_eq!(
            lsg_tight_count(big.as_ptr(), 1, &mut count),
            LsgStatus::Overflow
        );
    }
    let v = unsafe { CStr::from_ptr(lsg_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/legsurg.h");
    let text = std::fs::read_to_string(header).unwrap();
    for name in [
        "lsg_diagram_from_json",
        "lsg_convert",
        "lsg_last_error_message",
        "LSG_STATUS_OK",
        "typedef struct LsgDiagram LsgDiagram",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler; skipping syntax check");
        return;
    };
    assert!(status.success());
}
