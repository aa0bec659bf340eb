use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use puncstego_ffi::*;

struct Handle(*mut PsgScheme);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { psg_scheme_free(self.0) }
    }
}

fn punctured(m: u32, t: u32) -> Handle {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { psg_scheme_new_punctured_bch(m, t, &mut p) }, PsgStatus::Ok);
    assert!(!p.is_null());
    Handle(p)
}

#[test]
fn punctured_bch_round_trip() {
    let h = punctured(4, 3);
    let (n, r) = unsafe { (psg_scheme_n(h.0), psg_scheme_r(h.0)) };
    assert_eq!((n, r), (12, 7));
    let mut state = 0x2545_f491_u64;
    for _ in 0..200 {
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state & 1) as u8
        };
        let cover: Vec<u8> = (0..n).map(|_| next()).collect();
        let msg: Vec<u8> = (0..r).map(|_| next()).collect();
        let mut stego = vec![0u8; n];
        let st = unsafe { psg_scheme_embed(h.0, cover.as_ptr(), n, msg.as_ptr(), r, stego.as_mut_ptr(), n) };
        assert_eq!(st, PsgStatus::Ok);
        let changes = cover.iter().zip(&stego).filter(|(a, b)| a != b).count();
        assert!(changes <= 3);
        let mut back = vec![9u8; r];
        let st = unsafe { psg_scheme_extract(h.0, stego.as_ptr(), n, back.as_mut_ptr(), r) };
        assert_eq!(st, PsgStatus::Ok);
        assert_eq!(back, msg);
    }
}

#[test]
fn bounded_bch_reports_failure() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { psg_scheme_new_bch(4, 3, &mut p) }, PsgStatus::Ok);
    let h = Handle(p);
    let cover = [0u8; 15];
    let mut failures = 0;
    for s in 0u32..1024 {
        let msg: Vec<u8> = (0..10).map(|i| ((s >> i) & 1) as u8).collect();
        let mut out = [0u8; 15];
        match unsafe { psg_scheme_embed(h.0, cover.as_ptr(), 15, msg.as_ptr(), 10, out.as_mut_ptr(), 15) } {
            PsgStatus::Ok => {}
            PsgStatus::EmbedFailure => failures += 1,
            other => panic!("unexpected {other:?}"),
        }
    }
    assert_eq!(failures, 1024 - 576);
}

#[test]
fn hamming_params() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { psg_scheme_new_hamming(3, &mut p) }, PsgStatus::Ok);
    let h = Handle(p);
    let mut params = PsgParams {
        n: 0,
        r: 0,
        t_max: 0,
        t_avg: 0.0,
        a: 0.0,
        e: 0.0,
        e_avg: 0.0,
        p_s: 0.0,
        e_rel: 0.0,
        e_avg_rel: 0.0,
    };
    assert_eq!(unsafe { psg_scheme_params(h.0, &mut params) }, PsgStatus::Ok);
    assert_eq!((params.n, params.r, params.t_max), (7, 3, 1));
    assert_eq!(params.e, 3.0);
    assert_eq!(params.p_s, 1.0);
    assert!((params.t_avg - 0.875).abs() < 1e-12);
}

#[test]
fn errors() {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { psg_scheme_new_bch(4, 9, &mut p) }, PsgStatus::InvalidArgument);
    assert!(p.is_null());
    assert_eq!(unsafe { psg_scheme_new_hamming(3, ptr::null_mut()) }, PsgStatus::NullPointer);
    unsafe { psg_scheme_free(ptr::null_mut()) };
    assert_eq!(unsafe { psg_scheme_n(ptr::null()) }, 0);

    let h = punctured(4, 3);
    let cover = [0u8; 12];
    let msg = [0u8; 7];
    let mut out = vec![0u8; 12];
    let st = unsafe { psg_scheme_embed(h.0, cover.as_ptr(), 11, msg.as_ptr(), 7, out.as_mut_ptr(), 12) };
    assert_eq!(st, PsgStatus::LengthMismatch);
    let bad = [2u8; 12];
    let st = unsafe { psg_scheme_embed(h.0, bad.as_ptr(), 12, msg.as_ptr(), 7, out.as_mut_ptr(), 12) };
    assert_eq!(st, PsgStatus::InvalidArgument);
    let st = unsafe { psg_scheme_extract(h.0, ptr::null(), 12, out.as_mut_ptr(), 7) };
    assert_eq!(st, PsgStatus::NullPointer);
}

#[test]
fn free_functions() {
    assert!((psg_table_size_mb(31, 15) - 1.507).abs() < 5e-4);
    let mut b = 0.0;
    assert_eq!(unsafe { psg_entropy_bound(2, 1.0, &mut b) }, PsgStatus::Ok);
    assert!((b - 2.0).abs() < 1e-9);
    assert_eq!(unsafe { psg_entropy_bound(2, 0.0, &mut b) }, PsgStatus::InvalidArgument);
    let s = unsafe { CStr::from_ptr(psg_status_str(PsgStatus::EmbedFailure)) };
    assert_eq!(s.to_str().unwrap(), "embedding failed");
}

fn header() -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/puncstego.h");
    std::fs::read_to_string(path).expect("header is generated by the build script")
}

#[test]
fn header_declares_api() {
    let h = header();
    for name in [
        "psg_scheme_new_punctured_bch",
        "psg_scheme_new_bch",
        "psg_scheme_new_hamming",
        "psg_scheme_free",
        "psg_scheme_n",
        "psg_scheme_r",
        "psg_scheme_embed",
        "psg_scheme_extract",
        "psg_scheme_params",
        "psg_status_str",
        "psg_table_size_mb",
        "psg_entropy_bound",
        "typedef struct PsgScheme PsgScheme",
        "PSG_STATUS_EMBED_FAILURE = 5",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"puncstego.h\"\nint main(void) { PsgScheme *s = 0; return (int)psg_scheme_n(s); }\n",
    )
    .unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(cc)
        .arg("-fsyntax-only")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "clang", "gcc"] {
        if Command::new(cc).arg("--version").output().is_ok_and(|o| o.status.success()) {
            return Ok(cc);
        }
    }
    Err(())
}
