use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use arithgraph_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(arith_last_error()) }.to_string_lossy().into_owned()
}

fn matrix(n: usize, entries: &[i64]) -> *mut ArithMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { arith_matrix_new(n, entries.as_ptr(), &mut m) }, ArithStatus::Ok);
    m
}

fn adjacency(f: ArithFamily, n: usize) -> *mut ArithMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { arith_graph_adjacency(f, n, &mut m) }, ArithStatus::Ok);
    m
}

#[test]
fn determinant_and_classification() {
    let m = matrix(3, &[2, -1, -1, -1, 2, -1, -1, -1, 2]);
    let mut det = 7;
    let mut dim = 0;
    unsafe {
        assert_eq!(arith_det(m, &mut det), ArithStatus::Ok);
        assert_eq!(arith_matrix_dim(m, &mut dim), ArithStatus::Ok);
    }
    assert_eq!((det, dim), (0, 3));
    let mut class = ArithMatrixClass::default();
    assert_eq!(unsafe { arith_classify_matrix(m, &mut class) }, ArithStatus::Ok);
    assert!(class.is_z && class.is_m && class.is_almost_nonsingular_m && class.is_irreducible);
    unsafe { arith_matrix_free(m) };

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { arith_matrix_new(2, ptr::null(), &mut out) }, ArithStatus::NullPointer);
    assert_eq!(unsafe { arith_matrix_new(0, ptr::null(), &mut out) }, ArithStatus::InvalidMatrix);
    assert!(last_error().contains("dimension"));
}

#[test]
fn structure_round_trip() {
    let w3 = adjacency(ArithFamily::Wheel, 3);
    let r = [1u64, 6, 2, 3];
    let mut d = [0u64; 4];
    let mut found = false;
    unsafe {
        assert_eq!(arith_d_from_r(w3, r.as_ptr(), 4, d.as_mut_ptr(), &mut found), ArithStatus::Ok);
    }
    assert!(found);
    assert_eq!(d, [11, 1, 5, 3]);
    let mut back = [0u64; 4];
    unsafe {
        assert_eq!(arith_r_from_d(w3, d.as_ptr(), 4, back.as_mut_ptr(), &mut found), ArithStatus::Ok);
    }
    assert!(found);
    assert_eq!(back, r);
    let mut ok = false;
    unsafe {
        assert_eq!(arith_is_arithmetical(w3, d.as_ptr(), r.as_ptr(), 4, &mut ok), ArithStatus::Ok);
        assert!(ok);
        let doubled = [2u64, 12, 4, 6];
        assert_eq!(arith_is_arithmetical(w3, d.as_ptr(), doubled.as_ptr(), 4, &mut ok), ArithStatus::Ok);
        assert!(!ok);
        assert_eq!(
            arith_is_arithmetical(w3, d.as_ptr(), r.as_ptr(), 3, &mut ok),
            ArithStatus::DimensionMismatch
        );
        arith_matrix_free(w3);
    }
}

#[test]
fn enumeration_sets() {
    let mut set = ptr::null_mut();
    assert_eq!(unsafe { arith_enumerate_certified(ArithFamily::Cycle, 4, &mut set) }, ArithStatus::Ok);
    let (mut count, mut vertices, mut complete) = (0, 0, false);
    unsafe { arith_set_info(set, &mut count, &mut vertices, &mut complete) };
    assert_eq!((count, vertices, complete), (35, 4, true));
    let (mut d, mut r) = ([0u64; 4], [0u64; 4]);
    unsafe {
        assert_eq!(arith_set_get(set, 0, d.as_mut_ptr(), r.as_mut_ptr(), 4), ArithStatus::Ok);
        assert_eq!(r, [1, 1, 1, 1]);
        assert_eq!(d, [2, 2, 2, 2]);
        assert_eq!(arith_set_get(set, 35, d.as_mut_ptr(), r.as_mut_ptr(), 4), ArithStatus::OutOfRange);
        arith_set_free(set);
    }

    let c4 = adjacency(ArithFamily::Cycle, 4);
    let mut bounded = ptr::null_mut();
    unsafe {
        assert_eq!(arith_enumerate_bounded(c4, 8, &mut bounded), ArithStatus::Ok);
        arith_set_info(bounded, &mut count, ptr::null_mut(), &mut complete);
        assert_eq!((count, complete), (35, false));
        arith_set_free(bounded);
        arith_matrix_free(c4);
    }

    let split = matrix(4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]);
    unsafe {
        assert_eq!(arith_enumerate_bounded(split, 8, &mut bounded), ArithStatus::ReducibleMatrix);
        assert_eq!(
            arith_enumerate_certified(ArithFamily::Wheel, 4, &mut bounded),
            ArithStatus::UnsupportedFamily
        );
        arith_matrix_free(split);
    }
}

#[test]
fn wheel_helpers() {
    let mut case = ArithWheelCase::AllOnes;
    unsafe {
        assert_eq!(arith_classify_wheel(3, [11u64, 1, 5, 3].as_ptr(), &mut case), ArithStatus::Ok);
    }
    assert_eq!(case, ArithWheelCase::Case1);
    let mut buf = [0u64; 12];
    let mut count = 0;
    unsafe {
        assert_eq!(
            arith_zn_orbit(3, [1u64, 6, 2, 3].as_ptr(), buf.as_mut_ptr(), 3, &mut count),
            ArithStatus::Ok
        );
    }
    assert_eq!(count, 3);
    assert_eq!(&buf[..12], &[1, 6, 2, 3, 1, 2, 3, 6, 1, 3, 6, 2]);
    unsafe {
        assert_eq!(
            arith_zn_orbit(3, [1u64, 6, 2, 3].as_ptr(), buf.as_mut_ptr(), 2, &mut count),
            ArithStatus::BufferTooSmall
        );
    }
    assert_eq!(count, 3);
}

#[test]
fn critical_group_buffer() {
    let k4 = adjacency(ArithFamily::Complete, 4);
    let (d, r) = ([3u64; 4], [1u64; 4]);
    let mut factors = [0u64; 1];
    let mut count = 0;
    unsafe {
        assert_eq!(
            arith_critical_group(k4, d.as_ptr(), r.as_ptr(), 4, factors.as_mut_ptr(), 1, &mut count),
            ArithStatus::BufferTooSmall
        );
        assert_eq!(count, 2);
        arith_matrix_free(k4);
    }
}

/// Compiles `smoke.c` against the generated header and the static library.
#[test]
fn c_program_links_against_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/arithgraph.h");
    assert!(header.exists(), "header was not generated");
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libarithgraph_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let out = std::env::temp_dir().join(format!("arith-smoke-{}", std::process::id()));
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    std::fs::remove_file(&out).ok();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "ok");
}
