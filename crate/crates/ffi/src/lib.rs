//! C interface to `arithgraph`.
//!
//! Every function returns an [`ArithStatus`]; on failure a message is available from
//! [`arith_last_error`] on the same thread. Matrices and structure sets are opaque handles
//! released with their `_free` function. Vectors are passed as pointer plus length.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use arithgraph::critical::critical_group;
use arithgraph::enumerate::{enumerate_bounded, enumerate_certified};
use arithgraph::linalg::det;
use arithgraph::mclass::classify;
use arithgraph::structure::{d_from_r, is_arithmetical, r_from_d};
use arithgraph::transforms::zn_orbit;
use arithgraph::wheel::{classify_wheel_structure, WheelCase};
use arithgraph::{make_graph, Error, Family, IntMatrix, StructureSet};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithStatus {
    Ok = 0,
    NullPointer = 1,
    BufferTooSmall = 2,
    DimensionMismatch = 3,
    InvalidMatrix = 4,
    InvalidGraph = 5,
    ReducibleMatrix = 6,
    NotZMatrix = 7,
    KernelMismatch = 8,
    NotAStructure = 9,
    UnsupportedFamily = 10,
    PreconditionViolation = 11,
    Overflow = 12,
    OutOfRange = 13,
    InvalidArgument = 14,
    Panic = 15,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithFamily {
    Path = 0,
    Cycle = 1,
    Star = 2,
    Complete = 3,
    Wheel = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithWheelCase {
    AllOnes = 0,
    Case1 = 1,
    Case2 = 2,
    Case3 = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ArithMatrixClass {
    pub is_z: bool,
    pub is_m: bool,
    pub is_almost_nonsingular_m: bool,
    pub is_irreducible: bool,
}

/// Opaque square integer matrix.
pub struct ArithMatrix(IntMatrix);

/// Opaque sorted set of structures.
pub struct ArithStructureSet(StructureSet);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> ArithStatus {
    match e {
        Error::DimensionMismatch { .. } => ArithStatus::DimensionMismatch,
        Error::InvalidMatrix(_) => ArithStatus::InvalidMatrix,
        Error::InvalidGraph(_) | Error::InvalidGeneralizedGraph(_) | Error::NotAClique(_) => ArithStatus::InvalidGraph,
        Error::ReducibleMatrix => ArithStatus::ReducibleMatrix,
        Error::NotZMatrix(..) => ArithStatus::NotZMatrix,
        Error::KernelMismatch | Error::BasisExpressionFailure(_) => ArithStatus::KernelMismatch,
        Error::NotAStructure(_) => ArithStatus::NotAStructure,
        Error::UnsupportedFamily(_) => ArithStatus::UnsupportedFamily,
        Error::ZeroX
        | Error::NonPositivePQ
        | Error::IntegralityViolation(_)
        | Error::DivisibilityViolation(_)
        | Error::PreconditionViolation(_)
        | Error::AffineResidueNotConstant => ArithStatus::PreconditionViolation,
        Error::Overflow(_) => ArithStatus::Overflow,
        Error::OutOfRange(_) => ArithStatus::OutOfRange,
        Error::Parse(_) | Error::File(_) | Error::UnknownTable(_) => ArithStatus::InvalidArgument,
    }
}

enum Fail {
    Status(ArithStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(ArithStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording the error message and converting panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ArithStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            ArithStatus::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            ArithStatus::Panic
        }
    }
}

unsafe fn input<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn output<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Fail> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts_mut(p, len))
}

unsafe fn write<T>(p: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn matrix<'a>(m: *const ArithMatrix) -> Result<&'a IntMatrix, Fail> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("matrix"))
}

fn family(f: ArithFamily) -> Family {
    match f {
        ArithFamily::Path => Family::Path,
        ArithFamily::Cycle => Family::Cycle,
        ArithFamily::Star => Family::Star,
        ArithFamily::Complete => Family::Complete,
        ArithFamily::Wheel => Family::Wheel,
    }
}

/// Message for the last failed call on this thread. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn arith_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Matrix of dimension `n` from `n * n` row-major entries.
///
/// # Safety
/// `entries` must point to `n * n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_matrix_new(n: usize, entries: *const i64, out: *mut *mut ArithMatrix) -> ArithStatus {
    guard(|| {
        let len = n
            .checked_mul(n)
            .ok_or_else(|| Fail::Status(ArithStatus::Overflow, "n * n overflows".into()))?;
        let e = input(entries, len, "entries")?;
        let rows: Vec<Vec<i64>> = e.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
        let m = IntMatrix::from_rows(&rows)?;
        write(out, Box::into_raw(Box::new(ArithMatrix(m))), "out")
    })
}

/// Adjacency matrix of a named graph family.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_graph_adjacency(f: ArithFamily, n: usize, out: *mut *mut ArithMatrix) -> ArithStatus {
    guard(|| {
        let g = make_graph(family(f), n)?;
        write(out, Box::into_raw(Box::new(ArithMatrix(g.adjacency().clone()))), "out")
    })
}

/// # Safety
/// `m` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn arith_matrix_free(m: *mut ArithMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_matrix_dim(m: *const ArithMatrix, out: *mut usize) -> ArithStatus {
    guard(|| write(out, matrix(m)?.dim(), "out"))
}

/// Exact determinant; `Overflow` if it does not fit in 64 bits.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_det(m: *const ArithMatrix, out: *mut i64) -> ArithStatus {
    guard(|| {
        let v = det(matrix(m)?);
        let v = i64::try_from(&v)
            .map_err(|_| Fail::Status(ArithStatus::Overflow, format!("determinant {v} does not fit in i64")))?;
        write(out, v, "out")
    })
}

/// # Safety
/// `a` must be a live handle; `d` and `r` must hold `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_is_arithmetical(
    a: *const ArithMatrix,
    d: *const u64,
    r: *const u64,
    len: usize,
    out: *mut bool,
) -> ArithStatus {
    guard(|| {
        let ok = is_arithmetical(matrix(a)?, input(d, len, "d")?, input(r, len, "r")?)?;
        write(out, ok, "out")
    })
}

/// Writes `d` into `out_d` (length `len`) and sets `found`; `out_d` is untouched when not found.
///
/// # Safety
/// `a` must be a live handle; `r` and `out_d` must hold `len` values; `found` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_d_from_r(
    a: *const ArithMatrix,
    r: *const u64,
    len: usize,
    out_d: *mut u64,
    found: *mut bool,
) -> ArithStatus {
    guard(|| {
        let a = matrix(a)?;
        if a.dim() != len {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: len,
            }
            .into());
        }
        let result = d_from_r(a, input(r, len, "r")?);
        if let Some(d) = &result {
            output(out_d, len, "out_d")?.copy_from_slice(d);
        }
        write(found, result.is_some(), "found")
    })
}

/// Writes `r` into `out_r` (length `len`) and sets `found`.
///
/// # Safety
/// `a` must be a live handle; `d` and `out_r` must hold `len` values; `found` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_r_from_d(
    a: *const ArithMatrix,
    d: *const u64,
    len: usize,
    out_r: *mut u64,
    found: *mut bool,
) -> ArithStatus {
    guard(|| {
        let a = matrix(a)?;
        if a.dim() != len {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: len,
            }
            .into());
        }
        let result = r_from_d(a, input(d, len, "d")?);
        if let Some(r) = &result {
            output(out_r, len, "out_r")?.copy_from_slice(r);
        }
        write(found, result.is_some(), "found")
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_enumerate_certified(
    f: ArithFamily,
    n: usize,
    out: *mut *mut ArithStructureSet,
) -> ArithStatus {
    guard(|| {
        let set = enumerate_certified(family(f), n)?;
        write(out, Box::into_raw(Box::new(ArithStructureSet(set))), "out")
    })
}

/// Structures with every `r` entry at most `r_cap`; the result is not certified complete.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_enumerate_bounded(
    a: *const ArithMatrix,
    r_cap: u64,
    out: *mut *mut ArithStructureSet,
) -> ArithStatus {
    guard(|| {
        let set = enumerate_bounded(matrix(a)?, r_cap)?;
        write(out, Box::into_raw(Box::new(ArithStructureSet(set))), "out")
    })
}

/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn arith_set_free(s: *mut ArithStructureSet) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn set<'a>(s: *const ArithStructureSet) -> Result<&'a StructureSet, Fail> {
    s.as_ref().map(|s| &s.0).ok_or_else(|| null("set"))
}

/// Number of structures, vertex count and whether the set is certified complete.
///
/// # Safety
/// `s` must be a live handle; each non-null output pointer must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_set_info(
    s: *const ArithStructureSet,
    count: *mut usize,
    vertices: *mut usize,
    complete: *mut bool,
) -> ArithStatus {
    guard(|| {
        let s = set(s)?;
        if !count.is_null() {
            count.write(s.len());
        }
        if !vertices.is_null() {
            vertices.write(s.adjacency.dim());
        }
        if !complete.is_null() {
            complete.write(s.complete);
        }
        Ok(())
    })
}

/// Copies structure `index` (canonical order) into `out_d` and `out_r`, each of length `len`
/// equal to the vertex count.
///
/// # Safety
/// `s` must be a live handle; `out_d` and `out_r` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn arith_set_get(
    s: *const ArithStructureSet,
    index: usize,
    out_d: *mut u64,
    out_r: *mut u64,
    len: usize,
) -> ArithStatus {
    guard(|| {
        let s = set(s)?;
        let item = s.structures.get(index).ok_or_else(|| {
            Fail::Status(ArithStatus::OutOfRange, format!("index {index} >= {}", s.len()))
        })?;
        if len != item.len() {
            return Err(Error::DimensionMismatch {
                expected: item.len(),
                got: len,
            }
            .into());
        }
        output(out_d, len, "out_d")?.copy_from_slice(&item.d);
        output(out_r, len, "out_r")?.copy_from_slice(&item.r);
        Ok(())
    })
}

/// Invariant factors (> 1) of the critical group. `count` receives the number of factors; if it
/// exceeds `cap` the status is `BufferTooSmall` and nothing is written to `factors`.
///
/// # Safety
/// `a` must be a live handle; `d` and `r` must hold `len` values; `factors` must hold `cap`
/// values; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_critical_group(
    a: *const ArithMatrix,
    d: *const u64,
    r: *const u64,
    len: usize,
    factors: *mut u64,
    cap: usize,
    count: *mut usize,
) -> ArithStatus {
    guard(|| {
        let cg = critical_group(matrix(a)?, input(d, len, "d")?, input(r, len, "r")?)?;
        let fs = cg
            .factors_u64()
            .ok_or_else(|| Fail::Status(ArithStatus::Overflow, "invariant factor exceeds u64".into()))?;
        write(count, fs.len(), "count")?;
        if fs.len() > cap {
            return Err(Fail::Status(
                ArithStatus::BufferTooSmall,
                format!("{} factors, buffer holds {cap}", fs.len()),
            ));
        }
        output(factors, fs.len(), "factors")?.copy_from_slice(&fs);
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_classify_matrix(m: *const ArithMatrix, out: *mut ArithMatrixClass) -> ArithStatus {
    guard(|| {
        let c = classify(matrix(m)?);
        write(
            out,
            ArithMatrixClass {
                is_z: c.is_z,
                is_m: c.is_m,
                is_almost_nonsingular_m: c.is_almost_nonsingular_m,
                is_irreducible: c.is_irreducible,
            },
            "out",
        )
    })
}

/// Classifies the structure on the wheel `W_n` given by `d` (length `n + 1`).
///
/// # Safety
/// `d` must hold `n + 1` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arith_classify_wheel(n: usize, d: *const u64, out: *mut ArithWheelCase) -> ArithStatus {
    guard(|| {
        let d = input(d, n + 1, "d")?;
        let case = match classify_wheel_structure(n, d)? {
            WheelCase::AllOnes => ArithWheelCase::AllOnes,
            WheelCase::Case1 => ArithWheelCase::Case1,
            WheelCase::Case2 => ArithWheelCase::Case2,
            WheelCase::Case3 => ArithWheelCase::Case3,
        };
        write(out, case, "out")
    })
}

/// Rim-rotation orbit of `r` (length `n + 1`) on `W_n`. Orbit members are written back to back
/// into `out` (room for `cap` vectors of length `n + 1`); `count` receives the orbit size.
///
/// # Safety
/// `r` must hold `n + 1` values; `out` must hold `cap * (n + 1)` values; `count` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn arith_zn_orbit(
    n: usize,
    r: *const u64,
    out: *mut u64,
    cap: usize,
    count: *mut usize,
) -> ArithStatus {
    guard(|| {
        let orbit = zn_orbit(n, input(r, n + 1, "r")?)?;
        write(count, orbit.len(), "count")?;
        if orbit.len() > cap {
            return Err(Fail::Status(
                ArithStatus::BufferTooSmall,
                format!("orbit has {} members, buffer holds {cap}", orbit.len()),
            ));
        }
        let buf = output(out, orbit.len() * (n + 1), "out")?;
        for (chunk, v) in buf.chunks_mut(n + 1).zip(&orbit) {
            chunk.copy_from_slice(v);
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;
    use std::ptr;

    #[test]
    fn null_handles_are_reported() {
        let mut v = 0i64;
        assert_eq!(unsafe { arith_det(ptr::null(), &mut v) }, ArithStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(arith_last_error()) };
        assert_eq!(msg.to_str().unwrap(), "matrix is null");
    }

    #[test]
    fn error_codes_follow_library_errors() {
        assert_eq!(status_of(&Error::ReducibleMatrix), ArithStatus::ReducibleMatrix);
        assert_eq!(status_of(&Error::ZeroX), ArithStatus::PreconditionViolation);
        assert_eq!(
            status_of(&Error::UnsupportedFamily("x".into())),
            ArithStatus::UnsupportedFamily
        );
    }
}
