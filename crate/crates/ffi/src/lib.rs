//! C interface to legsurg.
//!
//! Every fallible function returns an [`LsgStatus`]. On failure a message is
//! kept per thread and can be read with [`lsg_last_error_message`]. Objects
//! are handed out as opaque pointers and released with their `_free`
//! function. Strings returned through `char **` are owned by the caller and
//! released with [`lsg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use legsurg::arith::{
    boundary_slope, chain_matrix, neg_cf_expand, tight_count, ArithError, Rational,
};
use legsurg::cli::{CliError, DiagramFile, Options, ResultFile};
use legsurg::surgery::{
    conversion_count, convert, verify, ContactDiagram, PmOneDiagram, Policy, Provenance,
    SurgeryError,
};
use legsurg::topology::{first_homology, TopologyError};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    Overflow = 5,
    BufferTooSmall = 6,
    IndexOutOfRange = 7,
    Panic = 8,
}

/// A validated contact surgery diagram.
pub struct LsgDiagram {
    diagram: ContactDiagram,
    options: Options,
}

/// A contact (±1)-surgery presentation with its certificates.
pub struct LsgConversion {
    result: PmOneDiagram,
}

/// One (±1)-surgery instruction. `parent` indexes the converted components.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LsgInstruction {
    pub parent: usize,
    /// +1 or -1.
    pub coefficient: i32,
    pub level: usize,
    pub tb_local: i64,
    pub rot_choice: i64,
    /// 1 for instructions of a (-1)-chain, 0 otherwise.
    pub chain: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl ToString) {
    let text = msg.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn fail(status: LsgStatus, msg: impl ToString) -> LsgStatus {
    set_error(msg);
    status
}

fn arith_status(e: &ArithError) -> LsgStatus {
    match e {
        ArithError::Overflow => LsgStatus::Overflow,
        _ => LsgStatus::InvalidInput,
    }
}

fn surgery_status(e: &SurgeryError) -> LsgStatus {
    match e {
        SurgeryError::Arith(a) => arith_status(a),
        _ => LsgStatus::InvalidInput,
    }
}

fn cli_status(e: &CliError) -> LsgStatus {
    match e {
        CliError::Parse { .. } | CliError::UnsupportedVersion(_) => LsgStatus::ParseError,
        CliError::Arith(a) => arith_status(a),
        CliError::Surgery(s) => surgery_status(s),
        _ => LsgStatus::InvalidInput,
    }
}

fn topology_status(e: &TopologyError) -> LsgStatus {
    match e {
        TopologyError::Overflow => LsgStatus::Overflow,
        TopologyError::Arith(a) => arith_status(a),
        TopologyError::Surgery(s) => surgery_status(s),
        _ => LsgStatus::InvalidInput,
    }
}

/// Runs `f`, turning panics into [`LsgStatus::Panic`] and clearing the
/// error message on success.
fn guard(f: impl FnOnce() -> LsgStatus) -> LsgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(LsgStatus::Ok) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            LsgStatus::Ok
        }
        Ok(status) => status,
        Err(_) => fail(LsgStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LsgStatus> {
    if s.is_null() {
        return Err(fail(LsgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(LsgStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn chain<'a>(rs: *const i64, len: usize) -> Result<&'a [i64], LsgStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if rs.is_null() {
        return Err(fail(LsgStatus::NullPointer, "null chain pointer"));
    }
    Ok(std::slice::from_raw_parts(rs, len))
}

fn give_string(s: String, out: *mut *mut c_char) -> LsgStatus {
    match CString::new(s) {
        Ok(c) => {
            // SAFETY: callers check `out` for null before calling.
            unsafe { *out = c.into_raw() };
            LsgStatus::Ok
        }
        Err(_) => fail(LsgStatus::InvalidInput, "string contains a NUL byte"),
    }
}

macro_rules! non_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(LsgStatus::NullPointer, concat!("null argument: ", stringify!($p)));
        })+
    };
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn lsg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lsg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lsg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a diagram file held in memory.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lsg_diagram_from_json(
    json: *const c_char,
    out: *mut *mut LsgDiagram,
) -> LsgStatus {
    guard(|| {
        non_null!(out);
        *out = ptr::null_mut();
        let text = try_status!(read_str(json));
        let file = match DiagramFile::parse(text, "<memory>") {
            Ok(f) => f,
            Err(e) => return fail(cli_status(&e), &e),
        };
        let diagram = match file.to_diagram() {
            Ok(d) => d,
            Err(e) => return fail(cli_status(&e), &e),
        };
        *out = Box::into_raw(Box::new(LsgDiagram {
            diagram,
            options: file.options,
        }));
        LsgStatus::Ok
    })
}

/// Releases a diagram. Null is ignored.
///
/// # Safety
/// `d` must come from [`lsg_diagram_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lsg_diagram_free(d: *mut LsgDiagram) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lsg_diagram_component_count(
    d: *const LsgDiagram,
    out: *mut usize,
) -> LsgStatus {
    guard(|| {
        non_null!(d, out);
        *out = (*d).diagram.components.len();
        LsgStatus::Ok
    })
}

/// Number of distinct (±1)-presentations over all rotation choices.
///
/// # Safety
/// `d` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lsg_diagram_conversion_count(
    d: *const LsgDiagram,
    out: *mut u64,
) -> LsgStatus {
    guard(|| {
        non_null!(d, out);
        match conversion_count(&(*d).diagram) {
            Ok(n) => {
                *out = n;
                LsgStatus::Ok
            }
            Err(e) => fail(surgery_status(&e), &e),
        }
    })
}

/// First homology of the surgered manifold, e.g. `"Z/8"`.
///
/// # Safety
/// `d` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lsg_diagram_homology(
    d: *const LsgDiagram,
    out: *mut *mut c_char,
) -> LsgStatus {
    guard(|| {
        non_null!(d, out);
        *out = ptr::null_mut();
        match first_homology(&(*d).diagram) {
            Ok(g) => give_string(g.to_string(), out),
            Err(e) => fail(topology_status(&e), &e),
        }
    })
}

/// Converts a diagram. A null `policy` uses the policy stored in the file.
///
/// # Safety
/// `d` and `out` must be valid pointers; `policy` is null or a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn lsg_convert(
    d: *const LsgDiagram,
    policy: *const c_char,
    out: *mut *mut LsgConversion,
) -> LsgStatus {
    guard(|| {
        non_null!(d, out);
        *out = ptr::null_mut();
        let policy: Policy = if policy.is_null() {
            (*d).options.policy.clone()
        } else {
            match try_status!(read_str(policy)).parse() {
                Ok(p) => p,
                Err(e) => return fail(LsgStatus::InvalidInput, e),
            }
        };
        match convert(&(*d).diagram, &policy) {
            Ok(result) => {
                *out = Box::into_raw(Box::new(LsgConversion { result }));
                LsgStatus::Ok
            }
            Err(e) => fail(surgery_status(&e), &e),
        }
    })
}

/// Reads a result file held in memory, e.g. for re-verification.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lsg_conversion_from_json(
    json: *const c_char,
    out: *mut *mut LsgConversion,
) -> LsgStatus {
    guard(|| {
        non_null!(out);
        *out = ptr::null_mut();
        let text = try_status!(read_str(json));
        match ResultFile::parse(text, "<memory>") {
            Ok(file) => {
                *out = Box::into_raw(Box::new(LsgConversion {
                    result: file.diagram,
                }));
                LsgStatus::Ok
            }
            Err(e) => fail(cli_status(&e), &e),
        }
    })
}

/// Releases a conversion. Null is ignored.
///
/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lsg_conversion_free(c: *mut LsgConversion) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lsg_conversion_instruction_count(
    c: *const LsgConversion,
    out: *mut usize,
) -> LsgStatus {
    guard(|| {
        non_null!(c, out);
        *out = (*c).result.instructions().count();
        LsgStatus::Ok
    })
}

/// Instruction `index` in presentation order.
///
/// # Safety
/// `c` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lsg_conversion_instruction(
    c: *const LsgConversion,
    index: usize,
    out: *mut LsgInstruction,
) -> LsgStatus {
    guard(|| {
        non_null!(c, out);
        let found = (*c)
            .result
            .components
            .iter()
            .enumerate()
            .flat_map(|(p, comp)| comp.instructions.iter().map(move |i| (p, i)))
            .nth(index);
        let Some((parent, i)) = found else {
            return fail(
                LsgStatus::IndexOutOfRange,
                format!("no instruction {index}"),
            );
        };
        *out = LsgInstruction {
            parent,
            coefficient: i.coefficient.value() as i32,
            level: i.level,
            tb_local: i.tb_local,
            rot_choice: i.rot_choice,
            chain: (i.provenance == Provenance::NegativeChain) as i32,
        };
        LsgStatus::Ok
    })
}

/// Serializes the conversion as a one-line result file.
///
/// # Safety
/// `c` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lsg_conversion_to_json(
    c: *const LsgConversion,
    out: *mut *mut c_char,
) -> LsgStatus {
    guard(|| {
        non_null!(c, out);
        *out = ptr::null_mut();
        give_string(ResultFile::new((*c).result.clone()).to_json_line(), out)
    })
}

/// Re-derives every certificate clause. `passed` is set to 1 when all hold.
///
/// # Safety
/// `c` and `passed` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn lsg_conversion_verify(
    c: *const LsgConversion,
    passed: *mut i32,
) -> LsgStatus {
    guard(|| {
        non_null!(c, passed);
        let report = verify(&(*c).result);
        *passed = report.all_passed() as i32;
        if !report.all_passed() {
            set_error(report.to_string());
        }
        LsgStatus::Ok
    })
}

/// Negative continued fraction of `p/q < 0`. Writes at most `cap` entries
/// and always sets `len`; returns [`LsgStatus::BufferTooSmall`] if
/// `cap < len`.
///
/// # Safety
/// `buf` must hold `cap` entries (or be null with `cap == 0`); `len` must be
/// valid.
#[no_mangle]
pub unsafe extern "C" fn lsg_neg_cf(
    p: i64,
    q: i64,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> LsgStatus {
    guard(|| {
        non_null!(len);
        let cf = match Rational::new(p, q).and_then(neg_cf_expand) {
            Ok(cf) => cf,
            Err(e) => return fail(arith_status(&e), e),
        };
        let entries = cf.entries();
        *len = entries.len();
        if cap < entries.len() {
            return fail(
                LsgStatus::BufferTooSmall,
                format!("need {} entries", entries.len()),
            );
        }
        non_null!(buf);
        ptr::copy_nonoverlapping(entries.as_ptr(), buf, entries.len());
        LsgStatus::Ok
    })
}

/// Chain matrix of surgery coefficients `rs`, row-major into `out[4]`.
///
/// # Safety
/// `rs` must hold `n` entries and `out` four.
#[no_mangle]
pub unsafe extern "C" fn lsg_chain_matrix(rs: *const i64, n: usize, out: *mut i64) -> LsgStatus {
    guard(|| {
        non_null!(out);
        let rs = try_status!(chain(rs, n));
        match chain_matrix(rs) {
            Ok(m) => {
                let entries = [m.a, m.b, m.c, m.d];
                ptr::copy_nonoverlapping(entries.as_ptr(), out, 4);
                LsgStatus::Ok
            }
            Err(e) => fail(arith_status(&e), e),
        }
    })
}

/// Boundary slope `num/den` of a chain; infinity is `1/0`.
///
/// # Safety
/// `rs` must hold `n` entries; `num` and `den` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lsg_boundary_slope(
    rs: *const i64,
    n: usize,
    num: *mut i64,
    den: *mut i64,
) -> LsgStatus {
    guard(|| {
        non_null!(num, den);
        let rs = try_status!(chain(rs, n));
        match boundary_slope(rs) {
            Ok(s) => {
                *num = s.numer();
                *den = s.denom();
                LsgStatus::Ok
            }
            Err(e) => fail(arith_status(&e), e),
        }
    })
}

/// `|(rn + 1) ... (r1 + 1)|`.
///
/// # Safety
/// `rs` must hold `n` entries; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lsg_tight_count(rs: *const i64, n: usize, out: *mut u64) -> LsgStatus {
    guard(|| {
        non_null!(out);
        let rs = try_status!(chain(rs, n));
        match tight_count(rs) {
            Ok(c) => {
                *out = c;
                LsgStatus::Ok
            }
            Err(e) => fail(arith_status(&e), e),
        }
    })
}
