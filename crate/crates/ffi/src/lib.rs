//! C ABI for `conelab`.
//!
//! Presentations are loaded from `.catj` bytes into an opaque
//! [`ConelabLibrary`] handle; the checks then name documents inside it. Every
//! function returns a [`ConelabStatus`]. On a nonzero status,
//! [`conelab_last_error`] describes the failure for the calling thread.
//!
//! Name arguments may be null, meaning the last document of the expected
//! kind. A budget of 0 means the default budget.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use conelab::cli;
use conelab::cones::{limit_failure_h, limit_failure_htilde};
use conelab::dblcat::{double_biequivalence_failure, embed_htilde, trivial_fibration_failure, whi_failure};
use conelab::io::{self, Library, Mode};
use conelab::nerve::{segal_failure, truncated_nerve, Direction};
use conelab::twocat::{biequivalence_failure, oracle_counterexample};
use conelab::{Budget, Error};

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConelabStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not UTF-8.
    BadString = 2,
    /// Malformed JSON or bytes in a `.catj` buffer.
    Syntax = 3,
    /// A document broke the format or failed validation.
    Semantic = 4,
    /// No document with the given name and kind.
    NotFound = 5,
    /// The search budget ran out.
    BudgetExceeded = 6,
    /// Invalid data, an unknown cell id or mismatched boundaries.
    Invalid = 7,
    /// The inputs do not meet the operation's precondition.
    Precondition = 8,
    Io = 9,
    /// An internal error; the handle should not be used again.
    Panic = 10,
}

/// A set of loaded, validated documents.
pub struct ConelabLibrary {
    inner: Library,
}

/// Verdicts of the three homotopy 2-limit checks.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConelabLimitVerdicts {
    /// From the definition.
    pub oracle: bool,
    /// Through the double category of cones over `H K`.
    pub h: bool,
    /// Through the double category of cones over `H̃ K`.
    pub htilde: bool,
}

/// Cell counts of a double category.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConelabCounts {
    pub objects: usize,
    pub horizontals: usize,
    pub verticals: usize,
    pub squares: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(ConelabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::BudgetExceeded { .. } => ConelabStatus::BudgetExceeded,
            Error::UnknownCell { .. } | Error::Invalid { .. } | Error::BoundaryMismatch(_) => ConelabStatus::Invalid,
            Error::Precondition(_) => ConelabStatus::Precondition,
            Error::NotFound(_) => ConelabStatus::NotFound,
            Error::Syntax { .. } => ConelabStatus::Syntax,
            Error::Semantic { .. } => ConelabStatus::Semantic,
            Error::Io(_) => ConelabStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ConelabStatus::NullArgument, format!("`{what}` is null"))
}

/// Runs `body`, recording any failure or panic as the last error.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ConelabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            ConelabStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal error");
            ConelabStatus::Panic
        }
    }
}

unsafe fn library<'a>(lib: *const ConelabLibrary) -> Result<&'a Library, Failure> {
    lib.as_ref().map(|l| &l.inner).ok_or_else(|| null("library"))
}

unsafe fn bytes<'a>(data: *const u8, len: usize) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("data"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn opt_str<'a>(s: *const c_char) -> Result<Option<&'a str>, Failure> {
    if s.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(s)
        .to_str()
        .map(Some)
        .map_err(|_| Failure(ConelabStatus::BadString, "string argument is not UTF-8".into()))
}

/// The given name, or the last document of `kind`.
fn resolve<'a>(lib: &'a Library, name: Option<&'a str>, kind: &str) -> Result<&'a str, Failure> {
    name.or_else(|| lib.last_of(kind))
        .ok_or_else(|| Failure(ConelabStatus::NotFound, format!("no {kind} document loaded")))
}

fn budget(limit: u64) -> Budget {
    if limit == 0 {
        Budget::default()
    } else {
        Budget::new(limit)
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn mode(lax: bool) -> Mode {
    if lax {
        Mode::Lax
    } else {
        Mode::Strict
    }
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn conelab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message of the last failed call on this thread, or an empty string.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn conelab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and validates a `.catj` buffer into a new library.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn conelab_library_load(
    data: *const u8,
    len: usize,
    lax: bool,
    out: *mut *mut ConelabLibrary,
) -> ConelabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = io::load(bytes(data, len)?, mode(lax))?;
        out.write(Box::into_raw(Box::new(ConelabLibrary { inner })));
        Ok(())
    })
}

/// Adds the documents of another buffer; they may refer to documents
/// already loaded. On failure the library is unchanged.
///
/// # Safety
/// `lib` must come from [`conelab_library_load`]; `data` must point to `len`
/// readable bytes.
#[no_mangle]
pub unsafe extern "C" fn conelab_library_add(
    lib: *mut ConelabLibrary,
    data: *const u8,
    len: usize,
    lax: bool,
) -> ConelabStatus {
    guard(|| {
        let lib = lib.as_mut().ok_or_else(|| null("library"))?;
        let docs = io::parse_with(bytes(data, len)?, mode(lax))?;
        let mut next = lib.inner.clone();
        next.add(&docs)?;
        lib.inner = next;
        Ok(())
    })
}

/// Releases a library. Null is ignored.
///
/// # Safety
/// `lib` must come from [`conelab_library_load`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn conelab_library_free(lib: *mut ConelabLibrary) {
    if !lib.is_null() {
        drop(Box::from_raw(lib));
    }
}

/// Cell counts of a double category document.
///
/// # Safety
/// `lib` must be a live handle, `name` null or a NUL-terminated string, and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn conelab_double_category_counts(
    lib: *const ConelabLibrary,
    name: *const c_char,
    out: *mut ConelabCounts,
) -> ConelabStatus {
    guard(|| {
        let lib = library(lib)?;
        let d = lib.double_category(resolve(lib, opt_str(name)?, "doublecategory")?)?;
        write(
            out,
            ConelabCounts {
                objects: d.object_count(),
                horizontals: d.horizontal_count(),
                verticals: d.vertical_count(),
                squares: d.square_count(),
            },
        )
    })
}

/// Whether every horizontal equivalence of the double category has a
/// vertical companion.
///
/// # Safety
/// As for [`conelab_double_category_counts`].
#[no_mangle]
pub unsafe extern "C" fn conelab_is_whi(lib: *const ConelabLibrary, name: *const c_char, out: *mut bool) -> ConelabStatus {
    guard(|| {
        let lib = library(lib)?;
        let d = lib.double_category(resolve(lib, opt_str(name)?, "doublecategory")?)?;
        write(out, whi_failure(&d)?.is_none())
    })
}

/// Whether `H̃ C` is weakly horizontally invariant, for a 2-category `C`.
///
/// # Safety
/// As for [`conelab_double_category_counts`].
#[no_mangle]
pub unsafe extern "C" fn conelab_is_whi_htilde(
    lib: *const ConelabLibrary,
    name: *const c_char,
    out: *mut bool,
) -> ConelabStatus {
    guard(|| {
        let lib = library(lib)?;
        let c = lib.two_category(resolve(lib, opt_str(name)?, "twocategory")?)?;
        write(out, whi_failure(&embed_htilde(&c)?.double)?.is_none())
    })
}

/// Whether a 2-functor document is a biequivalence.
///
/// # Safety
/// As for [`conelab_double_category_counts`].
#[no_mangle]
pub unsafe extern "C" fn conelab_is_biequivalence(
    lib: *const ConelabLibrary,
    name: *const c_char,
    out: *mut bool,
) -> ConelabStatus {
    guard(|| {
        let lib = library(lib)?;
        let f = lib.two_functor(resolve(lib, opt_str(name)?, "twofunctor")?)?;
        write(out, biequivalence_failure(f)?.is_none())
    })
}

/// Whether a double functor document is a double biequivalence.
///
/// # Safety
/// As for [`conelab_double_category_counts`].
#[no_mangle]
pub unsafe extern "C" fn conelab_is_double_biequivalence(
    lib: *const ConelabLibrary,
    name: *const c_char,
    out: *mut bool,
) -> ConelabStatus {
    guard(|| {
        let lib = library(lib)?;
        let f = lib.double_functor(resolve(lib, opt_str(name)?, "doublefunctor")?)?;
        write(out, double_biequivalence_failure(f)?.is_none())
    })
}

/// Whether a double functor document is a trivial fibration.
///
/// # Safety
/// As for [`conelab_double_category_counts`].
#[no_mangle]
pub unsafe extern "C" fn conelab_is_trivial_fibration(
    lib: *const ConelabLibrary,
    name: *const c_char,
    out: *mut bool,
) -> ConelabStatus {
    guard(|| {
        let lib = library(lib)?;
        let f = lib.double_functor(resolve(lib, opt_str(name)?, "doublefunctor")?)?;
        write(out, trivial_fibration_failure(f)?.is_none())
    })
}

/// Decides whether a pseudo-cone document is a homotopy 2-limit of its
/// diagram, by the definition and through both cone double categories.
///
/// # Safety
/// As for [`conelab_double_category_counts`].
#[no_mangle]
pub unsafe extern "C" fn conelab_check_limit(
    lib: *const ConelabLibrary,
    cone: *const c_char,
    budget_limit: u64,
    out: *mut ConelabLimitVerdicts,
) -> ConelabStatus {
    guard(|| {
        let lib = library(lib)?;
        let named = lib.cone(resolve(lib, opt_str(cone)?, "pseudocone")?)?;
        let k = lib.two_functor(&named.diagram)?;
        let b = budget(budget_limit);
        let verdicts = ConelabLimitVerdicts {
            oracle: oracle_counterexample(k, &named.cone, &b)?.is_none(),
            h: limit_failure_h(k, &named.cone, &b)?.is_none(),
            htilde: limit_failure_htilde(k, &named.cone, &b)?.is_none(),
        };
        write(out, verdicts)
    })
}

/// The Segal condition on the nerve of a double category truncated at
/// `(m, t)`, in each direction.
///
/// # Safety
/// As for [`conelab_double_category_counts`]; `horizontal` and `vertical`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn conelab_segal(
    lib: *const ConelabLibrary,
    name: *const c_char,
    m: usize,
    t: usize,
    budget_limit: u64,
    horizontal: *mut bool,
    vertical: *mut bool,
) -> ConelabStatus {
    guard(|| {
        let lib = library(lib)?;
        let d = lib.double_category(resolve(lib, opt_str(name)?, "doublecategory")?)?;
        if horizontal.is_null() || vertical.is_null() {
            return Err(null("out"));
        }
        let x = truncated_nerve(&d, m, t, &budget(budget_limit))?;
        let h = segal_failure(&x, Direction::Horizontal)?.is_none();
        let v = segal_failure(&x, Direction::Vertical)?.is_none();
        write(horizontal, h)?;
        write(vertical, v)
    })
}

/// Runs the command line with the given arguments (not including the
/// program name) and returns its exit code: 0 pass, 1 fail, 2 error. The
/// report is written to `*out` as a string to release with
/// [`conelab_string_free`]. Pass `--json` for a machine-readable report.
///
/// # Safety
/// `argv` must hold `argc` NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn conelab_cli_run(argc: usize, argv: *const *const c_char, out: *mut *mut c_char) -> i32 {
    let mut code = 2;
    let status = guard(|| {
        if out.is_null() || (argc > 0 && argv.is_null()) {
            return Err(null("argv"));
        }
        let mut args = vec![std::ffi::OsString::from("conelab")];
        for i in 0..argc {
            let a = opt_str(*argv.add(i))?.ok_or_else(|| null("argv element"))?;
            args.push(a.into());
        }
        let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
        code = cli::run(args, &mut stdout, &mut stderr);
        stdout.extend(stderr);
        let text = CString::new(String::from_utf8_lossy(&stdout).replace('\0', " ")).unwrap_or_default();
        out.write(text.into_raw());
        Ok(())
    });
    if status == ConelabStatus::Ok {
        code
    } else {
        if !out.is_null() {
            out.write(ptr::null_mut());
        }
        2
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn conelab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
