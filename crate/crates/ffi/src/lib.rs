//! C interface to `eqtrace`.
//!
//! Objects are opaque handles created by `*_new` / `*_from_json` and released
//! with the matching `*_free`. Every fallible call returns an [`EqStatus`];
//! on failure the message is available from [`eqtrace_last_error`] on the
//! same thread. Strings returned through `char **` out-parameters are owned
//! by the caller and released with [`eqtrace_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eqtrace::algebra::{AlgebraSpec, GradedAlgebra};
use eqtrace::groups::{self, FiniteGroup, GroupSpec};
use eqtrace::orbits::{self, WeightedDynkinDiagram};
use eqtrace::rootdata::{self, CartanType, CharacterSpec, RootDatum, RootDatumSpec};
use eqtrace::{acceptance, koszul, Error};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Precondition = 3,
    CapExceeded = 4,
    Unsupported = 5,
    CheckFailed = 6,
    Panic = 7,
}

/// A root datum `(X, Φ, X^∨, Φ^∨)`.
pub struct EqRootDatum(RootDatum);

/// A finite permutation group.
pub struct EqGroup(FiniteGroup);

/// A finite dimensional graded algebra given by a quiver with relations.
pub struct EqAlgebra(GradedAlgebra);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EqStatus {
    match e {
        Error::Invalid(_) => EqStatus::InvalidInput,
        Error::Precondition(_) => EqStatus::Precondition,
        Error::CapExceeded(_) => EqStatus::CapExceeded,
        Error::Unsupported(_) => EqStatus::Unsupported,
        Error::Check(_) => EqStatus::CheckFailed,
    }
}

struct Fail(EqStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(EqStatus::InvalidInput, msg.into())
}

/// Runs `f`, turning errors and panics into a status and the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> EqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EqStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            EqStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(EqStatus::NullPointer, format!("{name} is NULL")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{name} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(EqStatus::NullPointer, format!("{name} is NULL")))
}

unsafe fn write<T>(out: *mut T, value: T, name: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(EqStatus::NullPointer, format!("{name} is NULL")));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: serde_json::Value) -> Result<(), Fail> {
    let s = CString::new(value.to_string()).expect("JSON has no NULs");
    write(out, s.into_raw(), "out")
}

fn json_input<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Fail> {
    serde_json::from_str(text).map_err(|e| invalid(format!("{what}: {e}")))
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn eqtrace_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn eqtrace_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from an `eqtrace_*` out-parameter and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Root datum of Cartan type `cartan_type` (e.g. `"A2"`, `"A1xT1"`) with
/// characters `characters`: `"root"`, `"weight"`, or a JSON matrix of rows.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_root_datum_new(
    cartan_type: *const c_char,
    characters: *const c_char,
    out: *mut *mut EqRootDatum,
) -> EqStatus {
    guard(|| {
        let t = str_arg(cartan_type, "cartan_type")?;
        let x = str_arg(characters, "characters")?;
        let characters = match x.trim() {
            "root" | "weight" => CharacterSpec::Named(x.trim().to_string()),
            rows => CharacterSpec::Rows(json_input(rows, "characters")?),
        };
        let d = RootDatumSpec { cartan_type: t.to_string(), characters }.build()?;
        write(out, Box::into_raw(Box::new(EqRootDatum(d))), "out")
    })
}

/// # Safety
/// `d` must come from [`eqtrace_root_datum_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_root_datum_free(d: *mut EqRootDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Order of the Schur multiplier `M(G) = Λ / X_der`.
///
/// # Safety
/// `d` must be a live handle; `order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_root_datum_schur_order(d: *const EqRootDatum, order: *mut u64) -> EqStatus {
    guard(|| {
        let d = handle(d, "datum")?;
        let m = rootdata::schur_multiplier_connected(&d.0)?;
        let n = m.order().and_then(|o| o.to_i64()).ok_or_else(|| Fail(EqStatus::CheckFailed, "multiplier is not finite".into()))?;
        write(order, n as u64, "order")
    })
}

/// `π_1` of the derived group as JSON `{free_rank, torsion}`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_root_datum_pi1_json(d: *const EqRootDatum, out: *mut *mut c_char) -> EqStatus {
    guard(|| {
        let d = handle(d, "datum")?;
        let p = rootdata::fundamental_group(&d.0)?;
        write_json(out, serde_json::to_value(&p).expect("serializes"))
    })
}

/// Permutation group from JSON `{"degree": n, "generators": [[cycles]]}` with 1-based points.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_group_from_json(json: *const c_char, out: *mut *mut EqGroup) -> EqStatus {
    guard(|| {
        let spec: GroupSpec = json_input(str_arg(json, "json")?, "group")?;
        let g = spec.build()?;
        write(out, Box::into_raw(Box::new(EqGroup(g))), "out")
    })
}

/// # Safety
/// `g` must come from [`eqtrace_group_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_group_free(g: *mut EqGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of elements; 0 for a NULL handle.
///
/// # Safety
/// `g` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_group_order(g: *const EqGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// Schur multiplier `H^3(G, Z)` as JSON `{free_rank, torsion}`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_group_schur_multiplier_json(g: *const EqGroup, out: *mut *mut c_char) -> EqStatus {
    guard(|| {
        let g = handle(g, "group")?;
        let m = groups::schur_multiplier(&g.0)?;
        write_json(out, serde_json::to_value(&m).expect("serializes"))
    })
}

/// Algebra from the JSON quiver format `{vertices, arrows, relations}`.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_algebra_from_json(json: *const c_char, out: *mut *mut EqAlgebra) -> EqStatus {
    guard(|| {
        let spec: AlgebraSpec = json_input(str_arg(json, "json")?, "algebra")?;
        let a = spec.build()?;
        write(out, Box::into_raw(Box::new(EqAlgebra(a))), "out")
    })
}

/// # Safety
/// `a` must come from [`eqtrace_algebra_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_algebra_free(a: *mut EqAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Total dimension; 0 for a NULL handle.
///
/// # Safety
/// `a` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_algebra_dim(a: *const EqAlgebra) -> usize {
    a.as_ref().map_or(0, |a| a.0.dim())
}

/// Whether `Ext^n` between simples is pure of weight `n` for all `n <= depth`.
///
/// # Safety
/// `a` must be a live handle; `koszul` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_algebra_is_koszul(a: *const EqAlgebra, depth: usize, koszul: *mut bool) -> EqStatus {
    guard(|| {
        let a = handle(a, "algebra")?;
        let cert = koszul::is_koszul(&a.0, depth)?;
        write(koszul, cert.koszul, "koszul")
    })
}

/// Orbit dimensions `{dim_g, centralizer, orbit, slice, rank_checked}` for a
/// weighted Dynkin diagram given as comma separated weights.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_orbit_dims_json(
    cartan_type: *const c_char,
    weights: *const c_char,
    out: *mut *mut c_char,
) -> EqStatus {
    guard(|| {
        let t: CartanType = str_arg(cartan_type, "cartan_type")?.parse()?;
        let d: WeightedDynkinDiagram = str_arg(weights, "weights")?.parse()?;
        let dims = orbits::orbit_dims(&t, &d)?;
        write_json(out, serde_json::to_value(&dims).expect("serializes"))
    })
}

/// Runs acceptance criterion `id` (1-based) and reports whether it passed.
///
/// # Safety
/// `passed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn eqtrace_acceptance_criterion(id: u32, passed: *mut bool) -> EqStatus {
    guard(|| {
        let r = acceptance::run_criterion(id as usize)?;
        write(passed, r.passed, "passed")
    })
}
