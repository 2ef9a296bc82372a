//! C ABI for poskit.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json` or
//! builder functions and released with the matching `*_free`. Every fallible
//! function returns a [`PoskitStatus`] and writes its result through an out
//! pointer; on failure `poskit_last_error` describes what went wrong.
//! Strings returned by the library must be released with
//! `poskit_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;

use poskit::blowup::{
    blowup_mori_generators, blowup_nef_generators, build_blowup, is_nef_on_blowup,
    seshadri_via_blowup,
};
use poskit::bundles::{
    ample_check_bundle, nef_check_bundle, seshadri_bundle, BundleBase, SplittingData,
};
use poskit::cones::{contains, dual_cone, RationalCone};
use poskit::flag::{build_flag_model, build_projective_space_model, CartanType};
use poskit::model::{
    ample_check_linebundle, nef_check_linebundle, seshadri_line, DivisorClass, VarietyModel,
};
use poskit::toric::{nef_check_toric, seshadri_toric_fixed_point, Fan, ToricDivisor};
use poskit::{Error, Status};

/// Result codes. The first four match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoskitStatus {
    Ok = 0,
    InputError = 2,
    Refused = 3,
    InternalError = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    /// The exact result does not fit in a 64-bit numerator/denominator.
    Overflow = 7,
}

/// Exact rational `num / den` with `den > 0`, in lowest terms.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoskitRational {
    pub num: i64,
    pub den: i64,
}

/// Opaque handle to a validated variety model.
pub struct PoskitModel(VarietyModel);

/// Opaque handle to a validated smooth complete fan.
pub struct PoskitFan(Fan);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Failure(PoskitStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.status() {
            Status::Ok => PoskitStatus::Ok,
            Status::InputError => PoskitStatus::InputError,
            Status::Refused => PoskitStatus::Refused,
            Status::InternalError => PoskitStatus::InternalError,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(PoskitStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PoskitStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PoskitStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            PoskitStatus::InternalError
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(PoskitStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn model_ref<'a>(m: *const PoskitModel) -> Result<&'a VarietyModel, Failure> {
    m.as_ref().map(|m| &m.0).ok_or_else(|| null("model"))
}

unsafe fn fan_ref<'a>(f: *const PoskitFan) -> Result<&'a Fan, Failure> {
    f.as_ref().map(|f| &f.0).ok_or_else(|| null("fan"))
}

fn to_c_rational(q: &BigRational) -> Result<PoskitRational, Failure> {
    match (q.numer().to_i64(), q.denom().to_i64()) {
        (Some(num), Some(den)) => Ok(PoskitRational { num, den }),
        _ => Err(Failure(
            PoskitStatus::Overflow,
            format!("{q} does not fit in 64 bits"),
        )),
    }
}

fn from_c_rational(q: &PoskitRational) -> Result<BigRational, Failure> {
    if q.den == 0 {
        return Err(Failure(PoskitStatus::InputError, "zero denominator".into()));
    }
    Ok(BigRational::new(BigInt::from(q.num), BigInt::from(q.den)))
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(PoskitStatus::InternalError, "string contains NUL".into()))
}

/// Message for the last failing call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn poskit_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn poskit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a variety model from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_from_json(
    json: *const c_char,
    out: *mut *mut PoskitModel,
) -> PoskitStatus {
    guard(|| {
        let model = VarietyModel::from_json_str(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(PoskitModel(model))), "out")
    })
}

/// Model of `G/B` for a Cartan type such as `"A3"`.
///
/// # Safety
/// `cartan_type` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_flag(
    cartan_type: *const c_char,
    out: *mut *mut PoskitModel,
) -> PoskitStatus {
    guard(|| {
        let t: CartanType = read_str(cartan_type, "cartan_type")?.parse()?;
        let model = build_flag_model(t)?;
        write_out(out, Box::into_raw(Box::new(PoskitModel(model))), "out")
    })
}

/// Model of `P^n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_projective(
    n: usize,
    out: *mut *mut PoskitModel,
) -> PoskitStatus {
    guard(|| {
        let model = build_projective_space_model(n)?;
        write_out(out, Box::into_raw(Box::new(PoskitModel(model))), "out")
    })
}

/// # Safety
/// `model` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_free(model: *mut PoskitModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Picard rank of the model, or 0 for a NULL handle.
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_rank(model: *const PoskitModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.rank())
}

/// # Safety
/// `model` must be a live handle; `out` must be writable. The string must be
/// released with `poskit_string_free`.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_to_json(
    model: *const PoskitModel,
    out: *mut *mut c_char,
) -> PoskitStatus {
    guard(|| {
        let json = serde_json::to_string(model_ref(model)?)
            .map_err(|e| Failure(PoskitStatus::InternalError, e.to_string()))?;
        write_out(out, into_c_string(json)?, "out")
    })
}

unsafe fn divisor(coeffs: *const i64, len: usize) -> Result<DivisorClass, Failure> {
    Ok(DivisorClass::new(
        read_slice(coeffs, len, "coeffs")?.to_vec(),
    ))
}

/// Whether `L = sum coeffs[i] D_i` is nef.
///
/// # Safety
/// `coeffs` must point to `len` integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_nef(
    model: *const PoskitModel,
    coeffs: *const i64,
    len: usize,
    out: *mut bool,
) -> PoskitStatus {
    guard(|| {
        let nef = nef_check_linebundle(model_ref(model)?, &divisor(coeffs, len)?)?;
        write_out(out, nef, "out")
    })
}

/// # Safety
/// As for `poskit_model_nef`.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_ample(
    model: *const PoskitModel,
    coeffs: *const i64,
    len: usize,
    out: *mut bool,
) -> PoskitStatus {
    guard(|| {
        let ample = ample_check_linebundle(model_ref(model)?, &divisor(coeffs, len)?)?;
        write_out(out, ample, "out")
    })
}

/// Seshadri constant of an ample line bundle at the sink.
///
/// # Safety
/// As for `poskit_model_nef`.
#[no_mangle]
pub unsafe extern "C" fn poskit_model_seshadri(
    model: *const PoskitModel,
    coeffs: *const i64,
    len: usize,
    out: *mut PoskitRational,
) -> PoskitStatus {
    guard(|| {
        let eps = seshadri_line(model_ref(model)?, &divisor(coeffs, len)?)?;
        write_out(out, to_c_rational(&eps)?, "out")
    })
}

/// Seshadri constant computed on the blow-up at the sink.
///
/// # Safety
/// As for `poskit_model_nef`.
#[no_mangle]
pub unsafe extern "C" fn poskit_blowup_seshadri(
    model: *const PoskitModel,
    coeffs: *const i64,
    len: usize,
    out: *mut PoskitRational,
) -> PoskitStatus {
    guard(|| {
        let bm = build_blowup(model_ref(model)?);
        let eps = seshadri_via_blowup(&bm, &divisor(coeffs, len)?)?;
        write_out(out, to_c_rational(&eps)?, "out")
    })
}

/// Whether `Bl*(sum b_i D_i) - c E` is nef on the blow-up at the sink.
///
/// # Safety
/// `b` must point to `len` rationals; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_blowup_is_nef(
    model: *const PoskitModel,
    b: *const PoskitRational,
    len: usize,
    c: PoskitRational,
    out: *mut bool,
) -> PoskitStatus {
    guard(|| {
        let bm = build_blowup(model_ref(model)?);
        let b = read_slice(b, len, "b")?
            .iter()
            .map(from_c_rational)
            .collect::<Result<Vec<_>, _>>()?;
        let nef = is_nef_on_blowup(&bm, &b, &from_c_rational(&c)?)?;
        write_out(out, nef, "out")
    })
}

/// Nef cone (`mori == false`) or Mori cone (`mori == true`) of the blow-up,
/// as cone JSON.
///
/// # Safety
/// `model` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_blowup_cone_json(
    model: *const PoskitModel,
    mori: bool,
    out: *mut *mut c_char,
) -> PoskitStatus {
    guard(|| {
        let bm = build_blowup(model_ref(model)?);
        let cone = if mori {
            blowup_mori_generators(&bm)
        } else {
            blowup_nef_generators(&bm)
        };
        write_out(out, into_c_string(cone.to_json().to_string())?, "out")
    })
}

/// Parses and validates a fan from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_fan_from_json(
    json: *const c_char,
    out: *mut *mut PoskitFan,
) -> PoskitStatus {
    guard(|| {
        let fan = Fan::from_json_str(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(PoskitFan(fan))), "out")
    })
}

/// # Safety
/// `fan` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn poskit_fan_free(fan: *mut PoskitFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Number of walls (torus-invariant curves), or 0 for a NULL handle.
///
/// # Safety
/// `fan` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn poskit_fan_wall_count(fan: *const PoskitFan) -> usize {
    fan.as_ref().map_or(0, |f| f.0.walls().len())
}

/// # Safety
/// `coeffs` must point to `len` integers (one per ray); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_toric_nef(
    fan: *const PoskitFan,
    coeffs: *const i64,
    len: usize,
    out: *mut bool,
) -> PoskitStatus {
    guard(|| {
        let d = ToricDivisor::new(read_slice(coeffs, len, "coeffs")?.to_vec());
        write_out(out, nef_check_toric(fan_ref(fan)?, &d)?, "out")
    })
}

/// Seshadri constant of a nef divisor at the fixed point of maximal cone `cone`.
///
/// # Safety
/// As for `poskit_toric_nef`.
#[no_mangle]
pub unsafe extern "C" fn poskit_toric_seshadri(
    fan: *const PoskitFan,
    coeffs: *const i64,
    len: usize,
    cone: usize,
    out: *mut PoskitRational,
) -> PoskitStatus {
    guard(|| {
        let d = ToricDivisor::new(read_slice(coeffs, len, "coeffs")?.to_vec());
        let eps = seshadri_toric_fixed_point(fan_ref(fan)?, &d, cone)?;
        write_out(out, to_c_rational(&eps)?, "out")
    })
}

/// Which bundle query to run.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoskitBundleQuery {
    Nef = 0,
    Ample = 1,
}

unsafe fn splitting(json: *const c_char) -> Result<SplittingData, Failure> {
    Ok(SplittingData::from_json_str(read_str(
        json,
        "splitting json",
    )?)?)
}

/// Nef or ample test for a bundle on a simple G-variety given by splitting
/// data JSON.
///
/// # Safety
/// `splitting_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_bundle_check(
    model: *const PoskitModel,
    splitting_json: *const c_char,
    query: PoskitBundleQuery,
    out: *mut bool,
) -> PoskitStatus {
    guard(|| {
        let base = BundleBase::Simple(model_ref(model)?);
        let s = splitting(splitting_json)?;
        let answer = match query {
            PoskitBundleQuery::Nef => nef_check_bundle(&base, &s)?,
            PoskitBundleQuery::Ample => ample_check_bundle(&base, &s)?,
        };
        write_out(out, answer, "out")
    })
}

/// Seshadri constant at the sink of a nef bundle on a simple G-variety.
///
/// # Safety
/// `splitting_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_bundle_seshadri(
    model: *const PoskitModel,
    splitting_json: *const c_char,
    out: *mut PoskitRational,
) -> PoskitStatus {
    guard(|| {
        let base = BundleBase::Simple(model_ref(model)?);
        let eps = seshadri_bundle(&base, &splitting(splitting_json)?, None)?;
        write_out(out, to_c_rational(&eps)?, "out")
    })
}

/// Nefness of a torus-equivariant bundle given by splitting data on walls.
///
/// # Safety
/// `splitting_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_toric_bundle_nef(
    fan: *const PoskitFan,
    splitting_json: *const c_char,
    out: *mut bool,
) -> PoskitStatus {
    guard(|| {
        let base = BundleBase::Toric(fan_ref(fan)?);
        write_out(
            out,
            nef_check_bundle(&base, &splitting(splitting_json)?)?,
            "out",
        )
    })
}

/// Seshadri constant of a nef torus-equivariant bundle at the fixed point of
/// maximal cone `cone`.
///
/// # Safety
/// `splitting_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_toric_bundle_seshadri(
    fan: *const PoskitFan,
    splitting_json: *const c_char,
    cone: usize,
    out: *mut PoskitRational,
) -> PoskitStatus {
    guard(|| {
        let base = BundleBase::Toric(fan_ref(fan)?);
        let eps = seshadri_bundle(&base, &splitting(splitting_json)?, Some(cone))?;
        write_out(out, to_c_rational(&eps)?, "out")
    })
}

fn parse_cone(json: &str) -> Result<RationalCone, Failure> {
    let value: serde_json::Value = serde_json::from_str(json).map_err(|e| {
        Failure(
            PoskitStatus::InputError,
            format!("malformed cone JSON: {e}"),
        )
    })?;
    Ok(RationalCone::from_json(&value)?)
}

/// Dual of a cone given as JSON, returned as JSON.
///
/// # Safety
/// `cone_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_cone_dual_json(
    cone_json: *const c_char,
    out: *mut *mut c_char,
) -> PoskitStatus {
    guard(|| {
        let dual = dual_cone(&parse_cone(read_str(cone_json, "cone json")?)?)?;
        write_out(out, into_c_string(dual.to_json().to_string())?, "out")
    })
}

/// Whether the vector `v` lies in the cone given as JSON.
///
/// # Safety
/// `cone_json` must be a NUL-terminated string; `v` must point to `len`
/// rationals; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn poskit_cone_contains(
    cone_json: *const c_char,
    v: *const PoskitRational,
    len: usize,
    out: *mut bool,
) -> PoskitStatus {
    guard(|| {
        let cone = parse_cone(read_str(cone_json, "cone json")?)?;
        let v = read_slice(v, len, "v")?
            .iter()
            .map(from_c_rational)
            .collect::<Result<Vec<_>, _>>()?;
        write_out(out, contains(&cone, &v)?, "out")
    })
}
