//! C ABI for the discalg library.
//!
//! Series travel as opaque `DiscalgSeries` handles created and released by
//! this library; every function returns a [`DiscalgStatus`] and writes its
//! results through out-pointers. The generated header lives at
//! `include/discalg.h`.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;

use discalg::duhamel;
use discalg::series::TruncatedSeries;
use discalg::spaces::{self, SpaceSpec};

/// Opaque handle to a truncated series.
pub struct DiscalgSeries(TruncatedSeries);

/// Status code returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiscalgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    ComputeFailed = 3,
}

/// Space selector for norm computations; `p` and `alpha` accompany it
/// where the space needs parameters.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiscalgSpace {
    Hardy = 0,
    Bergman = 1,
    Bloch = 2,
    LittleBloch = 3,
    Besov = 4,
    Sup = 5,
}

/// Norm value with its method tag (0 closed form, 1 quadrature, 2 grid
/// supremum) and error estimate.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct DiscalgNormResult {
    pub value: f64,
    pub error_estimate: f64,
    pub method: i32,
}

fn space_from(space: DiscalgSpace, p: f64, alpha: f64) -> SpaceSpec {
    match space {
        DiscalgSpace::Hardy => SpaceSpec::Hardy { p },
        DiscalgSpace::Bergman => SpaceSpec::Bergman { p, alpha },
        DiscalgSpace::Bloch => SpaceSpec::Bloch,
        DiscalgSpace::LittleBloch => SpaceSpec::LittleBloch,
        DiscalgSpace::Besov => SpaceSpec::Besov { p },
        DiscalgSpace::Sup => SpaceSpec::Sup,
    }
}

unsafe fn series_ref<'a>(p: *const DiscalgSeries) -> Option<&'a TruncatedSeries> {
    p.as_ref().map(|s| &s.0)
}

fn hand_out(out: *mut *mut DiscalgSeries, series: TruncatedSeries) -> DiscalgStatus {
    if out.is_null() {
        return DiscalgStatus::NullArgument;
    }
    unsafe { *out = Box::into_raw(Box::new(DiscalgSeries(series))) };
    DiscalgStatus::Ok
}

fn guarded(f: impl FnOnce() -> DiscalgStatus) -> DiscalgStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(DiscalgStatus::ComputeFailed)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn discalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds a series from `len` interleaved `(re, im)` coefficient pairs.
///
/// # Safety
/// `coeffs` must point to `2·len` readable doubles and `out` must be a
/// valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_new(
    coeffs: *const f64,
    len: usize,
    out: *mut *mut DiscalgSeries,
) -> DiscalgStatus {
    if coeffs.is_null() || out.is_null() {
        return DiscalgStatus::NullArgument;
    }
    let raw = std::slice::from_raw_parts(coeffs, 2 * len);
    let parsed: Vec<Complex64> = raw
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    match TruncatedSeries::new(parsed) {
        Ok(series) => hand_out(out, series),
        Err(_) => DiscalgStatus::InvalidArgument,
    }
}

/// The monomial `z^k` stored at `degree >= k`.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_monomial(
    k: usize,
    degree: usize,
    out: *mut *mut DiscalgSeries,
) -> DiscalgStatus {
    if k > degree {
        return DiscalgStatus::InvalidArgument;
    }
    hand_out(out, TruncatedSeries::monomial(k, degree))
}

/// Seeded random series with geometrically decaying Gaussian coefficients.
///
/// # Safety
/// `out` must be a valid destination pointer.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_random(
    seed: u64,
    degree: usize,
    decay: f64,
    scale: f64,
    out: *mut *mut DiscalgSeries,
) -> DiscalgStatus {
    match TruncatedSeries::random(seed, degree, decay, scale) {
        Ok(series) => hand_out(out, series),
        Err(_) => DiscalgStatus::InvalidArgument,
    }
}

/// Releases a handle created by this library. Null is ignored.
///
/// # Safety
/// `series` must have been produced by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_free(series: *mut DiscalgSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// # Safety
/// `series` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_degree(
    series: *const DiscalgSeries,
    out: *mut usize,
) -> DiscalgStatus {
    let (Some(s), false) = (series_ref(series), out.is_null()) else {
        return DiscalgStatus::NullArgument;
    };
    *out = s.degree();
    DiscalgStatus::Ok
}

/// Reads coefficient `k` into `(out_re, out_im)`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_coeff(
    series: *const DiscalgSeries,
    k: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> DiscalgStatus {
    let (Some(s), false, false) = (series_ref(series), out_re.is_null(), out_im.is_null()) else {
        return DiscalgStatus::NullArgument;
    };
    if k > s.degree() {
        return DiscalgStatus::InvalidArgument;
    }
    let c = s.coeff(k);
    *out_re = c.re;
    *out_im = c.im;
    DiscalgStatus::Ok
}

unsafe fn binary_op(
    a: *const DiscalgSeries,
    b: *const DiscalgSeries,
    out: *mut *mut DiscalgSeries,
    op: fn(&TruncatedSeries, &TruncatedSeries) -> TruncatedSeries,
) -> DiscalgStatus {
    let (Some(a), Some(b)) = (series_ref(a), series_ref(b)) else {
        return DiscalgStatus::NullArgument;
    };
    guarded(|| hand_out(out, op(a, b)))
}

/// Coefficientwise sum, truncated to the smaller degree.
///
/// # Safety
/// All pointers must be valid handles / destinations.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_add(
    a: *const DiscalgSeries,
    b: *const DiscalgSeries,
    out: *mut *mut DiscalgSeries,
) -> DiscalgStatus {
    binary_op(a, b, out, |a, b| a.add(b))
}

/// Cauchy product, truncated to the smaller degree.
///
/// # Safety
/// All pointers must be valid handles / destinations.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_mul(
    a: *const DiscalgSeries,
    b: *const DiscalgSeries,
    out: *mut *mut DiscalgSeries,
) -> DiscalgStatus {
    binary_op(a, b, out, |a, b| a.cauchy_mul(b))
}

/// Duhamel product, truncated to the smaller degree.
///
/// # Safety
/// All pointers must be valid handles / destinations.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_duhamel(
    a: *const DiscalgSeries,
    b: *const DiscalgSeries,
    out: *mut *mut DiscalgSeries,
) -> DiscalgStatus {
    binary_op(a, b, out, duhamel::duhamel)
}

/// Taylor coefficients of `a∘b` through the larger degree.
///
/// # Safety
/// All pointers must be valid handles / destinations.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_compose(
    a: *const DiscalgSeries,
    b: *const DiscalgSeries,
    out: *mut *mut DiscalgSeries,
) -> DiscalgStatus {
    binary_op(a, b, out, |a, b| a.compose(b))
}

/// Termwise derivative.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_derivative(
    series: *const DiscalgSeries,
    out: *mut *mut DiscalgSeries,
) -> DiscalgStatus {
    let Some(s) = series_ref(series) else {
        return DiscalgStatus::NullArgument;
    };
    hand_out(out, s.derivative())
}

/// Horner evaluation at `re + i·im`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn discalg_series_evaluate(
    series: *const DiscalgSeries,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> DiscalgStatus {
    let (Some(s), false, false) = (series_ref(series), out_re.is_null(), out_im.is_null()) else {
        return DiscalgStatus::NullArgument;
    };
    let v = s.evaluate(Complex64::new(re, im));
    *out_re = v.re;
    *out_im = v.im;
    DiscalgStatus::Ok
}

/// Norm of the series in the selected space; `p`/`alpha` are read only
/// where the space uses them.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn discalg_norm(
    series: *const DiscalgSeries,
    space: DiscalgSpace,
    p: f64,
    alpha: f64,
    out: *mut DiscalgNormResult,
) -> DiscalgStatus {
    let (Some(s), false) = (series_ref(series), out.is_null()) else {
        return DiscalgStatus::NullArgument;
    };
    guarded(|| match spaces::norm(s, &space_from(space, p, alpha)) {
        Ok(n) => {
            *out = DiscalgNormResult {
                value: n.value,
                error_estimate: n.error_estimate,
                method: match n.method {
                    spaces::NormMethod::ClosedForm => 0,
                    spaces::NormMethod::Quadrature => 1,
                    spaces::NormMethod::GridSup => 2,
                },
            };
            DiscalgStatus::Ok
        }
        Err(_) => DiscalgStatus::InvalidArgument,
    })
}

/// Worst Duhamel-multiplicativity defect of composition by `phi` over
/// monomial pairs up to `basis_degree`; writes the maximum residual and
/// whether it clears `tol`.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn discalg_duhamel_residual_max(
    phi: *const DiscalgSeries,
    basis_degree: usize,
    tol: f64,
    out_max: *mut f64,
    out_multiplicative: *mut bool,
) -> DiscalgStatus {
    let (Some(phi), false, false) = (
        series_ref(phi),
        out_max.is_null(),
        out_multiplicative.is_null(),
    ) else {
        return DiscalgStatus::NullArgument;
    };
    guarded(
        || match duhamel::duhamel_residual(phi, &SpaceSpec::Sup, basis_degree, tol) {
            Ok(r) => {
                *out_max = r.max_residual;
                *out_multiplicative = r.verdict;
                DiscalgStatus::Ok
            }
            Err(_) => DiscalgStatus::InvalidArgument,
        },
    )
}

/// Linear-symbol classification: multiplicative iff every coefficient
/// other than the linear one vanishes within `tol` (relative to the
/// coefficient scale). `out_witness_index` receives the worst offending
/// index, or -1 when multiplicative.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn discalg_classify_linear_symbol(
    phi: *const DiscalgSeries,
    tol: f64,
    out_multiplicative: *mut bool,
    out_witness_index: *mut isize,
) -> DiscalgStatus {
    let (Some(phi), false, false) = (
        series_ref(phi),
        out_multiplicative.is_null(),
        out_witness_index.is_null(),
    ) else {
        return DiscalgStatus::NullArgument;
    };
    guarded(|| {
        let cls = duhamel::classify_duhamel_multiplicative(phi, tol);
        *out_multiplicative = cls.multiplicative;
        *out_witness_index = cls.witness_index.map_or(-1, |k| k as isize);
        DiscalgStatus::Ok
    })
}
