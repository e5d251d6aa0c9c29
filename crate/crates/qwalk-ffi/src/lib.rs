//! C ABI for the qwalk toolkit: opaque walk handles, status codes, and a
//! handful of batch helpers. The header `include/qwalk.h` is generated from
//! this file by cbindgen at build time.
//!
//! Conventions: every fallible function returns a [`QwStatus`] and writes
//! results through out-pointers; handles from [`qw_walk_new`] are released
//! with [`qw_walk_free`] and must not be used afterwards.

use num_rational::BigRational;
use qwalk::classical::{self, ClassicalField};
use qwalk::coin::CoinField;
use qwalk::evolution::{self, WalkState};
use qwalk::series;
use qwalk::theory;
use qwalk::verify;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QwStatus {
    Ok = 0,
    /// A parameter is out of range or not finite.
    InvalidArgument = 1,
    /// A required pointer argument is null.
    NullPointer = 2,
    /// The caller's buffer cannot hold the requested data.
    BufferTooSmall = 3,
}

/// Walk families exposed through the ABI.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QwModel {
    /// Inhomogeneous walk with origin coin (1/√2)[[1, e^iω], [e^-iω, -1]].
    Eq22 = 0,
    /// Companion walk with origin coin (1/√2)[[e^iω, 1], [1, -e^-iω]].
    Eq21 = 1,
    /// Homogeneous Hadamard walk (ω is ignored).
    Hadamard = 2,
}

/// Opaque walk handle: a coin field plus the current state vector.
pub struct QwWalk {
    field: CoinField,
    state: WalkState,
}

fn field_for(model: QwModel, omega: f64) -> Option<CoinField> {
    if !omega.is_finite() {
        return None;
    }
    Some(match model {
        QwModel::Eq22 => CoinField::eq22(omega),
        QwModel::Eq21 => CoinField::eq21(omega),
        QwModel::Hadamard => CoinField::Hadamard,
    })
}

/// Creates a walk in its initial state and stores the handle in `out_walk`.
///
/// # Safety
/// `out_walk` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_new(
    model: QwModel,
    omega: f64,
    out_walk: *mut *mut QwWalk,
) -> QwStatus {
    if out_walk.is_null() {
        return QwStatus::NullPointer;
    }
    let Some(field) = field_for(model, omega) else {
        return QwStatus::InvalidArgument;
    };
    let walk = Box::new(QwWalk {
        field,
        state: evolution::initial_state(),
    });
    unsafe { *out_walk = Box::into_raw(walk) };
    QwStatus::Ok
}

/// Releases a handle from [`qw_walk_new`]. Null is a no-op.
///
/// # Safety
/// `walk` must be null or a handle from [`qw_walk_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_free(walk: *mut QwWalk) {
    if !walk.is_null() {
        drop(unsafe { Box::from_raw(walk) });
    }
}

/// Advances the walk by `steps` time steps.
///
/// # Safety
/// `walk` must be a live handle from [`qw_walk_new`].
#[no_mangle]
pub unsafe extern "C" fn qw_walk_step(walk: *mut QwWalk, steps: u64) -> QwStatus {
    let Some(walk) = (unsafe { walk.as_mut() }) else {
        return QwStatus::NullPointer;
    };
    for _ in 0..steps {
        walk.state = evolution::step(&walk.state, &walk.field)
            .expect("builtin coin fields are total");
    }
    QwStatus::Ok
}

/// Current time of the walk; 0 for a null handle.
///
/// # Safety
/// `walk` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_time(walk: *const QwWalk) -> u64 {
    unsafe { walk.as_ref() }.map_or(0, |w| w.state.time() as u64)
}

/// Probability of finding the walker at the origin at the current time.
///
/// # Safety
/// `walk` must be a live handle; `out` must point to a writable double.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_return_probability(
    walk: *const QwWalk,
    out: *mut f64,
) -> QwStatus {
    let Some(walk) = (unsafe { walk.as_ref() }) else {
        return QwStatus::NullPointer;
    };
    if out.is_null() {
        return QwStatus::NullPointer;
    }
    unsafe { *out = walk.state.return_probability() };
    QwStatus::Ok
}

/// Origin amplitude components (left/right chirality, real/imaginary).
///
/// # Safety
/// `walk` must be a live handle; the four out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_origin_amplitude(
    walk: *const QwWalk,
    l_re: *mut f64,
    l_im: *mut f64,
    r_re: *mut f64,
    r_im: *mut f64,
) -> QwStatus {
    let Some(walk) = (unsafe { walk.as_ref() }) else {
        return QwStatus::NullPointer;
    };
    if l_re.is_null() || l_im.is_null() || r_re.is_null() || r_im.is_null() {
        return QwStatus::NullPointer;
    }
    let amp = walk.state.amplitude(0);
    unsafe {
        *l_re = amp.l.re;
        *l_im = amp.l.im;
        *r_re = amp.r.re;
        *r_im = amp.r.im;
    }
    QwStatus::Ok
}

/// Copies the position distribution into `buffer`: `2·time + 1` entries for
/// positions -time..=time.
///
/// # Safety
/// `walk` must be a live handle; `buffer` must hold at least `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn qw_walk_distribution(
    walk: *const QwWalk,
    buffer: *mut f64,
    len: usize,
) -> QwStatus {
    let Some(walk) = (unsafe { walk.as_ref() }) else {
        return QwStatus::NullPointer;
    };
    if buffer.is_null() {
        return QwStatus::NullPointer;
    }
    let t = walk.state.time() as i64;
    let needed = (2 * t + 1) as usize;
    if len < needed {
        return QwStatus::BufferTooSmall;
    }
    let dist = walk.state.distribution();
    let out = unsafe { std::slice::from_raw_parts_mut(buffer, needed) };
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = dist.prob_at(i as i64 - t);
    }
    QwStatus::Ok
}

/// The localization limit c(ω) of the inhomogeneous walk.
#[no_mangle]
pub extern "C" fn qw_localization_constant(omega: f64) -> f64 {
    theory::localization_constant(omega)
}

/// Mean of c(ω) over uniformly distributed ω, (25 - 7√5)/25.
#[no_mangle]
pub extern "C" fn qw_localization_mean_uniform() -> f64 {
    theory::expected_c_uniform()
}

/// Fills `buffer[t]` with the return probability at time t for
/// t = 0..=max_time in one sweep.
///
/// # Safety
/// `buffer` must hold at least `len` doubles with `len > max_time`.
#[no_mangle]
pub unsafe extern "C" fn qw_return_probabilities(
    model: QwModel,
    omega: f64,
    max_time: u64,
    buffer: *mut f64,
    len: usize,
) -> QwStatus {
    if buffer.is_null() {
        return QwStatus::NullPointer;
    }
    let Some(field) = field_for(model, omega) else {
        return QwStatus::InvalidArgument;
    };
    let needed = max_time as usize + 1;
    if len < needed {
        return QwStatus::BufferTooSmall;
    }
    let history =
        evolution::return_history(&field, max_time as usize).expect("builtin coin fields");
    unsafe { std::slice::from_raw_parts_mut(buffer, needed) }.copy_from_slice(&history);
    QwStatus::Ok
}

/// Classical comparator: `buffer[t]` gets the classical return probability
/// at time t, with left probability `p0` at the origin and `p` elsewhere.
///
/// # Safety
/// `buffer` must hold at least `len` doubles with `len > max_time`.
#[no_mangle]
pub unsafe extern "C" fn qw_classical_return_probabilities(
    p0: f64,
    p: f64,
    max_time: u64,
    buffer: *mut f64,
    len: usize,
) -> QwStatus {
    if buffer.is_null() {
        return QwStatus::NullPointer;
    }
    let Ok(field) = ClassicalField::new(p0, p) else {
        return QwStatus::InvalidArgument;
    };
    let needed = max_time as usize + 1;
    if len < needed {
        return QwStatus::BufferTooSmall;
    }
    let history = classical::classical_return_history(&field, max_time as usize);
    unsafe { std::slice::from_raw_parts_mut(buffer, needed) }.copy_from_slice(&history);
    QwStatus::Ok
}

/// First-return coefficients r*_1..r*_len as doubles (exact dyadic values).
///
/// # Safety
/// `buffer` must hold at least `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn qw_r_star_coefficients(buffer: *mut f64, len: usize) -> QwStatus {
    if buffer.is_null() {
        return QwStatus::NullPointer;
    }
    if len == 0 {
        return QwStatus::Ok;
    }
    let r = series::r_star_series::<BigRational>(len);
    let out = unsafe { std::slice::from_raw_parts_mut(buffer, len) };
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = series::Coeff::to_f64(&r.coeff(i + 1));
    }
    QwStatus::Ok
}

/// Runs the registered invariant suite. `tolerance` overrides the
/// floating-point checks when positive; pass 0 for the defaults. Writes the
/// number of failed checks to `out_failures` and returns `Ok` even when
/// checks fail (the failure count carries the verdict).
///
/// # Safety
/// `out_failures` must point to a writable u32.
#[no_mangle]
pub unsafe extern "C" fn qw_verify(tolerance: f64, out_failures: *mut u32) -> QwStatus {
    if out_failures.is_null() {
        return QwStatus::NullPointer;
    }
    if !tolerance.is_finite() || tolerance < 0.0 {
        return QwStatus::InvalidArgument;
    }
    let override_tol = if tolerance > 0.0 { Some(tolerance) } else { None };
    let failures = verify::run_all(override_tol)
        .iter()
        .filter(|r| !r.passed)
        .count();
    unsafe { *out_failures = failures as u32 };
    QwStatus::Ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use std::ptr;

    #[test]
    fn walk_lifecycle_matches_library() {
        unsafe {
            let mut walk: *mut QwWalk = ptr::null_mut();
            assert_eq!(qw_walk_new(QwModel::Eq22, PI, &mut walk), QwStatus::Ok);
            assert!(!walk.is_null());
            assert_eq!(qw_walk_step(walk, 8), QwStatus::Ok);
            assert_eq!(qw_walk_time(walk), 8);
            let mut p = 0.0;
            assert_eq!(qw_walk_return_probability(walk, &mut p), QwStatus::Ok);
            assert!((p - 170.0 / 256.0).abs() < 1e-12);
            qw_walk_free(walk);
        }
    }

    #[test]
    fn distribution_buffer_contract() {
        unsafe {
            let mut walk: *mut QwWalk = ptr::null_mut();
            assert_eq!(qw_walk_new(QwModel::Hadamard, 0.0, &mut walk), QwStatus::Ok);
            assert_eq!(qw_walk_step(walk, 1), QwStatus::Ok);
            let mut small = [0.0f64; 2];
            assert_eq!(
                qw_walk_distribution(walk, small.as_mut_ptr(), small.len()),
                QwStatus::BufferTooSmall
            );
            let mut buf = [0.0f64; 3];
            assert_eq!(
                qw_walk_distribution(walk, buf.as_mut_ptr(), buf.len()),
                QwStatus::Ok
            );
            assert!((buf[0] - 0.5).abs() < 1e-12);
            assert_eq!(buf[1], 0.0);
            assert!((buf[2] - 0.5).abs() < 1e-12);
            qw_walk_free(walk);
        }
    }

    #[test]
    fn null_and_invalid_arguments() {
        unsafe {
            assert_eq!(
                qw_walk_new(QwModel::Eq22, f64::NAN, &mut ptr::null_mut()),
                QwStatus::InvalidArgument
            );
            assert_eq!(
                qw_walk_new(QwModel::Eq22, 1.0, ptr::null_mut()),
                QwStatus::NullPointer
            );
            let mut p = 0.0;
            assert_eq!(
                qw_walk_return_probability(ptr::null(), &mut p),
                QwStatus::NullPointer
            );
            assert_eq!(qw_walk_time(ptr::null()), 0);
            qw_walk_free(ptr::null_mut());
            assert_eq!(
                qw_classical_return_probabilities(0.5, 1.5, 4, [0.0; 5].as_mut_ptr(), 5),
                QwStatus::InvalidArgument
            );
        }
    }

    #[test]
    fn batch_tables_known_values() {
        unsafe {
            let mut quantum = [0.0f64; 13];
            assert_eq!(
                qw_return_probabilities(QwModel::Eq22, PI, 12, quantum.as_mut_ptr(), 13),
                QwStatus::Ok
            );
            assert!((quantum[12] - 2600.0 / 4096.0).abs() < 1e-12);
            let mut had = [0.0f64; 13];
            assert_eq!(
                qw_return_probabilities(QwModel::Hadamard, 0.0, 12, had.as_mut_ptr(), 13),
                QwStatus::Ok
            );
            assert!((had[12] - 200.0 / 4096.0).abs() < 1e-12);
            let mut classical = [0.0f64; 5];
            assert_eq!(
                qw_classical_return_probabilities(0.5, 0.5, 4, classical.as_mut_ptr(), 5),
                QwStatus::Ok
            );
            assert!((classical[4] - 6.0 / 16.0).abs() < 1e-15);
        }
    }

    #[test]
    fn r_star_and_constants() {
        unsafe {
            let mut r = [0.0f64; 11];
            assert_eq!(qw_r_star_coefficients(r.as_mut_ptr(), 11), QwStatus::Ok);
            assert_eq!(r[0], -1.0);
            assert_eq!(r[2], 0.5);
            assert_eq!(r[6], -0.125);
            assert_eq!(r[10], 0.0625);
        }
        assert!((qw_localization_constant(PI) - 0.64).abs() < 1e-15);
        assert!((qw_localization_mean_uniform() - 0.373_900_966_300_059).abs() < 1e-15);
    }

    #[test]
    fn verify_through_the_abi() {
        unsafe {
            let mut failures = u32::MAX;
            assert_eq!(qw_verify(0.0, &mut failures), QwStatus::Ok);
            assert_eq!(failures, 0);
            assert_eq!(qw_verify(-1.0, &mut failures), QwStatus::InvalidArgument);
            assert_eq!(qw_verify(1e-20, &mut failures), QwStatus::Ok);
            assert!(failures > 0);
        }
    }
}
