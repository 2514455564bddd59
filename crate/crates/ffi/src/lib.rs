//! C ABI over the specschrod eigensolver.
//!
//! Conventions, in the order a binding author needs them:
//!
//! * Handles (`SpecschrodOperator`, `SpecschrodSolution`) are opaque. Every
//!   handle returned through an out-parameter is owned by the caller and
//!   must be released with the matching `_free` function, exactly once.
//! * Every fallible function returns a `SpecschrodStatus`; 0 is success.
//!   On failure the out-parameters are untouched and a message is stored in
//!   thread-local storage, readable via `specschrod_last_error_message`.
//! * No function unwinds across the boundary. A panic inside the library is
//!   caught and reported as `SPECSCHROD_STATUS_PANIC`.
//! * Buffers are caller-allocated. Functions that fill one take its length
//!   and refuse (BUFFER_TOO_SMALL) rather than truncate.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use specschrod::diagnostics::absolute_drift;
use specschrod::eig::{eig_general, eig_symmetric, EigConfig, EigenSolution};
use specschrod::maps::AlgebraicMap;
use specschrod::operator::{
    assemble_mapped_halfline, assemble_regular_dirichlet, assemble_sinc_line, DiscreteOperator,
};
use specschrod::problems;
use specschrod::Error;

/// Result code of every fallible call. Matches the CLI exit codes where a
/// category exists there; NULL_POINTER, PANIC and BUFFER_TOO_SMALL are
/// boundary-only.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecschrodStatus {
    Ok = 0,
    NullPointer = 1,
    Usage = 2,
    InvalidArgument = 3,
    Domain = 4,
    Assembly = 5,
    Contract = 6,
    Convergence = 7,
    Unsupported = 8,
    DivisionGuard = 9,
    Io = 10,
    Panic = 11,
    BufferTooSmall = 12,
}

/// Assembled discretization of one problem. Opaque.
pub struct SpecschrodOperator {
    inner: DiscreteOperator,
}

/// Computed spectrum in the library's normal form: sorted ascending by
/// (re, im), unit real-part vector columns, relative residuals. Opaque.
pub struct SpecschrodSolution {
    inner: EigenSolution,
    /// Interior grid size of the operator the spectrum came from; the
    /// length of each vector column.
    size: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    // A NUL inside the message would truncate it; replace rather than fail.
    let owned = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = owned);
}

fn status_of(err: &Error) -> SpecschrodStatus {
    set_error(&err.to_string());
    match err {
        Error::Usage(_) => SpecschrodStatus::Usage,
        Error::InvalidArgument(_) => SpecschrodStatus::InvalidArgument,
        Error::DomainError(_) => SpecschrodStatus::Domain,
        Error::AssemblyError { .. } => SpecschrodStatus::Assembly,
        Error::ContractViolation(_) => SpecschrodStatus::Contract,
        Error::ConvergenceError { .. } => SpecschrodStatus::Convergence,
        Error::Unsupported(_) => SpecschrodStatus::Unsupported,
        Error::DivisionGuard { .. } => SpecschrodStatus::DivisionGuard,
        Error::Io(_) => SpecschrodStatus::Io,
    }
}

/// Run `f` with panics converted to a status so nothing unwinds across the
/// C boundary.
fn guarded(f: impl FnOnce() -> SpecschrodStatus) -> SpecschrodStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic caught at the C boundary");
            SpecschrodStatus::Panic
        }
    }
}

macro_rules! require {
    ($ptr:expr) => {
        if $ptr.is_null() {
            set_error(concat!(stringify!($ptr), " is null"));
            return SpecschrodStatus::NullPointer;
        }
    };
}

fn emit_operator(
    out: *mut *mut SpecschrodOperator,
    op: specschrod::Result<DiscreteOperator>,
) -> SpecschrodStatus {
    match op {
        Ok(inner) => {
            let handle = Box::new(SpecschrodOperator { inner });
            unsafe { *out = Box::into_raw(handle) };
            SpecschrodStatus::Ok
        }
        Err(err) => status_of(&err),
    }
}

/// Library version as a static NUL-terminated string. Never null; do not
/// free.
#[no_mangle]
pub extern "C" fn specschrod_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message of the most recent failure on the calling thread, empty if none.
/// The pointer stays valid until the next failing call on the same thread;
/// do not free.
#[no_mangle]
pub extern "C" fn specschrod_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Assemble the Coffey-Evans potential `-2 beta cos(2x) + beta^2 sin^2(2x)`
/// on `(-pi/2, pi/2)` with Dirichlet ends, on an `n`-point Chebyshev grid.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_coffey_evans(
    beta: f64,
    n: usize,
    out: *mut *mut SpecschrodOperator,
) -> SpecschrodStatus {
    guarded(|| {
        require!(out);
        emit_operator(out, assemble_regular_dirichlet(&problems::coffey_evans(beta), n))
    })
}

/// Assemble the hydrogen radial problem `l(l+1)/x^2 - 1/x` on the half line,
/// algebraically mapped with parameter `c`, on an `n`-point Chebyshev grid.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_hydrogen(
    l: f64,
    n: usize,
    c: f64,
    out: *mut *mut SpecschrodOperator,
) -> SpecschrodStatus {
    guarded(|| {
        require!(out);
        let map = match AlgebraicMap::new(c) {
            Ok(m) => m,
            Err(err) => return status_of(&err),
        };
        emit_operator(out, assemble_mapped_halfline(&problems::hydrogen(l), &map, n))
    })
}

/// Assemble the decaying-Coulomb problem `l(l+1)/x^2 - 1/x + exp(-x)` on the
/// half line, algebraically mapped with parameter `c`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_coulomb_decay(
    l: f64,
    n: usize,
    c: f64,
    out: *mut *mut SpecschrodOperator,
) -> SpecschrodStatus {
    guarded(|| {
        require!(out);
        let map = match AlgebraicMap::new(c) {
            Ok(m) => m,
            Err(err) => return status_of(&err),
        };
        emit_operator(out, assemble_mapped_halfline(&problems::coulomb_decay(l), &map, n))
    })
}

/// Assemble the anharmonic oscillator `nu x^2 + mu x^4` on the real line
/// with an `n`-point sinc grid of step `h`. `mu > 0` is required.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_anharmonic(
    nu: f64,
    mu: f64,
    n: usize,
    h: f64,
    out: *mut *mut SpecschrodOperator,
) -> SpecschrodStatus {
    guarded(|| {
        require!(out);
        let pot = match problems::anharmonic(nu, mu) {
            Ok(p) => p,
            Err(err) => return status_of(&err),
        };
        emit_operator(out, assemble_sinc_line(&pot, n, h))
    })
}

/// Assemble the harmonic oscillator `x^2` on the real line with an `n`-point
/// sinc grid of step `h`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_harmonic(
    n: usize,
    h: f64,
    out: *mut *mut SpecschrodOperator,
) -> SpecschrodStatus {
    guarded(|| {
        require!(out);
        emit_operator(out, assemble_sinc_line(&problems::harmonic(), n, h))
    })
}

/// Interior matrix size of the operator: n for sinc grids, n - 2 for
/// Chebyshev grids (boundary rows deleted). Returns 0 for a null handle.
///
/// # Safety
/// `op` must be null or a live operator handle.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_size(op: *const SpecschrodOperator) -> usize {
    if op.is_null() {
        return 0;
    }
    (*op).inner.size()
}

/// Whether the assembled matrix is exactly symmetric (and the solve will
/// take the orthogonal path). Returns false for a null handle.
///
/// # Safety
/// `op` must be null or a live operator handle.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_is_symmetric(
    op: *const SpecschrodOperator,
) -> bool {
    if op.is_null() {
        return false;
    }
    (*op).inner.symmetric
}

/// Copy the physical abscissae of the interior grid into `buf`. `len` must
/// be at least `specschrod_operator_size(op)`.
///
/// # Safety
/// `op` must be a live operator handle and `buf` must point to at least
/// `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_nodes(
    op: *const SpecschrodOperator,
    buf: *mut f64,
    len: usize,
) -> SpecschrodStatus {
    guarded(|| {
        require!(op);
        require!(buf);
        let nodes = &(*op).inner.interior_nodes;
        if len < nodes.len() {
            set_error("node buffer shorter than the interior grid");
            return SpecschrodStatus::BufferTooSmall;
        }
        std::ptr::copy_nonoverlapping(nodes.as_ptr(), buf, nodes.len());
        SpecschrodStatus::Ok
    })
}

/// Release an operator handle. Null is a no-op.
///
/// # Safety
/// `op` must be null or a handle not freed before; it is dead afterwards.
#[no_mangle]
pub unsafe extern "C" fn specschrod_operator_free(op: *mut SpecschrodOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Compute the full spectrum of the operator with default solver settings,
/// taking the orthogonal path when the matrix is symmetric.
///
/// # Safety
/// `op` must be a live operator handle; `out` must be a valid pointer to
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solve(
    op: *const SpecschrodOperator,
    out: *mut *mut SpecschrodSolution,
) -> SpecschrodStatus {
    guarded(|| {
        require!(op);
        require!(out);
        let operator = &(*op).inner;
        let config = EigConfig::default();
        let solved = if operator.symmetric {
            eig_symmetric(operator, &config)
        } else {
            eig_general(operator, &config)
        };
        match solved {
            Ok(inner) => {
                let handle = Box::new(SpecschrodSolution {
                    size: operator.size(),
                    inner,
                });
                *out = Box::into_raw(handle);
                SpecschrodStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Number of eigenvalues in the solution (the matrix size). Returns 0 for a
/// null handle.
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solution_len(sol: *const SpecschrodSolution) -> usize {
    if sol.is_null() {
        return 0;
    }
    (*sol).inner.len()
}

/// Fetch eigenvalue `i` of the sorted spectrum as `(re, im)`.
///
/// # Safety
/// `sol` must be a live solution handle; `out_re` and `out_im` must point to
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solution_value(
    sol: *const SpecschrodSolution,
    i: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> SpecschrodStatus {
    guarded(|| {
        require!(sol);
        require!(out_re);
        require!(out_im);
        let values = &(*sol).inner.values;
        if i >= values.len() {
            set_error("eigenvalue index out of range");
            return SpecschrodStatus::InvalidArgument;
        }
        let (re, im) = values[i];
        *out_re = re;
        *out_im = im;
        SpecschrodStatus::Ok
    })
}

/// Fetch the relative residual `||A v - lambda v|| / ||A||_F` of pair `i`.
///
/// # Safety
/// `sol` must be a live solution handle; `out` must point to a writable
/// double.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solution_residual(
    sol: *const SpecschrodSolution,
    i: usize,
    out: *mut f64,
) -> SpecschrodStatus {
    guarded(|| {
        require!(sol);
        require!(out);
        let residuals = &(*sol).inner.residuals;
        if i >= residuals.len() {
            set_error("eigenvalue index out of range");
            return SpecschrodStatus::InvalidArgument;
        }
        *out = residuals[i];
        SpecschrodStatus::Ok
    })
}

/// Whether eigenvalue `i` is real within the solver's imaginary tolerance.
///
/// # Safety
/// `sol` must be a live solution handle; `out` must point to a writable
/// bool.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solution_is_real(
    sol: *const SpecschrodSolution,
    i: usize,
    out: *mut bool,
) -> SpecschrodStatus {
    guarded(|| {
        require!(sol);
        require!(out);
        let flags = &(*sol).inner.real_flags;
        if i >= flags.len() {
            set_error("eigenvalue index out of range");
            return SpecschrodStatus::InvalidArgument;
        }
        *out = flags[i];
        SpecschrodStatus::Ok
    })
}

/// Largest relative residual over the whole spectrum. NaN for a null
/// handle.
///
/// # Safety
/// `sol` must be null or a live solution handle.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solution_max_residual(
    sol: *const SpecschrodSolution,
) -> f64 {
    if sol.is_null() {
        return f64::NAN;
    }
    (*sol).inner.max_residual()
}

/// Copy eigenvector column `i` (unit norm, real part for complex pairs)
/// into `buf`. `len` must be at least the operator size.
///
/// # Safety
/// `sol` must be a live solution handle and `buf` must point to at least
/// `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solution_vector(
    sol: *const SpecschrodSolution,
    i: usize,
    buf: *mut f64,
    len: usize,
) -> SpecschrodStatus {
    guarded(|| {
        require!(sol);
        require!(buf);
        let handle = &*sol;
        if i >= handle.inner.len() {
            set_error("eigenvalue index out of range");
            return SpecschrodStatus::InvalidArgument;
        }
        if len < handle.size {
            set_error("vector buffer shorter than the grid");
            return SpecschrodStatus::BufferTooSmall;
        }
        let col = handle.inner.vectors.col(i);
        std::ptr::copy_nonoverlapping(col.as_ptr(), buf, col.len());
        SpecschrodStatus::Ok
    })
}

/// Copy the real-flagged eigenvalues, ascending, into `buf` and store how
/// many there are in `out_count`. Pass a null `buf` (len 0) to query the
/// count first; with a non-null `buf`, `len` must cover the full count.
///
/// # Safety
/// `sol` must be a live solution handle; `buf` must be null or point to at
/// least `len` writable doubles; `out_count` must point to a writable
/// size_t.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solution_real_values(
    sol: *const SpecschrodSolution,
    buf: *mut f64,
    len: usize,
    out_count: *mut usize,
) -> SpecschrodStatus {
    guarded(|| {
        require!(sol);
        require!(out_count);
        let values = (*sol).inner.real_values();
        *out_count = values.len();
        if buf.is_null() {
            return SpecschrodStatus::Ok;
        }
        if len < values.len() {
            set_error("value buffer shorter than the real eigenvalue count");
            return SpecschrodStatus::BufferTooSmall;
        }
        std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        SpecschrodStatus::Ok
    })
}

/// Per-index absolute drift `|lambda_j(a) - lambda_j(b)|` over the first
/// `ne` real eigenvalues of two solutions of the same problem at different
/// discretizations. `deltas` may be null; otherwise it receives `ne`
/// doubles. `out_max` receives the largest drift.
///
/// # Safety
/// `a` and `b` must be live solution handles; `deltas` must be null or
/// point to at least `ne` writable doubles; `out_max` must point to a
/// writable double.
#[no_mangle]
pub unsafe extern "C" fn specschrod_absolute_drift(
    a: *const SpecschrodSolution,
    b: *const SpecschrodSolution,
    ne: usize,
    deltas: *mut f64,
    out_max: *mut f64,
) -> SpecschrodStatus {
    guarded(|| {
        require!(a);
        require!(b);
        require!(out_max);
        let lam1 = (*a).inner.real_values();
        let lam2 = (*b).inner.real_values();
        match absolute_drift(&lam1, &lam2, ne) {
            Ok(report) => {
                if !deltas.is_null() {
                    for &(j, d) in &report.drift {
                        *deltas.add(j) = d;
                    }
                }
                *out_max = report.max_delta();
                SpecschrodStatus::Ok
            }
            Err(err) => status_of(&err),
        }
    })
}

/// Release a solution handle. Null is a no-op.
///
/// # Safety
/// `sol` must be null or a handle not freed before; it is dead afterwards.
#[no_mangle]
pub unsafe extern "C" fn specschrod_solution_free(sol: *mut SpecschrodSolution) {
    if !sol.is_null() {
        drop(Box::from_raw(sol));
    }
}
