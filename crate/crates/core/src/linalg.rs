//! Dense complex linear algebra helpers used throughout the crate.
//!
//! Everything here is a thin layer over LAPACK via `ndarray-linalg`. Inverses
//! are never formed explicitly: all rational operator expressions go through
//! LU solves with residual checks.

use ndarray::{concatenate, Array1, Array2, Axis};
use ndarray_linalg::{Eig, Eigh, Factorize, Solve, SVD, UPLO};
use num_complex::Complex64;

use crate::error::Error;
use crate::tol;

pub type CMat = Array2<Complex64>;
pub type CVec = Array1<Complex64>;

extern "C" {
    fn openblas_set_num_threads(num: core::ffi::c_int);
}

/// Pin the BLAS backend to one thread. OpenBLAS's parallel LU factorization
/// keeps large per-invocation buffers on the calling thread's stack and
/// overflows the 2 MiB default of spawned threads already at n ~ 100;
/// single-threaded kernels are heap-based and at the dense sizes this crate
/// targets the threading would buy nothing. Parallelism belongs to the
/// caller (sweeps fan out across operators, not inside them).
pub(crate) fn ensure_sequential_blas() {
    use std::sync::Once;
    static INIT: Once = Once::new();
    INIT.call_once(|| unsafe { openblas_set_num_threads(1) });
}

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

/// Conjugate transpose.
pub fn adjoint(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

pub fn from_real(m: &Array2<f64>) -> CMat {
    m.mapv(|x| Complex64::new(x, 0.0))
}

/// Repack into a fresh standard-layout array. Slicing can produce degenerate
/// strides (size-1 axes with stride 0) that the LAPACK bindings reject.
fn standardize(m: &CMat) -> CMat {
    Array2::from_shape_fn(m.raw_dim(), |ij| m[ij])
}

pub fn singular_values(m: &CMat) -> Result<Array1<f64>, Error> {
    ensure_sequential_blas();
    let (_, s, _) = standardize(m).svd(false, false)?;
    Ok(s)
}

/// Spectral norm (largest singular value); zero for empty matrices.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    singular_values(m)
        .map(|s| s.iter().copied().fold(0.0, f64::max))
        .unwrap_or(f64::NAN)
}

/// Two-norm condition number; `f64::INFINITY` for numerically singular input.
pub fn cond_2(m: &CMat) -> Result<f64, Error> {
    let s = singular_values(m)?;
    let smax = s.iter().copied().fold(0.0, f64::max);
    let smin = s.iter().copied().fold(f64::INFINITY, f64::min);
    if smin <= tol::RANK_TOL * smax {
        Ok(f64::INFINITY)
    } else {
        Ok(smax / smin)
    }
}

pub fn rank(m: &CMat, rel_tol: f64) -> Result<usize, Error> {
    let s = singular_values(m)?;
    let smax = s.iter().copied().fold(0.0, f64::max);
    Ok(s.iter().filter(|&&x| x > rel_tol * smax).count())
}

/// ||M - M^H||, spectral norm.
pub fn hermitian_defect(m: &CMat) -> f64 {
    spectral_norm(&(m - &adjoint(m)))
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + &adjoint(m)).mapv(|z| 0.5 * z)
}

/// Eigendecomposition of a general complex matrix: (eigenvalues, right
/// eigenvectors as columns).
pub fn eig(m: &CMat) -> Result<(CVec, CMat), Error> {
    ensure_sequential_blas();
    Ok(standardize(m).eig()?)
}

pub fn eigvals(m: &CMat) -> Result<CVec, Error> {
    ensure_sequential_blas();
    Ok(standardize(m).eig()?.0)
}

/// Eigendecomposition of a Hermitian matrix: ascending real eigenvalues and
/// orthonormal eigenvector columns.
///
/// The backend's Hermitian path hands LAPACK row-major data as if it were
/// column-major, so for complex input it effectively decomposes the
/// conjugate; feeding it the conjugated matrix yields eigenvectors of the
/// original (verified by the eigen-residual test below). Eigenvalues are
/// unaffected either way.
pub fn eigh(m: &CMat) -> Result<(Array1<f64>, CMat), Error> {
    ensure_sequential_blas();
    let conj = Array2::from_shape_fn(m.raw_dim(), |ij| m[ij].conj());
    Ok(conj.eigh(UPLO::Lower)?)
}

pub fn eigvalsh(m: &CMat) -> Result<Array1<f64>, Error> {
    Ok(eigh(m)?.0)
}

/// Solve `A X = B` column by column through one LU factorization, with a
/// residual check against `SOLVE_RESIDUAL`.
pub fn solve_matrix(a: &CMat, b: &CMat) -> Result<CMat, Error> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::NotSquare { rows: a.nrows(), cols: a.ncols() });
    }
    if b.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, found: b.nrows() });
    }
    ensure_sequential_blas();
    // one LU factorization shared by every column
    let lu = standardize(a).factorize()?;
    let mut x = CMat::zeros(b.raw_dim());
    for (j, col) in b.columns().into_iter().enumerate() {
        let xj = lu.solve(&col.to_owned())?;
        x.column_mut(j).assign(&xj);
    }
    let residual = spectral_norm(&(a.dot(&x) - b));
    let bound = tol::SOLVE_RESIDUAL * spectral_norm(b).max(f64::MIN_POSITIVE);
    if residual > bound {
        return Err(Error::SolveResidual { residual, bound });
    }
    Ok(x)
}

/// Solve `X A = B` (right division) via the transposed system.
pub fn solve_matrix_from_right(a: &CMat, b: &CMat) -> Result<CMat, Error> {
    let xt = solve_matrix(&a.t().to_owned(), &b.t().to_owned())?;
    Ok(xt.t().to_owned())
}

/// Thin-QR orthonormalization of the column span.
pub fn orthonormal_columns(m: &CMat) -> Result<CMat, Error> {
    use ndarray_linalg::QR;
    ensure_sequential_blas();
    let (q, _) = standardize(m).qr()?;
    Ok(q)
}

/// Orthonormal basis of the right null space of `m` (columns), rank decided
/// at `rel_tol * sigma_max`.
pub fn null_space(m: &CMat, rel_tol: f64) -> Result<CMat, Error> {
    ensure_sequential_blas();
    let n = m.ncols();
    let (_, s, vh) = standardize(m).svd(false, true)?;
    let vh = vh.expect("svd requested V^H");
    let smax = s.iter().copied().fold(0.0, f64::max);
    let r = s.iter().filter(|&&x| x > rel_tol * smax).count();
    // rows r.. of V^H span the null space; conjugate-transpose them to columns
    let mut basis = CMat::zeros((n, n - r));
    for (k, row) in vh.rows().into_iter().enumerate().skip(r) {
        basis.column_mut(k - r).assign(&row.mapv(|z| z.conj()));
    }
    Ok(basis)
}

/// Cosines of the principal angles between the column spans of `a` and `b`
/// (descending). Inputs are orthonormalized internally.
pub fn principal_angle_cosines(a: &CMat, b: &CMat) -> Result<Array1<f64>, Error> {
    let qa = orthonormal_columns(a)?;
    let qb = orthonormal_columns(b)?;
    singular_values(&adjoint(&qa).dot(&qb))
}

/// True when the two column spans coincide: equal dimension and all principal
/// angle cosines within `angle_tol` of one.
pub fn same_subspace(a: &CMat, b: &CMat, angle_tol: f64) -> Result<bool, Error> {
    if a.ncols() != b.ncols() {
        return Ok(false);
    }
    let c = principal_angle_cosines(a, b)?;
    Ok(c.iter().all(|&x| (1.0 - x).abs() <= angle_tol))
}

/// Stack two column blocks side by side.
pub fn hcat(a: &CMat, b: &CMat) -> CMat {
    concatenate![Axis(1), a.view(), b.view()]
}
