//! Deterministic generators for randomized verification suites.
//!
//! Everything here is seeded and reproducible. The J-self-adjoint generators
//! build operators whose spectrum and invariant pair are known exactly by
//! construction, which is what the verification suites need as ground truth.

use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::csymmetry::JSelfAdjointOperator;
use crate::error::Error;
use crate::krein::KreinStructure;
use crate::linalg::{self, CMat};
use crate::transition::{validate_transition, TransitionOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn standard_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    // Box-Muller pairs; unit-variance complex gaussian
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r = (-2.0 * u1.ln()).sqrt();
    Complex64::new(r * u2.cos(), r * u2.sin())
}

pub fn random_complex_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> CMat {
    Array2::from_shape_fn((rows, cols), |_| standard_complex(rng))
}

pub fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> CMat {
    let g = random_complex_matrix(n, n, rng);
    linalg::orthonormal_columns(&g).expect("QR of a random gaussian matrix")
}

/// A random Hermitian involution with the given inertia: `Q diag(+-1) Q^H`.
pub fn random_fundamental_symmetry(
    n_plus: usize,
    n_minus: usize,
    rng: &mut ChaCha8Rng,
) -> KreinStructure {
    let n = n_plus + n_minus;
    let q = random_unitary(n, rng);
    let mut d = CMat::zeros((n, n));
    for i in 0..n {
        let s = if i < n_plus { 1.0 } else { -1.0 };
        d[(i, i)] = Complex64::new(s, 0.0);
    }
    let j = q.dot(&d).dot(&linalg::adjoint(&q));
    // symmetrize rounding noise so the validator sees an exact Hermitian
    let j = linalg::hermitian_part(&j);
    KreinStructure::new(j).expect("randomly conjugated signature is a fundamental symmetry")
}

/// A random strict transition operator with prescribed spectral norm:
/// Hermitian, J-anticommuting, built from a scaled off-diagonal block in the
/// canonical basis of `ks`.
pub fn random_strict_transition(
    ks: &KreinStructure,
    norm: f64,
    rng: &mut ChaCha8Rng,
) -> TransitionOperator {
    assert!((0.0..1.0).contains(&norm), "strict transition needs norm < 1");
    let bp = ks.basis_plus();
    let bm = ks.basis_minus();
    let mut k = random_complex_matrix(ks.rank_minus(), ks.rank_plus(), rng);
    if norm == 0.0 {
        k.fill(Complex64::new(0.0, 0.0));
    } else {
        let s = linalg::spectral_norm(&k);
        k.mapv_inplace(|z| z * Complex64::new(norm / s, 0.0));
    }
    let cross = bm.dot(&k).dot(&linalg::adjoint(bp));
    let t = &cross + &linalg::adjoint(&cross);
    validate_transition(ks, t).expect("constructed transition is valid")
}

/// A J-self-adjoint operator with known real spectrum and a known C-symmetry.
///
/// The invariant pair comes from a random strict transition operator; its
/// bases are J-orthonormalized blockwise so that `W^* J W = diag(I, -I)`
/// exactly, making `A = W diag(spectrum) W^{-1}` J-self-adjoint to rounding.
/// Returns the operator, its C, and the spectrum (ascending within each
/// block: positive-part eigenvalues first).
pub fn random_c_symmetric_operator(
    ks: &KreinStructure,
    max_transition_norm: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(JSelfAdjointOperator, CMat, Vec<f64>), Error> {
    let norm = rng.gen_range(0.0..=max_transition_norm);
    let t = random_strict_transition(ks, norm, rng);
    let n = ks.dim();
    let p = ks.rank_plus();
    let eye = linalg::identity(n);
    let i_plus_t = &eye + t.matrix();

    let w_plus = j_orthonormalize(ks, &i_plus_t.dot(ks.basis_plus()), 1.0)?;
    let w_minus = j_orthonormalize(ks, &i_plus_t.dot(ks.basis_minus()), -1.0)?;
    let w = linalg::hcat(&w_plus, &w_minus);

    let spectrum: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
    let mut lambda = CMat::zeros((n, n));
    for (i, &x) in spectrum.iter().enumerate() {
        lambda[(i, i)] = Complex64::new(x, 0.0);
    }
    let a = linalg::solve_matrix_from_right(&w, &w.dot(&lambda))?;

    let mut sig = CMat::zeros((n, n));
    for i in 0..n {
        let s = if i < p { 1.0 } else { -1.0 };
        sig[(i, i)] = Complex64::new(s, 0.0);
    }
    let c = linalg::solve_matrix_from_right(&w, &w.dot(&sig))?;

    Ok((JSelfAdjointOperator::new(ks, a)?, c, spectrum))
}

/// A J-self-adjoint operator with one conjugate pair of genuinely complex
/// eigenvalues `+- i s` injected across a positive and a negative direction;
/// the rest of the spectrum is real. Still exactly J-self-adjoint.
pub fn random_complex_spectrum_operator(
    ks: &KreinStructure,
    rng: &mut ChaCha8Rng,
) -> Result<JSelfAdjointOperator, Error> {
    let norm = rng.gen_range(0.0..=0.8);
    let t = random_strict_transition(ks, norm, rng);
    let n = ks.dim();
    let p = ks.rank_plus();
    assert!(p >= 1 && n - p >= 1, "need both signs to inject a complex pair");
    let eye = linalg::identity(n);
    let i_plus_t = &eye + t.matrix();
    let w_plus = j_orthonormalize(ks, &i_plus_t.dot(ks.basis_plus()), 1.0)?;
    let w_minus = j_orthonormalize(ks, &i_plus_t.dot(ks.basis_minus()), -1.0)?;
    let w = linalg::hcat(&w_plus, &w_minus);

    // B = J_can H with H Hermitian: real diagonal plus one real coupling b
    // between the first positive and first negative direction. Eigenvalues
    // of that 2x2 block are +- i sqrt(b^2 - s^2) for |b| > |s|.
    let mut b_mat = CMat::zeros((n, n));
    for i in 0..n {
        let s = if i < p { 1.0 } else { -1.0 };
        b_mat[(i, i)] = Complex64::new(s * rng.gen_range(-2.0..2.0), 0.0);
    }
    let s_diag = rng.gen_range(-0.5..0.5);
    let b = rng.gen_range(1.0..2.0);
    b_mat[(0, 0)] = Complex64::new(s_diag, 0.0);
    b_mat[(p, p)] = Complex64::new(-s_diag, 0.0);
    b_mat[(0, p)] = Complex64::new(b, 0.0);
    b_mat[(p, 0)] = Complex64::new(-b, 0.0);

    let a = linalg::solve_matrix_from_right(&w, &w.dot(&b_mat))?;
    JSelfAdjointOperator::new(ks, a)
}

/// Blockwise J-orthonormalization: returns `B L^{-H}` where `sign * B^* J B =
/// L L^H`, so the output has `output^* J output = sign * I`.
fn j_orthonormalize(ks: &KreinStructure, b: &CMat, sign: f64) -> Result<CMat, Error> {
    use ndarray_linalg::Cholesky;
    linalg::ensure_sequential_blas();
    let gram = linalg::adjoint(b).dot(ks.j()).dot(b);
    let gram = linalg::hermitian_part(&gram).mapv(|z| z * Complex64::new(sign, 0.0));
    let l = gram.cholesky(ndarray_linalg::UPLO::Lower)?;
    linalg::solve_matrix_from_right(&linalg::adjoint(&l), b)
}
