//! Transition operators and the dual pairs they parametrize.
//!
//! A transition operator T is Hermitian, anticommutes with J and is a strict
//! contraction. It carries the fundamental decomposition onto a dual pair of
//! subspaces `L+ = (I+T) H+`, `L- = (I+T) H-`, with skew projectors
//!
//! ```text
//! P_{L-} = (I-T)^{-1} (P- - T P+),   P_{L+} = (I-T)^{-1} (P+ - T P-),
//! ```
//!
//! and corresponds bijectively to a C operator through
//! `C = J (I-T)(I+T)^{-1}` and back through `T = (I-F)(I+F)^{-1}`, `F = JC`.

use crate::csymmetry::COperator;
use crate::error::Error;
use crate::krein::{classify_subspace, KreinStructure, SubspaceBasis, SubspaceTag};
use crate::linalg::{self, CMat};
use crate::tol;

/// A validated transition operator.
#[derive(Debug, Clone)]
pub struct TransitionOperator {
    t: CMat,
    norm: f64,
    strict: bool,
}

impl TransitionOperator {
    pub fn matrix(&self) -> &CMat {
        &self.t
    }

    /// Spectral norm of T.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Whether the norm is below `1 - STRICT_MARGIN`. Only strict operators
    /// admit the rational expressions in (I +- T); in finite dimension the
    /// pointwise contraction property already forces norm < 1, so this is the
    /// constructible branch.
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Exact bound for cond(I -+ T) given the Hermitian spectrum of T.
    pub fn inverse_cond_bound(&self) -> f64 {
        (1.0 + self.norm) / (1.0 - self.norm).max(f64::MIN_POSITIVE)
    }
}

/// Check Hermiticity, anticommutation with J and the norm bound, and wrap.
pub fn validate_transition(ks: &KreinStructure, t: CMat) -> Result<TransitionOperator, Error> {
    let n = ks.dim();
    if t.nrows() != n || t.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: t.nrows().max(t.ncols()) });
    }
    let norm = linalg::spectral_norm(&t);
    let herm = linalg::hermitian_defect(&t);
    if herm > tol::TOL_ALG * norm {
        return Err(Error::NotHermitian { defect: herm, bound: tol::TOL_ALG * norm });
    }
    let anti = linalg::spectral_norm(&(ks.j().dot(&t) + t.dot(ks.j())));
    if anti > 2.0 * tol::TOL_ALG * norm {
        return Err(Error::NotAnticommuting { defect: anti, bound: 2.0 * tol::TOL_ALG * norm });
    }
    if norm > 1.0 + tol::TOL_ALG {
        return Err(Error::NormExceedsOne { norm });
    }
    let strict = norm < 1.0 - tol::STRICT_MARGIN;
    Ok(TransitionOperator { t, norm, strict })
}

fn require_strict(t: &TransitionOperator) -> Result<(), Error> {
    if !t.is_strict() {
        return Err(Error::NearSingular { norm: t.norm(), cond: t.inverse_cond_bound() });
    }
    Ok(())
}

/// Skew projectors onto the dual pair defined by a strict T, computed by
/// linear solves against (I - T).
pub fn oblique_projectors(
    ks: &KreinStructure,
    t: &TransitionOperator,
) -> Result<(CMat, CMat), Error> {
    require_strict(t)?;
    let eye = linalg::identity(ks.dim());
    let i_minus_t = &eye - t.matrix();
    let rhs_plus = ks.p_plus() - &t.matrix().dot(ks.p_minus());
    let rhs_minus = ks.p_minus() - &t.matrix().dot(ks.p_plus());
    let p_l_plus = linalg::solve_matrix(&i_minus_t, &rhs_plus)?;
    let p_l_minus = linalg::solve_matrix(&i_minus_t, &rhs_minus)?;
    Ok((p_l_plus, p_l_minus))
}

/// A dual pair: the two subspaces, their transition operator and the skew
/// projectors, validated against the defining invariants at construction.
#[derive(Debug, Clone)]
pub struct DualPair {
    pub l_plus: SubspaceBasis,
    pub l_minus: SubspaceBasis,
    pub transition: TransitionOperator,
    pub p_l_plus: CMat,
    pub p_l_minus: CMat,
}

/// Build the dual pair `L+- = (I+T) H+-` of a strict transition operator.
pub fn dual_pair_from_transition(
    ks: &KreinStructure,
    t: &TransitionOperator,
) -> Result<DualPair, Error> {
    require_strict(t)?;
    let eye = linalg::identity(ks.dim());
    let i_plus_t = &eye + t.matrix();
    let l_plus = SubspaceBasis::new(i_plus_t.dot(ks.basis_plus()))?;
    let l_minus = SubspaceBasis::new(i_plus_t.dot(ks.basis_minus()))?;

    let cl_plus = classify_subspace(ks, &l_plus)?;
    if cl_plus.tag != SubspaceTag::Positive {
        return Err(Error::InvalidCOperator { clause: "dual pair positive part", defect: cl_plus.margin });
    }
    let cl_minus = classify_subspace(ks, &l_minus)?;
    if cl_minus.tag != SubspaceTag::Negative {
        return Err(Error::InvalidCOperator { clause: "dual pair negative part", defect: cl_minus.margin });
    }
    // J-orthogonality of the pair: cross block of the joint Gram.
    let cross = linalg::adjoint(l_plus.columns()).dot(ks.j()).dot(l_minus.columns());
    let cross_norm = linalg::spectral_norm(&cross);
    let scale = (1.0 + t.norm()) * (1.0 + t.norm());
    if cross_norm > tol::TOL_ALG * scale * (ks.dim() as f64) {
        return Err(Error::InvalidCOperator { clause: "dual pair J-orthogonality", defect: cross_norm });
    }

    let (p_l_plus, p_l_minus) = oblique_projectors(ks, t)?;
    Ok(DualPair { l_plus, l_minus, transition: t.clone(), p_l_plus, p_l_minus })
}

/// The C operator of a strict transition operator: `C = J (I-T)(I+T)^{-1}`.
///
/// (I-T) and (I+T) are rational in T and commute, so the product is computed
/// as one solve `(I+T) Y = (I-T)`.
pub fn c_from_transition(ks: &KreinStructure, t: &TransitionOperator) -> Result<COperator, Error> {
    require_strict(t)?;
    let eye = linalg::identity(ks.dim());
    let y = linalg::solve_matrix(&(&eye + t.matrix()), &(&eye - t.matrix()))?;
    let c = ks.j().dot(&y);
    COperator::validate(ks, c, tol::VER_TOL)
}

/// Recover the transition operator of a C operator: `T = (I-F)(I+F)^{-1}`
/// with `F = JC`. Fails with `FNotPositive` when F has spectrum at or below
/// zero.
pub fn transition_from_c(ks: &KreinStructure, c: &COperator) -> Result<TransitionOperator, Error> {
    let f = ks.j().dot(c.matrix());
    // F is Hermitian up to the verified defect; symmetrize before the
    // eigenvalue test so the solve below sees an exactly Hermitian operand.
    let f = linalg::hermitian_part(&f);
    let w = linalg::eigvalsh(&f)?;
    let min_eig = w.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eig <= 0.0 {
        return Err(Error::FNotPositive { min_eig });
    }
    let eye = linalg::identity(ks.dim());
    let t = linalg::solve_matrix(&(&eye + &f), &(&eye - &f))?;
    validate_transition(ks, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ks2() -> KreinStructure {
        KreinStructure::from_signature(&[1.0, -1.0]).unwrap()
    }

    fn t_half(ks: &KreinStructure) -> TransitionOperator {
        let t = array![[c(0.0, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.0, 0.0)]];
        validate_transition(ks, t).unwrap()
    }

    #[test]
    fn zero_is_a_strict_transition() {
        let ks = ks2();
        let t = validate_transition(&ks, CMat::zeros((2, 2))).unwrap();
        assert_eq!(t.norm(), 0.0);
        assert!(t.is_strict());
    }

    #[test]
    fn off_diagonal_half_validates() {
        let ks = ks2();
        let t = t_half(&ks);
        assert!((t.norm() - 0.5).abs() < 1e-14);
        assert!(t.is_strict());
    }

    #[test]
    fn diagonal_block_fails_anticommutation() {
        let ks = ks2();
        let t = array![[c(0.5, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        assert!(matches!(
            validate_transition(&ks, t),
            Err(Error::NotAnticommuting { .. })
        ));
    }

    #[test]
    fn non_hermitian_rejected() {
        let ks = ks2();
        let t = array![[c(0.0, 0.0), c(0.5, 0.0)], [c(-0.5, 0.0), c(0.0, 0.0)]];
        assert!(matches!(validate_transition(&ks, t), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn norm_above_one_rejected() {
        let ks = ks2();
        let t = array![[c(0.0, 0.0), c(1.5, 0.0)], [c(1.5, 0.0), c(0.0, 0.0)]];
        assert!(matches!(validate_transition(&ks, t), Err(Error::NormExceedsOne { .. })));
    }

    #[test]
    fn dual_pair_of_zero_is_fundamental() {
        let ks = ks2();
        let t = validate_transition(&ks, CMat::zeros((2, 2))).unwrap();
        let dp = dual_pair_from_transition(&ks, &t).unwrap();
        let plus = SubspaceBasis::new(ks.basis_plus().clone()).unwrap();
        assert!(dp.l_plus.same_span(&plus).unwrap());
    }

    #[test]
    fn dual_pair_spans_match_hand_values() {
        let ks = ks2();
        let dp = dual_pair_from_transition(&ks, &t_half(&ks)).unwrap();
        let lp = SubspaceBasis::new(array![[c(1.0, 0.0)], [c(0.5, 0.0)]]).unwrap();
        let lm = SubspaceBasis::new(array![[c(0.5, 0.0)], [c(1.0, 0.0)]]).unwrap();
        assert!(dp.l_plus.same_span(&lp).unwrap());
        assert!(dp.l_minus.same_span(&lm).unwrap());
    }

    #[test]
    fn projectors_match_two_by_two_solve_oracle() {
        // hand-solved: P_{L+} = (1/0.75) [[1, -0.5], [0.5, -0.25]]
        let ks = ks2();
        let (p_plus, p_minus) = oblique_projectors(&ks, &t_half(&ks)).unwrap();
        let expect = array![
            [c(4.0 / 3.0, 0.0), c(-2.0 / 3.0, 0.0)],
            [c(2.0 / 3.0, 0.0), c(-1.0 / 3.0, 0.0)]
        ];
        assert!(linalg::spectral_norm(&(&p_plus - &expect)) < 1e-13);
        // complementarity and idempotency
        let eye = linalg::identity(2);
        assert!(linalg::spectral_norm(&(&p_plus + &p_minus - &eye)) < 1e-13);
        assert!(linalg::spectral_norm(&(p_plus.dot(&p_plus) - &p_plus)) < 1e-13);
    }

    #[test]
    fn zero_transition_gives_fundamental_projectors() {
        let ks = ks2();
        let t = validate_transition(&ks, CMat::zeros((2, 2))).unwrap();
        let (p_plus, p_minus) = oblique_projectors(&ks, &t).unwrap();
        assert!(linalg::spectral_norm(&(&p_plus - ks.p_plus())) < 1e-15);
        assert!(linalg::spectral_norm(&(&p_minus - ks.p_minus())) < 1e-15);
    }

    #[test]
    fn c_of_zero_is_j() {
        let ks = ks2();
        let t = validate_transition(&ks, CMat::zeros((2, 2))).unwrap();
        let cop = c_from_transition(&ks, &t).unwrap();
        assert!(linalg::spectral_norm(&(cop.matrix() - ks.j())) < 1e-14);
    }

    #[test]
    fn c_matches_two_by_two_arithmetic() {
        let ks = ks2();
        let cop = c_from_transition(&ks, &t_half(&ks)).unwrap();
        let expect = array![
            [c(5.0 / 3.0, 0.0), c(-4.0 / 3.0, 0.0)],
            [c(4.0 / 3.0, 0.0), c(-5.0 / 3.0, 0.0)]
        ];
        assert!(linalg::spectral_norm(&(cop.matrix() - &expect)) < 1e-13);
        // C^2 = I and C = P_{L+} - P_{L-}
        let c2 = cop.matrix().dot(cop.matrix());
        assert!(linalg::spectral_norm(&(c2 - linalg::identity(2))) < 1e-13);
        let (p_plus, p_minus) = oblique_projectors(&ks, &t_half(&ks)).unwrap();
        assert!(linalg::spectral_norm(&(&p_plus - &p_minus - cop.matrix())) < 1e-13);
    }

    #[test]
    fn metric_spectrum_interval() {
        // eig(JC) = {(1-||T||)/(1+||T||), (1+||T||)/(1-||T||)} when both
        // extreme Hermitian eigenvalues of T are attained
        let ks = ks2();
        let cop = c_from_transition(&ks, &t_half(&ks)).unwrap();
        let f = ks.j().dot(cop.matrix());
        let w = linalg::eigvalsh(&linalg::hermitian_part(&f)).unwrap();
        assert!((w[0] - 1.0 / 3.0).abs() < 1e-13);
        assert!((w[1] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn transition_from_c_round_trip() {
        let ks = ks2();
        let t0 = t_half(&ks);
        let cop = c_from_transition(&ks, &t0).unwrap();
        let t1 = transition_from_c(&ks, &cop).unwrap();
        assert!(linalg::spectral_norm(&(t1.matrix() - t0.matrix())) < 1e-13);
    }

    #[test]
    fn c_equal_j_recovers_zero_transition() {
        let ks = ks2();
        let cop = COperator::validate(&ks, ks.j().clone(), tol::VER_TOL).unwrap();
        let t = transition_from_c(&ks, &cop).unwrap();
        assert!(t.norm() < 1e-14);
    }

    #[test]
    fn f_not_positive_detected() {
        let ks = ks2();
        // C = -J is an involution but JC = -I < 0; bypass validation
        let cop = COperator::new_unchecked(ks.j().mapv(|z| -z));
        assert!(matches!(transition_from_c(&ks, &cop), Err(Error::FNotPositive { .. })));
    }
}
