//! Verification and construction of C-symmetries.
//!
//! A J-self-adjoint operator A has a C-symmetry when there is a bounded C
//! with
//!
//! ```text
//! (i) C^2 = I,   (ii) JC > 0,   (iii) AC = CA.
//! ```
//!
//! Such a C exists exactly when A decomposes over a dual pair of invariant
//! subspaces, positive and negative, J-orthogonal to each other. The
//! constructive route goes through the eigendecomposition of A: real
//! spectrum, no neutral eigenvectors, split each eigenspace by the sign of
//! its indefinite Gram, and assemble `C = P_{L+} - P_{L-}`.
//!
//! Once C is in hand, `F = JC` is positive definite and its principal square
//! root Hermitizes A by similarity; the associated transformation
//! `U = [(I+C)P+ + (I-C)P-]/2` carries the fundamental decomposition onto the
//! invariant pair and block-diagonalizes A.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::krein::{KreinStructure, SubspaceBasis};
use crate::linalg::{self, CMat};
use crate::tol;

/// A matrix together with its J-self-adjointness defect `||A*J - JA||`.
#[derive(Debug, Clone)]
pub struct JSelfAdjointOperator {
    a: CMat,
    j_defect: f64,
}

impl JSelfAdjointOperator {
    /// Wrap and check `||A*J - JA|| <= tol * ||A||` (default `VER_TOL`).
    pub fn new(ks: &KreinStructure, a: CMat) -> Result<Self, Error> {
        Self::with_tolerance(ks, a, tol::VER_TOL)
    }

    pub fn with_tolerance(ks: &KreinStructure, a: CMat, rel_tol: f64) -> Result<Self, Error> {
        let n = ks.dim();
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.nrows().max(a.ncols()) });
        }
        let defect = linalg::spectral_norm(&(linalg::adjoint(&a).dot(ks.j()) - ks.j().dot(&a)));
        let bound = rel_tol * linalg::spectral_norm(&a);
        if defect > bound {
            return Err(Error::NotJSelfAdjoint { defect, bound });
        }
        Ok(Self { a, j_defect: defect })
    }

    pub fn matrix(&self) -> &CMat {
        &self.a
    }

    pub fn j_defect(&self) -> f64 {
        self.j_defect
    }

    /// The adjoint of a J-self-adjoint operator is J-self-adjoint again
    /// (A* = J A J), with the same defect.
    pub fn adjoint(&self) -> Self {
        Self { a: linalg::adjoint(&self.a), j_defect: self.j_defect }
    }
}

/// Which clause of the C-symmetry definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// C^2 = I
    Involution,
    /// JC Hermitian positive definite
    MetricPositivity,
    /// AC = CA
    Commutation,
}

impl std::fmt::Display for Clause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Clause::Involution => "involution",
            Clause::MetricPositivity => "metric positivity",
            Clause::Commutation => "commutation",
        };
        f.write_str(s)
    }
}

/// Defects of the three defining clauses, each normalized by the natural
/// scale: involution by ||C||^2, metric Hermiticity by ||F||, commutation by
/// ||A|| ||C||. `positivity_margin` is the smallest eigenvalue of the
/// Hermitian part of F = JC (raw, not normalized).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerificationReport {
    pub involution_defect: f64,
    pub metric_hermiticity_defect: f64,
    pub positivity_margin: f64,
    pub commutation_defect: Option<f64>,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn violated_clause(&self) -> Option<Clause> {
        if self.involution_defect > self.tolerance {
            return Some(Clause::Involution);
        }
        if self.metric_hermiticity_defect > self.tolerance || self.positivity_margin <= 0.0 {
            return Some(Clause::MetricPositivity);
        }
        if let Some(d) = self.commutation_defect {
            if d > self.tolerance {
                return Some(Clause::Commutation);
            }
        }
        None
    }

    pub fn passed(&self) -> bool {
        self.violated_clause().is_none()
    }

    /// Pointwise maximum of two reports (used for block direct sums, where
    /// the global defect of a block-diagonal operator is the blockwise max
    /// and the positivity margin the blockwise min).
    pub fn combine(&self, other: &VerificationReport) -> VerificationReport {
        let comm = match (self.commutation_defect, other.commutation_defect) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        VerificationReport {
            involution_defect: self.involution_defect.max(other.involution_defect),
            metric_hermiticity_defect: self
                .metric_hermiticity_defect
                .max(other.metric_hermiticity_defect),
            positivity_margin: self.positivity_margin.min(other.positivity_margin),
            commutation_defect: comm,
            tolerance: self.tolerance.max(other.tolerance),
        }
    }
}

/// A candidate C operator with its verification report.
#[derive(Debug, Clone)]
pub struct COperator {
    c: CMat,
    report: VerificationReport,
}

impl COperator {
    /// Verify the unary clauses (involution, metric positivity) and wrap.
    /// The commutation clause is filled in by [`verify_c_symmetry`] once an
    /// operator is paired.
    pub fn validate(ks: &KreinStructure, c: CMat, ver_tol: f64) -> Result<Self, Error> {
        let n = ks.dim();
        if c.nrows() != n || c.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: c.nrows().max(c.ncols()) });
        }
        let report = unary_report(ks, &c, ver_tol)?;
        if report.involution_defect > ver_tol {
            return Err(Error::InvalidCOperator {
                clause: "involution",
                defect: report.involution_defect,
            });
        }
        if report.metric_hermiticity_defect > ver_tol || report.positivity_margin <= 0.0 {
            return Err(Error::InvalidCOperator {
                clause: "metric positivity",
                defect: report.metric_hermiticity_defect.max(-report.positivity_margin),
            });
        }
        Ok(Self { c, report })
    }

    /// Wrap without validation; for constructing counterexamples in tests and
    /// for operators whose report is computed separately.
    pub fn new_unchecked(c: CMat) -> Self {
        let report = VerificationReport {
            involution_defect: f64::NAN,
            metric_hermiticity_defect: f64::NAN,
            positivity_margin: f64::NAN,
            commutation_defect: None,
            tolerance: tol::VER_TOL,
        };
        Self { c, report }
    }

    pub fn matrix(&self) -> &CMat {
        &self.c
    }

    pub fn report(&self) -> &VerificationReport {
        &self.report
    }
}

fn unary_report(ks: &KreinStructure, c: &CMat, ver_tol: f64) -> Result<VerificationReport, Error> {
    let norm_c = linalg::spectral_norm(c);
    let scale_sq = (norm_c * norm_c).max(f64::MIN_POSITIVE);
    let invol = linalg::spectral_norm(&(c.dot(c) - linalg::identity(ks.dim()))) / scale_sq;
    let f = ks.j().dot(c);
    let norm_f = linalg::spectral_norm(&f).max(f64::MIN_POSITIVE);
    let herm = linalg::hermitian_defect(&f) / norm_f;
    let w = linalg::eigvalsh(&linalg::hermitian_part(&f))?;
    let margin = w.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(VerificationReport {
        involution_defect: invol,
        metric_hermiticity_defect: herm,
        positivity_margin: margin,
        commutation_defect: None,
        tolerance: ver_tol,
    })
}

/// Evaluate all three clauses of the C-symmetry definition for the pair
/// (A, C). Always returns a report; `report.violated_clause()` identifies a
/// failure.
pub fn verify_c_symmetry(
    ks: &KreinStructure,
    a: &JSelfAdjointOperator,
    c: &CMat,
    ver_tol: f64,
) -> Result<VerificationReport, Error> {
    let n = ks.dim();
    if c.nrows() != n || c.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: c.nrows().max(c.ncols()) });
    }
    let mut report = unary_report(ks, c, ver_tol)?;
    let norm_a = linalg::spectral_norm(a.matrix());
    let norm_c = linalg::spectral_norm(c);
    let comm = linalg::spectral_norm(&(a.matrix().dot(c) - c.dot(a.matrix())));
    report.commutation_defect = Some(comm / (norm_a * norm_c).max(f64::MIN_POSITIVE));
    Ok(report)
}

/// Why the constructive algorithm could not produce a C-symmetry. These are
/// semantic outcomes, not failures: a J-self-adjoint operator with complex
/// spectrum genuinely has no C-symmetry, and a neutral eigenvector is exactly
/// the degeneration the critical grid model exhibits.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status")]
pub enum Diagnostic {
    /// An eigenvalue has |Im| above `spec_tol * ||A||`; real spectrum is
    /// necessary for a C-symmetry.
    ComplexSpectrum {
        offending_eigenvalue: (f64, f64),
        relative_imaginary_part: f64,
    },
    /// An eigenvector (or eigenspace direction) with |[v,v]| below
    /// `neutral_tol`; the dual pair degenerates.
    NeutralEigenvector {
        eigenvalue: f64,
        neutrality_margin: f64,
    },
    /// Eigenvector matrix condition number beyond `cond_cap`; the operator is
    /// numerically defective and the construction meaningless.
    Defective { eigenvector_condition: f64 },
    /// The positive/negative split does not match the ranks of the
    /// fundamental projectors.
    DimensionMismatch {
        dim_plus: usize,
        dim_minus: usize,
        rank_p_plus: usize,
        rank_p_minus: usize,
    },
    /// A backend failure inside the construction (reported, never panics).
    NumericalFailure { message: String },
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diagnostic::ComplexSpectrum { offending_eigenvalue: (re, im), relative_imaginary_part } => {
                write!(f, "complex spectrum: eigenvalue {re:+e}{im:+e}i (|Im|/||A|| = {relative_imaginary_part:.3e})")
            }
            Diagnostic::NeutralEigenvector { eigenvalue, neutrality_margin } => {
                write!(f, "neutral eigenvector at eigenvalue {eigenvalue:+e} (margin {neutrality_margin:.3e})")
            }
            Diagnostic::Defective { eigenvector_condition } => {
                write!(f, "defective: eigenvector condition {eigenvector_condition:.3e}")
            }
            Diagnostic::DimensionMismatch { dim_plus, dim_minus, rank_p_plus, rank_p_minus } => {
                write!(f, "subspace split {dim_plus}/{dim_minus} does not match fundamental ranks {rank_p_plus}/{rank_p_minus}")
            }
            Diagnostic::NumericalFailure { message } => write!(f, "numerical failure: {message}"),
        }
    }
}

impl Diagnostic {
    pub fn status_code(&self) -> &'static str {
        match self {
            Diagnostic::ComplexSpectrum { .. } => "complex-spectrum",
            Diagnostic::NeutralEigenvector { .. } => "neutral-eigenvector",
            Diagnostic::Defective { .. } => "defective",
            Diagnostic::DimensionMismatch { .. } => "dimension-mismatch",
            Diagnostic::NumericalFailure { .. } => "numerical-failure",
        }
    }
}

/// Tunable thresholds of the constructive algorithm.
#[derive(Debug, Clone, Copy)]
pub struct ConstructOptions {
    pub spec_tol: f64,
    pub neutral_tol: f64,
    pub cond_cap: f64,
    /// Eigenvalues closer than `cluster_tol * ||A||` are treated as one
    /// eigenspace and split through their joint Gram.
    pub cluster_tol: f64,
    pub ver_tol: f64,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self {
            spec_tol: tol::SPEC_TOL,
            neutral_tol: tol::NEUTRAL_TOL,
            cond_cap: tol::COND_CAP,
            cluster_tol: tol::SPEC_TOL,
            ver_tol: tol::VER_TOL,
        }
    }
}

/// Construct a C-symmetry for A from its eigendecomposition, or report why
/// none exists.
///
/// Steps: eigendecompose; require real spectrum and a well-conditioned
/// eigenvector matrix; orthonormalize each eigenspace and diagonalize its
/// indefinite Gram, rejecting neutral directions; collect the positive and
/// negative directions into the dual pair; assemble `C = P_{L+} - P_{L-}`
/// through the joint basis.
pub fn construct_c(
    ks: &KreinStructure,
    a: &JSelfAdjointOperator,
    opts: &ConstructOptions,
) -> Result<COperator, Diagnostic> {
    let fail = |e: Error| Diagnostic::NumericalFailure { message: e.to_string() };
    let n = ks.dim();
    let norm_a = linalg::spectral_norm(a.matrix()).max(f64::MIN_POSITIVE);

    let (w, v) = linalg::eig(a.matrix()).map_err(fail)?;

    // (1) real spectrum is necessary
    let mut worst = 0.0_f64;
    let mut offender = Complex64::new(0.0, 0.0);
    for &lam in w.iter() {
        if lam.im.abs() > worst {
            worst = lam.im.abs();
            offender = lam;
        }
    }
    if worst > opts.spec_tol * norm_a {
        return Err(Diagnostic::ComplexSpectrum {
            offending_eigenvalue: (offender.re, offender.im),
            relative_imaginary_part: worst / norm_a,
        });
    }

    // (2) diagonalizable within the conditioning cap
    let cond_v = linalg::cond_2(&v).map_err(fail)?;
    if !cond_v.is_finite() || cond_v > opts.cond_cap {
        return Err(Diagnostic::Defective { eigenvector_condition: cond_v });
    }

    // (3) cluster by real part and split each eigenspace by its Gram signs
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[i].re.partial_cmp(&w[j].re).unwrap());
    let gap = opts.cluster_tol * norm_a.max(1.0);

    let mut plus_cols: Vec<CMat> = Vec::new();
    let mut minus_cols: Vec<CMat> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (w[order[end]].re - w[order[end - 1]].re).abs() <= gap {
            end += 1;
        }
        let mut cluster = CMat::zeros((n, end - start));
        for (k, &idx) in order[start..end].iter().enumerate() {
            cluster.column_mut(k).assign(&v.column(idx));
        }
        let q = linalg::orthonormal_columns(&cluster).map_err(fail)?;
        let g = linalg::adjoint(&q).dot(ks.j()).dot(&q);
        let (gw, gu) = linalg::eigh(&linalg::hermitian_part(&g)).map_err(fail)?;
        let directions = q.dot(&gu);
        for (k, &sign) in gw.iter().enumerate() {
            if sign.abs() <= opts.neutral_tol {
                return Err(Diagnostic::NeutralEigenvector {
                    eigenvalue: w[order[start]].re,
                    neutrality_margin: sign.abs(),
                });
            }
            let col = directions.column(k).to_owned().insert_axis(ndarray::Axis(1));
            if sign > 0.0 {
                plus_cols.push(col);
            } else {
                minus_cols.push(col);
            }
        }
        start = end;
    }

    let dim_plus = plus_cols.len();
    let dim_minus = minus_cols.len();
    if dim_plus != ks.rank_plus() || dim_minus != ks.rank_minus() {
        return Err(Diagnostic::DimensionMismatch {
            dim_plus,
            dim_minus,
            rank_p_plus: ks.rank_plus(),
            rank_p_minus: ks.rank_minus(),
        });
    }

    // (4) C acts as +1 on span(L+) and -1 on span(L-)
    let mut basis = CMat::zeros((n, n));
    for (k, col) in plus_cols.iter().chain(minus_cols.iter()).enumerate() {
        basis.column_mut(k).assign(&col.column(0));
    }
    let mut signed = basis.clone();
    for k in dim_plus..n {
        signed.column_mut(k).mapv_inplace(|z| -z);
    }
    // C basis = signed  =>  C = signed * basis^{-1}
    let c = linalg::solve_matrix_from_right(&basis, &signed).map_err(fail)?;

    let report = verify_c_symmetry(ks, a, &c, opts.ver_tol).map_err(fail)?;
    Ok(COperator { c, report })
}

/// Similarity transform making A Hermitian: `H = sqrt(F) A sqrt(F)^{-1}` with
/// `F = JC`. The square root is the principal one, through the Hermitian
/// eigendecomposition of F.
pub fn hermitize(
    ks: &KreinStructure,
    a: &JSelfAdjointOperator,
    c: &COperator,
) -> Result<CMat, Error> {
    let f = linalg::hermitian_part(&ks.j().dot(c.matrix()));
    let (w, q) = linalg::eigh(&f)?;
    let min_eig = w.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eig <= 0.0 {
        return Err(Error::FNotPositive { min_eig });
    }
    let mut sqrt_diag = CMat::zeros(f.raw_dim());
    for (i, &x) in w.iter().enumerate() {
        sqrt_diag[(i, i)] = Complex64::new(x.sqrt(), 0.0);
    }
    let s = q.dot(&sqrt_diag).dot(&linalg::adjoint(&q));
    // H = (S A) S^{-1}
    linalg::solve_matrix_from_right(&s, &s.dot(a.matrix()))
}

/// Gram matrix of the equivalent scalar product `(f, g)_C = (JC f, g)` over
/// the columns of `basis`: `G[i][j] = (F b_j, b_i)`.
pub fn c_inner_gram(
    ks: &KreinStructure,
    c: &COperator,
    basis: &SubspaceBasis,
) -> Result<CMat, Error> {
    let b = basis.columns();
    if b.nrows() != ks.dim() {
        return Err(Error::DimensionMismatch { expected: ks.dim(), found: b.nrows() });
    }
    let f = ks.j().dot(c.matrix());
    let m = linalg::adjoint(b).dot(&f).dot(b);
    Ok(m.t().to_owned())
}

/// The transformation `U = [(I+C)P+ + (I-C)P-]/2`, which intertwines C and J
/// (`CU = UJ`) and maps the fundamental subspaces onto the invariant pair.
pub fn foldy_wouthuysen(ks: &KreinStructure, c: &COperator) -> Result<CMat, Error> {
    let eye = linalg::identity(ks.dim());
    let u = ((&eye + c.matrix()).dot(ks.p_plus()) + (&eye - c.matrix()).dot(ks.p_minus()))
        .mapv(|z| 0.5 * z);
    let cond = linalg::cond_2(&u)?;
    if !cond.is_finite() {
        return Err(Error::SingularTransform { cond });
    }
    Ok(u)
}

/// The two diagonal blocks of `U^{-1} A U` in the fundamental decomposition,
/// and the norm of what is left off the diagonal.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    pub block_plus: CMat,
    pub block_minus: CMat,
    pub offdiag_residual: f64,
}

pub fn block_diagonalize(
    ks: &KreinStructure,
    a: &JSelfAdjointOperator,
    c: &COperator,
) -> Result<BlockDecomposition, Error> {
    let u = foldy_wouthuysen(ks, c)?;
    let b = linalg::solve_matrix(&u, &a.matrix().dot(&u))?;
    // express in the orthonormal bases of H+ and H-
    let w = linalg::hcat(ks.basis_plus(), ks.basis_minus());
    let d = linalg::adjoint(&w).dot(&b).dot(&w);
    let p = ks.rank_plus();
    let n = ks.dim();
    let block_plus = d.slice(ndarray::s![..p, ..p]).to_owned();
    let block_minus = d.slice(ndarray::s![p..n, p..n]).to_owned();
    let off_upper = d.slice(ndarray::s![..p, p..n]).to_owned();
    let off_lower = d.slice(ndarray::s![p..n, ..p]).to_owned();
    let offdiag_residual =
        linalg::spectral_norm(&off_upper).max(linalg::spectral_norm(&off_lower));
    Ok(BlockDecomposition { block_plus, block_minus, offdiag_residual })
}

/// The adjoint pair: `C*` serves `A*` whenever C serves A, with identical
/// defect structure. Returns the verified pair.
pub fn adjoint_c_symmetry(
    ks: &KreinStructure,
    a: &JSelfAdjointOperator,
    c: &COperator,
) -> Result<(JSelfAdjointOperator, COperator), Error> {
    let a_star = a.adjoint();
    let c_star = linalg::adjoint(c.matrix());
    let mut report = unary_report(ks, &c_star, c.report().tolerance)?;
    let verified = verify_c_symmetry(ks, &a_star, &c_star, c.report().tolerance)?;
    report.commutation_defect = verified.commutation_defect;
    report.metric_hermiticity_defect = verified.metric_hermiticity_defect;
    report.positivity_margin = verified.positivity_margin;
    report.involution_defect = verified.involution_defect;
    Ok((a_star, COperator { c: c_star, report }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transition::{c_from_transition, transition_from_c, validate_transition};
    use ndarray::array;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ks2() -> KreinStructure {
        KreinStructure::from_signature(&[1.0, -1.0]).unwrap()
    }

    fn golden_pair(ks: &KreinStructure) -> JSelfAdjointOperator {
        let a = array![[c(2.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(-1.0, 0.0)]];
        JSelfAdjointOperator::new(ks, a).unwrap()
    }

    #[test]
    fn verify_j_with_itself() {
        let ks = ks2();
        let a = JSelfAdjointOperator::new(&ks, ks.j().clone()).unwrap();
        let report = verify_c_symmetry(&ks, &a, ks.j(), tol::VER_TOL).unwrap();
        assert!(report.passed());
        assert!(report.positivity_margin > 0.99);
    }

    #[test]
    fn verify_flags_negated_metric() {
        let ks = ks2();
        let a = JSelfAdjointOperator::new(&ks, ks.j().clone()).unwrap();
        let neg_j = ks.j().mapv(|z| -z);
        let report = verify_c_symmetry(&ks, &a, &neg_j, tol::VER_TOL).unwrap();
        assert_eq!(report.violated_clause(), Some(Clause::MetricPositivity));
    }

    #[test]
    fn construct_for_j_returns_j() {
        let ks = ks2();
        let a = JSelfAdjointOperator::new(&ks, ks.j().clone()).unwrap();
        let cop = construct_c(&ks, &a, &ConstructOptions::default()).unwrap();
        assert!(linalg::spectral_norm(&(cop.matrix() - ks.j())) < 1e-12);
    }

    #[test]
    fn construct_golden_ratio_example() {
        // eigenvalues (1 +- sqrt 5)/2; eigenvector (1, lambda-2) has
        // [v, v] = 1 - (lambda-2)^2, positive for the larger eigenvalue
        let ks = ks2();
        let a = golden_pair(&ks);
        let s5 = 5.0_f64.sqrt();
        for lambda in [(1.0 + s5) / 2.0, (1.0 - s5) / 2.0] {
            let v = ndarray::array![c(1.0, 0.0), c(lambda - 2.0, 0.0)];
            let vv = ks.indefinite_inner(&v, &v).unwrap();
            let want = 1.0 - (lambda - 2.0) * (lambda - 2.0);
            assert!((vv.re - want).abs() < 1e-14 && vv.im.abs() < 1e-15);
            assert!(vv.re * want > 0.0, "sign class must match the oracle");
        }
        let cop = construct_c(&ks, &a, &ConstructOptions::default()).unwrap();
        let report = verify_c_symmetry(&ks, &a, cop.matrix(), tol::VER_TOL).unwrap();
        assert!(report.passed(), "report: {report:?}");
        let c2 = cop.matrix().dot(cop.matrix());
        assert!(linalg::spectral_norm(&(c2 - linalg::identity(2))) < 1e-10);
        // closed form: C = (1/sqrt5) [[3, 2], [-2, -3]]
        let expect = array![
            [c(3.0 / s5, 0.0), c(2.0 / s5, 0.0)],
            [c(-2.0 / s5, 0.0), c(-3.0 / s5, 0.0)]
        ];
        assert!(linalg::spectral_norm(&(cop.matrix() - &expect)) < 1e-10);
    }

    #[test]
    fn construct_rejects_rotation() {
        let ks = ks2();
        let a = JSelfAdjointOperator::new(
            &ks,
            array![[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]],
        )
        .unwrap();
        match construct_c(&ks, &a, &ConstructOptions::default()) {
            Err(Diagnostic::ComplexSpectrum { .. }) => {}
            other => panic!("expected complex-spectrum diagnostic, got {other:?}"),
        }
    }

    #[test]
    fn construct_agrees_with_transition_route() {
        let ks = ks2();
        let a = golden_pair(&ks);
        let cop = construct_c(&ks, &a, &ConstructOptions::default()).unwrap();
        let t = transition_from_c(&ks, &cop).unwrap();
        let back = c_from_transition(&ks, &t).unwrap();
        assert!(linalg::spectral_norm(&(back.matrix() - cop.matrix())) < 1e-9);
    }

    #[test]
    fn hermitize_identity_cases() {
        let ks = ks2();
        let a = JSelfAdjointOperator::new(&ks, ks.j().clone()).unwrap();
        let cop = COperator::validate(&ks, ks.j().clone(), tol::VER_TOL).unwrap();
        let h = hermitize(&ks, &a, &cop).unwrap();
        assert!(linalg::spectral_norm(&(&h - ks.j())) < 1e-13);
    }

    #[test]
    fn hermitize_golden_example() {
        let ks = ks2();
        let a = golden_pair(&ks);
        let cop = construct_c(&ks, &a, &ConstructOptions::default()).unwrap();
        let h = hermitize(&ks, &a, &cop).unwrap();
        let defect = linalg::hermitian_defect(&h) / linalg::spectral_norm(&h);
        assert!(defect < 1e-10, "defect {defect:.3e}");
        let mut w = linalg::eigvalsh(&linalg::hermitian_part(&h)).unwrap().to_vec();
        w.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let s5 = 5.0_f64.sqrt();
        assert!((w[0] - (1.0 - s5) / 2.0).abs() < 1e-10);
        assert!((w[1] - (1.0 + s5) / 2.0).abs() < 1e-10);
    }

    #[test]
    fn gram_of_identity_basis() {
        let ks = ks2();
        let t = validate_transition(
            &ks,
            array![[c(0.0, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.0, 0.0)]],
        )
        .unwrap();
        let cop = c_from_transition(&ks, &t).unwrap();
        let basis = SubspaceBasis::new(linalg::identity(2)).unwrap();
        let g = c_inner_gram(&ks, &cop, &basis).unwrap();
        let expect = array![
            [c(5.0 / 3.0, 0.0), c(-4.0 / 3.0, 0.0)],
            [c(-4.0 / 3.0, 0.0), c(5.0 / 3.0, 0.0)]
        ];
        assert!(linalg::spectral_norm(&(&g - &expect)) < 1e-13);
        // spectrum within [(1-t)/(1+t), (1+t)/(1-t)] = [1/3, 3]
        let w = linalg::eigvalsh(&linalg::hermitian_part(&g)).unwrap();
        assert!(w[0] > 1.0 / 3.0 - 1e-12 && w[1] < 3.0 + 1e-12);
        // C = J gives the identity Gram
        let cj = COperator::validate(&ks, ks.j().clone(), tol::VER_TOL).unwrap();
        let g = c_inner_gram(&ks, &cj, &basis).unwrap();
        assert!(linalg::spectral_norm(&(g - linalg::identity(2))) < 1e-14);
    }

    #[test]
    fn foldy_wouthuysen_intertwines() {
        let ks = ks2();
        // C = J gives U = I
        let cj = COperator::validate(&ks, ks.j().clone(), tol::VER_TOL).unwrap();
        let u = foldy_wouthuysen(&ks, &cj).unwrap();
        assert!(linalg::spectral_norm(&(&u - &linalg::identity(2))) < 1e-14);

        let t = validate_transition(
            &ks,
            array![[c(0.0, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.0, 0.0)]],
        )
        .unwrap();
        let cop = c_from_transition(&ks, &t).unwrap();
        let u = foldy_wouthuysen(&ks, &cop).unwrap();
        let residual = linalg::spectral_norm(&(cop.matrix().dot(&u) - u.dot(ks.j())));
        assert!(residual <= 1e-12);
    }

    #[test]
    fn block_diagonalize_golden_example() {
        let ks = ks2();
        let a = golden_pair(&ks);
        let cop = construct_c(&ks, &a, &ConstructOptions::default()).unwrap();
        let blocks = block_diagonalize(&ks, &a, &cop).unwrap();
        let norm_a = linalg::spectral_norm(a.matrix());
        assert!(blocks.offdiag_residual <= 1e-10 * norm_a);
        let s5 = 5.0_f64.sqrt();
        assert!((blocks.block_plus[(0, 0)].re - (1.0 + s5) / 2.0).abs() < 1e-10);
        assert!((blocks.block_minus[(0, 0)].re - (1.0 - s5) / 2.0).abs() < 1e-10);
    }

    #[test]
    fn block_diagonalize_j_case() {
        let ks = KreinStructure::canonical(2, 2).unwrap();
        let a = JSelfAdjointOperator::new(&ks, ks.j().clone()).unwrap();
        let cop = COperator::validate(&ks, ks.j().clone(), tol::VER_TOL).unwrap();
        let blocks = block_diagonalize(&ks, &a, &cop).unwrap();
        assert!(blocks.offdiag_residual < 1e-13);
        assert!(linalg::spectral_norm(&(blocks.block_plus - linalg::identity(2))) < 1e-13);
        assert!(
            linalg::spectral_norm(&(blocks.block_minus + linalg::identity(2))) < 1e-13
        );
    }

    #[test]
    fn adjoint_pair_verifies() {
        let ks = ks2();
        let a = golden_pair(&ks);
        let cop = construct_c(&ks, &a, &ConstructOptions::default()).unwrap();
        let (a_star, c_star) = adjoint_c_symmetry(&ks, &a, &cop).unwrap();
        let report = verify_c_symmetry(&ks, &a_star, c_star.matrix(), tol::VER_TOL).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn c_differs_from_j_for_nonzero_transition() {
        let ks = ks2();
        let t = validate_transition(
            &ks,
            array![[c(0.0, 0.0), c(0.5, 0.0)], [c(0.5, 0.0), c(0.0, 0.0)]],
        )
        .unwrap();
        let cop = c_from_transition(&ks, &t).unwrap();
        assert!(linalg::spectral_norm(&(cop.matrix() - ks.j())) > 1e-6);
    }
}
