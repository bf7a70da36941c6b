//! Finite-dimensional Krein-space primitives.
//!
//! A Krein structure is a Hilbert space C^n equipped with a fundamental
//! symmetry J (Hermitian involution). J induces the indefinite metric
//! `[x, y] = (Jx, y)` and the fundamental projectors `P+- = (I +- J)/2`,
//! splitting the space into a positive part and a negative part. Subspaces
//! are represented by explicit full-rank bases and classified by the spectrum
//! of their indefinite Gram matrices.

use ndarray::{Array1, Axis};
use num_complex::Complex64;

use crate::error::Error;
use crate::linalg::{self, CMat, CVec};
use crate::tol;

/// A fundamental symmetry together with its cached projectors and an
/// orthonormal basis of each eigenspace.
///
/// J may be any Hermitian involution, not just a signature matrix; the grid
/// models use parity, which is far from diagonal. The canonical bases come
/// from one Hermitian eigendecomposition performed at construction.
#[derive(Debug, Clone)]
pub struct KreinStructure {
    j: CMat,
    p_plus: CMat,
    p_minus: CMat,
    basis_plus: CMat,
    basis_minus: CMat,
}

impl KreinStructure {
    /// Validate `j` as a fundamental symmetry and cache the derived data.
    ///
    /// Requirements: square, Hermitian and involutive within `TOL_ALG`, and
    /// both eigenspaces nontrivial (a definite J induces a Hilbert, not a
    /// Krein, geometry).
    pub fn new(j: CMat) -> Result<Self, Error> {
        let n = j.nrows();
        if j.ncols() != n {
            return Err(Error::NotSquare { rows: j.nrows(), cols: j.ncols() });
        }
        let herm = linalg::hermitian_defect(&j);
        if herm > tol::TOL_ALG {
            return Err(Error::InvalidFundamentalSymmetry {
                reason: "not Hermitian",
                defect: herm,
            });
        }
        let invol = linalg::spectral_norm(&(j.dot(&j) - linalg::identity(n)));
        if invol > tol::TOL_ALG {
            return Err(Error::InvalidFundamentalSymmetry {
                reason: "not an involution",
                defect: invol,
            });
        }
        let eye = linalg::identity(n);
        let p_plus = (&eye + &j).mapv(|z| 0.5 * z);
        let p_minus = (&eye - &j).mapv(|z| 0.5 * z);

        // Eigenvalues are +-1; eigh returns them ascending, so the negative
        // eigenspace comes first.
        let (w, v) = linalg::eigh(&j)?;
        let n_minus = w.iter().filter(|&&x| x < 0.0).count();
        if n_minus == 0 || n_minus == n {
            return Err(Error::DefiniteMetric);
        }
        let basis_minus = v.slice_axis(Axis(1), (0..n_minus).into()).to_owned();
        let basis_plus = v.slice_axis(Axis(1), (n_minus..n).into()).to_owned();

        Ok(Self { j, p_plus, p_minus, basis_plus, basis_minus })
    }

    /// The signature structure diag(I_p, -I_q).
    pub fn canonical(n_plus: usize, n_minus: usize) -> Result<Self, Error> {
        let n = n_plus + n_minus;
        let mut j = CMat::zeros((n, n));
        for i in 0..n_plus {
            j[(i, i)] = Complex64::new(1.0, 0.0);
        }
        for i in n_plus..n {
            j[(i, i)] = Complex64::new(-1.0, 0.0);
        }
        Self::new(j)
    }

    /// A structure with signs given entrywise (all +-1), e.g. `&[1.0, -1.0]`.
    pub fn from_signature(signs: &[f64]) -> Result<Self, Error> {
        let n = signs.len();
        let mut j = CMat::zeros((n, n));
        for (i, &s) in signs.iter().enumerate() {
            j[(i, i)] = Complex64::new(s, 0.0);
        }
        Self::new(j)
    }

    pub fn dim(&self) -> usize {
        self.j.nrows()
    }

    pub fn j(&self) -> &CMat {
        &self.j
    }

    pub fn p_plus(&self) -> &CMat {
        &self.p_plus
    }

    pub fn p_minus(&self) -> &CMat {
        &self.p_minus
    }

    /// Orthonormal basis of the positive eigenspace of J (columns).
    pub fn basis_plus(&self) -> &CMat {
        &self.basis_plus
    }

    /// Orthonormal basis of the negative eigenspace of J (columns).
    pub fn basis_minus(&self) -> &CMat {
        &self.basis_minus
    }

    pub fn rank_plus(&self) -> usize {
        self.basis_plus.ncols()
    }

    pub fn rank_minus(&self) -> usize {
        self.basis_minus.ncols()
    }

    /// The indefinite metric `[x, y] = (Jx, y)`, antilinear in `x`.
    ///
    /// Conjugate symmetry `[x, y] = conj([y, x])` holds because J is
    /// Hermitian.
    pub fn indefinite_inner(&self, x: &CVec, y: &CVec) -> Result<Complex64, Error> {
        let n = self.dim();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        if y.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: y.len() });
        }
        let jy = self.j.dot(y);
        Ok(x.iter().zip(jy.iter()).map(|(a, b)| a.conj() * b).sum())
    }

    /// The J-adjoint `J A^* J`. A is J-self-adjoint exactly when this is a
    /// fixed point.
    pub fn j_adjoint(&self, a: &CMat) -> Result<CMat, Error> {
        let n = self.dim();
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.nrows().max(a.ncols()) });
        }
        Ok(self.j.dot(&linalg::adjoint(a)).dot(&self.j))
    }

    /// Indefinite Gram matrix `G = B^* J B` of a basis.
    pub fn gram(&self, basis: &SubspaceBasis) -> Result<CMat, Error> {
        let b = basis.columns();
        if b.nrows() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: b.nrows() });
        }
        Ok(linalg::adjoint(b).dot(&self.j).dot(b))
    }
}

/// Explicit basis of a subspace: an n x k matrix of full column rank.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    columns: CMat,
}

impl SubspaceBasis {
    /// Validate full column rank (singular values above `RANK_TOL * sigma_max`).
    pub fn new(columns: CMat) -> Result<Self, Error> {
        let k = columns.ncols();
        if k == 0 || k > columns.nrows() {
            return Err(Error::RankDeficient { rank: 0, cols: k });
        }
        let r = linalg::rank(&columns, tol::RANK_TOL)?;
        if r != k {
            return Err(Error::RankDeficient { rank: r, cols: k });
        }
        Ok(Self { columns })
    }

    pub fn columns(&self) -> &CMat {
        &self.columns
    }

    /// Subspace dimension.
    pub fn dim(&self) -> usize {
        self.columns.ncols()
    }

    /// Ambient dimension.
    pub fn ambient_dim(&self) -> usize {
        self.columns.nrows()
    }

    /// Span equality via principal angles.
    pub fn same_span(&self, other: &SubspaceBasis) -> Result<bool, Error> {
        linalg::same_subspace(&self.columns, &other.columns, tol::ANGLE_TOL)
    }
}

/// Sign class of a subspace under the indefinite metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceTag {
    Positive,
    Negative,
    Neutral,
    Indefinite,
}

impl std::fmt::Display for SubspaceTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            SubspaceTag::Positive => "positive",
            SubspaceTag::Negative => "negative",
            SubspaceTag::Neutral => "neutral",
            SubspaceTag::Indefinite => "indefinite",
        };
        f.write_str(s)
    }
}

/// Classification result: the tag and the smallest |eigenvalue| of the
/// indefinite Gram matrix.
#[derive(Debug, Clone, Copy)]
pub struct SubspaceClass {
    pub tag: SubspaceTag,
    pub margin: f64,
}

/// Classify a subspace by the spectrum of `B^* J B`.
///
/// The zero threshold is `CLASS_TOL` times the Euclidean Gram norm
/// `||B^* B||`, an upper bound for the indefinite Gram spectral radius (J is
/// unitary). Scaling by the indefinite Gram itself would make the neutral tag
/// unreachable: a neutral basis has an indefinite Gram of pure rounding noise.
pub fn classify_subspace(ks: &KreinStructure, basis: &SubspaceBasis) -> Result<SubspaceClass, Error> {
    let g = ks.gram(basis)?;
    let scale = {
        let b = basis.columns();
        let s = linalg::singular_values(b)?;
        let smax = s.iter().copied().fold(0.0, f64::max);
        smax * smax
    };
    let thr = tol::CLASS_TOL * scale;
    let w = linalg::eigvalsh(&linalg::hermitian_part(&g))?;
    let margin = w.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    let all_pos = w.iter().all(|&x| x > thr);
    let all_neg = w.iter().all(|&x| x < -thr);
    let all_zero = w.iter().all(|&x| x.abs() <= thr);
    let tag = if all_pos {
        SubspaceTag::Positive
    } else if all_neg {
        SubspaceTag::Negative
    } else if all_zero {
        SubspaceTag::Neutral
    } else {
        SubspaceTag::Indefinite
    };
    Ok(SubspaceClass { tag, margin })
}

/// Basis of the J-orthogonal complement `{x : [x, y] = 0 for all y in span B}`,
/// i.e. the null space of `B^* J`. Dimensions add up to n.
pub fn j_orthogonal_complement(
    ks: &KreinStructure,
    basis: &SubspaceBasis,
) -> Result<SubspaceBasis, Error> {
    let b = basis.columns();
    if b.nrows() != ks.dim() {
        return Err(Error::DimensionMismatch { expected: ks.dim(), found: b.nrows() });
    }
    let m = linalg::adjoint(b).dot(ks.j());
    let ns = linalg::null_space(&m, tol::RANK_TOL)?;
    debug_assert_eq!(ns.ncols() + basis.dim(), ks.dim());
    SubspaceBasis::new(ns)
}

/// Eigenvalues of the real part of a Hermitian Gram, exposed for reporting.
pub fn gram_spectrum(ks: &KreinStructure, basis: &SubspaceBasis) -> Result<Array1<f64>, Error> {
    let g = ks.gram(basis)?;
    linalg::eigvalsh(&linalg::hermitian_part(&g))
}
