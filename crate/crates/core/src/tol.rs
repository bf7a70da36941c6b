//! Default numerical tolerances.
//!
//! All dense algebra runs in f64. The defaults leave headroom above the
//! ~1e-13 defects observed for well-conditioned inputs at the dimensions this
//! crate targets (n <= 400); conditioning-sensitive checks scale them by the
//! relevant condition number at the call site.

/// Algebraic identity checks on exact structure (involutions, projector
/// algebra, anticommutation). Relative to the operand norms.
pub const TOL_ALG: f64 = 1e-10;

/// Subspace classification threshold, relative to the Euclidean Gram norm of
/// the basis. Indefinite-metric Gram eigenvalues below this count as zero.
pub const CLASS_TOL: f64 = 1e-8;

/// Rank decisions: singular values below `RANK_TOL * sigma_max` are zero.
pub const RANK_TOL: f64 = 1e-12;

/// A transition operator is "strict" when its norm is below `1 - STRICT_MARGIN`.
/// Norms inside the margin trigger near-singular conditioning errors.
pub const STRICT_MARGIN: f64 = 1e-8;

/// C-symmetry verification: involution, metric positivity, commutation.
pub const VER_TOL: f64 = 1e-8;

/// Spectral reality threshold: |Im lambda| above `SPEC_TOL * ||A||` means the
/// spectrum is genuinely complex.
pub const SPEC_TOL: f64 = 1e-8;

/// Eigenvectors with |[v,v]| below `NEUTRAL_TOL * ||v||^2` are neutral and
/// abort the dual-pair construction.
pub const NEUTRAL_TOL: f64 = 1e-8;

/// Eigenvector-matrix condition cap; beyond it the operator is treated as
/// numerically defective.
pub const COND_CAP: f64 = 1e8;

/// Hermiticity of the similarity-transformed operator.
pub const HERM_TOL: f64 = 1e-9;

/// Off-diagonal residual of the block decomposition, relative to ||A||.
pub const BLK_TOL: f64 = 1e-9;

/// Discretization defects of the grid models (relative, at N = 200).
pub const DISC_TOL: f64 = 1e-6;

/// Residual bound for linear solves, relative to the right-hand side.
pub const SOLVE_RESIDUAL: f64 = 1e-10;

/// Two subspaces are equal when all principal-angle cosines are within this
/// distance of one.
pub const ANGLE_TOL: f64 = 1e-8;

/// Distance from the critical coupling gamma = 2 below which the closed-form
/// C and T operators are rejected as undefined.
pub const GAMMA_CRITICAL_EPS: f64 = 1e-12;
