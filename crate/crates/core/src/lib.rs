//! C-symmetries of J-self-adjoint operators in finite-dimensional Krein
//! spaces.
//!
//! A Krein space is C^n with an indefinite metric `[x, y] = (Jx, y)` induced
//! by a Hermitian involution J. Operators that are self-adjoint with respect
//! to this metric can still generate unitary dynamics, provided a hidden
//! involution C with `C^2 = I`, `JC > 0`, `AC = CA` exists: then
//! `(x, y)_C = (JC x, y)` is an equivalent positive product and A is similar
//! to a Hermitian matrix. This crate builds, verifies and exercises that
//! machinery:
//!
//! - [`krein`]: fundamental symmetries, the indefinite metric, subspace
//!   classification, J-adjoints.
//! - [`transition`]: transition operators T (Hermitian, J-anticommuting
//!   strict contractions), dual pairs, skew projectors, and the bijection
//!   `C = J (I-T)(I+T)^{-1}` with inverse `T = (I-F)(I+F)^{-1}`, `F = JC`.
//! - [`csymmetry`]: verification of the three defining clauses, constructive
//!   search for C through the eigendecomposition, Hermitization by the
//!   principal square root of F, and block diagonalization.
//! - [`point_interaction`]: a discretized Schrödinger operator with a
//!   parity-time-symmetric zero-range potential, its closed-form C and T,
//!   and the degeneration at the critical coupling.
//! - [`direct_sum`]: block direct sums whose C operators exist at every
//!   truncation while their norms diverge.
//! - [`io`]: the shared matrix file formats (JSON and CSV).
//! - [`testkit`]: seeded generators for randomized verification suites.

pub mod csymmetry;
pub mod direct_sum;
pub mod error;
pub mod io;
pub mod krein;
pub mod linalg;
pub mod point_interaction;
pub mod testkit;
pub mod tol;
pub mod transition;

pub use error::Error;
pub use krein::{classify_subspace, j_orthogonal_complement, KreinStructure, SubspaceBasis, SubspaceClass, SubspaceTag};
pub use csymmetry::{
    adjoint_c_symmetry, block_diagonalize, c_inner_gram, construct_c, foldy_wouthuysen, hermitize,
    verify_c_symmetry, COperator, ConstructOptions, Diagnostic, JSelfAdjointOperator,
    VerificationReport,
};
pub use transition::{
    c_from_transition, dual_pair_from_transition, oblique_projectors, transition_from_c,
    validate_transition, DualPair, TransitionOperator,
};
