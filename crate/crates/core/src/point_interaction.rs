//! Discretized Schrödinger operator with a parity-time-symmetric zero-range
//! potential at the origin, its closed-form C and T operators, and the
//! degeneration at the critical coupling.
//!
//! The grid is staggered and symmetric: N nodes per half-line at
//! `x = +-(h/2 + k h)`, so the origin is never a node. Parity `P` (index
//! reversal) and the sign operator `R = diag(sign x)` are then exact
//! involutions with `PR = -RP`, and the whole closed-form operator algebra
//!
//! ```text
//! C = alpha P + i beta R,        alpha = (g^2+4)/|g^2-4|, beta = 4g/|g^2-4|,
//! T = i min(g/2, 2/g) R P,       C = P (I-T)(I+T)^{-1},
//! ```
//!
//! holds to rounding on any grid. Discretization error is confined to the
//! kinetic operator `A`.
//!
//! The interface at the origin couples the two half-lines through
//!
//! ```text
//! (1 - ig/2) f(+0) = (1 + ig/2) f(-0),
//! (1 + ig/2) f'(+0) = (1 - ig/2) f'(-0),
//! ```
//!
//! which come from matching the delta and delta' coefficients of the
//! regularized potential against the distributional derivative jump. The
//! traces are discretized at second order across the interface (ghost node
//! and innermost node of each half-line), and the two ghosts are eliminated
//! by solving the resulting 2x2 system. That elimination is the unique
//! consistent local closure that keeps `A` exactly P-self-adjoint, and it
//! also commutes with the closed-form C to rounding.
//!
//! At g = 2 the ghost system is singular: the two interface conditions
//! collapse onto the constraint `f(+0) = i f(-0)` along a neutral direction,
//! which is the grid shadow of the critical degeneration. The assembled
//! operator there imposes that constraint as a large nilpotent rank-one term
//! along the neutral interface direction, still exactly P-self-adjoint; its
//! spectrum is genuinely non-real and the constructive algorithm reports the
//! degeneration instead of producing a C.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::csymmetry::{construct_c, ConstructOptions, JSelfAdjointOperator};
use crate::error::Error;
use crate::krein::{KreinStructure, SubspaceBasis};
use crate::linalg::{self, CMat};
use crate::tol;
use crate::transition::{dual_pair_from_transition, validate_transition, DualPair, TransitionOperator};

/// Penalty scale of the critical-coupling realization, relative to the
/// kinetic scale 1/h^2. Large enough that the leaked Laplacian coupling at
/// the interface stays below `DISC_TOL` in the J-defect, small enough for
/// stable eigensolves.
const CRITICAL_PENALTY: f64 = 1e7;

/// Symmetric staggered grid on [-L, L] excluding the origin: nodes
/// `x_i = (i + 1/2 - N) h` for `i = 0..2N`, spacing `h = L/N`.
#[derive(Debug, Clone, Copy)]
pub struct SymmetricGrid {
    half_points: usize,
    half_length: f64,
}

impl SymmetricGrid {
    pub fn new(half_points: usize, half_length: f64) -> Result<Self, Error> {
        if half_points < 2 {
            return Err(Error::InvalidGrid { reason: "need at least two nodes per half-line" });
        }
        if !half_length.is_finite() || half_length <= 0.0 {
            return Err(Error::InvalidGrid { reason: "half-length must be positive and finite" });
        }
        Ok(Self { half_points, half_length })
    }

    /// Nodes per half-line.
    pub fn half_points(&self) -> usize {
        self.half_points
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn spacing(&self) -> f64 {
        self.half_length / self.half_points as f64
    }

    /// Total dimension 2N.
    pub fn dim(&self) -> usize {
        2 * self.half_points
    }

    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        let n = self.half_points as f64;
        (0..self.dim()).map(|i| (i as f64 + 0.5 - n) * h).collect()
    }

    /// Parity: index reversal, `(Pf)_i = f_{2N-1-i}`.
    pub fn parity(&self) -> CMat {
        let n = self.dim();
        let mut p = CMat::zeros((n, n));
        for i in 0..n {
            p[(i, n - 1 - i)] = Complex64::new(1.0, 0.0);
        }
        p
    }

    /// `R = diag(sign x)`.
    pub fn sign(&self) -> CMat {
        let n = self.dim();
        let half = self.half_points;
        let mut r = CMat::zeros((n, n));
        for i in 0..n {
            let s = if i < half { -1.0 } else { 1.0 };
            r[(i, i)] = Complex64::new(s, 0.0);
        }
        r
    }

    /// The Krein structure with J = parity.
    pub fn krein(&self) -> Result<KreinStructure, Error> {
        KreinStructure::new(self.parity())
    }

    /// Orthonormal grid-even vectors `(e_i + e_{sigma i})/sqrt2`, one per
    /// right-half node (columns).
    pub fn even_basis(&self) -> CMat {
        let n = self.dim();
        let half = self.half_points;
        let mut b = CMat::zeros((n, half));
        let w = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for k in 0..half {
            b[(half + k, k)] = w;
            b[(half - 1 - k, k)] = w;
        }
        b
    }
}

/// The hyperbolic coefficients `alpha = (g^2+4)/|g^2-4|`, `beta = 4g/|g^2-4|`
/// with `alpha^2 - beta^2 = 1`. Undefined at the critical coupling.
pub fn alpha_beta(gamma: f64) -> Result<(f64, f64), Error> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidGrid { reason: "gamma must be a finite nonnegative number" });
    }
    if (gamma - 2.0).abs() <= tol::GAMMA_CRITICAL_EPS {
        return Err(Error::GammaCritical { gamma });
    }
    let d = (gamma * gamma - 4.0).abs();
    Ok(((gamma * gamma + 4.0) / d, 4.0 * gamma / d))
}

/// Interface trace ratios: `f(+0) = a f(-0)` and `f'(+0) = b f'(-0)` with
/// `a = (1 + ig/2)/(1 - ig/2)` and `b = 1/a`. Both are unimodular; at g = 2
/// they become `i` and `-i`.
pub fn trace_ratios(gamma: f64) -> (Complex64, Complex64) {
    let c = Complex64::new(0.0, gamma / 2.0);
    let one = Complex64::new(1.0, 0.0);
    let a = (one + c) / (one - c);
    (a, one / a)
}

/// `C = alpha P + i beta R`; spectral norm `(g+2)/|g-2|`.
pub fn build_c_gamma(grid: &SymmetricGrid, gamma: f64) -> Result<CMat, Error> {
    let (alpha, beta) = alpha_beta(gamma)?;
    let p = grid.parity();
    let r = grid.sign();
    Ok(p.mapv(|z| Complex64::new(alpha, 0.0) * z) + r.mapv(|z| Complex64::new(0.0, beta) * z))
}

/// `T = i min(g/2, 2/g) R P`, validated against J = parity.
pub fn build_t_gamma(grid: &SymmetricGrid, gamma: f64) -> Result<TransitionOperator, Error> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidGrid { reason: "gamma must be a finite nonnegative number" });
    }
    if (gamma - 2.0).abs() <= tol::GAMMA_CRITICAL_EPS {
        return Err(Error::GammaCritical { gamma });
    }
    let t_scale = if gamma < 2.0 { gamma / 2.0 } else { 2.0 / gamma };
    let rp = grid.sign().dot(&grid.parity());
    let t = rp.mapv(|z| Complex64::new(0.0, t_scale) * z);
    let ks = grid.krein()?;
    validate_transition(&ks, t)
}

/// Interface row coefficients of the ghost elimination away from the
/// critical coupling: the innermost rows become
///
/// ```text
/// h^2 (Af)_R = (2 - mu) u1 - u2 - kappa v1
/// h^2 (Af)_L = (2 + mu) v1 - v2 - kappa u1
/// ```
///
/// with `kappa = (1 + g^2/4)/(1 - g^2/4)` and `mu = ig/(1 - g^2/4)`.
fn interface_coefficients(gamma: f64) -> (f64, Complex64) {
    let d = 1.0 - gamma * gamma / 4.0;
    ((1.0 + gamma * gamma / 4.0) / d, Complex64::new(0.0, gamma / d))
}

fn assemble_regular(grid: &SymmetricGrid, gamma: f64) -> CMat {
    let n = grid.dim();
    let half = grid.half_points;
    let h2 = grid.spacing() * grid.spacing();
    let mut a = CMat::zeros((n, n));
    let two = Complex64::new(2.0, 0.0);
    let neg_one = Complex64::new(-1.0, 0.0);
    for i in 0..n {
        a[(i, i)] = two;
        if i > 0 {
            a[(i, i - 1)] = neg_one;
        }
        if i + 1 < n {
            a[(i, i + 1)] = neg_one;
        }
    }
    // Dirichlet wall at +-L sits halfway between the outermost node and its
    // ghost; reflecting the ghost gives diagonal 3.
    a[(0, 0)] = Complex64::new(3.0, 0.0);
    a[(n - 1, n - 1)] = Complex64::new(3.0, 0.0);

    let (il, ir) = (half - 1, half);
    let (kappa, mu) = interface_coefficients(gamma);
    a[(ir, ir)] = two - mu;
    a[(ir, il)] = Complex64::new(-kappa, 0.0);
    a[(il, il)] = two + mu;
    a[(il, ir)] = Complex64::new(-kappa, 0.0);

    a.mapv(|z| z / h2)
}

fn assemble_critical(grid: &SymmetricGrid) -> CMat {
    let half = grid.half_points;
    let h2 = grid.spacing() * grid.spacing();
    // free Laplacian plus the rank-one constraint penalty: both interface
    // conditions degenerate to u1 = i v1 along the neutral direction
    // (e_L + i e_R); the penalty term xi phi^H with xi = e_L + i e_R and
    // phi = i e_L + e_R is nilpotent, supported on that direction, and
    // exactly P-self-adjoint.
    let mut a = assemble_regular(grid, 0.0);
    let (il, ir) = (half - 1, half);
    let s = Complex64::new(CRITICAL_PENALTY / h2, 0.0);
    let i = Complex64::new(0.0, 1.0);
    // xi phi^H on the (il, ir) plane: [[-i, 1], [1, i]]
    a[(il, il)] += s * (-i);
    a[(il, ir)] += s;
    a[(ir, il)] += s;
    a[(ir, ir)] += s * i;
    a
}

/// Assemble the grid operator: three-point kinetic stencil on each half-line,
/// Dirichlet walls at `+-L`, and the interface coupling at the origin. The
/// result is exactly P-self-adjoint for every coupling, including g = 2
/// (critical realization).
pub fn build_a_gamma(grid: &SymmetricGrid, gamma: f64) -> Result<JSelfAdjointOperator, Error> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::InvalidGrid { reason: "gamma must be a finite nonnegative number" });
    }
    let a = if (gamma - 2.0).abs() <= tol::GAMMA_CRITICAL_EPS {
        assemble_critical(grid)
    } else {
        assemble_regular(grid, gamma)
    };
    let ks = grid.krein()?;
    JSelfAdjointOperator::with_tolerance(&ks, a, tol::DISC_TOL)
}

/// The invariant dual pair of the grid model, `L+- = (I + T) H+-`.
pub fn dual_pair_gamma(grid: &SymmetricGrid, gamma: f64) -> Result<DualPair, Error> {
    let ks = grid.krein()?;
    let t = build_t_gamma(grid, gamma)?;
    dual_pair_from_transition(&ks, &t)
}

/// The neutral subspace that both invariant subspaces collapse onto at the
/// critical coupling: span of `e + i R e` over grid-even vectors `e`.
/// Dimension N; identical to the span built from odd vectors `o - i R o`.
pub fn neutral_subspace_at_2(grid: &SymmetricGrid) -> Result<SubspaceBasis, Error> {
    let e = grid.even_basis();
    let re = grid.sign().dot(&e);
    let cols = &e + &re.mapv(|z| Complex64::new(0.0, 1.0) * z);
    SubspaceBasis::new(cols)
}

/// A fully assembled grid model at one coupling: the operator, the grid
/// involutions, and the closed-form C and T where they exist (away from the
/// critical coupling).
#[derive(Debug, Clone)]
pub struct GammaModel {
    pub grid: SymmetricGrid,
    pub gamma: f64,
    pub a: JSelfAdjointOperator,
    pub parity: CMat,
    pub sign: CMat,
    pub c: Option<CMat>,
    pub t: Option<TransitionOperator>,
    pub alpha_beta: Option<(f64, f64)>,
}

impl GammaModel {
    pub fn assemble(grid: SymmetricGrid, gamma: f64) -> Result<Self, Error> {
        let a = build_a_gamma(&grid, gamma)?;
        let critical = (gamma - 2.0).abs() <= tol::GAMMA_CRITICAL_EPS;
        let (c, t, ab) = if critical {
            (None, None, None)
        } else {
            (
                Some(build_c_gamma(&grid, gamma)?),
                Some(build_t_gamma(&grid, gamma)?),
                Some(alpha_beta(gamma)?),
            )
        };
        Ok(Self {
            parity: grid.parity(),
            sign: grid.sign(),
            grid,
            gamma,
            a,
            c,
            t,
            alpha_beta: ab,
        })
    }

    pub fn is_critical(&self) -> bool {
        self.c.is_none()
    }
}

/// One row of a coupling sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub gamma: f64,
    /// max |Im lambda(A)| over the spectrum of the assembled operator.
    pub max_im_lambda: f64,
    /// ||C|| where the closed form is defined.
    pub norm_c: Option<f64>,
    /// cond(JC) where defined.
    pub cond_f: Option<f64>,
    /// Outcome of the constructive algorithm on the assembled operator.
    pub status: String,
}

/// Sweep over couplings: assemble, eigensolve, measure the closed-form
/// operators and run the constructive algorithm. Rows are computed in
/// parallel and returned in input order.
pub fn gamma_sweep(grid: &SymmetricGrid, gammas: &[f64]) -> Result<Vec<SweepRow>, Error> {
    let ks = grid.krein()?;
    let rows: Vec<Result<SweepRow, Error>> = gammas
        .par_iter()
        .map(|&gamma| sweep_row(grid, &ks, gamma))
        .collect();
    rows.into_iter().collect()
}

fn sweep_row(grid: &SymmetricGrid, ks: &KreinStructure, gamma: f64) -> Result<SweepRow, Error> {
    let a = build_a_gamma(grid, gamma)?;
    let w = linalg::eigvals(a.matrix())?;
    let max_im_lambda = w.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let (norm_c, cond_f) = match build_c_gamma(grid, gamma) {
        Ok(c) => {
            let norm = linalg::spectral_norm(&c);
            let f = ks.j().dot(&c);
            let ev = linalg::eigvalsh(&linalg::hermitian_part(&f))?;
            let max = ev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let min = ev.iter().copied().fold(f64::INFINITY, f64::min);
            (Some(norm), Some(max / min))
        }
        Err(Error::GammaCritical { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    let status = match construct_c(ks, &a, &ConstructOptions::default()) {
        Ok(_) => "ok".to_string(),
        Err(d) => d.status_code().to_string(),
    };
    Ok(SweepRow { gamma, max_im_lambda, norm_c, cond_f, status })
}
