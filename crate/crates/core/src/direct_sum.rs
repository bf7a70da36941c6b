//! Block direct sums of grid models.
//!
//! A sequence of couplings defines `A = diag(A_{g_1}, ..., A_{g_M})` on the
//! orthogonal sum of M copies of the grid space, with block parity as the
//! fundamental symmetry. Each block has its own closed-form C and T, so the
//! direct sum always carries a blockwise C-symmetry; but when the couplings
//! accumulate at the critical value the block norms `(g_i+2)/|g_i-2|` are
//! unbounded, and the truncations exhibit exactly that: every finite M passes
//! verification while `||C_M||` diverges and `||T_M||` climbs to one. That
//! divergence is the finite-dimensional shadow of a C operator that exists
//! only as an unbounded map.
//!
//! Matrices stay in block form throughout; spectral norms and verification
//! defects of block-diagonal operators reduce exactly to blockwise maxima
//! (minima for the positivity margin), so nothing requires assembling the
//! full dense sum.

use rayon::prelude::*;

use crate::csymmetry::{verify_c_symmetry, VerificationReport};
use crate::error::Error;
use crate::linalg::{self, CMat};
use crate::point_interaction::{build_a_gamma, build_c_gamma, build_t_gamma, SymmetricGrid};
use crate::tol;

/// A block-diagonal operator kept as its list of dense blocks.
#[derive(Debug, Clone)]
pub struct BlockDiagonal {
    blocks: Vec<CMat>,
}

impl BlockDiagonal {
    pub fn new(blocks: Vec<CMat>) -> Self {
        Self { blocks }
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows()).sum()
    }

    /// Spectral norm: the max over blocks (exact for block-diagonal form).
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    /// Assemble the dense matrix; intended for small sums and cross-checks.
    pub fn to_dense(&self) -> CMat {
        let n = self.dim();
        let mut m = CMat::zeros((n, n));
        let mut offset = 0;
        for b in &self.blocks {
            let k = b.nrows();
            m.slice_mut(ndarray::s![offset..offset + k, offset..offset + k]).assign(b);
            offset += k;
        }
        m
    }
}

/// Specification of a truncated direct sum: the couplings and the shared
/// per-block grid.
#[derive(Debug, Clone)]
pub struct DirectSumSpec {
    gammas: Vec<f64>,
    grid: SymmetricGrid,
}

impl DirectSumSpec {
    pub fn new(gammas: Vec<f64>, grid: SymmetricGrid) -> Result<Self, Error> {
        if gammas.is_empty() {
            return Err(Error::InvalidDirectSum { reason: "need at least one block".into() });
        }
        for (i, &g) in gammas.iter().enumerate() {
            if !g.is_finite() || g < 0.0 {
                return Err(Error::InvalidDirectSum {
                    reason: format!("coupling {i} is not a finite nonnegative number"),
                });
            }
            if (g - 2.0).abs() <= tol::GAMMA_CRITICAL_EPS {
                return Err(Error::GammaCritical { gamma: g });
            }
        }
        Ok(Self { gammas, grid })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn grid(&self) -> &SymmetricGrid {
        &self.grid
    }

    pub fn num_blocks(&self) -> usize {
        self.gammas.len()
    }
}

/// An assembled truncation with its verification data.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub j: BlockDiagonal,
    pub a: BlockDiagonal,
    pub c: BlockDiagonal,
    pub t: BlockDiagonal,
    pub norm_t: f64,
    pub norm_c: f64,
    /// Condition number of the block metric F = JC: global extreme
    /// eigenvalues across blocks.
    pub cond_f: f64,
    pub block_reports: Vec<VerificationReport>,
    pub global_report: VerificationReport,
}

/// Assemble the truncation: per-block operators, blockwise verification, and
/// the global norms.
pub fn build_truncation(spec: &DirectSumSpec) -> Result<Truncation, Error> {
    let grid = *spec.grid();
    let ks = grid.krein()?;

    struct BlockData {
        a: CMat,
        c: CMat,
        t: CMat,
        norm_t: f64,
        norm_c: f64,
        f_min: f64,
        f_max: f64,
        report: VerificationReport,
    }

    let blocks: Vec<Result<BlockData, Error>> = spec
        .gammas()
        .par_iter()
        .map(|&gamma| {
            let a = build_a_gamma(&grid, gamma)?;
            let c = build_c_gamma(&grid, gamma)?;
            let t = build_t_gamma(&grid, gamma)?;
            let report = verify_c_symmetry(&ks, &a, &c, tol::VER_TOL)?;
            let f = ks.j().dot(&c);
            let ev = linalg::eigvalsh(&linalg::hermitian_part(&f))?;
            let f_min = ev.iter().copied().fold(f64::INFINITY, f64::min);
            let f_max = ev.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            Ok(BlockData {
                a: a.matrix().clone(),
                norm_c: linalg::spectral_norm(&c),
                c,
                norm_t: t.norm(),
                t: t.matrix().clone(),
                f_min,
                f_max,
                report,
            })
        })
        .collect();

    let mut a_blocks = Vec::with_capacity(spec.num_blocks());
    let mut c_blocks = Vec::with_capacity(spec.num_blocks());
    let mut t_blocks = Vec::with_capacity(spec.num_blocks());
    let mut j_blocks = Vec::with_capacity(spec.num_blocks());
    let mut reports = Vec::with_capacity(spec.num_blocks());
    let mut norm_t = 0.0_f64;
    let mut norm_c = 0.0_f64;
    let mut f_min = f64::INFINITY;
    let mut f_max = f64::NEG_INFINITY;
    for b in blocks {
        let b = b?;
        norm_t = norm_t.max(b.norm_t);
        norm_c = norm_c.max(b.norm_c);
        f_min = f_min.min(b.f_min);
        f_max = f_max.max(b.f_max);
        a_blocks.push(b.a);
        c_blocks.push(b.c);
        t_blocks.push(b.t);
        j_blocks.push(ks.j().clone());
        reports.push(b.report);
    }
    let global_report = reports
        .iter()
        .skip(1)
        .fold(reports[0], |acc, r| acc.combine(r));

    Ok(Truncation {
        j: BlockDiagonal::new(j_blocks),
        a: BlockDiagonal::new(a_blocks),
        c: BlockDiagonal::new(c_blocks),
        t: BlockDiagonal::new(t_blocks),
        norm_t,
        norm_c,
        cond_f: f_max / f_min,
        block_reports: reports,
        global_report,
    })
}

/// One row of the divergence table.
#[derive(Debug, Clone, Copy)]
pub struct TableRow {
    pub m: usize,
    pub norm_t: f64,
    pub norm_c: f64,
    pub cond_f: f64,
}

/// Norm growth over truncation sizes for a coupling sequence `gamma(i)`,
/// i = 1-based. Rows come back in the order of `m_values`.
pub fn unboundedness_table(
    gamma_of: impl Fn(usize) -> f64 + Sync,
    m_values: &[usize],
    grid: &SymmetricGrid,
) -> Result<Vec<TableRow>, Error> {
    m_values
        .par_iter()
        .map(|&m| {
            let gammas: Vec<f64> = (1..=m).map(&gamma_of).collect();
            let spec = DirectSumSpec::new(gammas, *grid)?;
            let tr = build_truncation(&spec)?;
            Ok(TableRow { m, norm_t: tr.norm_t, norm_c: tr.norm_c, cond_f: tr.cond_f })
        })
        .collect()
}

/// The sequence `gamma_i = 2 + 1/i`, which accumulates at the critical
/// coupling from above: `||C_M|| = 4M + 1` and `||T_M|| = 2M/(2M+1)`.
pub fn harmonic_gamma(i: usize) -> f64 {
    2.0 + 1.0 / i as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_interaction::gamma_sweep;

    fn small_grid() -> SymmetricGrid {
        SymmetricGrid::new(6, 12.0).unwrap()
    }

    #[test]
    fn rejects_critical_block() {
        assert!(matches!(
            DirectSumSpec::new(vec![1.0, 2.0], small_grid()),
            Err(Error::GammaCritical { .. })
        ));
        assert!(DirectSumSpec::new(vec![], small_grid()).is_err());
    }

    #[test]
    fn single_block_reduces_to_grid_model() {
        let grid = small_grid();
        let spec = DirectSumSpec::new(vec![4.0], grid).unwrap();
        let tr = build_truncation(&spec).unwrap();
        assert!((tr.norm_c - 3.0).abs() < 1e-12);
        assert!((tr.norm_t - 0.5).abs() < 1e-12);
        assert!(tr.global_report.passed());
        let rows = gamma_sweep(&grid, &[4.0]).unwrap();
        assert!((rows[0].norm_c.unwrap() - tr.norm_c).abs() < 1e-12);
    }

    #[test]
    fn harmonic_closed_forms() {
        let grid = small_grid();
        for (m, want_c) in [(5usize, 21.0), (10, 41.0)] {
            let gammas: Vec<f64> = (1..=m).map(harmonic_gamma).collect();
            let spec = DirectSumSpec::new(gammas, grid).unwrap();
            let tr = build_truncation(&spec).unwrap();
            assert!((tr.norm_c - want_c).abs() <= 1e-9 * want_c, "{}", tr.norm_c);
            let want_t = 2.0 * m as f64 / (2.0 * m as f64 + 1.0);
            assert!((tr.norm_t - want_t).abs() <= 1e-9, "{}", tr.norm_t);
            assert!((tr.cond_f - want_c * want_c).abs() <= 1e-6 * want_c * want_c);
            assert!(tr.global_report.passed());
        }
    }

    #[test]
    fn global_defects_match_dense_assembly() {
        // the blockwise max/min convention must agree with a dense global
        // verification on a small example
        let grid = small_grid();
        let spec = DirectSumSpec::new(vec![1.0, 4.0], grid).unwrap();
        let tr = build_truncation(&spec).unwrap();

        let j = tr.j.to_dense();
        let a = tr.a.to_dense();
        let c = tr.c.to_dense();
        let ks = crate::krein::KreinStructure::new(j).unwrap();
        let a = crate::csymmetry::JSelfAdjointOperator::new(&ks, a).unwrap();
        let dense = verify_c_symmetry(&ks, &a, &c, tol::VER_TOL).unwrap();
        assert!(dense.passed());
        assert!((dense.positivity_margin - tr.global_report.positivity_margin).abs() < 1e-10);
        // dense commutation normalizes by the global norms; both sides are
        // rounding-level here
        assert!(dense.commutation_defect.unwrap() < 1e-12);
        assert!(tr.global_report.commutation_defect.unwrap() < 1e-12);
    }

    #[test]
    fn bounded_regime_when_couplings_avoid_critical() {
        // inf |g_i - 2| > 0 keeps ||C|| below (sup g + 2)/inf |g - 2|
        let grid = small_grid();
        let gammas = vec![0.5, 1.0, 3.0, 4.0, 8.0];
        let sup_g = 8.0_f64;
        let inf_d = 1.0_f64;
        let spec = DirectSumSpec::new(gammas, grid).unwrap();
        let tr = build_truncation(&spec).unwrap();
        assert!(tr.norm_c <= (sup_g + 2.0) / inf_d + 1e-9);
    }

    #[test]
    fn table_rows_diverge_monotonically() {
        let grid = small_grid();
        let rows = unboundedness_table(harmonic_gamma, &[5, 10, 20], &grid).unwrap();
        assert_eq!(rows.len(), 3);
        for w in rows.windows(2) {
            assert!(w[1].norm_c > w[0].norm_c);
            assert!(w[1].norm_t > w[0].norm_t);
            assert!(w[1].norm_t < 1.0);
        }
        assert!((rows[2].norm_c - 81.0).abs() <= 1e-9 * 81.0);
        assert!((rows[2].cond_f - 6561.0).abs() <= 1e-6 * 6561.0);
    }
}
