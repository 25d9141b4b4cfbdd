//! Truncated block tridiagonal operators assembled from the closed-form
//! level blocks.

use nalgebra::DMatrix;

use crate::coeffs::{coeff_u, coeff_v, UCoeff, VCoeff};
use crate::error::{Error, Result};
use crate::params::ModelParameters;

/// Which of the two recurrence variables a raw block triple belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variable {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    J1,
    J2,
    P,
    J1Tilde,
    J2Tilde,
    /// tau * (J2 - J1), the only shape a continuous-time generator could take.
    GeneratorCandidate,
}

impl OperatorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            OperatorKind::J1 => "J1",
            OperatorKind::J2 => "J2",
            OperatorKind::P => "P",
            OperatorKind::J1Tilde => "J1_TILDE",
            OperatorKind::J2Tilde => "J2_TILDE",
            OperatorKind::GeneratorCandidate => "GENERATOR_CANDIDATE",
        }
    }
}

/// The three blocks of one level: `a` (n+1)x(n+2) level-raising, `b`
/// (n+1)x(n+1) same-level, `c` (n+1)xn level-lowering (empty at n = 0).
#[derive(Clone, Debug)]
pub struct LevelBlocks {
    pub level: usize,
    pub a: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub c: DMatrix<f64>,
}

impl LevelBlocks {
    /// Row sums of [c | b | a], which equal 1 for the raw recurrence blocks.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.b.nrows())
            .map(|k| self.c.row(k).sum() + self.b.row(k).sum() + self.a.row(k).sum())
            .collect()
    }
}

/// Closed-form blocks of one variable at one level.
pub fn raw_level_blocks(var: Variable, n: usize, p: &ModelParameters) -> Result<LevelBlocks> {
    let rows = n + 1;
    let mut a = DMatrix::zeros(rows, n + 2);
    let mut b = DMatrix::zeros(rows, rows);
    let mut c = DMatrix::zeros(rows, n);
    match var {
        Variable::U => {
            for k in 0..=n {
                a[(k, k)] = coeff_u(n, k, UCoeff::A, p)?;
                b[(k, k)] = coeff_u(n, k, UCoeff::B, p)?;
                if k + 1 <= n {
                    c[(k, k)] = coeff_u(n, k, UCoeff::C, p)?;
                    b[(k, k + 1)] = coeff_u(n, k, UCoeff::E, p)?;
                }
                if k >= 1 {
                    b[(k, k - 1)] = coeff_u(n, k, UCoeff::D, p)?;
                }
            }
        }
        Variable::V => {
            for k in 0..=n {
                a[(k, k)] = coeff_v(n, k, VCoeff::A2, p)?;
                a[(k, k + 1)] = coeff_v(n, k, VCoeff::A3, p)?;
                b[(k, k)] = coeff_v(n, k, VCoeff::B2, p)?;
                if k >= 1 {
                    a[(k, k - 1)] = coeff_v(n, k, VCoeff::A1, p)?;
                    b[(k, k - 1)] = coeff_v(n, k, VCoeff::B1, p)?;
                    c[(k, k - 1)] = coeff_v(n, k, VCoeff::C1, p)?;
                }
                if k + 1 <= n {
                    b[(k, k + 1)] = coeff_v(n, k, VCoeff::B3, p)?;
                    c[(k, k)] = coeff_v(n, k, VCoeff::C2, p)?;
                }
                if k + 2 <= n {
                    c[(k, k + 1)] = coeff_v(n, k, VCoeff::C3, p)?;
                }
            }
        }
    }
    Ok(LevelBlocks { level: n, a, b, c })
}

/// Semi-infinite operator truncated at level N (inclusive).
#[derive(Clone, Debug)]
pub struct BlockTridiagonalOperator {
    pub kind: OperatorKind,
    pub params: ModelParameters,
    pub levels: Vec<LevelBlocks>,
}

/// Assemble an operator of the given kind on levels 0..=N.
///
/// The tilde variants swap alpha and beta; the same-level block of the first
/// variable additionally loses the identity, which turns its row sums from 1
/// into 0.
pub fn build_operator(
    kind: OperatorKind,
    n_max: usize,
    p: &ModelParameters,
) -> Result<BlockTridiagonalOperator> {
    p.validate()?;
    let mut levels = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let blocks = match kind {
            OperatorKind::J1 => raw_level_blocks(Variable::U, n, p)?,
            OperatorKind::J2 => raw_level_blocks(Variable::V, n, p)?,
            OperatorKind::J1Tilde => {
                let mut blk = raw_level_blocks(Variable::U, n, &p.swapped())?;
                for k in 0..=n {
                    blk.b[(k, k)] -= 1.0;
                }
                blk
            }
            OperatorKind::J2Tilde => raw_level_blocks(Variable::V, n, &p.swapped())?,
            OperatorKind::P => {
                let tau = p.tau()?;
                blend_level(n, p, 1.0 - tau, tau)?
            }
            OperatorKind::GeneratorCandidate => blend_level(n, p, -1.0, 1.0)?,
        };
        levels.push(blocks);
    }
    Ok(BlockTridiagonalOperator {
        kind,
        params: *p,
        levels,
    })
}

fn blend_level(n: usize, p: &ModelParameters, cu: f64, cv: f64) -> Result<LevelBlocks> {
    let u = raw_level_blocks(Variable::U, n, p)?;
    let v = raw_level_blocks(Variable::V, n, p)?;
    Ok(LevelBlocks {
        level: n,
        a: &u.a * cu + &v.a * cv,
        b: &u.b * cu + &v.b * cv,
        c: &u.c * cu + &v.c * cv,
    })
}

impl BlockTridiagonalOperator {
    pub fn truncation_level(&self) -> usize {
        self.levels.len() - 1
    }

    /// Number of states (n, k), k <= n <= N, in the truncation.
    pub fn num_states(&self) -> usize {
        let n = self.levels.len();
        n * (n + 1) / 2
    }

    /// Flat index of state (n, k) in level-major order.
    pub fn state_index(n: usize, k: usize) -> usize {
        n * (n + 1) / 2 + k
    }

    /// Apply the truncated operator to a flat vector (entries of the last
    /// level see a truncated row: the A block of level N is dropped).
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let nmax = self.truncation_level();
        let mut y = vec![0.0; self.num_states()];
        for blk in &self.levels {
            let n = blk.level;
            let base = Self::state_index(n, 0);
            for k in 0..=n {
                let mut acc = 0.0;
                if n >= 1 {
                    let lower = Self::state_index(n - 1, 0);
                    for l in 0..n {
                        acc += blk.c[(k, l)] * x[lower + l];
                    }
                }
                for l in 0..=n {
                    acc += blk.b[(k, l)] * x[base + l];
                }
                if n < nmax {
                    let upper = Self::state_index(n + 1, 0);
                    for l in 0..=(n + 1) {
                        acc += blk.a[(k, l)] * x[upper + l];
                    }
                }
                y[base + k] = acc;
            }
        }
        y
    }

    /// Dense truncated matrix, for small N only (matrix-power checks).
    pub fn to_dense(&self) -> DMatrix<f64> {
        let m = self.num_states();
        let nmax = self.truncation_level();
        let mut out = DMatrix::zeros(m, m);
        for blk in &self.levels {
            let n = blk.level;
            let base = Self::state_index(n, 0);
            for k in 0..=n {
                if n >= 1 {
                    let lower = Self::state_index(n - 1, 0);
                    for l in 0..n {
                        out[(base + k, lower + l)] = blk.c[(k, l)];
                    }
                }
                for l in 0..=n {
                    out[(base + k, base + l)] = blk.b[(k, l)];
                }
                if n < nmax {
                    let upper = Self::state_index(n + 1, 0);
                    for l in 0..=(n + 1) {
                        out[(base + k, upper + l)] = blk.a[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Largest deviation of an interior-level row sum from `target`.
    pub fn max_interior_row_sum_deviation(&self, target: f64) -> f64 {
        let nmax = self.truncation_level();
        self.levels
            .iter()
            .filter(|blk| blk.level < nmax)
            .flat_map(|blk| blk.row_sums())
            .map(|s| (s - target).abs())
            .fold(0.0, f64::max)
    }

    /// Transition weights out of state (n, k): pairs ((n', k'), weight).
    /// Rows of the last truncated level are incomplete and rejected.
    pub fn row(&self, n: usize, k: usize) -> Result<Vec<((usize, usize), f64)>> {
        let nmax = self.truncation_level();
        if n >= nmax {
            return Err(Error::Domain(format!(
                "row ({n},{k}) reaches beyond truncation level {nmax}"
            )));
        }
        if k > n {
            return Err(Error::IndexRange(format!("state ({n},{k})")));
        }
        let blk = &self.levels[n];
        let mut out = Vec::new();
        if n >= 1 {
            for l in 0..n {
                let w = blk.c[(k, l)];
                if w != 0.0 {
                    out.push(((n - 1, l), w));
                }
            }
        }
        for l in 0..=n {
            let w = blk.b[(k, l)];
            if w != 0.0 {
                out.push(((n, l), w));
            }
        }
        for l in 0..=(n + 1) {
            let w = blk.a[(k, l)];
            if w != 0.0 {
                out.push(((n + 1, l), w));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn zeros() -> ModelParameters {
        ModelParameters::new(0.0, 0.0, 0.0).unwrap()
    }

    #[test]
    fn level_zero_blocks_match_examples() {
        let p = zeros();
        let j1 = build_operator(OperatorKind::J1, 0, &p).unwrap();
        assert_abs_diff_eq!(j1.levels[0].b[(0, 0)], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(j1.levels[0].a[(0, 0)], 0.5, epsilon = 1e-15);
        assert_eq!(j1.levels[0].a[(0, 1)], 0.0);
        let j2 = build_operator(OperatorKind::J2, 0, &p).unwrap();
        assert_abs_diff_eq!(j2.levels[0].b[(0, 0)], 0.4, epsilon = 1e-15);
        assert_eq!(j2.levels[0].a[(0, 0)], 0.0);
        assert_abs_diff_eq!(j2.levels[0].a[(0, 1)], 0.6, epsilon = 1e-15);
    }

    #[test]
    fn row_sums_are_one_across_parameters() {
        // deterministic sweep standing in for the random-parameter property
        let mut cases = vec![
            (0.0, 0.0, 0.0),
            (1.0, 0.0, -0.5),
            (0.0, 1.0, 0.5),
            (-0.9, 2.0, -0.55),
            (-0.5, -0.5, -0.5),
        ];
        // pseudo-random admissible triples from a tiny LCG for breadth
        let mut s = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        while cases.len() < 50 {
            let a = -0.95 + 3.0 * next();
            let b = -0.95 + 3.0 * next();
            let lo = (-0.95f64).max(-1.45 - a.min(b));
            let g = lo + (3.0 - lo) * next();
            if ModelParameters::new(a, b, g).is_ok() {
                cases.push((a, b, g));
            }
        }
        for (a, b, g) in cases {
            let p = ModelParameters::new(a, b, g).unwrap();
            for kind in [OperatorKind::J1, OperatorKind::J2] {
                let op = build_operator(kind, 9, &p).unwrap();
                let dev = op.max_interior_row_sum_deviation(1.0);
                assert!(dev < 1e-12, "row sum dev {dev:e} for {kind:?} at ({a},{b},{g})");
            }
        }
    }

    #[test]
    fn ones_vector_is_preserved_on_interior_levels() {
        let p = ModelParameters::new(0.3, 1.2, 0.7).unwrap();
        for kind in [OperatorKind::J1, OperatorKind::J2] {
            let op = build_operator(kind, 8, &p).unwrap();
            let ones = vec![1.0; op.num_states()];
            let y = op.apply(&ones);
            for n in 0..8usize {
                for k in 0..=n {
                    let i = BlockTridiagonalOperator::state_index(n, k);
                    assert_abs_diff_eq!(y[i], 1.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn tilde_row_sums() {
        let p = ModelParameters::new(0.7, 0.2, 0.4).unwrap();
        let t1 = build_operator(OperatorKind::J1Tilde, 8, &p).unwrap();
        assert!(t1.max_interior_row_sum_deviation(0.0) < 1e-12);
        let t2 = build_operator(OperatorKind::J2Tilde, 8, &p).unwrap();
        assert!(t2.max_interior_row_sum_deviation(1.0) < 1e-12);
    }

    #[test]
    fn block_dimensions_chain() {
        let p = zeros();
        let op = build_operator(OperatorKind::J2, 6, &p).unwrap();
        for n in 0..6 {
            assert_eq!(op.levels[n].a.ncols(), op.levels[n + 1].b.nrows());
            assert_eq!(op.levels[n + 1].c.ncols(), op.levels[n].b.nrows());
        }
    }

    #[test]
    fn convex_combination_endpoints() {
        let p0 = ModelParameters::with_tau(0.3, 1.2, 0.7, 0.0).unwrap();
        let p1 = ModelParameters::with_tau(0.3, 1.2, 0.7, 1.0).unwrap();
        let j1 = build_operator(OperatorKind::J1, 4, &p0).unwrap();
        let j2 = build_operator(OperatorKind::J2, 4, &p1).unwrap();
        let p_at_0 = build_operator(OperatorKind::P, 4, &p0).unwrap();
        let p_at_1 = build_operator(OperatorKind::P, 4, &p1).unwrap();
        for n in 0..=4usize {
            assert_eq!(p_at_0.levels[n].b, j1.levels[n].b);
            assert_eq!(p_at_1.levels[n].a, j2.levels[n].a);
        }
    }

    #[test]
    fn p_level_zero_at_half_tau() {
        let p = ModelParameters::with_tau(0.0, 0.0, 0.0, 0.5).unwrap();
        let op = build_operator(OperatorKind::P, 2, &p).unwrap();
        assert_abs_diff_eq!(op.levels[0].b[(0, 0)], 0.45, epsilon = 1e-15);
        assert_abs_diff_eq!(op.levels[0].a[(0, 0)], 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(op.levels[0].a[(0, 1)], 0.3, epsilon = 1e-15);
        let s: f64 = op.levels[0].b[(0, 0)] + op.levels[0].a[(0, 0)] + op.levels[0].a[(0, 1)];
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-15);
    }
}
