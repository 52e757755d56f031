//! Generalized orthogonal transformations.
//!
//! A transform is built from generators (generalized Givens rotations and
//! axis reflections), each of which preserves the weighted form exactly.
//! The generator word is kept alongside the matrix, so a transform built
//! here is valid by construction even when some `K_i` vanish and the column
//! condition cannot be checked numerically.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::entity::{MPlane, ProjPoint, Space};
use crate::error::{Error, Result};
use crate::gtrig::{gcos, gsin};
use crate::kernel::Characteristic;

/// Seed of the point sample used to validate matrices in degenerate spaces.
pub const VALIDATION_SEED: u64 = 0x5eed_0f_c4e1;
/// Number of sampled point pairs in degenerate-space validation.
pub const VALIDATION_PAIRS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Generator {
    Givens { i: usize, j: usize, t: f64 },
    Reflect { axis: usize },
}

impl Generator {
    pub fn inverse(self) -> Self {
        match self {
            Generator::Givens { i, j, t } => Generator::Givens { i, j, t: -t },
            r @ Generator::Reflect { .. } => r,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GOrthoTransform {
    matrix: DMatrix<f64>,
    word: Option<Vec<Generator>>,
}

/// `k_{i+1} ... k_j`, the characteristic governing rotation in the `(i, j)`
/// coordinate plane.
pub fn plane_characteristic(sp: &Space, i: usize, j: usize) -> Characteristic {
    Characteristic::from_product((i + 1..=j).map(|l| sp.k(l).value()).product())
}

fn check_index(sp: &Space, idx: usize) -> Result<()> {
    if idx > sp.dim() {
        return Err(Error::Index(format!("axis {idx} outside 0..={}", sp.dim())));
    }
    Ok(())
}

pub fn givens(sp: &Space, i: usize, j: usize, t: f64) -> Result<GOrthoTransform> {
    check_index(sp, j)?;
    if i >= j {
        return Err(Error::Index(format!("givens needs i < j, got ({i}, {j})")));
    }
    let kappa = plane_characteristic(sp, i, j);
    let (c, s) = (gcos(kappa, t), gsin(kappa, t));
    let mut m = DMatrix::identity(sp.dim() + 1, sp.dim() + 1);
    m[(i, i)] = c;
    m[(j, j)] = c;
    m[(j, i)] = s;
    m[(i, j)] = -kappa.as_f64() * s;
    Ok(GOrthoTransform { matrix: m, word: Some(vec![Generator::Givens { i, j, t }]) })
}

pub fn reflect(sp: &Space, axis: usize) -> Result<GOrthoTransform> {
    check_index(sp, axis)?;
    let mut m = DMatrix::identity(sp.dim() + 1, sp.dim() + 1);
    m[(axis, axis)] = -1.0;
    Ok(GOrthoTransform { matrix: m, word: Some(vec![Generator::Reflect { axis }]) })
}

pub fn compose(a: &GOrthoTransform, b: &GOrthoTransform) -> Result<GOrthoTransform> {
    if a.matrix.nrows() != b.matrix.nrows() {
        return Err(Error::DimensionMismatch { expected: a.matrix.nrows(), got: b.matrix.nrows() });
    }
    let word = match (&a.word, &b.word) {
        (Some(wa), Some(wb)) => Some(wa.iter().chain(wb).copied().collect()),
        _ => None,
    };
    Ok(GOrthoTransform { matrix: &a.matrix * &b.matrix, word })
}

pub fn random_transform(sp: &Space, seed: u64) -> GOrthoTransform {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sp.dim();
    let mut word = Vec::with_capacity(3 * n);
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(i + 1..=n);
        let t = if plane_characteristic(sp, i, j) == Characteristic::Elliptic {
            rng.gen_range(0.0..std::f64::consts::PI)
        } else {
            rng.gen_range(-1.0..=1.0)
        };
        word.push(Generator::Givens { i, j, t });
    }
    GOrthoTransform::from_word(sp, &word).expect("generated indices are in range")
}

impl GOrthoTransform {
    pub fn identity(sp: &Space) -> Self {
        Self { matrix: DMatrix::identity(sp.dim() + 1, sp.dim() + 1), word: Some(Vec::new()) }
    }

    /// Product of the generators, leftmost applied last.
    pub fn from_word(sp: &Space, word: &[Generator]) -> Result<Self> {
        word.iter().try_fold(Self::identity(sp), |acc, g| {
            let step = match *g {
                Generator::Givens { i, j, t } => givens(sp, i, j, t)?,
                Generator::Reflect { axis } => reflect(sp, axis)?,
            };
            compose(&acc, &step)
        })
    }

    /// Foreign matrix with no generator word. Not validated.
    pub fn from_matrix(sp: &Space, matrix: DMatrix<f64>) -> Result<Self> {
        let size = sp.dim() + 1;
        if matrix.nrows() != size || matrix.ncols() != size {
            return Err(Error::DimensionMismatch { expected: size, got: matrix.nrows() });
        }
        Ok(Self { matrix, word: None })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn word(&self) -> Option<&[Generator]> {
        self.word.as_deref()
    }

    /// Inverse via the reversed word; `None` for foreign matrices.
    pub fn inverse(&self, sp: &Space) -> Option<Self> {
        let word = self.word.as_ref()?;
        let inv: Vec<_> = word.iter().rev().map(|g| g.inverse()).collect();
        Self::from_word(sp, &inv).ok()
    }

    /// The image keeps the orientation given by the matrix; no sign
    /// canonicalization is applied, so products are preserved exactly.
    pub fn apply_point(&self, x: &ProjPoint) -> Result<ProjPoint> {
        if x.len() != self.matrix.ncols() {
            return Err(Error::DimensionMismatch { expected: self.matrix.ncols(), got: x.len() });
        }
        Ok(ProjPoint::from_normalized((&self.matrix * x.vector()).as_slice().to_vec()))
    }

    pub fn apply_plane(&self, sp: &Space, x: &MPlane) -> Result<MPlane> {
        if x.columns().nrows() != self.matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.ncols(),
                got: x.columns().nrows(),
            });
        }
        x.mapped(sp, &self.matrix)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValidationMode {
    /// Column condition with division by `K_min(i,j)`.
    Exact,
    /// Weak column condition plus sampled product preservation.
    Sampled,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub mode: ValidationMode,
    pub worst_residual: f64,
    pub det: f64,
}

/// Check a raw matrix against the generalized orthogonality condition.
///
/// When every `K_i` is nonzero the column condition is checked directly.
/// Otherwise it is reduced to `c_i . c_j = K_i delta_ij`, and the matrix must
/// also preserve the point dot and cross products on a fixed pseudo-random
/// sample of pairs. In both modes `|det| = 1` is required.
pub fn validate(sp: &Space, matrix: &DMatrix<f64>, tol: f64) -> ValidationReport {
    let size = sp.dim() + 1;
    if matrix.nrows() != size || matrix.ncols() != size {
        return ValidationReport {
            passed: false,
            mode: ValidationMode::Exact,
            worst_residual: f64::INFINITY,
            det: f64::NAN,
        };
    }
    let k = sp.cumulative();
    let det = matrix.determinant();
    let mut worst = (det.abs() - 1.0).abs();
    let col = |i: usize| matrix.column(i).as_slice().to_vec();
    let mode = if k.has_zero() { ValidationMode::Sampled } else { ValidationMode::Exact };
    for i in 0..size {
        for j in i..size {
            let d = sp.form(&col(i), &col(j));
            let target = if i == j { 1.0 } else { 0.0 };
            let r = match mode {
                ValidationMode::Exact => d / f64::from(k.get(i.min(j))) - target,
                ValidationMode::Sampled => d - f64::from(k.get(i)) * target,
            };
            worst = worst.max(r.abs());
        }
    }
    if mode == ValidationMode::Sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
        let mut raw = || -> Vec<f64> { (0..size).map(|_| rng.gen_range(-1.0..=1.0)).collect() };
        for _ in 0..VALIDATION_PAIRS {
            let (x, y) = (raw(), raw());
            let gx = (matrix * nalgebra::DVector::from_column_slice(&x)).as_slice().to_vec();
            let gy = (matrix * nalgebra::DVector::from_column_slice(&y)).as_slice().to_vec();
            worst = worst.max((sp.form(&gx, &gy) - sp.form(&x, &y)).abs());
            worst = worst.max((sp.cross_square(&gx, &gy) - sp.cross_square(&x, &y)).abs());
        }
    }
    let passed = worst.is_finite() && worst <= tol;
    ValidationReport { passed, mode, worst_residual: worst, det }
}
