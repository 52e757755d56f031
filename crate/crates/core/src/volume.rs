//! Native volume of geodesic simplices by Monte Carlo integration of the
//! cone they span with the origin.
//!
//! The native volume of a figure `F` on the unit ball is `(n + 1)` times the
//! ambient volume of the cone `{ lambda q : q in F, 0 <= lambda <= 1 }`.
//!
//! Samples are drawn uniformly from the ambient simplex
//! `conv(0, s v_0, ..., s v_n)`, where `s = 1 / sqrt(min Q)` and `min Q` is
//! the smallest value of `x . x` over the convex hull of the vertices. Every
//! cone point has barycentric weight sum at most `s`, so the sampling simplex
//! contains the cone, and for flat (Euclidean) faces the two coincide.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::Serialize;

use crate::entity::{ProjPoint, Space};
use crate::error::{Error, Result};

/// Samples per independent sub-stream. Batches are fixed-size, so the
/// estimate does not depend on how batches are spread across threads.
pub const BATCH: usize = 1 << 16;

pub const MIN_SAMPLES: usize = 1000;

/// `n + 1` vertices on the unit ball of an n-dimensional space.
#[derive(Clone, Debug)]
pub struct GeodesicSimplex {
    vertices: Vec<ProjPoint>,
}

impl GeodesicSimplex {
    pub fn new(sp: &Space, vertices: Vec<ProjPoint>) -> Result<Self> {
        if vertices.len() != sp.dim() + 1 {
            return Err(Error::DimensionMismatch { expected: sp.dim() + 1, got: vertices.len() });
        }
        for v in &vertices {
            if v.len() != sp.dim() + 1 {
                return Err(Error::DimensionMismatch { expected: sp.dim() + 1, got: v.len() });
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[ProjPoint] {
        &self.vertices
    }

    fn basis(&self) -> DMatrix<f64> {
        let cols: Vec<_> = self.vertices.iter().map(|v| v.vector().clone()).collect();
        DMatrix::from_columns(&cols)
    }
}

/// The cone over a simplex with its vertex basis inverted once.
#[derive(Clone, Debug)]
pub struct Cone<'a> {
    sp: &'a Space,
    inverse: DMatrix<f64>,
    det: f64,
    tol: f64,
}

impl<'a> Cone<'a> {
    pub fn new(sp: &'a Space, s: &GeodesicSimplex, tol: f64) -> Result<Self> {
        let basis = s.basis();
        let det = basis.determinant();
        let scale: f64 = basis.column_iter().map(|c| c.norm()).product();
        if !det.is_finite() || det.abs() <= 1e-12 * scale {
            return Err(Error::SingularBasis);
        }
        let inverse = basis.try_inverse().ok_or(Error::SingularBasis)?;
        Ok(Self { sp, inverse, det, tol })
    }

    /// Coefficients of `p` in the vertex basis.
    pub fn coefficients(&self, p: &[f64]) -> DVector<f64> {
        &self.inverse * DVector::from_column_slice(p)
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        let mu = self.coefficients(p);
        if mu.iter().any(|&m| m < -self.tol) {
            return false;
        }
        let q = self.sp.form(p, p);
        if q > 0.0 {
            q <= 1.0 + self.tol
        } else {
            // off the quadric: fall back to the weight sum as the radial parameter
            mu.sum() <= 1.0 + self.tol
        }
    }
}

pub fn cone_contains(sp: &Space, s: &GeodesicSimplex, p: &[f64], tol: f64) -> Result<bool> {
    if p.len() != sp.dim() + 1 {
        return Err(Error::DimensionMismatch { expected: sp.dim() + 1, got: p.len() });
    }
    Ok(Cone::new(sp, s, tol)?.contains(p))
}

/// Minimum of `mu^T G mu` over the standard simplex, by enumerating the
/// stationary points of every face.
fn min_quadratic_on_simplex(gram: &DMatrix<f64>) -> f64 {
    let size = gram.nrows();
    let mut best = f64::INFINITY;
    for mask in 1u32..(1 << size) {
        let idx: Vec<usize> = (0..size).filter(|i| mask & (1 << i) != 0).collect();
        let sub = gram.select_rows(idx.iter()).select_columns(idx.iter());
        let Some(x) = sub.clone().lu().solve(&DVector::from_element(idx.len(), 1.0)) else {
            continue;
        };
        let total = x.sum();
        if !total.is_finite() || total.abs() < 1e-300 {
            continue;
        }
        let mu = &x / total;
        if mu.iter().any(|&m| m < -1e-12) {
            continue;
        }
        best = best.min((mu.transpose() * &sub * &mu)[(0, 0)]);
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VolumeEstimate {
    #[serde(rename = "volume")]
    pub value: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
    pub seed: u64,
}

/// Hit-or-miss estimate of the native volume of `s`.
pub fn mc_volume(sp: &Space, s: &GeodesicSimplex, samples: usize, seed: u64) -> Result<VolumeEstimate> {
    if samples < MIN_SAMPLES {
        return Err(Error::Invalid(format!("need at least {MIN_SAMPLES} samples")));
    }
    let cone = Cone::new(sp, s, 1e-12)?;
    let basis = s.basis();
    let gram = basis.transpose() * DMatrix::from_diagonal(&DVector::from_iterator(
        sp.dim() + 1,
        sp.cumulative().as_slice().iter().map(|&k| f64::from(k)),
    )) * &basis;
    let min_q = min_quadratic_on_simplex(&gram);
    if !(min_q > 0.0) {
        return Err(Error::Domain(format!(
            "the simplex leaves the unit ball (min x.x on its hull = {min_q:e})"
        )));
    }
    let reach = 1.0 / min_q.sqrt();
    let dim = sp.dim() + 1;
    let factorial: f64 = (1..=dim).map(|i| i as f64).product();
    let domain_volume = reach.powi(dim as i32) * cone.det.abs() / factorial;

    let batches = samples.div_ceil(BATCH);
    let run = |b: usize| -> u64 {
        let count = BATCH.min(samples - b * BATCH);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b as u64);
        let mut weights = vec![0.0; dim + 1];
        let mut p = DVector::zeros(dim);
        let mut hits = 0;
        for _ in 0..count {
            for w in weights.iter_mut() {
                *w = rng.sample::<f64, _>(Exp1);
            }
            let total: f64 = weights.iter().sum();
            p.fill(0.0);
            for (i, col) in basis.column_iter().enumerate() {
                p.axpy(reach * weights[i] / total, &col, 1.0);
            }
            if cone.contains(p.as_slice()) {
                hits += 1;
            }
        }
        hits
    };
    #[cfg(feature = "parallel")]
    let hits: u64 = {
        use rayon::prelude::*;
        (0..batches).into_par_iter().map(run).sum()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: u64 = (0..batches).map(run).sum();

    let n = samples as f64;
    let rate = hits as f64 / n;
    let scale = dim as f64 * domain_volume;
    let sd = (rate * (1.0 - rate) * n / (n - 1.0)).sqrt();
    Ok(VolumeEstimate {
        value: scale * rate,
        stderr: scale * sd / n.sqrt(),
        hits,
        samples: samples as u64,
        seed,
    })
}
