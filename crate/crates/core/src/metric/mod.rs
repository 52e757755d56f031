//! Distances, angles and the orthogonality/parallelism predicates.
//!
//! A pair of points (m = 0) or m-planes gives `C(phi) = X . Y` and
//! `S(phi) = X x Y` at level `m + 1`, and the measure is recovered with the
//! characteristic `k_{m+1}`.

mod laws;
mod triangle;

pub use laws::{
    law_residuals, right_triangle_residuals, triangle_law_report, Law, LawReport, LawVariant, RightTriangleReport,
    TriangleValues, LAWS,
};
pub use triangle::{
    measure_triangle, right_triangle, solve_sas, triangle_from_sas, Triangle,
    TriangleMeasurements,
};

use serde::Serialize;

use crate::entity::{cross_planes, cross_points, dot_planes, dot_points, Cross, MPlane, ProjPoint, Space};
use crate::error::Result;
use crate::gtrig::gmeasure_from_cs;
use crate::kernel::Characteristic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureKind {
    Real,
    Imaginary,
}

/// A nonnegative magnitude at a given level.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Measure {
    #[serde(rename = "phi")]
    pub value: f64,
    /// `m + 1`: the index of the characteristic that governs it.
    pub level: usize,
    pub kind: MeasureKind,
}

impl Measure {
    pub fn is_real(&self) -> bool {
        self.kind == MeasureKind::Real
    }
}

fn dual(k: Characteristic) -> Characteristic {
    Characteristic::from_product(-k.value())
}

/// Invert a `(dot, cross)` pair at level `level`.
///
/// An imaginary cross `i sigma` satisfies `c^2 - k sigma^2 = 1`, so its
/// magnitude is recovered with the dual characteristic `-k`.
fn measure_from_products(k: Characteristic, level: usize, c: f64, s: Cross, tol: f64) -> Result<Measure> {
    let (value, kind) = match s {
        Cross::Real(s) => (gmeasure_from_cs(k, c, s, tol)?, MeasureKind::Real),
        Cross::Imaginary(s) => (gmeasure_from_cs(dual(k), c, s, tol)?, MeasureKind::Imaginary),
    };
    Ok(Measure { value, level, kind })
}

pub fn distance(sp: &Space, x: &ProjPoint, y: &ProjPoint, tol: f64) -> Result<Measure> {
    measure_from_products(sp.k(1), 1, dot_points(sp, x, y), cross_points(sp, x, y), tol)
}

/// Distance with antipodal points identified: `min(phi, pi - phi)`.
/// Only meaningful when `k_1 = 1`; other signatures return the plain distance.
pub fn projective_distance(sp: &Space, x: &ProjPoint, y: &ProjPoint, tol: f64) -> Result<Measure> {
    let mut d = distance(sp, x, y, tol)?;
    if sp.k(1) == Characteristic::Elliptic && d.is_real() {
        d.value = d.value.min(std::f64::consts::PI - d.value);
    }
    Ok(d)
}

pub fn angle(sp: &Space, x: &MPlane, y: &MPlane, tol: f64) -> Result<Measure> {
    let level = x.dim() + 1;
    let c = dot_planes(sp, x, y)?;
    let s = cross_planes(sp, x, y)?;
    measure_from_products(sp.k(level), level, c, s, tol)
}

/// Whether the minor vectors of two planes are proportional.
fn same_span(x: &MPlane, y: &MPlane, tol: f64) -> bool {
    let (mx, my) = (x.minors(), y.minors());
    let scale = mx.iter().chain(my).fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    (0..mx.len()).all(|a| {
        (a + 1..mx.len()).all(|b| (mx[a] * my[b] - mx[b] * my[a]).abs() <= tol * scale * scale)
    })
}

/// Vanishing cross product between two planes with different spans.
pub fn is_parallel(sp: &Space, x: &MPlane, y: &MPlane, tol: f64) -> Result<bool> {
    let cross = cross_planes(sp, x, y)?;
    Ok(cross.magnitude() <= tol && !same_span(x, y, tol))
}

pub fn is_orthogonal(sp: &Space, x: &MPlane, y: &MPlane, tol: f64) -> Result<bool> {
    Ok(dot_planes(sp, x, y)?.abs() <= tol)
}
