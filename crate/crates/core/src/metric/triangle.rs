use serde::Serialize;

use super::{angle, distance, Measure, MeasureKind};
use crate::entity::{cross_points, Cross, MPlane, ProjPoint, Space};
use crate::error::{Error, Result};
use crate::gtrig::{gcos, gmeasure_from_cs, gsin};
use crate::kernel::Characteristic;
use crate::transform::{compose, givens};

/// Triangle `ABC` in a space of dimension 2.
#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    vertices: [ProjPoint; 3],
}

impl Triangle {
    /// Requires pairwise real, nonzero separations.
    pub fn new(sp: &Space, a: ProjPoint, b: ProjPoint, c: ProjPoint, tol: f64) -> Result<Self> {
        if sp.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: sp.dim() });
        }
        for (p, q, name) in [(&a, &b, "AB"), (&b, &c, "BC"), (&a, &c, "AC")] {
            match cross_points(sp, p, q) {
                Cross::Real(s) if s <= tol => {
                    return Err(Error::DegenerateTriangle(format!("side {name} has zero separation")))
                }
                Cross::Imaginary(_) => {
                    return Err(Error::CrossType(format!("side {name} is imaginary")))
                }
                Cross::Real(_) => {}
            }
        }
        Ok(Self { vertices: [a, b, c] })
    }

    pub fn a(&self) -> &ProjPoint {
        &self.vertices[0]
    }

    pub fn b(&self) -> &ProjPoint {
        &self.vertices[1]
    }

    pub fn c(&self) -> &ProjPoint {
        &self.vertices[2]
    }

    pub fn vertices(&self) -> &[ProjPoint; 3] {
        &self.vertices
    }
}

/// Sides `a, b, c` opposite `A, B, C`; interior angles at `A` and `C`, and
/// the exterior angle at `B`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleMeasurements {
    pub a: Measure,
    pub b: Measure,
    pub c: Measure,
    pub alpha: Measure,
    pub beta_prime: Measure,
    pub gamma: Measure,
}

impl TriangleMeasurements {
    pub fn all_real(&self) -> bool {
        [self.a, self.b, self.c, self.alpha, self.beta_prime, self.gamma]
            .iter()
            .all(Measure::is_real)
    }
}

fn origin(sp: &Space) -> ProjPoint {
    let mut e0 = vec![0.0; sp.dim() + 1];
    e0[0] = 1.0;
    ProjPoint::from_normalized(e0)
}

fn check_sas(sp: &Space, b: f64, alpha: f64, c: f64) -> Result<()> {
    if sp.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: sp.dim() });
    }
    if !(b > 0.0 && c > 0.0 && alpha > 0.0) {
        return Err(Error::Domain("b, c and alpha must be positive".into()));
    }
    let pi = std::f64::consts::PI;
    if sp.k(1) == Characteristic::Elliptic && (b >= pi || c >= pi) {
        return Err(Error::Domain("elliptic sides must be below pi".into()));
    }
    if sp.k(2) == Characteristic::Elliptic && alpha >= pi {
        return Err(Error::Domain("elliptic angle must be below pi".into()));
    }
    Ok(())
}

/// `A = e_0`, `B` at distance `c` along axis 1, `C` at distance `b` along
/// the direction turned by `alpha` from it.
pub fn triangle_from_sas(sp: &Space, b: f64, alpha: f64, c: f64, tol: f64) -> Result<Triangle> {
    check_sas(sp, b, alpha, c)?;
    let a_pt = origin(sp);
    let b_pt = givens(sp, 0, 1, c)?.apply_point(&a_pt)?;
    let turn = compose(&givens(sp, 1, 2, alpha)?, &givens(sp, 0, 1, b)?)?;
    let c_pt = turn.apply_point(&a_pt)?;
    Triangle::new(sp, a_pt, b_pt, c_pt, tol)
}

/// Right angle at `C`, legs `a = CB` and `b = CA`. Needs `k_2 = 1`.
pub fn right_triangle(sp: &Space, a: f64, b: f64, tol: f64) -> Result<Triangle> {
    if sp.dim() != 2 || sp.k(2) != Characteristic::Elliptic {
        return Err(Error::Domain("right triangles need n = 2 and k_2 = 1".into()));
    }
    check_sas(sp, b, std::f64::consts::FRAC_PI_2, a)?;
    let c_pt = origin(sp);
    let b_pt = givens(sp, 0, 1, a)?.apply_point(&c_pt)?;
    let turn = compose(&givens(sp, 1, 2, std::f64::consts::FRAC_PI_2)?, &givens(sp, 0, 1, b)?)?;
    let a_pt = turn.apply_point(&c_pt)?;
    Triangle::new(sp, a_pt, b_pt, c_pt, tol)
}

/// Ray from `from` toward `to`: the line through both, first column `from`.
pub(crate) fn ray(sp: &Space, from: &ProjPoint, to: &ProjPoint, tol: f64) -> Result<MPlane> {
    MPlane::through_points(sp, &[from, to], tol).map_err(|e| match e {
        Error::DegenerateSpan(msg) => Error::DegenerateTriangle(msg),
        other => other,
    })
}

/// The same line with its direction column negated.
pub(crate) fn reversed(sp: &Space, ray: &MPlane) -> Result<MPlane> {
    let mut cols = ray.columns().clone();
    cols.column_mut(1).neg_mut();
    MPlane::from_columns_unchecked(sp, cols)
}

pub fn measure_triangle(sp: &Space, t: &Triangle, tol: f64) -> Result<TriangleMeasurements> {
    let [pa, pb, pc] = t.vertices();
    let a = distance(sp, pb, pc, tol)?;
    let b = distance(sp, pa, pc, tol)?;
    let c = distance(sp, pa, pb, tol)?;
    let alpha = angle(sp, &ray(sp, pa, pb, tol)?, &ray(sp, pa, pc, tol)?, tol)?;
    let beyond_b = reversed(sp, &ray(sp, pb, pa, tol)?)?;
    let beta_prime = angle(sp, &beyond_b, &ray(sp, pb, pc, tol)?, tol)?;
    let gamma = angle(sp, &ray(sp, pc, pa, tol)?, &ray(sp, pc, pb, tol)?, tol)?;
    Ok(TriangleMeasurements { a, b, c, alpha, beta_prime, gamma })
}

/// Solve side-angle-side with the cosine law (its tangent form when
/// `k_1 = 0`), then the remaining angles from the sine law paired with the
/// matching cosine law.
pub fn solve_sas(sp: &Space, b: f64, alpha: f64, c: f64, tol: f64) -> Result<TriangleMeasurements> {
    check_sas(sp, b, alpha, c)?;
    let (k1, k2) = (sp.k(1), sp.k(2));
    let (c1, s1) = (|x| gcos(k1, x), |x| gsin(k1, x));
    let (c2, s2) = (gcos(k2, alpha), gsin(k2, alpha));
    let k1v = k1.as_f64();

    let a = if k1 == Characteristic::Parabolic {
        let sq = b * b + c * c - 2.0 * b * c * c2;
        if sq < 0.0 {
            return Err(Error::NoSolution(format!("side a is imaginary (a^2 = {sq:e})")));
        }
        sq.sqrt()
    } else {
        let ca = c1(b) * c1(c) + k1v * s1(b) * s1(c) * c2;
        let sa_sq = (1.0 - ca * ca) / k1v;
        if sa_sq < -tol {
            return Err(Error::NoSolution(format!("C_1(a) = {ca} is outside the range")));
        }
        gmeasure_from_cs(k1, ca, sa_sq.max(0.0).sqrt(), tol)
            .map_err(|e| Error::NoSolution(e.to_string()))?
    };
    let sa = s1(a);
    if sa.abs() <= tol {
        return Err(Error::DegenerateTriangle("side a vanishes".into()));
    }

    // cosines at B' and C from the cosine law I (or its tangent form)
    let (cb, cg) = if k1 == Characteristic::Parabolic {
        ((b * b - a * a - c * c) / (2.0 * a * c), (a * a + b * b - c * c) / (2.0 * a * b))
    } else {
        (
            (c1(a) * c1(c) - c1(b)) / (k1v * sa * s1(c)),
            (c1(c) - c1(a) * c1(b)) / (k1v * sa * s1(b)),
        )
    };
    let sb = s2 * s1(b) / sa;
    let sg = s2 * s1(c) / sa;
    let solve = |cos: f64, sin: f64| {
        gmeasure_from_cs(k2, cos, sin, tol.max(1e-9)).map_err(|e| Error::NoSolution(e.to_string()))
    };
    let real = |value, level| Measure { value, level, kind: MeasureKind::Real };
    Ok(TriangleMeasurements {
        a: real(a, 1),
        b: real(b, 1),
        c: real(c, 1),
        alpha: real(alpha, 2),
        beta_prime: real(solve(cb, sb)?, 2),
        gamma: real(solve(cg, sg)?, 2),
    })
}
