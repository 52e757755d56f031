//! Points of the unit ball, m-planes as column matrices, and their dot and
//! cross products.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{
    coeff_point_cross, cumulative_products, Characteristic, CoefficientTable, CumulativeProducts,
    Signature,
};

/// A cross product value. A negative radicand is reported as an imaginary
/// magnitude instead of an error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "magnitude", rename_all = "lowercase")]
pub enum Cross {
    Real(f64),
    Imaginary(f64),
}

impl Cross {
    fn from_square(sq: f64) -> Self {
        if sq >= 0.0 {
            Cross::Real(sq.sqrt())
        } else {
            Cross::Imaginary((-sq).sqrt())
        }
    }

    pub fn magnitude(self) -> f64 {
        match self {
            Cross::Real(v) | Cross::Imaginary(v) => v,
        }
    }

    /// Signed square: `x` for real, `-x` for imaginary.
    pub fn square(self) -> f64 {
        match self {
            Cross::Real(v) => v * v,
            Cross::Imaginary(v) => -v * v,
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Cross::Real(_))
    }

    pub fn real(self) -> Option<f64> {
        match self {
            Cross::Real(v) => Some(v),
            Cross::Imaginary(_) => None,
        }
    }
}

/// One Cayley-Klein space: a signature plus its precomputed weights.
#[derive(Clone, Debug)]
pub struct Space {
    sig: Signature,
    cumulative: CumulativeProducts,
    point_cross: Vec<(usize, usize, f64)>,
    /// Tables for plane dimensions `m = 0..n`.
    tables: Vec<CoefficientTable>,
}

impl Space {
    pub fn new(sig: Signature) -> Self {
        let n = sig.dim();
        let cumulative = cumulative_products(&sig);
        let mut point_cross = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                let w = coeff_point_cross(i, j, n)
                    .eval(&sig)
                    .expect("K_i K_j is always divisible by k_1");
                if w != 0 {
                    point_cross.push((i, j, f64::from(w)));
                }
            }
        }
        let tables = (0..n)
            .map(|m| {
                CoefficientTable::build(&sig, m)
                    .expect("plane weights are always divisible by k_{m+1}")
            })
            .collect();
        Self { sig, cumulative, point_cross, tables }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    /// Dimension n; points have n + 1 coordinates.
    pub fn dim(&self) -> usize {
        self.sig.dim()
    }

    pub fn k(&self, l: usize) -> Characteristic {
        self.sig.k(l)
    }

    pub fn cumulative(&self) -> &CumulativeProducts {
        &self.cumulative
    }

    pub fn table(&self, m: usize) -> &CoefficientTable {
        &self.tables[m]
    }

    /// `x . y = sum_i K_i x_i y_i` on raw coordinate slices.
    pub fn form(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim() + 1);
        x.iter()
            .zip(y)
            .zip(self.cumulative.as_slice())
            .map(|((a, b), &k)| f64::from(k) * a * b)
            .sum()
    }

    /// Signed square of the point cross product on raw coordinates.
    pub fn cross_square(&self, x: &[f64], y: &[f64]) -> f64 {
        self.point_cross
            .iter()
            .map(|&(i, j, w)| {
                let d = x[i] * y[j] - x[j] * y[i];
                w * d * d
            })
            .sum()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() + 1 {
            return Err(Error::DimensionMismatch { expected: self.dim() + 1, got: len });
        }
        Ok(())
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.sig)
    }
}

/// A point of the unit ball `x . x = 1`, first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjPoint {
    coords: DVector<f64>,
}

impl ProjPoint {
    /// Wrap coordinates that are already normalized.
    pub fn from_normalized(coords: Vec<f64>) -> Self {
        Self { coords: DVector::from_vec(coords) }
    }

    pub fn coords(&self) -> &[f64] {
        self.coords.as_slice()
    }

    pub fn vector(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Coordinates with magnitude below this are treated as zero when choosing
/// the canonical sign.
const SIGN_EPS: f64 = 1e-12;

fn canonical_sign(v: &mut DVector<f64>) {
    let scale = v.amax().max(f64::MIN_POSITIVE);
    if let Some(first) = v.iter().find(|c| c.abs() > SIGN_EPS * scale) {
        if *first < 0.0 {
            v.neg_mut();
        }
    }
}

pub fn normalize_point(sp: &Space, raw: &[f64], tol: f64) -> Result<ProjPoint> {
    sp.check_len(raw.len())?;
    let q = sp.form(raw, raw);
    let euclid: f64 = raw.iter().map(|x| x * x).sum();
    if euclid == 0.0 || q.abs() <= tol * euclid {
        return Err(Error::OnAbsolute(q));
    }
    if q < 0.0 {
        return Err(Error::NegativeNorm(q));
    }
    let mut v = DVector::from_column_slice(raw) / q.sqrt();
    canonical_sign(&mut v);
    Ok(ProjPoint { coords: v })
}

pub fn dot_points(sp: &Space, x: &ProjPoint, y: &ProjPoint) -> f64 {
    sp.form(x.coords(), y.coords())
}

pub fn cross_points(sp: &Space, x: &ProjPoint, y: &ProjPoint) -> Cross {
    Cross::from_square(sp.cross_square(x.coords(), y.coords()))
}

/// An m-plane: `(n+1) x (m+1)` columns and their maximal minors.
#[derive(Clone, Debug, PartialEq)]
pub struct MPlane {
    cols: DMatrix<f64>,
    /// Minors in the order of `Space::table(m).tuples`.
    minors: Vec<f64>,
}

impl MPlane {
    /// Wrap columns without checking generalized orthonormality.
    pub fn from_columns_unchecked(sp: &Space, cols: DMatrix<f64>) -> Result<Self> {
        sp.check_len(cols.nrows())?;
        let m = cols
            .ncols()
            .checked_sub(1)
            .ok_or_else(|| Error::Invalid("plane needs at least one column".into()))?;
        if m >= sp.dim() {
            return Err(Error::DimensionMismatch { expected: sp.dim() - 1, got: m });
        }
        let minors = compute_minors(&cols, &sp.table(m).tuples);
        Ok(Self { cols, minors })
    }

    /// Wrap columns, requiring `c_i . c_j = K_i delta_ij` and unit plane norm.
    pub fn from_columns(sp: &Space, cols: DMatrix<f64>, tol: f64) -> Result<Self> {
        let plane = Self::from_columns_unchecked(sp, cols)?;
        let worst = plane.orthonormality_residual(sp);
        if worst > tol {
            return Err(Error::Invalid(format!(
                "columns are not generalized orthonormal (residual {worst:e})"
            )));
        }
        Ok(plane)
    }

    /// Span of the first `m + 1` coordinate axes.
    pub fn coordinate(sp: &Space, m: usize) -> Result<Self> {
        let n = sp.dim();
        Self::from_columns_unchecked(sp, DMatrix::identity(n + 1, m + 1))
    }

    /// Plane through the given points, built by generalized Gram-Schmidt.
    ///
    /// Each projection coefficient and norm is a plane product with exact
    /// weights, so no division by a zero `K_q` occurs. Points that add no
    /// new direction are skipped.
    pub fn through_points(sp: &Space, points: &[&ProjPoint], tol: f64) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::Invalid("need at least one point".into()))?;
        sp.check_len(first.len())?;
        let n = sp.dim();
        let mut cols: Vec<DVector<f64>> = vec![first.vector().clone()];
        for p in &points[1..] {
            sp.check_len(p.len())?;
            let level = cols.len();
            if level >= n {
                return Err(Error::DegenerateSpan("points span the whole space".into()));
            }
            let mut v = p.vector().clone();
            for q in 0..level {
                let probe = stack(&cols[..q], &v);
                let basis = stack(&cols[..=q], &cols[q]);
                let a = plane_dot_raw(sp, &probe, &basis);
                v -= &cols[q] * a;
            }
            let grown = stack(&cols, &v);
            let norm_sq = plane_dot_raw(sp, &grown, &grown);
            let scale = v.norm_squared().max(1.0);
            if norm_sq.abs() <= tol * scale {
                continue;
            }
            if norm_sq < 0.0 {
                return Err(Error::CrossType(format!(
                    "direction at level {level} has negative norm {norm_sq:e}"
                )));
            }
            cols.push(v / norm_sq.sqrt());
        }
        if cols.len() < 2 && points.len() > 1 {
            return Err(Error::DegenerateSpan("points do not span a line".into()));
        }
        Self::from_columns_unchecked(sp, DMatrix::from_columns(&cols))
    }

    pub fn dim(&self) -> usize {
        self.cols.ncols() - 1
    }

    pub fn columns(&self) -> &DMatrix<f64> {
        &self.cols
    }

    pub fn minors(&self) -> &[f64] {
        &self.minors
    }

    /// Worst of `|c_i . c_j - K_i delta_ij|` and `|X . X - 1|`.
    pub fn orthonormality_residual(&self, sp: &Space) -> f64 {
        let k = sp.cumulative();
        let mut worst: f64 = 0.0;
        for i in 0..self.cols.ncols() {
            for j in i..self.cols.ncols() {
                let d = sp.form(self.cols.column(i).as_slice(), self.cols.column(j).as_slice());
                let target = if i == j { f64::from(k.get(i)) } else { 0.0 };
                worst = worst.max((d - target).abs());
            }
        }
        worst.max((dot_planes(sp, self, self).unwrap_or(f64::NAN) - 1.0).abs())
    }

    /// Column matrix transformed by `matrix`.
    pub(crate) fn mapped(&self, sp: &Space, matrix: &DMatrix<f64>) -> Result<Self> {
        Self::from_columns_unchecked(sp, matrix * &self.cols)
    }
}

fn stack(cols: &[DVector<f64>], last: &DVector<f64>) -> DMatrix<f64> {
    let mut all: Vec<DVector<f64>> = cols.to_vec();
    all.push(last.clone());
    DMatrix::from_columns(&all)
}

fn plane_dot_raw(sp: &Space, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    let table = sp.table(x.ncols() - 1);
    let mx = compute_minors(x, &table.tuples);
    let my = compute_minors(y, &table.tuples);
    table.dot.iter().zip(mx.iter().zip(&my)).map(|(w, (a, b))| w * a * b).sum()
}

/// Determinants of the row-selected square blocks, one per tuple.
pub fn compute_minors(cols: &DMatrix<f64>, tuples: &[Vec<usize>]) -> Vec<f64> {
    tuples
        .iter()
        .map(|rows| match rows.len() {
            1 => cols[(rows[0], 0)],
            2 => {
                let (a, b) = (rows[0], rows[1]);
                cols[(a, 0)] * cols[(b, 1)] - cols[(a, 1)] * cols[(b, 0)]
            }
            _ => cols.select_rows(rows.iter()).determinant(),
        })
        .collect()
}

fn check_same_dim(x: &MPlane, y: &MPlane) -> Result<()> {
    if x.dim() != y.dim() || x.cols.nrows() != y.cols.nrows() {
        return Err(Error::DimensionMismatch { expected: x.dim(), got: y.dim() });
    }
    Ok(())
}

/// `sum_I w_I X_I Y_I` over strictly increasing row tuples.
pub fn dot_planes(sp: &Space, x: &MPlane, y: &MPlane) -> Result<f64> {
    check_same_dim(x, y)?;
    let table = sp.table(x.dim());
    Ok(table
        .dot
        .iter()
        .zip(x.minors.iter().zip(&y.minors))
        .map(|(w, (a, b))| w * a * b)
        .sum())
}

pub fn cross_planes(sp: &Space, x: &MPlane, y: &MPlane) -> Result<Cross> {
    check_same_dim(x, y)?;
    let table = sp.table(x.dim());
    let sq = table
        .cross
        .iter()
        .map(|&(a, b, w)| {
            let d = x.minors[a] * y.minors[b] - x.minors[b] * y.minors[a];
            w * d * d
        })
        .sum();
    Ok(Cross::from_square(sq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn space(s: &str) -> Space {
        Space::new(s.parse().unwrap())
    }

    fn pt(sp: &Space, c: &[f64]) -> ProjPoint {
        normalize_point(sp, c, 1e-12).unwrap()
    }

    /// Line through e_0 rotated by theta in the (1, 2) coordinate plane.
    fn rotated_line(sp: &Space, theta: f64) -> MPlane {
        let cols = DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, theta.cos(), theta.sin()]);
        MPlane::from_columns_unchecked(sp, cols).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let (c1, s1) = (1f64.cosh(), 1f64.sinh());
        let p = pt(&space("-1,1"), &[2.0 * c1, 2.0 * s1, 0.0]);
        assert_abs_diff_eq!(p.coords()[0], c1, epsilon = 1e-12);
        assert_abs_diff_eq!(p.coords()[1], s1, epsilon = 1e-12);
        assert_eq!(pt(&space("0,1"), &[3.0, 9.0, 12.0]).coords(), &[1.0, 3.0, 4.0]);
        assert!(matches!(
            normalize_point(&space("1,1"), &[0.0, 0.0, 0.0], 1e-9),
            Err(Error::OnAbsolute(_))
        ));
    }

    #[test]
    fn normalize_classifies_external_points() {
        let sp = space("he");
        let err = normalize_point(&sp, &[1.0, 2.0, 0.0], 1e-9).unwrap_err();
        assert!(matches!(err, Error::NegativeNorm(q) if q == -3.0));
        assert_eq!(err.norm_class(), Some(crate::error::NormClass::External));
        let err = normalize_point(&sp, &[1.0, 1.0, 0.0], 1e-9).unwrap_err();
        assert_eq!(err.norm_class(), Some(crate::error::NormClass::Absolute));
        assert!(matches!(
            normalize_point(&sp, &[1.0, 0.0], 1e-9),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn canonical_sign_is_applied() {
        let p = pt(&space("ee"), &[0.0, -3.0, 4.0]);
        assert_eq!(p.coords(), &[0.0, 0.6, -0.8]);
    }

    #[test]
    fn dot_examples() {
        let sp = space("1,1");
        assert_eq!(dot_points(&sp, &pt(&sp, &[1., 0., 0.]), &pt(&sp, &[0., 1., 0.])), 0.0);
        let sp = space("-1,1");
        let x = ProjPoint::from_normalized(vec![1f64.cosh(), 1f64.sinh(), 0.0]);
        let o = ProjPoint::from_normalized(vec![1.0, 0.0, 0.0]);
        assert_abs_diff_eq!(dot_points(&sp, &x, &o), 1f64.cosh());
        let sp = space("0,0");
        assert_eq!(dot_points(&sp, &pt(&sp, &[1., 3., 4.]), &pt(&sp, &[1., 0., 0.])), 1.0);
    }

    #[test]
    fn cross_examples() {
        let sp = space("0,1");
        let (x, o) = (pt(&sp, &[1., 3., 4.]), pt(&sp, &[1., 0., 0.]));
        assert_eq!(cross_points(&sp, &x, &o), Cross::Real(5.0));
        let sp = space("0,0");
        assert_eq!(cross_points(&sp, &x, &o), Cross::Real(3.0));
        let sp = space("1,1");
        assert_eq!(
            cross_points(&sp, &pt(&sp, &[1., 0., 0.]), &pt(&sp, &[0., 1., 0.])),
            Cross::Real(1.0)
        );
    }

    #[test]
    fn imaginary_cross_is_tagged() {
        // x0^2 - x1^2 + x2^2: two points with |x . y| < 1
        let sp = space("hh");
        let x = pt(&sp, &[1.0, 0.0, 0.0]);
        let y = pt(&sp, &[0.0, 0.0, 1.0]);
        assert!(matches!(cross_points(&sp, &x, &y), Cross::Imaginary(m) if (m - 1.0).abs() < 1e-15));
    }

    #[test]
    fn minors_examples() {
        let sp = space("ee");
        let x = MPlane::coordinate(&sp, 1).unwrap();
        assert_eq!(x.minors(), &[1.0, 0.0, 0.0]);
        let t = 0.3f64;
        let y = rotated_line(&sp, t);
        assert_abs_diff_eq!(y.minors()[0], t.cos());
        assert_abs_diff_eq!(y.minors()[1], t.sin());
        assert_abs_diff_eq!(y.minors()[2], 0.0);
        let col = DMatrix::from_column_slice(3, 1, &[0.2, 0.3, 0.4]);
        let z = MPlane::from_columns_unchecked(&sp, col).unwrap();
        assert_eq!(z.minors(), &[0.2, 0.3, 0.4]);
    }

    #[test]
    fn plane_product_examples() {
        let t = 0.7f64;
        let sp = space("0,1");
        let x = MPlane::coordinate(&sp, 1).unwrap();
        let y = rotated_line(&sp, t);
        assert_abs_diff_eq!(dot_planes(&sp, &x, &y).unwrap(), t.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(cross_planes(&sp, &x, &y).unwrap().magnitude(), t.sin(), epsilon = 1e-15);
        assert_eq!(cross_planes(&sp, &y, &y).unwrap(), Cross::Real(0.0));

        let sp = space("1,1");
        let x = MPlane::coordinate(&sp, 1).unwrap();
        let cols = DMatrix::from_column_slice(3, 2, &[1., 0., 0., 0., 0., 1.]);
        let y = MPlane::from_columns_unchecked(&sp, cols).unwrap();
        assert_eq!(dot_planes(&sp, &x, &y).unwrap(), 0.0);
        assert_eq!(cross_planes(&sp, &x, &y).unwrap(), Cross::Real(1.0));
    }

    #[test]
    fn self_dot_is_one_for_nondegenerate_signatures() {
        for sig in Signature::all(2) {
            let sp = Space::new(sig);
            let x = MPlane::coordinate(&sp, 1).unwrap();
            assert_eq!(dot_planes(&sp, &x, &x).unwrap(), 1.0);
        }
    }

    #[test]
    fn plane_dimension_mismatch() {
        let sp = space("eee");
        let x = MPlane::coordinate(&sp, 1).unwrap();
        let y = MPlane::coordinate(&sp, 2).unwrap();
        assert!(matches!(dot_planes(&sp, &x, &y), Err(Error::DimensionMismatch { .. })));
        assert!(MPlane::coordinate(&sp, 3).is_err());
    }

    #[test]
    fn euclidean_line_through_points() {
        let sp = space("pe");
        let a = pt(&sp, &[1.0, 1.0, 1.0]);
        let b = pt(&sp, &[1.0, 4.0, 5.0]);
        let line = MPlane::through_points(&sp, &[&a, &b], 1e-12).unwrap();
        let c = line.columns();
        assert_abs_diff_eq!(c[(1, 1)], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(c[(2, 1)], 0.8, epsilon = 1e-15);
        assert!(line.orthonormality_residual(&sp) < 1e-14);
    }

    #[test]
    fn plane_through_three_points_in_euclidean_space() {
        let sp = space("pee");
        let pts: Vec<_> = [[1., 0., 0., 0.], [1., 2., 0., 0.], [1., 1., 3., 0.]]
            .iter()
            .map(|c| pt(&sp, c))
            .collect();
        let refs: Vec<_> = pts.iter().collect();
        let plane = MPlane::through_points(&sp, &refs, 1e-12).unwrap();
        assert_eq!(plane.dim(), 2);
        assert!(plane.orthonormality_residual(&sp) < 1e-14);
        let expected = MPlane::coordinate(&sp, 2).unwrap();
        assert_abs_diff_eq!(dot_planes(&sp, &plane, &expected).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn through_points_skips_repeated_direction() {
        let sp = space("ee");
        let a = pt(&sp, &[1.0, 0.0, 0.0]);
        let b = pt(&sp, &[1.0, 1.0, 0.0]);
        let line = MPlane::through_points(&sp, &[&a, &a, &b], 1e-12).unwrap();
        assert_eq!(line.dim(), 1);
        assert!(MPlane::through_points(&sp, &[&a, &a], 1e-12).is_err());
    }
}
