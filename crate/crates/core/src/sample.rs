//! Seeded random points, planes and triangles for property checks.

use nalgebra::DMatrix;
use rand::Rng;

use crate::entity::{normalize_point, MPlane, ProjPoint, Space};
use crate::error::{Error, Result};
use crate::kernel::Characteristic;
use crate::metric::{measure_triangle, triangle_from_sas, Triangle, TriangleMeasurements};
use crate::transform::random_transform;

/// Raw coordinates are rejected unless `x . x` exceeds this fraction of the
/// Euclidean square norm, which keeps normalized coordinates bounded.
const MIN_NORM_FRACTION: f64 = 0.05;

/// A normalized point drawn from raw coordinates uniform in `[-1, 1]`.
/// Terminates because `K_0 = 1`, so `e_0` has a positive square.
pub fn random_point<R: Rng + ?Sized>(sp: &Space, rng: &mut R) -> ProjPoint {
    loop {
        let raw: Vec<f64> = (0..=sp.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let euclid: f64 = raw.iter().map(|x| x * x).sum();
        if sp.form(&raw, &raw) > MIN_NORM_FRACTION * euclid {
            if let Ok(p) = normalize_point(sp, &raw, 1e-12) {
                return p;
            }
        }
    }
}

/// Image of the coordinate m-plane under a seeded random transform.
pub fn random_plane<R: Rng + ?Sized>(sp: &Space, m: usize, rng: &mut R) -> MPlane {
    let g = random_transform(sp, rng.gen());
    let cols: DMatrix<f64> = g.matrix().columns(0, m + 1).into_owned();
    MPlane::from_columns_unchecked(sp, cols).expect("m < n")
}

/// Side-angle-side parameters `(b, alpha, c)`.
///
/// `b` is drawn longer than `c`, so `B` sits between `A` and the foot of `C`
/// on a line of parabolic or hyperbolic angle type, where the exterior angle
/// at `B` is the one that exists.
pub fn random_sas<R: Rng + ?Sized>(sp: &Space, rng: &mut R) -> (f64, f64, f64) {
    let b = rng.gen_range(0.9..1.4);
    let c = rng.gen_range(0.2..0.7);
    let alpha = match sp.k(2) {
        Characteristic::Elliptic => rng.gen_range(0.3..2.5),
        _ => rng.gen_range(0.3..1.2),
    };
    (b, alpha, c)
}

#[derive(Clone, Debug)]
pub struct SasDraw {
    pub b: f64,
    pub alpha: f64,
    pub c: f64,
    pub triangle: Triangle,
    pub measurements: TriangleMeasurements,
    /// Draws discarded before this one.
    pub rejected: usize,
}

/// Draw SAS parameters until the triangle is realizable with real elements.
pub fn random_triangle<R: Rng + ?Sized>(sp: &Space, rng: &mut R, tol: f64, max_tries: usize) -> Result<SasDraw> {
    for rejected in 0..max_tries {
        let (b, alpha, c) = random_sas(sp, rng);
        let Ok(triangle) = triangle_from_sas(sp, b, alpha, c, tol) else {
            continue;
        };
        match measure_triangle(sp, &triangle, tol) {
            Ok(measurements) if measurements.all_real() => {
                return Ok(SasDraw { b, alpha, c, triangle, measurements, rejected })
            }
            _ => {}
        }
    }
    Err(Error::NoSolution(format!("no real triangle in {max_tries} draws")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Signature;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_points_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for sig in Signature::all(3) {
            let sp = Space::new(sig);
            for _ in 0..20 {
                let p = random_point(&sp, &mut rng);
                assert!((sp.form(p.coords(), p.coords()) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn every_planar_space_yields_triangles() {
        for sig in Signature::all(2) {
            let sp = Space::new(sig);
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let d = random_triangle(&sp, &mut rng, 1e-9, 1000).unwrap();
            assert!(d.b > d.c);
        }
    }
}
