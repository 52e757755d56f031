//! Trigonometric kernels selected by a characteristic.
//!
//! | k  | C      | S      | T      |
//! |----|--------|--------|--------|
//! | 1  | cos x  | sin x  | tan x  |
//! | 0  | 1      | x      | x      |
//! | -1 | cosh x | sinh x | tanh x |

use crate::error::{Error, Result};
use crate::kernel::Characteristic;

/// Default absolute tolerance on `C^2 + k S^2 = 1` when inverting a pair.
pub const DEFAULT_PAIR_TOL: f64 = 1e-9;

#[inline]
pub fn gcos(k: Characteristic, x: f64) -> f64 {
    match k {
        Characteristic::Elliptic => x.cos(),
        Characteristic::Parabolic => 1.0,
        Characteristic::Hyperbolic => x.cosh(),
    }
}

#[inline]
pub fn gsin(k: Characteristic, x: f64) -> f64 {
    match k {
        Characteristic::Elliptic => x.sin(),
        Characteristic::Parabolic => x,
        Characteristic::Hyperbolic => x.sinh(),
    }
}

pub fn gtan(k: Characteristic, x: f64) -> Result<f64> {
    match k {
        Characteristic::Elliptic => {
            let c = x.cos();
            if c.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                return Err(Error::Pole(x));
            }
            Ok(x.sin() / c)
        }
        Characteristic::Parabolic => Ok(x),
        Characteristic::Hyperbolic => Ok(x.tanh()),
    }
}

/// Recover `phi >= 0` from `C(k, phi) = c`, `S(k, phi) = s`.
///
/// The pair residual is measured against `max(1, c^2)` so that large
/// hyperbolic magnitudes are not rejected for ordinary rounding.
pub fn gmeasure_from_cs(k: Characteristic, c: f64, s: f64, tol: f64) -> Result<f64> {
    let kv = k.as_f64();
    let residual = c * c + kv * s * s - 1.0;
    let scale = (c * c).max(1.0);
    if !residual.is_finite() || residual.abs() > tol * scale || s < -tol * scale.sqrt() {
        return Err(Error::InconsistentPair { k: k.value(), c, s, residual });
    }
    let s = s.max(0.0);
    match k {
        Characteristic::Elliptic => Ok(s.atan2(c)),
        Characteristic::Parabolic => {
            if (c - 1.0).abs() > tol {
                return Err(Error::InconsistentPair { k: 0, c, s, residual: c - 1.0 });
            }
            Ok(s)
        }
        Characteristic::Hyperbolic => {
            let sum = c + s;
            if sum <= 0.0 {
                return Err(Error::Domain(format!(
                    "hyperbolic pair with C + S = {sum} has no real measure"
                )));
            }
            Ok(sum.ln().max(0.0))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    use Characteristic::{Elliptic as E, Hyperbolic as H, Parabolic as P};

    /// Truncated power series, independent of the closed forms.
    fn series(k: Characteristic, x: f64, odd: bool, terms: usize) -> f64 {
        let neg_k = -k.as_f64();
        let mut sum = 0.0;
        let mut term = if odd { x } else { 1.0 };
        let mut kpow = 1.0;
        for i in 0..terms {
            sum += kpow * term;
            let (a, b) = if odd { (2 * i + 2, 2 * i + 3) } else { (2 * i + 1, 2 * i + 2) };
            term *= x * x / (a * b) as f64;
            kpow *= neg_k;
        }
        sum
    }

    #[test]
    fn closed_form_examples() {
        assert_abs_diff_eq!(gcos(E, PI), -1.0);
        assert_eq!(gcos(P, 5.0), 1.0);
        assert_abs_diff_eq!(gcos(H, 1.0), 1.5430806348, epsilon = 1e-10);
        assert_abs_diff_eq!(gsin(E, FRAC_PI_2), 1.0);
        assert_eq!(gsin(P, 2.5), 2.5);
        assert_abs_diff_eq!(gsin(H, 1.0), 1.1752011936, epsilon = 1e-10);
        assert_abs_diff_eq!(gtan(E, FRAC_PI_4).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(gtan(P, 7.0).unwrap(), 7.0);
        assert_abs_diff_eq!(gtan(H, 1.0).unwrap(), 0.7615941560, epsilon = 1e-10);
    }

    #[test]
    fn tangent_pole() {
        assert!(matches!(gtan(E, FRAC_PI_2), Err(Error::Pole(_))));
        assert!(matches!(gtan(E, 3.0 * FRAC_PI_2), Err(Error::Pole(_))));
        assert!(gtan(H, FRAC_PI_2).is_ok());
    }

    #[test]
    fn inversion_examples() {
        assert_abs_diff_eq!(gmeasure_from_cs(E, 0.0, 1.0, 1e-9).unwrap(), FRAC_PI_2);
        assert_eq!(gmeasure_from_cs(P, 1.0, 2.5, 1e-9).unwrap(), 2.5);
        let one = gmeasure_from_cs(H, 1f64.cosh(), 1f64.sinh(), 1e-9).unwrap();
        assert_abs_diff_eq!(one, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn inversion_errors() {
        assert!(matches!(
            gmeasure_from_cs(E, 0.5, 0.5, 1e-9),
            Err(Error::InconsistentPair { .. })
        ));
        assert!(matches!(
            gmeasure_from_cs(P, 0.9, 1.0, 1e-9),
            Err(Error::InconsistentPair { .. })
        ));
        assert!(matches!(gmeasure_from_cs(H, -2f64.cosh(), 2f64.sinh(), 1e-9), Err(Error::Domain(_))));
    }

    #[test]
    fn series_matches_closed_forms() {
        for k in Characteristic::ALL {
            for step in -300..=300 {
                let x = step as f64 / 100.0;
                assert_abs_diff_eq!(series(k, x, false, 20), gcos(k, x), epsilon = 1e-12);
                assert_abs_diff_eq!(series(k, x, true, 20), gsin(k, x), epsilon = 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn pythagorean_identity(x in -10.0f64..10.0, ki in 0usize..3) {
            let k = Characteristic::ALL[ki];
            let (c, s) = (gcos(k, x), gsin(k, x));
            let lhs = c * c + k.as_f64() * s * s;
            // relative to the magnitude of the terms for cosh/sinh
            prop_assert!((lhs - 1.0).abs() <= 1e-12 * (c * c).max(1.0));
        }

        #[test]
        fn round_trip(t in 0.0f64..1.0, ki in 0usize..3) {
            let k = Characteristic::ALL[ki];
            let phi = if k == E { t * PI } else { t * 10.0 };
            let back = gmeasure_from_cs(k, gcos(k, phi), gsin(k, phi), DEFAULT_PAIR_TOL).unwrap();
            prop_assert!((back - phi).abs() <= 1e-12);
        }

        #[test]
        fn parity(x in -10.0f64..10.0, ki in 0usize..3) {
            let k = Characteristic::ALL[ki];
            prop_assert_eq!(gcos(k, -x), gcos(k, x));
            prop_assert_eq!(gsin(k, -x), -gsin(k, x));
        }
    }
}
