//! Uniform model of the Cayley-Klein spaces.
//!
//! A space of dimension `n` is fixed by a [`Signature`] of characteristics
//! `k_1..k_n`, each elliptic (`1`), parabolic (`0`) or hyperbolic (`-1`).
//! Points live on the "unit ball" `x . x = 1` of the weighted form
//! `x . y = sum K_i x_i y_i` with `K_i = k_1 ... k_i`, m-planes are column
//! matrices, and every measurement (distance, angle, triangle relation,
//! volume) is computed by the same code for all `3^n` spaces.
//!
//! ```
//! use ckgeom::{Space, normalize_point, metric::distance};
//!
//! let euclid = Space::new("pe".parse().unwrap());
//! let a = normalize_point(&euclid, &[1.0, 0.0, 0.0], 1e-9).unwrap();
//! let b = normalize_point(&euclid, &[1.0, 3.0, 4.0], 1e-9).unwrap();
//! assert_eq!(distance(&euclid, &a, &b, 1e-9).unwrap().value, 5.0);
//! ```

pub mod entity;
pub mod error;
pub mod gtrig;
pub mod io;
pub mod kernel;
pub mod metric;
pub mod sample;
pub mod transform;
pub mod volume;

pub use entity::{
    cross_planes, cross_points, dot_planes, dot_points, normalize_point, Cross, MPlane, ProjPoint,
    Space,
};
pub use error::{Error, NormClass, Result};
pub use kernel::{Characteristic, Monomial, Signature};
pub use transform::{GOrthoTransform, Generator};

/// Default absolute tolerance used across the crate.
pub const DEFAULT_TOL: f64 = 1e-9;
