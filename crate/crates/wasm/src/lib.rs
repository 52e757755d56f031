//! Browser bindings for the demo page. Every export takes plain strings and
//! numbers and returns a JSON document, either the result or
//! `{"error": .., "kind": ..}`.

use ckgeom::io::{parse_vector, VolumeDoc};
use ckgeom::metric::{distance as measure_distance, law_residuals, measure_triangle, triangle_from_sas};
use ckgeom::volume::mc_volume;
use ckgeom::{normalize_point, Space, DEFAULT_TOL};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Samples are capped so a click never blocks the page for long.
pub const MAX_SAMPLES: usize = 2_000_000;

fn respond(result: ckgeom::Result<Value>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string(), "kind": e.kind(), "class": e.norm_class() }).to_string(),
    }
}

fn space(text: &str) -> ckgeom::Result<Space> {
    Ok(Space::new(text.parse()?))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// Distance between two points given as comma lists or JSON arrays.
#[wasm_bindgen]
pub fn distance(signature: &str, p: &str, q: &str) -> String {
    respond((|| {
        let sp = space(signature)?;
        let x = normalize_point(&sp, &parse_vector(p)?, DEFAULT_TOL)?;
        let y = normalize_point(&sp, &parse_vector(q)?, DEFAULT_TOL)?;
        let d = measure_distance(&sp, &x, &y, DEFAULT_TOL)?;
        Ok(json!({
            "signature": sp.signature().to_letters(),
            "p": x.coords(),
            "q": y.coords(),
            "distance": to_value(&d),
        }))
    })())
}

/// Side-angle-side triangle with its measured elements and law residuals.
#[wasm_bindgen]
pub fn triangle(signature: &str, b: f64, alpha: f64, c: f64) -> String {
    respond((|| {
        let sp = space(signature)?;
        let t = triangle_from_sas(&sp, b, alpha, c, DEFAULT_TOL)?;
        let m = measure_triangle(&sp, &t, DEFAULT_TOL)?;
        let vertices: Vec<&[f64]> = t.vertices().iter().map(|v| v.coords()).collect();
        Ok(json!({
            "signature": sp.signature().to_letters(),
            "vertices": vertices,
            "measurements": to_value(&m),
            "laws": to_value(&law_residuals(&sp, &m)),
        }))
    })())
}

/// Monte Carlo volume of the simplex spanned by a JSON vertex array.
#[wasm_bindgen]
pub fn volume(signature: &str, vertices: &str, samples: u32, seed: u32) -> String {
    respond((|| {
        let sp = space(signature)?;
        let simplex = VolumeDoc::parse(vertices)?.simplex(&sp, DEFAULT_TOL)?;
        let samples = (samples as usize).min(MAX_SAMPLES);
        let est = mc_volume(&sp, &simplex, samples, u64::from(seed))?;
        Ok(json!({ "signature": sp.signature().to_letters(), "estimate": to_value(&est) }))
    })())
}
