//! Text formats for points, planes and transforms.
//!
//! * point: JSON array of `n + 1` numbers, or a bare comma list `1,0,0`
//! * plane: JSON array of `m + 1` columns, each an array of `n + 1` numbers
//! * transform: `{"n": 2, "matrix": [[..], ..], "word": [{"op": "givens", ..}]}`
//!   with `matrix` given row by row (a flat row-major array is also accepted)
//! * volume job: `{"signature": "ee", "vertices": [[..], ..], "samples": 1000000, "seed": 0}`
//!   where everything but `vertices` is optional

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::entity::{normalize_point, MPlane, Space};
use crate::kernel::Signature;
use crate::volume::GeodesicSimplex;
use crate::error::{Error, Result};
use crate::transform::{GOrthoTransform, Generator};

pub fn parse_vector(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.starts_with('[') {
        return serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()));
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| Error::Invalid(format!("cannot parse {tok:?} as a number")))
        })
        .collect()
}

/// Columns of a plane as nested arrays.
pub fn parse_columns(text: &str) -> Result<Vec<Vec<f64>>> {
    serde_json::from_str(text.trim()).map_err(|e| Error::Invalid(e.to_string()))
}

pub fn columns_to_matrix(cols: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let rows = cols.first().map(Vec::len).unwrap_or(0);
    if rows == 0 || cols.iter().any(|c| c.len() != rows) {
        return Err(Error::Invalid("columns must be nonempty and of equal length".into()));
    }
    let flat: Vec<f64> = cols.iter().flatten().copied().collect();
    Ok(DMatrix::from_column_slice(rows, cols.len(), &flat))
}

pub fn plane_columns(plane: &MPlane) -> Vec<Vec<f64>> {
    plane.columns().column_iter().map(|c| c.iter().copied().collect()).collect()
}

pub fn parse_plane(sp: &Space, text: &str, tol: f64) -> Result<MPlane> {
    MPlane::from_columns(sp, columns_to_matrix(&parse_columns(text)?)?, tol)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixRepr {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransformDoc {
    pub n: usize,
    pub matrix: MatrixRepr,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<Generator>>,
}

impl TransformDoc {
    pub fn from_transform(g: &GOrthoTransform) -> Self {
        let m = g.matrix();
        let rows = m.row_iter().map(|r| r.iter().copied().collect()).collect();
        Self { n: m.nrows() - 1, matrix: MatrixRepr::Rows(rows), word: g.word().map(<[_]>::to_vec) }
    }

    pub fn matrix(&self) -> Result<DMatrix<f64>> {
        let size = self.n + 1;
        let flat: Vec<f64> = match &self.matrix {
            MatrixRepr::Rows(rows) => {
                if rows.len() != size || rows.iter().any(|r| r.len() != size) {
                    return Err(Error::DimensionMismatch { expected: size, got: rows.len() });
                }
                rows.iter().flatten().copied().collect()
            }
            MatrixRepr::Flat(v) => {
                if v.len() != size * size {
                    return Err(Error::DimensionMismatch { expected: size * size, got: v.len() });
                }
                v.clone()
            }
        };
        Ok(DMatrix::from_row_slice(size, size, &flat))
    }

    /// Rebuild the transform. A present word takes precedence and must agree
    /// with the matrix.
    pub fn to_transform(&self, sp: &Space, tol: f64) -> Result<GOrthoTransform> {
        let matrix = self.matrix()?;
        match &self.word {
            Some(word) => {
                let g = GOrthoTransform::from_word(sp, word)?;
                let diff = (g.matrix() - &matrix).amax();
                if diff > tol.max(1e-9) {
                    return Err(Error::Invalid(format!("word and matrix disagree by {diff:e}")));
                }
                Ok(g)
            }
            None => GOrthoTransform::from_matrix(sp, matrix),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VolumeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Signature>,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VolumeDoc {
    /// A bare vertex array or a full document.
    pub fn parse(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Bare(Vec<Vec<f64>>),
            Doc(VolumeDoc),
        }
        match serde_json::from_str(text.trim()).map_err(|e| Error::Invalid(e.to_string()))? {
            Repr::Bare(vertices) => Ok(Self { vertices, ..Self::default() }),
            Repr::Doc(doc) => Ok(doc),
        }
    }

    pub fn simplex(&self, sp: &Space, tol: f64) -> Result<GeodesicSimplex> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| normalize_point(sp, v, tol))
            .collect::<Result<Vec<_>>>()?;
        GeodesicSimplex::new(sp, vertices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::random_transform;

    #[test]
    fn vectors_in_both_forms() {
        assert_eq!(parse_vector("1, 0,-2.5").unwrap(), vec![1.0, 0.0, -2.5]);
        assert_eq!(parse_vector("[1,0,3]").unwrap(), vec![1.0, 0.0, 3.0]);
        assert!(parse_vector("1,x").is_err());
    }

    #[test]
    fn plane_columns_round_trip() {
        let sp = Space::new("ee".parse().unwrap());
        let p = parse_plane(&sp, "[[1,0,0],[0,1,0]]", 1e-9).unwrap();
        assert_eq!(plane_columns(&p), vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
        assert!(parse_plane(&sp, "[[1,0,0],[1,1,0]]", 1e-9).is_err());
    }

    #[test]
    fn volume_documents() {
        let bare = VolumeDoc::parse("[[1,0,0],[0,1,0],[0,0,1]]").unwrap();
        assert!(bare.signature.is_none() && bare.seed.is_none());
        let doc = VolumeDoc::parse(r#"{"signature": "pe", "vertices": [[1,0,0],[1,3,0],[1,0,4]], "seed": 3}"#)
            .unwrap();
        assert_eq!(doc.signature, Some("pe".parse().unwrap()));
        assert_eq!(doc.seed, Some(3));
        let sp = Space::new("pe".parse().unwrap());
        assert_eq!(doc.simplex(&sp, 1e-9).unwrap().vertices().len(), 3);
        assert!(VolumeDoc::parse("{}").is_err());
    }

    #[test]
    fn transform_document() {
        let sp = Space::new("hpe".parse().unwrap());
        let g = random_transform(&sp, 4);
        let text = serde_json::to_string(&TransformDoc::from_transform(&g)).unwrap();
        let back: TransformDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_transform(&sp, 1e-12).unwrap(), g);

        let flat = r#"{"n": 1, "matrix": [1, 0, 0, 1]}"#;
        let doc: TransformDoc = serde_json::from_str(flat).unwrap();
        let line = Space::new("e".parse().unwrap());
        assert!(doc.to_transform(&line, 1e-9).unwrap().word().is_none());
        assert!(text.contains(r#""op":"givens""#));
    }
}
