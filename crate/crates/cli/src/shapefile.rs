//! Shape file loading. A shape file is a JSON object with exactly one of two
//! top-level keys:
//!
//! - `"triangles"`: a list of 3-point lists `[[x,y],[x,y],[x,y]]`, each
//!   counterclockwise;
//! - `"polygons"`: a list of vertex rings, the first the outer boundary
//!   (counterclockwise), any further rings holes (clockwise), triangulated
//!   by ear clipping on load.

use crate::earclip;
use probmatch::geometry::{Point2, Triangle, TriangleSoup};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ShapeFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: exactly one of \"triangles\" or \"polygons\" must be present")]
    Keys { path: String },
    #[error("{path}: invalid shape: {source}")]
    Geometry {
        path: String,
        #[source]
        source: probmatch::geometry::GeometryError,
    },
    #[error("{path}: {source}")]
    Triangulation {
        path: String,
        #[source]
        source: earclip::TriangulateError,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShapeFile {
    triangles: Option<Vec<[[f64; 2]; 3]>>,
    polygons: Option<Vec<Vec<[f64; 2]>>>,
}

fn point(xy: [f64; 2], path: &str) -> Result<Point2, ShapeFileError> {
    Point2::new(xy[0], xy[1])
        .map_err(|source| ShapeFileError::Geometry { path: path.to_string(), source })
}

/// Parse the raw file into rings or triangles and build a validated soup.
pub fn load_shape(path: &Path) -> Result<TriangleSoup, ShapeFileError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|source| ShapeFileError::Io { path: name.clone(), source })?;
    let file: ShapeFile = serde_json::from_str(&text)
        .map_err(|source| ShapeFileError::Json { path: name.clone(), source })?;
    let triangles = match (file.triangles, file.polygons) {
        (Some(tris), None) => {
            let mut out = Vec::with_capacity(tris.len());
            for t in tris {
                let tri = Triangle::new(point(t[0], &name)?, point(t[1], &name)?, point(t[2], &name)?)
                    .map_err(|source| ShapeFileError::Geometry { path: name.clone(), source })?;
                out.push(tri);
            }
            out
        }
        (None, Some(rings)) => {
            let mut parsed = Vec::with_capacity(rings.len());
            for ring in rings {
                let mut pts = Vec::with_capacity(ring.len());
                for xy in ring {
                    pts.push(point(xy, &name)?);
                }
                parsed.push(pts);
            }
            earclip::triangulate(&parsed)
                .map_err(|source| ShapeFileError::Triangulation { path: name.clone(), source })?
        }
        _ => return Err(ShapeFileError::Keys { path: name }),
    };
    TriangleSoup::new(triangles)
        .map_err(|source| ShapeFileError::Geometry { path: name, source })
}
