//! Native JSON mesh documents, OBJ import/export and binary STL export.

mod obj;
mod stl;

pub use obj::{parse_obj, to_obj};
pub use stl::{stl_triangle_count, to_stl, STL_HEADER};

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::P3;
use crate::poly::{MeshError, Metadata, Polyhedron, Side, VertexId};
use crate::tolerance::ToleranceSet;
use crate::verify::{verify_raw, VerificationReport};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("OBJ line {line}: {msg}")]
    Obj { line: usize, msg: String },
    #[error("unsupported format_version {0}")]
    UnsupportedVersion(u32),
    #[error("unknown file format for {0} (expected .json, .obj or .stl)")]
    UnknownFormat(String),
    #[error("{0} files cannot be read")]
    WriteOnly(&'static str),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Obj,
    Stl,
}

impl Format {
    pub fn from_path(path: &Path) -> Result<Format, IoError> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase());
        match ext.as_deref() {
            Some("json") => Ok(Format::Json),
            Some("obj") => Ok(Format::Obj),
            Some("stl") => Ok(Format::Stl),
            _ => Err(IoError::UnknownFormat(path.display().to_string())),
        }
    }
}

/// On-disk form of a mesh. `links` is present only for meshes with
/// several 1-cells between the same two vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshDocument {
    pub format_version: u32,
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<Vec<VertexId>>,
    #[serde(default)]
    pub metadata: Metadata,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub links: Option<Vec<[Side; 2]>>,
}

impl MeshDocument {
    pub fn from_polyhedron(p: &Polyhedron) -> Self {
        MeshDocument {
            format_version: FORMAT_VERSION,
            vertices: p.vertices().iter().map(|v| [v.x, v.y, v.z]).collect(),
            faces: p.faces().to_vec(),
            metadata: p.metadata.clone(),
            links: p.has_multi_edges().then(|| p.links()),
        }
    }

    fn points(&self) -> Vec<P3> {
        self.vertices
            .iter()
            .map(|v| P3::new(v[0], v[1], v[2]))
            .collect()
    }

    pub fn to_polyhedron(&self, tol: &ToleranceSet) -> Result<Polyhedron, IoError> {
        Ok(Polyhedron::from_parts(
            self.points(),
            self.faces.clone(),
            self.links.as_deref(),
            self.metadata.clone(),
            tol,
        )?)
    }

    /// Verify without rejecting non-planar or flat input up front.
    pub fn verify(&self, tol: &ToleranceSet) -> VerificationReport {
        verify_raw(
            self.points(),
            self.faces.clone(),
            self.links.as_deref(),
            self.metadata.clone(),
            tol,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("mesh documents serialise")
    }

    pub fn from_json(s: &str) -> Result<Self, IoError> {
        let doc: MeshDocument = serde_json::from_str(s)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(IoError::UnsupportedVersion(doc.format_version));
        }
        Ok(doc)
    }
}

pub fn to_json(p: &Polyhedron) -> String {
    MeshDocument::from_polyhedron(p).to_json()
}

pub fn from_json(s: &str, tol: &ToleranceSet) -> Result<Polyhedron, IoError> {
    MeshDocument::from_json(s)?.to_polyhedron(tol)
}

fn file_error(path: &Path) -> impl FnOnce(std::io::Error) -> IoError + '_ {
    move |source| IoError::File {
        path: path.display().to_string(),
        source,
    }
}

/// Read a JSON or OBJ file into a document (OBJ carries no metadata).
pub fn read_document(path: &Path) -> Result<MeshDocument, IoError> {
    let format = Format::from_path(path)?;
    if format == Format::Stl {
        return Err(IoError::WriteOnly("STL"));
    }
    let text = std::fs::read_to_string(path).map_err(file_error(path))?;
    match format {
        Format::Json => MeshDocument::from_json(&text),
        _ => {
            let (vertices, faces) = parse_obj(&text)?;
            Ok(MeshDocument {
                format_version: FORMAT_VERSION,
                vertices: vertices.iter().map(|v| [v.x, v.y, v.z]).collect(),
                faces,
                metadata: Metadata::default(),
                links: None,
            })
        }
    }
}

pub fn read_mesh(path: &Path, tol: &ToleranceSet) -> Result<Polyhedron, IoError> {
    read_document(path)?.to_polyhedron(tol)
}

/// Write in the format named by the file extension.
pub fn write_mesh(p: &Polyhedron, path: &Path) -> Result<(), IoError> {
    let bytes = match Format::from_path(path)? {
        Format::Json => to_json(p).into_bytes(),
        Format::Obj => to_obj(p).into_bytes(),
        Format::Stl => to_stl(p),
    };
    std::fs::write(path, bytes).map_err(file_error(path))
}
