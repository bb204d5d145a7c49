//! Coordinate constructions for every known constant-defect family, plus a
//! catalog keyed by family id.

mod catalog;
mod hemi;
mod minimal;
mod nonorientable;
mod orientable;

pub use catalog::{catalog, generate, CatalogEntry, Family, FamilyRequest};
pub use hemi::{gen_cubohemioctahedron, gen_rhombihexahedron, gen_small_dodecahemidodecahedron};
pub use minimal::{
    a_coeff, f_angle_sum, gen_minimal, gen_minimal_with, gen_t_block, solve_block_params,
    BlockParams,
};
pub use nonorientable::{
    gen_n5g_odd, gen_nonorientable, gen_q2_9, gen_q3_18, gen_r_block, gen_s_base,
    gen_tetrahemihexahedron,
};
pub use orientable::{
    gen_appendix_orientable, gen_flat_torus9, gen_orientable, gen_orientable_fewest, gen_p2_24,
    gen_tetrahedron, AppendixFamily, P2_24_DEFAULT,
};

use std::f64::consts::TAU;

use thiserror::Error;

use crate::geom::{Frame, P3, V3};
use crate::poly::{FaceId, MeshError, Metadata, Polyhedron, VertexId};
use crate::surgery::SurgeryError;
use crate::tolerance::ToleranceSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeneratorError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("genus {genus} is outside the range of family {family}")]
    GenusOutOfRange { family: String, genus: u32 },
    #[error("no sign change bracketing block {0}")]
    BracketFailure(usize),
    #[error("f_l(d) needs 0 <= d <= 2l")]
    DomainError,
    #[error("unknown family {0}")]
    UnknownFamily(String),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

pub(crate) fn rotz(p: &P3, t: f64) -> P3 {
    let (s, c) = t.sin_cos();
    P3::new(c * p.x - s * p.y, s * p.x + c * p.y, p.z)
}

/// `copies` rotated copies of `base`; vertex i of copy k sits at
/// `i + base.len() * k`.
pub(crate) fn ring(base: &[P3], copies: usize, step: f64) -> Vec<P3> {
    (0..copies)
        .flat_map(|k| base.iter().map(move |p| rotz(p, step * k as f64)))
        .collect()
}

pub(crate) fn mesh(
    vertices: Vec<P3>,
    faces: Vec<Vec<VertexId>>,
) -> Result<Polyhedron, GeneratorError> {
    Ok(Polyhedron::from_parts(
        vertices,
        faces,
        None,
        Metadata::default(),
        &ToleranceSet::default(),
    )?)
}

/// The face whose vertex set is `verts`.
pub(crate) fn find_face(p: &Polyhedron, verts: &[VertexId]) -> Option<FaceId> {
    let mut want = verts.to_vec();
    want.sort_unstable();
    p.faces().iter().position(|f| {
        let mut have = f.clone();
        have.sort_unstable();
        have == want
    })
}

/// Indices of the points on the plane n·x = offset (n normalised here),
/// ordered by angle around their centroid.
pub(crate) fn plane_face(points: &[P3], normal: V3, offset: f64) -> Vec<VertexId> {
    let n = normal.normalize();
    let mut ids: Vec<VertexId> = (0..points.len())
        .filter(|&i| (points[i].coords.dot(&n) - offset).abs() < 1e-9)
        .collect();
    let pts: Vec<P3> = ids.iter().map(|&i| points[i]).collect();
    let frame = Frame::new(crate::geom::centroid(&pts), n);
    ids.sort_by(|&a, &b| {
        let qa = frame.to_2d(&points[a]);
        let qb = frame.to_2d(&points[b]);
        qa.y.atan2(qa.x).total_cmp(&qb.y.atan2(qb.x))
    });
    ids
}

/// Stamp family metadata, with the defect forced by Descartes' theorem.
pub(crate) fn finish(p: Polyhedron, family: &str) -> Result<Polyhedron, GeneratorError> {
    let class = p.classify()?;
    let mut meta = p.metadata.clone();
    meta.family = Some(family.to_string());
    meta.genus = Some(class.genus);
    meta.orientable = Some(class.orientable);
    meta.expected_defect = Some(TAU * class.euler_characteristic as f64 / p.num_vertices() as f64);
    Ok(p.with_metadata(meta))
}
